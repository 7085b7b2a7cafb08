#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hvh/frame.hpp"
#include "hvh/keyframes.hpp"

namespace hvh {

/// Header metadata carried alongside the keyframe records. The frame-count
/// identity must hold: total_frames = blank_count + records + sum of
/// dropped_before + trailing_drops.
struct VideoHashHeader {
    std::string source_id;
    std::uint32_t total_frames = 0;
    double frame_rate = 0.0;
    std::uint32_t blank_count = 0;
    std::uint32_t trailing_drops = 0;
    double keyframe_percentage = 0.0;  // keyframes per 100 content frames
    std::uint16_t resolution = 64;     // F
    std::uint16_t block_grid = 8;      // B
    std::uint16_t format_version = 1;

    bool operator==(const VideoHashHeader&) const = default;
};

/// The final variable-length video hash: temporally ordered keyframe
/// records plus header metadata.
struct VideoHash {
    VideoHashHeader header;
    std::vector<KeyframeRecord> records;

    bool operator==(const VideoHash&) const = default;
};

/// Runs the full plaintext pipeline: preprocess every frame, remove
/// blanks, select keyframes, hash them, and assemble the result.
/// Deterministic for fixed params. An all-blank stream yields a valid
/// hash with zero records.
VideoHash build_video_hash(const VideoStream& stream, const SelectionParams& params);

/// Checks the header frame-count identity; throws on violation.
void check_frame_count_identity(const VideoHash& h);

/// Keyframes per 100 content (non-blank) frames; informational header
/// field. Both the plaintext and encrypted pipelines use this exact
/// computation so their outputs stay byte-identical.
double keyframe_percentage_of(std::size_t keyframes, std::uint32_t total_frames,
                              std::uint32_t blank_count);

/// Versioned binary encoding ("HVH1", little-endian, layout in
/// docs/FORMATS.md). Round-trip is the identity.
std::vector<std::uint8_t> serialize(const VideoHash& h);
VideoHash deserialize(std::span<const std::uint8_t> bytes);

void save_video_hash(const std::filesystem::path& path, const VideoHash& h);
VideoHash load_video_hash(const std::filesystem::path& path);

}  // namespace hvh
