#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hvh/frame.hpp"
#include "hvh/frame_hash.hpp"

namespace hvh {

/// Knobs for blank-frame removal and keyframe gating.
struct SelectionParams {
    double blank_std_threshold = 4.0;    // gray levels
    int keyframe_distance_threshold = 16;  // Hamming bits
    int resolution = 64;                 // F
    int block_grid = 8;                  // B

    void validate() const;
};

/// One retained keyframe: its hash, how many redundant content frames were
/// discarded since the previous keyframe, and its original frame index.
struct KeyframeRecord {
    FrameHash hash;
    std::uint32_t dropped_before = 0;
    std::uint32_t source_index = 0;

    bool operator==(const KeyframeRecord&) const = default;
};

/// Keyframe records plus the bookkeeping needed for the frame-count
/// identity: total = blanks + keyframes + sum(dropped_before) + trailing.
struct SelectionResult {
    std::vector<KeyframeRecord> records;
    std::uint32_t blank_count = 0;
    std::uint32_t trailing_drops = 0;
};

/// True iff the population standard deviation of the pixel values is
/// strictly below the blank threshold.
bool is_blank(const PreprocessedFrame& f, const SelectionParams& params);

/// Scans frames in temporal order: blanks are removed first (and do not
/// count as dropped), the first content frame is always a keyframe, and a
/// later content frame is kept iff its hash differs from the previous
/// keyframe's by more than the distance threshold.
SelectionResult select_keyframes(std::span<const PreprocessedFrame> frames,
                                 const SelectionParams& params);

}  // namespace hvh
