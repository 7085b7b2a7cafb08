#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hvh/frame.hpp"

namespace hvh {

/// Chroma layouts the Y4M reader/writer understands. Chroma planes are
/// parsed and skipped; only the Y plane is kept.
enum class Y4mChroma { kC420, kC422, kC444, kMono };

/// Parses a YUV4MPEG2 byte stream. 8-bit 4:2:0 / 4:2:2 / 4:4:4 (and mono)
/// only; higher bit depths are rejected. Parse errors name the byte offset,
/// truncated payloads name the frame index as well.
VideoStream parse_y4m(std::span<const std::uint8_t> bytes, std::string source_id = {});

/// Serializes a stream as YUV4MPEG2 with the given chroma layout. Chroma
/// planes are written as neutral gray (128), so parse(serialize(s)) == s.
std::vector<std::uint8_t> serialize_y4m(const VideoStream& stream,
                                        Y4mChroma chroma = Y4mChroma::kC420);

/// Loads a directory of frames in filename order. PGM (P5, maxval 255) is
/// the native format; PPM (P6) is accepted and reduced to luma via
/// round((77R + 150G + 29B) / 256). Everything else is rejected.
VideoStream load_frame_directory(const std::filesystem::path& dir, double frame_rate);

/// Parses a single P5/P6 raster held in memory.
PixelMatrix parse_pnm(std::span<const std::uint8_t> bytes, const std::string& name);

/// Writes a frame as binary PGM (P5, maxval 255).
void write_pgm(const std::filesystem::path& path, const PixelMatrix& pixels);

/// Bilinear resize with pixel-center alignment; identity when dimensions
/// already match, exact on constant images.
PixelMatrix resize_bilinear(const PixelMatrix& src, int out_rows, int out_cols);

/// 256-bin histogram equalization with the cdf_min-anchored remap. A
/// single-level image is left unchanged.
PixelMatrix equalize_histogram(const PixelMatrix& img);

/// The full pre-processing chain: bilinear resize to resolution x
/// resolution, then histogram equalization.
PreprocessedFrame preprocess(const Frame& f, int resolution);

}  // namespace hvh
