#pragma once

#include <cstdint>
#include <vector>

#include "hvh/frame.hpp"

namespace hvh {

/// Fixed-length perceptual hash of one frame: one sign bit per block,
/// bit k set iff block k's pixel sum exceeds its share of the global sum.
/// K = block_grid^2 <= 64, so the bits fit one machine word.
struct FrameHash {
    std::uint64_t bits = 0;
    std::uint8_t block_count = 64;

    bool bit(int k) const { return (bits >> k) & 1; }

    bool operator==(const FrameHash&) const = default;
};

/// The per-block integer quantities K*S_k - S (block sum scaled by the
/// block count, minus the global sum). Signs of these are the hash bits;
/// the encrypted pipeline computes the same values homomorphically.
std::vector<std::int64_t> block_diffs(const PixelMatrix& pixels, int block_grid);

/// Hashes a preprocessed frame over a block_grid x block_grid partition.
/// Requires the frame resolution to be divisible by block_grid and
/// block_grid <= 8 (the serialized record stores 64 bits).
FrameHash hash_frame(const PreprocessedFrame& f, int block_grid);

/// L1 (Hamming) distance between two hashes of equal block count.
int hash_distance(const FrameHash& a, const FrameHash& b);

}  // namespace hvh
