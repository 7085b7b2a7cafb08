#include "hvh/frame_hash.hpp"

#include <bit>

#include "hvh/errors.hpp"

namespace hvh {

std::vector<std::int64_t> block_diffs(const PixelMatrix& pixels, int block_grid) {
    const int f = static_cast<int>(pixels.rows());
    if (block_grid < 1 || block_grid > 8) {
        throw ConfigError("block grid must be in [1, 8], got " + std::to_string(block_grid));
    }
    if (pixels.rows() != pixels.cols() || f % block_grid != 0) {
        throw ConfigError("frame resolution " + std::to_string(f) +
                          " is not divisible by block grid " + std::to_string(block_grid));
    }

    const int bs = f / block_grid;
    const std::int64_t k = static_cast<std::int64_t>(block_grid) * block_grid;

    std::vector<std::int64_t> sums;
    sums.reserve(static_cast<std::size_t>(k));
    std::int64_t total = 0;
    for (int br = 0; br < block_grid; ++br) {
        for (int bc = 0; bc < block_grid; ++bc) {
            const std::int64_t s =
                pixels.block(br * bs, bc * bs, bs, bs).template cast<std::int64_t>().sum();
            sums.push_back(s);
            total += s;
        }
    }
    for (std::int64_t& s : sums) s = k * s - total;
    return sums;
}

FrameHash hash_frame(const PreprocessedFrame& f, int block_grid) {
    const auto diffs = block_diffs(f.pixels, block_grid);
    FrameHash h;
    h.block_count = static_cast<std::uint8_t>(diffs.size());
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        if (diffs[k] > 0) h.bits |= std::uint64_t{1} << k;  // ties yield 0
    }
    return h;
}

int hash_distance(const FrameHash& a, const FrameHash& b) {
    if (a.block_count != b.block_count) {
        throw ConfigError("hash length mismatch: " + std::to_string(a.block_count) + " vs " +
                          std::to_string(b.block_count));
    }
    return std::popcount(a.bits ^ b.bits);
}

}  // namespace hvh
