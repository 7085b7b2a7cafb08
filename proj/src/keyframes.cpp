#include "hvh/keyframes.hpp"

#include <cmath>

#include "hvh/errors.hpp"

namespace hvh {

void SelectionParams::validate() const {
    if (blank_std_threshold < 0) {
        throw ConfigError("blank_std_threshold must be >= 0");
    }
    if (resolution < 1) throw ConfigError("resolution must be >= 1");
    if (block_grid < 1 || block_grid > 8) {
        throw ConfigError("block_grid must be in [1, 8]");
    }
    if (resolution % block_grid != 0) {
        throw ConfigError("resolution " + std::to_string(resolution) +
                          " is not divisible by block_grid " + std::to_string(block_grid));
    }
    const int k = block_grid * block_grid;
    if (keyframe_distance_threshold < 1 || keyframe_distance_threshold > k) {
        throw ConfigError("keyframe_distance_threshold must be in [1, " + std::to_string(k) +
                          "]");
    }
}

bool is_blank(const PreprocessedFrame& f, const SelectionParams& params) {
    const std::size_t total = static_cast<std::size_t>(f.pixels.size());
    if (total == 0) return true;
    std::int64_t sum = 0, sum_sq = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const std::int64_t v = f.pixels.data()[i];
        sum += v;
        sum_sq += v * v;
    }
    const double mean = static_cast<double>(sum) / static_cast<double>(total);
    const double var = static_cast<double>(sum_sq) / static_cast<double>(total) - mean * mean;
    return std::sqrt(std::max(var, 0.0)) < params.blank_std_threshold;
}

SelectionResult select_keyframes(std::span<const PreprocessedFrame> frames,
                                 const SelectionParams& params) {
    params.validate();
    SelectionResult result;
    std::uint32_t pending = 0;
    for (const PreprocessedFrame& f : frames) {
        if (is_blank(f, params)) {
            ++result.blank_count;
            continue;
        }
        FrameHash h = hash_frame(f, params.block_grid);
        if (result.records.empty() ||
            hash_distance(h, result.records.back().hash) > params.keyframe_distance_threshold) {
            result.records.push_back({h, pending, f.source_index});
            pending = 0;
        } else {
            ++pending;
        }
    }
    result.trailing_drops = pending;
    return result;
}

}  // namespace hvh
