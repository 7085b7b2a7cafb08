#include "hvh/matcher.hpp"

#include <algorithm>
#include <cstdlib>

#include "hvh/errors.hpp"

namespace hvh {

void MatchParams::validate(int block_count) const {
    if (hash_threshold < 0 || hash_threshold > block_count) {
        throw ConfigError("hash_threshold must be in [0, " + std::to_string(block_count) + "]");
    }
    if (drop_threshold < 0) throw ConfigError("drop_threshold must be >= 0");
}

std::int64_t self_score(std::span<const KeyframeRecord> records) {
    std::int64_t s = 0;
    for (const KeyframeRecord& r : records) s += 1 + static_cast<std::int64_t>(r.dropped_before);
    return s;
}

MatchResult compare_records(std::span<const KeyframeRecord> a,
                            std::span<const KeyframeRecord> b, const MatchParams& params) {
    if (!a.empty() && !b.empty() && a.front().hash.block_count != b.front().hash.block_count) {
        throw ConfigError("cannot compare hashes with different block counts");
    }
    const std::size_t m = a.size(), n = b.size();

    MatchResult result;
    result.self_score_a = self_score(a);
    result.self_score_b = self_score(b);
    if (m == 0 || n == 0) return result;

    // Rolling rows of (run value, run length in matched pairs).
    std::vector<std::int64_t> prev_val(n + 1, 0), cur_val(n + 1, 0);
    std::vector<std::uint32_t> prev_len(n + 1, 0), cur_len(n + 1, 0);

    std::int64_t best = 0;
    std::size_t best_start_i = 0, best_start_j = 0, best_len = 0;

    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const KeyframeRecord& ra = a[i - 1];
            const KeyframeRecord& rb = b[j - 1];
            const std::int64_t da = ra.dropped_before, db = rb.dropped_before;
            const bool matches = hash_distance(ra.hash, rb.hash) <= params.hash_threshold &&
                                 std::abs(da - db) <= params.drop_threshold;
            if (!matches) {
                cur_val[j] = 0;
                cur_len[j] = 0;
                continue;
            }
            const std::int64_t increment = 1 + (da + db + 1) / 2;  // round half up
            cur_val[j] = prev_val[j - 1] + increment;
            cur_len[j] = prev_len[j - 1] + 1;

            const std::size_t start_i = i - cur_len[j];
            const std::size_t start_j = j - cur_len[j];
            if (cur_val[j] > best ||
                (cur_val[j] == best &&
                 (start_i < best_start_i ||
                  (start_i == best_start_i && start_j < best_start_j)))) {
                best = cur_val[j];
                best_start_i = start_i;
                best_start_j = start_j;
                best_len = cur_len[j];
            }
        }
        std::swap(prev_val, cur_val);
        std::swap(prev_len, cur_len);
    }

    result.score = best;
    result.alignment.reserve(best_len);
    for (std::size_t t = 0; t < best_len; ++t) {
        result.alignment.emplace_back(static_cast<std::uint32_t>(best_start_i + t),
                                      static_cast<std::uint32_t>(best_start_j + t));
    }
    return result;
}

MatchResult compare(const VideoHash& a, const VideoHash& b, const MatchParams& params) {
    if (a.header.resolution != b.header.resolution ||
        a.header.block_grid != b.header.block_grid) {
        throw ConfigError(
            "cannot compare hashes built with different parameters: F=" +
            std::to_string(a.header.resolution) + "/B=" + std::to_string(a.header.block_grid) +
            " vs F=" + std::to_string(b.header.resolution) + "/B=" +
            std::to_string(b.header.block_grid));
    }
    params.validate(a.header.block_grid * a.header.block_grid);
    return compare_records(a.records, b.records, params);
}

double similarity(const MatchResult& r) {
    const std::int64_t denom = std::min(r.self_score_a, r.self_score_b);
    if (denom <= 0) return 0.0;
    return std::min(1.0, static_cast<double>(r.score) / static_cast<double>(denom));
}

}  // namespace hvh
