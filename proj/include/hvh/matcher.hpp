#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hvh/video_hash.hpp"

namespace hvh {

/// Dual match condition thresholds (both inclusive): keyframe hashes must
/// be within hash_threshold bits AND dropped-frame counts within
/// drop_threshold frames.
struct MatchParams {
    int hash_threshold = 8;  // T_h, Hamming bits
    int drop_threshold = 5;  // T_d, frames

    void validate(int block_count) const;
};

/// Result of the modified longest-common-substring comparison.
struct MatchResult {
    std::int64_t score = 0;  // matched frames (LCS value)
    // (i, j) record-index pairs of the best common run; contiguous and
    // strictly increasing in both coordinates.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> alignment;
    std::int64_t self_score_a = 0;
    std::int64_t self_score_b = 0;
};

/// The run value a video scores against itself: one per keyframe plus its
/// dropped count (the full-diagonal run of the DP).
std::int64_t self_score(std::span<const KeyframeRecord> records);

/// O(m*n) dynamic program over the two record sequences. A cell extends
/// the diagonal run iff both match conditions hold; on a match the run
/// grows by 1 + round((dropped_a + dropped_b) / 2); otherwise the cell is
/// zero. Ties between equal-score runs go to the earliest start in a,
/// then in b.
MatchResult compare_records(std::span<const KeyframeRecord> a,
                            std::span<const KeyframeRecord> b, const MatchParams& params);

/// compare_records plus a parameter compatibility check: both hashes must
/// have been built with the same resolution and block grid.
MatchResult compare(const VideoHash& a, const VideoHash& b, const MatchParams& params);

/// Normalized score in [0, 1]: score / min(self scores), 0 when either
/// self score is 0. Clamped at 1: near-threshold drop mismatches can push
/// the raw score slightly above a self score.
double similarity(const MatchResult& r);

}  // namespace hvh
