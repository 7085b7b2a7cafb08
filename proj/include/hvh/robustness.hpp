#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hvh/corpus.hpp"
#include "hvh/distortion.hpp"
#include "hvh/keyframes.hpp"
#include "hvh/matcher.hpp"
#include "hvh/rng.hpp"

namespace hvh {

/// Sampling ranges for random distortion specs. Defaults are the full
/// evaluation ranges; mild() is the regime every distortion family is
/// known to survive.
struct DistortionRanges {
    double gamma_lo = 0.5, gamma_hi = 2.0;
    bool use_noise = true;
    double snr_lo = 15.0, snr_hi = 60.0;
    bool use_quality = true;
    double quality_lo = 2.0, quality_hi = 23.0;
    double scale_lo = 0.25, scale_hi = 1.0;

    static DistortionRanges mild() {
        DistortionRanges r;
        r.gamma_lo = 0.8;
        r.gamma_hi = 1.25;
        r.snr_lo = 25.0;
        r.quality_hi = 10.0;
        r.scale_lo = 0.5;
        return r;
    }

    static DistortionRanges identity() {
        DistortionRanges r;
        r.gamma_lo = r.gamma_hi = 1.0;
        r.use_noise = false;
        r.use_quality = false;
        r.scale_lo = r.scale_hi = 1.0;
        return r;
    }

    DistortionSpec sample(Rng& rng) const;
};

/// Similar/different classification accuracy as the similarity threshold
/// sweeps. Thresholds ascend, so TPR and FPR are non-increasing.
struct RocReport {
    std::vector<double> thresholds;
    std::vector<double> tpr;
    std::vector<double> fpr;
    double crossover_accuracy = 0.0;
    double crossover_threshold = 0.0;
    std::vector<std::pair<double, double>> tpr_at_fpr;  // (target fpr, tpr), supported targets
    std::vector<std::string> warnings;
    std::size_t similar_count = 0;
    std::size_t different_count = 0;
};

struct SensitivityPoint {
    double lo = 0, hi = 0, mid = 0;
    std::size_t count = 0;
    double mean_similarity = 0.0;
    double tpr = 0.0;
};

/// TPR and mean similarity bucketed by one distortion parameter,
/// integrated across all other distortions, at a fixed FPR.
struct SensitivityCurve {
    std::string parameter;
    double fpr_target = 0.0;
    double threshold = 0.0;
    std::vector<SensitivityPoint> points;
};

struct SimilarPair {
    DistortionSpec spec;
    double similarity = 0.0;
};

struct RobustnessReport {
    RocReport roc;
    std::vector<SensitivityCurve> curves;
    std::vector<SimilarPair> similar;  // per (original, variant) pair
    std::vector<double> different;     // per unordered original pair
};

/// The full evaluation: hash the corpus, generate variants_per_video
/// random variants of each video within `ranges`, score similar and
/// different pairs, and assemble ROC + per-parameter sensitivity curves.
/// Deterministic per seed.
RobustnessReport run_robustness_suite(const std::vector<VideoStream>& corpus,
                                      int variants_per_video, const SelectionParams& sel,
                                      const MatchParams& match, const DistortionRanges& ranges,
                                      std::uint64_t seed, unsigned threads = 0);

/// Serializes the report (curves + summary, not raw pairs) as JSON.
void write_report_json(const std::filesystem::path& path, const RobustnessReport& report);

/// One CSV per sensitivity panel: <prefix>_gamma.csv, _snr.csv,
/// _quality.csv, _scale.csv.
void write_sensitivity_csvs(const std::filesystem::path& dir, const std::string& prefix,
                            const RobustnessReport& report);

}  // namespace hvh
