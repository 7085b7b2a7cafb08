#include "hvh/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hvh/errors.hpp"
#include "hvh/parallel.hpp"
#include "hvh/video_hash.hpp"

namespace hvh {

namespace {

constexpr int kThresholdSteps = 512;
const std::vector<double> kFprTargets = {1e-4, 1e-5, 1e-7};
constexpr int kSensitivityBins = 8;

// Fraction of `sorted` (ascending) that is >= threshold.
double frac_at_least(const std::vector<double>& sorted, double threshold) {
    if (sorted.empty()) return 0.0;
    auto it = std::lower_bound(sorted.begin(), sorted.end(), threshold);
    return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

// Smallest threshold achieving FPR <= target on the sorted different
// scores: just above the (k+1)-th largest score, k = floor(target * N).
double threshold_for_fpr(const std::vector<double>& different_sorted, double target) {
    const std::size_t n = different_sorted.size();
    const auto allowed = static_cast<std::size_t>(target * static_cast<double>(n));
    if (allowed >= n) return 0.0;
    const double cut = different_sorted[n - 1 - allowed];
    return std::nextafter(cut, 2.0);
}

}  // namespace

DistortionSpec DistortionRanges::sample(Rng& rng) const {
    DistortionSpec spec;
    spec.gamma = rng.uniform(gamma_lo, gamma_hi);
    if (use_noise) spec.snr_db = rng.uniform(snr_lo, snr_hi);
    if (use_quality) spec.quality = rng.uniform(quality_lo, quality_hi);
    spec.scale = rng.uniform(scale_lo, scale_hi);
    spec.seed = rng.u64();
    return spec;
}

RobustnessReport run_robustness_suite(const std::vector<VideoStream>& corpus,
                                      int variants_per_video, const SelectionParams& sel,
                                      const MatchParams& match, const DistortionRanges& ranges,
                                      std::uint64_t seed, unsigned threads) {
    if (corpus.size() < 2) throw ConfigError("robustness suite needs at least 2 videos");
    if (variants_per_video < 1) throw ConfigError("variants_per_video must be >= 1");

    const std::size_t n_videos = corpus.size();

    // Hash all originals.
    std::vector<VideoHash> originals(n_videos);
    parallel_for(n_videos, threads, [&](std::size_t i) {
        originals[i] = build_video_hash(corpus[i], sel);
    });

    // Similar pairs: each original against its distorted variants. Specs
    // are drawn up front so the parallel phase stays deterministic.
    RobustnessReport report;
    const std::size_t n_similar = n_videos * static_cast<std::size_t>(variants_per_video);
    report.similar.resize(n_similar);
    {
        Rng spec_rng(seed);
        for (auto& pair : report.similar) pair.spec = ranges.sample(spec_rng);
    }
    parallel_for(n_similar, threads, [&](std::size_t t) {
        const std::size_t video = t / static_cast<std::size_t>(variants_per_video);
        const VideoStream variant = apply_distortion(corpus[video], report.similar[t].spec);
        const VideoHash vh = build_video_hash(variant, sel);
        report.similar[t].similarity = similarity(compare(originals[video], vh, match));
    });

    // Different pairs: every unordered pair of originals.
    const std::size_t n_different = n_videos * (n_videos - 1) / 2;
    report.different.resize(n_different);
    parallel_for(n_videos, threads, [&](std::size_t i) {
        // row-major offset of pair (i, j), j > i
        const std::size_t row_base = i * (n_videos - 1) - i * (i - 1) / 2;
        for (std::size_t j = i + 1; j < n_videos; ++j) {
            report.different[row_base + (j - i - 1)] =
                similarity(compare(originals[i], originals[j], match));
        }
    });

    // ROC sweep over an ascending threshold grid.
    std::vector<double> sim_sorted(n_similar), diff_sorted(n_different);
    for (std::size_t i = 0; i < n_similar; ++i) sim_sorted[i] = report.similar[i].similarity;
    diff_sorted = report.different;
    std::sort(sim_sorted.begin(), sim_sorted.end());
    std::sort(diff_sorted.begin(), diff_sorted.end());

    RocReport& roc = report.roc;
    roc.similar_count = n_similar;
    roc.different_count = n_different;
    roc.thresholds.reserve(kThresholdSteps + 1);
    double best_gap = 2.0;
    for (int s = 0; s <= kThresholdSteps; ++s) {
        const double tau = static_cast<double>(s) / kThresholdSteps;
        const double tpr = frac_at_least(sim_sorted, tau);
        const double fpr = frac_at_least(diff_sorted, tau);
        roc.thresholds.push_back(tau);
        roc.tpr.push_back(tpr);
        roc.fpr.push_back(fpr);
        const double gap = std::abs(tpr - (1.0 - fpr));
        if (gap < best_gap) {
            best_gap = gap;
            roc.crossover_accuracy = (tpr + (1.0 - fpr)) / 2.0;
            roc.crossover_threshold = tau;
        }
    }

    const double min_estimable_fpr = 1.0 / static_cast<double>(n_different);
    for (double target : kFprTargets) {
        if (target < min_estimable_fpr) {
            roc.warnings.push_back(
                "cannot estimate FPR target " + std::to_string(target) + " from " +
                std::to_string(n_different) + " different pairs (needs >= " +
                std::to_string(static_cast<std::uint64_t>(std::ceil(1.0 / target))) + ")");
            continue;
        }
        const double tau = threshold_for_fpr(diff_sorted, target);
        roc.tpr_at_fpr.emplace_back(target, frac_at_least(sim_sorted, tau));
    }

    // Sensitivity panels at a fixed FPR: 0.001% when the different-pair
    // count supports it, otherwise the smallest estimable rate.
    double panel_fpr = 1e-5;
    if (panel_fpr < min_estimable_fpr) {
        panel_fpr = min_estimable_fpr;
        roc.warnings.push_back(
            "sensitivity panels use FPR " + std::to_string(panel_fpr) +
            " (smallest estimable at this corpus size) instead of 1e-05");
    }
    const double panel_tau = threshold_for_fpr(diff_sorted, panel_fpr);

    struct PanelDef {
        std::string name;
        double lo, hi;
        bool enabled;
        double (*value)(const DistortionSpec&);
    };
    const PanelDef panels[] = {
        {"gamma", ranges.gamma_lo, ranges.gamma_hi, true,
         [](const DistortionSpec& s) { return s.gamma; }},
        {"snr_db", ranges.snr_lo, ranges.snr_hi, ranges.use_noise,
         [](const DistortionSpec& s) { return s.snr_db; }},
        {"quality", ranges.quality_lo, ranges.quality_hi, ranges.use_quality,
         [](const DistortionSpec& s) { return s.quality.value_or(0.0); }},
        {"scale", ranges.scale_lo, ranges.scale_hi, true,
         [](const DistortionSpec& s) { return s.scale; }},
    };
    for (const PanelDef& panel : panels) {
        if (!panel.enabled) continue;
        SensitivityCurve curve;
        curve.parameter = panel.name;
        curve.fpr_target = panel_fpr;
        curve.threshold = panel_tau;
        const double span = panel.hi - panel.lo;
        const int bins = span > 0 ? kSensitivityBins : 1;
        curve.points.resize(static_cast<std::size_t>(bins));
        for (int b = 0; b < bins; ++b) {
            auto& pt = curve.points[static_cast<std::size_t>(b)];
            pt.lo = panel.lo + span * b / bins;
            pt.hi = panel.lo + span * (b + 1) / bins;
            pt.mid = (pt.lo + pt.hi) / 2;
        }
        for (const SimilarPair& pair : report.similar) {
            const double v = panel.value(pair.spec);
            int b = span > 0 ? static_cast<int>((v - panel.lo) / span * bins) : 0;
            b = std::clamp(b, 0, bins - 1);
            auto& pt = curve.points[static_cast<std::size_t>(b)];
            pt.count += 1;
            pt.mean_similarity += pair.similarity;
            if (pair.similarity >= panel_tau) pt.tpr += 1.0;
        }
        for (auto& pt : curve.points) {
            if (pt.count > 0) {
                pt.mean_similarity /= static_cast<double>(pt.count);
                pt.tpr /= static_cast<double>(pt.count);
            }
        }
        report.curves.push_back(std::move(curve));
    }
    return report;
}

void write_report_json(const std::filesystem::path& path, const RobustnessReport& report) {
    nlohmann::json j;
    j["format"] = "hvh-robustness-report";
    j["version"] = 1;
    j["note"] =
        "compression distortion is a per-frame DCT-quantization surrogate, not a real codec";
    j["similar_pairs"] = report.roc.similar_count;
    j["different_pairs"] = report.roc.different_count;
    j["crossover_accuracy"] = report.roc.crossover_accuracy;
    j["crossover_threshold"] = report.roc.crossover_threshold;
    j["thresholds"] = report.roc.thresholds;
    j["tpr"] = report.roc.tpr;
    j["fpr"] = report.roc.fpr;
    j["tpr_at_fpr"] = nlohmann::json::array();
    for (const auto& [target, tpr] : report.roc.tpr_at_fpr) {
        j["tpr_at_fpr"].push_back({{"fpr_target", target}, {"tpr", tpr}});
    }
    j["warnings"] = report.roc.warnings;
    j["sensitivity"] = nlohmann::json::array();
    for (const SensitivityCurve& curve : report.curves) {
        nlohmann::json c;
        c["parameter"] = curve.parameter;
        c["fpr_target"] = curve.fpr_target;
        c["threshold"] = curve.threshold;
        c["points"] = nlohmann::json::array();
        for (const SensitivityPoint& pt : curve.points) {
            c["points"].push_back({{"lo", pt.lo},
                                   {"hi", pt.hi},
                                   {"mid", pt.mid},
                                   {"count", pt.count},
                                   {"mean_similarity", pt.mean_similarity},
                                   {"tpr", pt.tpr}});
        }
        j["sensitivity"].push_back(std::move(c));
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path.string());
}

void write_sensitivity_csvs(const std::filesystem::path& dir, const std::string& prefix,
                            const RobustnessReport& report) {
    for (const SensitivityCurve& curve : report.curves) {
        const auto path = dir / (prefix + "_" + curve.parameter + ".csv");
        std::ofstream out(path);
        if (!out) throw IoError("cannot open for writing: " + path.string());
        out << "parameter,bin_lo,bin_hi,bin_mid,count,mean_similarity,tpr_at_fpr_"
            << curve.fpr_target << "\n";
        for (const SensitivityPoint& pt : curve.points) {
            out << curve.parameter << "," << pt.lo << "," << pt.hi << "," << pt.mid << ","
                << pt.count << "," << pt.mean_similarity << "," << pt.tpr << "\n";
        }
        if (!out) throw IoError("failed writing " + path.string());
    }
}

}  // namespace hvh
