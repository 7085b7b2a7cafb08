// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero if
// any criterion fails. An optional argv[1] selects a single criterion by
// number.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "hvh/corpus.hpp"
#include "hvh/distortion.hpp"
#include "hvh/enc_pipeline.hpp"
#include "hvh/matcher.hpp"
#include "hvh/media_ingest.hpp"
#include "hvh/paillier.hpp"
#include "hvh/parallel.hpp"
#include "hvh/robustness.hpp"
#include "hvh/video_hash.hpp"

#include "../oracles.hpp"
#include "../test_support.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------------------
// 1. Paillier correctness: 1,000-case randomized suites at 512 bits plus the
//    hand vector; runtime < 30 s.
Check criterion_1() {
    Check c;
    const auto t0 = Clock::now();

    const auto toy = hvh::keypair_from_primes(5, 7);
    c.require(toy.pub.n == 35 && toy.pub.g == 36, "toy key construction");
    c.require(hvh::encrypt_with_nonce(4, 2, toy.pub).value == 88, "E(4; r=2) == 88");
    c.require(hvh::decrypt(hvh::Ciphertext{88}, toy.priv) == 4, "D(88) == 4");

    const auto kp = hvh::generate_keypair(512, 20260811);
    c.require(kp.pub.key_bits == 512, "512-bit modulus");
    hvh::Rng rng(1);
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const mpz_class m = rng.below(kp.pub.n);
        c.require(hvh::decrypt(hvh::encrypt(m, kp.pub, rng), kp.priv) == m,
                  "round trip case " + std::to_string(i));
    }
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const mpz_class m1 = rng.below(kp.pub.n), m2 = rng.below(kp.pub.n);
        const auto sum = hvh::homomorphic_add(hvh::encrypt(m1, kp.pub, rng),
                                              hvh::encrypt(m2, kp.pub, rng), kp.pub);
        c.require(hvh::decrypt(sum, kp.priv) == (m1 + m2) % kp.pub.n,
                  "additive case " + std::to_string(i));
    }
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const mpz_class m = rng.below(kp.pub.n);
        mpz_class s = rng.below(kp.pub.n);
        if (i % 2) s = -s;
        const auto scaled = hvh::scalar_multiply(hvh::encrypt(m, kp.pub, rng), s, kp.pub);
        mpz_class expected, prod = s * m;
        mpz_mod(expected.get_mpz_t(), prod.get_mpz_t(), kp.pub.n.get_mpz_t());
        c.require(hvh::decrypt(scaled, kp.priv) == expected,
                  "scalar case " + std::to_string(i));
    }

    const double dt = seconds_since(t0);
    c.require(dt < 30.0, "runtime " + std::to_string(dt) + "s exceeds 30s");
    if (c.ok) c.detail = "3000 randomized cases + hand vector in " + std::to_string(dt) + "s";
    return c;
}

// ---------------------------------------------------------------------------
// 2. Encrypted/plaintext equivalence for 20 seeded videos through the
//    three-stage file exchange at 512-bit keys, F=64; byte-identical .hvh,
//    runtime < 10 min.
Check criterion_2() {
    Check c;
    const auto t0 = Clock::now();

    const auto kp = hvh::generate_keypair(512, 77001);
    const hvh::SelectionParams params;  // F=64, B=8
    const hvh::TrustedZoneContext tz(kp, params);
    hvh::Rng rng(77002);

    testutil::TempDir dir("acceptance_c2");
    hvh::CorpusParams cp;
    cp.count = 20;
    cp.seed = 77003;
    const auto corpus = hvh::generate_corpus(cp);

    for (std::size_t i = 0; i < corpus.size() && c.ok; ++i) {
        const hvh::VideoStream& video = corpus[i];
        const auto plain_path = dir.path() / (video.source_id + ".plain.hvh");
        const auto enc_path = dir.path() / (video.source_id + ".enc.hvh");
        hvh::save_video_hash(plain_path, hvh::build_video_hash(video, params));

        // one trusted-zone -> server transfer, one server -> trusted-zone
        const auto prep = tz.prepare(video, rng, 0);
        const auto frames_path = dir.path() / (video.source_id + ".hef");
        const auto meta_path = dir.path() / (video.source_id + ".meta.json");
        const auto comps_path = dir.path() / (video.source_id + ".hcm");
        hvh::save_encrypted_frames(frames_path, prep.frames, kp.pub, params.block_grid);
        hvh::save_metadata(meta_path, prep.meta);

        int block_grid = 0;
        const auto frames = hvh::load_encrypted_frames(frames_path, kp.pub, &block_grid);
        hvh::Rng server_rng(0x5e4f + i);
        const auto comps =
            hvh::server::aggregate_video(frames, kp.pub, block_grid, server_rng, 0);
        hvh::save_components(comps_path, comps, kp.pub, params.resolution, block_grid);

        const auto enc = tz.finalize_video(hvh::load_metadata(meta_path),
                                           hvh::load_components(comps_path, kp.pub));
        hvh::save_video_hash(enc_path, enc);

        c.require(read_file_bytes(plain_path) == read_file_bytes(enc_path),
                  video.source_id + ": encrypted .hvh differs from plaintext .hvh");
    }

    const double dt = seconds_since(t0);
    c.require(dt < 600.0, "runtime " + std::to_string(dt) + "s exceeds 10 min");
    if (c.ok) c.detail = "20 videos byte-identical in " + std::to_string(dt) + "s";
    return c;
}

// ---------------------------------------------------------------------------
// 3. Matcher equals the exhaustive oracle on 500 short random pairs, and the
//    worked string example scores 6.
Check criterion_3() {
    Check c;
    const auto as_records = [](const std::string& s) {
        std::vector<hvh::KeyframeRecord> out;
        for (std::size_t i = 0; i < s.size(); ++i) {
            out.push_back(testutil::record(std::uint64_t{1} << (s[i] - 'A'), 0,
                                           static_cast<std::uint32_t>(i)));
        }
        return out;
    };
    hvh::MatchParams exact;
    exact.hash_threshold = 0;
    exact.drop_threshold = 0;
    const auto paper = hvh::compare_records(as_records("ABABACABBC"),
                                            as_records("ABACABACBBCA"), exact);
    c.require(paper.score == 6, "string example scored " + std::to_string(paper.score));

    std::mt19937_64 gen(33001);
    static constexpr std::uint64_t kAlphabet[] = {0x0, 0x3, 0xc, 0xff, 0xf0f0};
    auto random_records = [&gen](std::size_t max_len) {
        std::vector<hvh::KeyframeRecord> out;
        const std::size_t len = gen() % (max_len + 1);
        std::uint32_t src = 0;
        for (std::size_t i = 0; i < len; ++i) {
            const auto dropped = static_cast<std::uint32_t>(gen() % 9);
            src += dropped + 1;
            out.push_back(testutil::record(kAlphabet[gen() % 5], dropped, src));
        }
        return out;
    };
    for (int i = 0; i < 500 && c.ok; ++i) {
        const auto a = random_records(12);
        const auto b = random_records(12);
        hvh::MatchParams p;
        p.hash_threshold = static_cast<int>(gen() % 5);
        p.drop_threshold = static_cast<int>(gen() % 6);
        const auto got = hvh::compare_records(a, b, p);
        const auto want = oracle::brute_force_match(a, b, p);
        c.require(got.score == want.score,
                  "case " + std::to_string(i) + ": score " + std::to_string(got.score) +
                      " != oracle " + std::to_string(want.score));
        c.require(got.alignment.size() == want.length &&
                      (want.length == 0 || (got.alignment.front().first == want.start_a &&
                                            got.alignment.front().second == want.start_b)),
                  "case " + std::to_string(i) + ": alignment mismatch");
    }
    if (c.ok) c.detail = "500 oracle cases + string example = 6";
    return c;
}

// ---------------------------------------------------------------------------
// 4. Classical-LCS reduction on 1,000 random strings.
Check criterion_4() {
    Check c;
    std::mt19937_64 gen(44001);
    hvh::MatchParams exact;
    exact.hash_threshold = 0;
    exact.drop_threshold = 0;
    for (int i = 0; i < 1000 && c.ok; ++i) {
        const int alpha = 2 + static_cast<int>(gen() % 5);
        auto make = [&](std::size_t max_len) {
            std::string s;
            const std::size_t len = gen() % (max_len + 1);
            for (std::size_t k = 0; k < len; ++k) {
                s.push_back(static_cast<char>('A' + gen() % alpha));
            }
            return s;
        };
        const std::string sa = make(30), sb = make(30);
        std::vector<hvh::KeyframeRecord> ra, rb;
        for (std::size_t k = 0; k < sa.size(); ++k) {
            ra.push_back(testutil::record(std::uint64_t{1} << (sa[k] - 'A'), 0,
                                          static_cast<std::uint32_t>(k)));
        }
        for (std::size_t k = 0; k < sb.size(); ++k) {
            rb.push_back(testutil::record(std::uint64_t{1} << (sb[k] - 'A'), 0,
                                          static_cast<std::uint32_t>(k)));
        }
        const auto got = hvh::compare_records(ra, rb, exact);
        const auto want = oracle::classic_lcs_length(sa, sb);
        c.require(got.score == static_cast<std::int64_t>(want),
                  "case " + std::to_string(i) + ": " + std::to_string(got.score) +
                      " != " + std::to_string(want));
    }
    if (c.ok) c.detail = "1000 string pairs match the textbook DP";
    return c;
}

// ---------------------------------------------------------------------------
// 5. Frame-count identity over 10,000 generated sequences (and implicitly on
//    every corpus video built elsewhere; build_video_hash checks it too).
Check criterion_5() {
    Check c;
    hvh::SelectionParams p;
    p.resolution = 16;
    p.block_grid = 4;
    p.keyframe_distance_threshold = 4;

    std::mt19937_64 gen(55001);
    auto blank = [&](std::uint32_t i) {
        return testutil::as_preprocessed(testutil::constant_pixels(16, 90), i);
    };
    auto patterned = [&](std::uint32_t i, bool flip) {
        hvh::PixelMatrix px(16, 16);
        for (int r = 0; r < 16; ++r)
            for (int cc = 0; cc < 16; ++cc) px(r, cc) = ((cc < 8) != flip) ? 220 : 30;
        return testutil::as_preprocessed(std::move(px), i);
    };

    for (int trial = 0; trial < 10000 && c.ok; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 30);
        std::vector<hvh::PreprocessedFrame> frames;
        for (int i = 0; i < n; ++i) {
            switch (gen() % 4) {
                case 0: frames.push_back(blank(static_cast<std::uint32_t>(i))); break;
                case 1: frames.push_back(patterned(static_cast<std::uint32_t>(i), false)); break;
                case 2: frames.push_back(patterned(static_cast<std::uint32_t>(i), true)); break;
                default:
                    frames.push_back(testutil::as_preprocessed(
                        testutil::random_pixels(gen, 16, 16), static_cast<std::uint32_t>(i)));
            }
        }
        const auto sel = hvh::select_keyframes(frames, p);
        std::uint64_t accounted = sel.blank_count + sel.records.size() + sel.trailing_drops;
        for (const auto& rec : sel.records) accounted += rec.dropped_before;
        c.require(accounted == static_cast<std::uint64_t>(n),
                  "sequence " + std::to_string(trial) + ": " + std::to_string(accounted) +
                      " accounted of " + std::to_string(n));
    }
    if (c.ok) c.detail = "identity holds on 10000 sequences";
    return c;
}

// ---------------------------------------------------------------------------
// 6. Desk-scale robustness: crossover accuracy >= 0.90 under mild
//    distortions on the seeded 200-video corpus, identity-distortion
//    similarity exactly 1.0, and ROC monotonicity including the full
//    distortion ranges. Headline accuracies from web-scale video corpora
//    are out of reach at this corpus size and are not targets.
Check criterion_6() {
    Check c;
    const auto t0 = Clock::now();

    hvh::CorpusParams cp;
    cp.count = 200;
    cp.seed = 66001;
    const auto corpus = hvh::generate_corpus(cp);
    const hvh::SelectionParams sel;
    const hvh::MatchParams match;

    for (const auto& v : corpus) {
        hvh::check_frame_count_identity(hvh::build_video_hash(v, sel));  // criterion 5 rider
    }

    // identity distortion: similarity exactly 1.0 for every pair
    const auto identity = hvh::run_robustness_suite(corpus, 1, sel, match,
                                                    hvh::DistortionRanges::identity(), 66002);
    for (const auto& pair : identity.similar) {
        c.require(pair.similarity == 1.0, "identity variant similarity " +
                                              std::to_string(pair.similarity) + " != 1.0");
    }

    // mild distortions: crossover accuracy >= 0.90
    const auto mild = hvh::run_robustness_suite(corpus, 10, sel, match,
                                                hvh::DistortionRanges::mild(), 66003);
    c.require(mild.roc.crossover_accuracy >= 0.90,
              "mild crossover " + std::to_string(mild.roc.crossover_accuracy) + " < 0.90");

    auto check_monotone = [&](const hvh::RocReport& roc, const std::string& tag) {
        for (std::size_t i = 1; i < roc.thresholds.size(); ++i) {
            c.require(roc.tpr[i] <= roc.tpr[i - 1], tag + ": TPR not monotone");
            c.require(roc.fpr[i] <= roc.fpr[i - 1], tag + ": FPR not monotone");
        }
        c.require(roc.tpr.front() == 1.0, tag + ": TPR(0) != 1");
    };
    check_monotone(mild.roc, "mild");

    // full distortion ranges on a subset: ROC must stay monotone
    hvh::CorpusParams fullcp;
    fullcp.count = 80;
    fullcp.seed = 66004;
    const auto full_corpus = hvh::generate_corpus(fullcp);
    const auto full = hvh::run_robustness_suite(full_corpus, 10, sel, match,
                                                hvh::DistortionRanges{}, 66005);
    check_monotone(full.roc, "full");

    const double dt = seconds_since(t0);
    c.require(dt < 1200.0, "runtime " + std::to_string(dt) + "s exceeds 20 min");
    if (c.ok) {
        std::ostringstream os;
        os << "mild crossover " << mild.roc.crossover_accuracy
           << ", identity exact, ROC monotone (" << dt << "s)";
        c.detail = os.str();
    }
    return c;
}

// ---------------------------------------------------------------------------
// 7. Sensitivity orderings, no magnitude targets. Measured on isolated
//    per-distortion sweeps with a paired design (every video contributes to
//    every bucket): the four-way joint suite cannot resolve the small gamma
//    asymmetry at desk scale (measured joint-bucket gap -0.003 +- 0.014 over
//    6,400 pairs), while the isolated sweep is deterministic and decisive.
Check criterion_7() {
    Check c;
    hvh::CorpusParams cp;
    cp.count = 80;
    cp.seed = 66004;
    const auto corpus = hvh::generate_corpus(cp);
    const hvh::SelectionParams sel;
    const hvh::MatchParams match;

    std::vector<hvh::VideoHash> originals(corpus.size());
    hvh::parallel_for(corpus.size(), 0, [&](std::size_t i) {
        originals[i] = hvh::build_video_hash(corpus[i], sel);
    });

    auto similarity_under = [&](std::size_t i, const hvh::DistortionSpec& spec) {
        const auto variant = hvh::apply_distortion(corpus[i], spec);
        return hvh::similarity(
            hvh::compare(originals[i], hvh::build_video_hash(variant, sel), match));
    };

    // gamma-only tail buckets, deterministic (no randomness in this sweep)
    const double gamma_lo_grid[] = {0.50, 0.55, 0.60, 0.65};
    const double gamma_hi_grid[] = {1.85, 1.90, 1.95, 2.00};
    std::vector<double> lo_acc(corpus.size(), 0.0), hi_acc(corpus.size(), 0.0);
    hvh::parallel_for(corpus.size(), 0, [&](std::size_t i) {
        for (double gamma : gamma_lo_grid) {
            hvh::DistortionSpec spec;
            spec.gamma = gamma;
            lo_acc[i] += similarity_under(i, spec);
        }
        for (double gamma : gamma_hi_grid) {
            hvh::DistortionSpec spec;
            spec.gamma = gamma;
            hi_acc[i] += similarity_under(i, spec);
        }
    });
    double gamma_lo_mean = 0.0, gamma_hi_mean = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        gamma_lo_mean += lo_acc[i] / 4.0;
        gamma_hi_mean += hi_acc[i] / 4.0;
    }
    gamma_lo_mean /= static_cast<double>(corpus.size());
    gamma_hi_mean /= static_cast<double>(corpus.size());
    c.require(gamma_hi_mean <= gamma_lo_mean,
              "gamma asymmetry: bucket@2.0 mean " + std::to_string(gamma_hi_mean) +
                  " > bucket@0.5 mean " + std::to_string(gamma_lo_mean));

    // noise-only buckets below and just above 25 dB, seeded trials
    const std::vector<std::pair<std::string, std::vector<double>>> snr_buckets = {
        {"[15,20)", {16.0, 18.0}}, {"[20,25)", {21.0, 23.0}}, {"[25,30)", {26.0, 28.0}}};
    std::vector<double> snr_means;
    for (const auto& [label, grid] : snr_buckets) {
        std::vector<double> acc(corpus.size(), 0.0);
        hvh::parallel_for(corpus.size(), 0, [&](std::size_t i) {
            for (double snr : grid) {
                for (int trial = 0; trial < 2; ++trial) {
                    hvh::DistortionSpec spec;
                    spec.snr_db = snr;
                    spec.seed = i * 1000 + static_cast<std::uint64_t>(snr) * 10 +
                                static_cast<std::uint64_t>(trial);
                    acc[i] += similarity_under(i, spec);
                }
            }
        });
        double mean = 0.0;
        for (double v : acc) mean += v / (2.0 * static_cast<double>(grid.size()));
        snr_means.push_back(mean / static_cast<double>(corpus.size()));
    }
    for (std::size_t b = 1; b < snr_means.size(); ++b) {
        c.require(snr_means[b - 1] <= snr_means[b],
                  "SNR ordering: mean@" + snr_buckets[b - 1].first + "=" +
                      std::to_string(snr_means[b - 1]) + " > mean@" + snr_buckets[b].first +
                      "=" + std::to_string(snr_means[b]));
    }

    if (c.ok) {
        std::ostringstream os;
        os << "gamma bucket means " << gamma_hi_mean << " (g=2) <= " << gamma_lo_mean
           << " (g=0.5); SNR means " << snr_means[0] << " <= " << snr_means[1]
           << " <= " << snr_means[2];
        c.detail = os.str();
    }
    return c;
}

// ---------------------------------------------------------------------------
// 8. Efficiency sanity: plaintext hash of a 3 s / 30 fps video in <= 1 s and
//    the encrypted pipeline on the same video in <= 60 s at 512-bit keys.
Check criterion_8() {
    Check c;
    const auto video = hvh::generate_video(88001, 90, 30.0, 96, 96, "efficiency");
    const hvh::SelectionParams params;

    const auto t_plain = Clock::now();
    const auto plain = hvh::build_video_hash(video, params);
    const double plain_s = seconds_since(t_plain);
    c.require(plain_s <= 1.0, "plaintext hashing took " + std::to_string(plain_s) + "s > 1s");

    const auto kp = hvh::generate_keypair(512, 88002);
    const hvh::TrustedZoneContext tz(kp, params);
    hvh::Rng rng(88003);
    const auto t_enc = Clock::now();
    const auto prep = tz.prepare(video, rng, 0);
    const auto comps = hvh::server::aggregate_video(prep.frames, kp.pub, params.block_grid,
                                                    rng, 0);
    const auto enc = tz.finalize_video(prep.meta, comps);
    const double enc_s = seconds_since(t_enc);
    c.require(enc_s <= 60.0, "encrypted pipeline took " + std::to_string(enc_s) + "s > 60s");
    c.require(hvh::serialize(enc) == hvh::serialize(plain), "pipelines disagreed");
    if (c.ok) {
        std::ostringstream os;
        os << "plaintext " << plain_s << "s (" << prep.frames.size() << " keyframes), encrypted "
           << enc_s << "s";
        c.detail = os.str();
    }
    return c;
}

// ---------------------------------------------------------------------------
// 9. Format stability: 1,000 random round-trips plus the checked-in golden
//    file parsing identically.
Check criterion_9(const std::filesystem::path& golden_path) {
    Check c;
    std::mt19937_64 gen(99001);
    for (int trial = 0; trial < 1000 && c.ok; ++trial) {
        hvh::VideoHash h;
        h.header.source_id = "rt-" + std::to_string(trial);
        h.header.frame_rate = 1.0 + static_cast<double>(gen() % 60);
        h.header.resolution = 64;
        h.header.block_grid = 8;
        const int n = static_cast<int>(gen() % 20);
        std::uint32_t src = 0, spent = 0;
        for (int i = 0; i < n; ++i) {
            const auto dropped = static_cast<std::uint32_t>(gen() % 0xffff);
            src += dropped + 1;
            h.records.push_back(testutil::record(gen(), dropped, src));
            spent += dropped + 1;
        }
        h.header.blank_count = static_cast<std::uint32_t>(gen() % 100);
        h.header.trailing_drops = static_cast<std::uint32_t>(gen() % 100);
        h.header.total_frames = spent + h.header.blank_count + h.header.trailing_drops;
        h.header.keyframe_percentage = hvh::keyframe_percentage_of(
            h.records.size(), h.header.total_frames, h.header.blank_count);
        const auto bytes = hvh::serialize(h);
        c.require(hvh::deserialize(bytes) == h, "round trip " + std::to_string(trial));
    }

    const auto bytes = read_file_bytes(golden_path);
    c.require(!bytes.empty(), "golden file missing: " + golden_path.string());
    if (!bytes.empty()) {
        const hvh::VideoHash golden = hvh::deserialize(bytes);
        c.require(hvh::serialize(golden) == bytes, "golden re-serialization differs");
        // pinned field values, frozen when the golden file was created
        c.require(golden.header.source_id == "golden-0001", "golden source_id");
        c.require(golden.header.total_frames == 90, "golden total_frames");
        c.require(golden.header.resolution == 64 && golden.header.block_grid == 8,
                  "golden parameters");
        c.require(golden.records.size() == 10, "golden record count " +
                                                   std::to_string(golden.records.size()));
        if (golden.records.size() == 10) {
            c.require(golden.records.front().hash.bits == 0xc1c3870f0f1e3e7cull,
                      "golden first record bits");
            c.require(golden.records.back().source_index == 88, "golden last source index");
        }
    }
    if (c.ok) c.detail = "1000 round trips + golden file stable";
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    const std::filesystem::path golden =
        argc > 2 ? argv[2] : std::filesystem::path(HVH_GOLDEN_FILE);

    struct Row {
        int id;
        std::string name;
        Check result;
    };
    std::vector<Row> rows;
    auto run_criterion = [&](int id, const std::string& name, auto&& fn) {
        if (only != 0 && only != id) return;
        const auto t0 = Clock::now();
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        rows.push_back({id, name, c});
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "): "
                  << c.detail << " [" << seconds_since(t0) << "s]\n"
                  << std::flush;
    };

    run_criterion(1, "paillier correctness", criterion_1);
    run_criterion(2, "encrypted/plaintext equivalence", criterion_2);
    run_criterion(3, "matcher oracle equivalence", criterion_3);
    run_criterion(4, "classical LCS reduction", criterion_4);
    run_criterion(5, "selection bookkeeping", criterion_5);
    run_criterion(6, "desk-scale robustness", criterion_6);
    run_criterion(7, "sensitivity orderings", criterion_7);
    run_criterion(8, "efficiency sanity", criterion_8);
    run_criterion(9, "format stability", [&] { return criterion_9(golden); });

    int failures = 0;
    for (const Row& row : rows) failures += row.result.ok ? 0 : 1;
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED")
              << " (" << rows.size() << " run)\n";
    return failures == 0 ? 0 : 1;
}
