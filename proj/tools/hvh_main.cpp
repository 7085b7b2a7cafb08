// hvh: perceptual video hashing in plaintext and Paillier-encrypted
// domains. Subcommands cover key generation, hashing, the split
// trusted-zone/server encrypted pipeline, comparison, indexing, and the
// robustness bench.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <nlohmann/json.hpp>

#include "hvh/corpus.hpp"
#include "hvh/enc_pipeline.hpp"
#include "hvh/errors.hpp"
#include "hvh/hash_index.hpp"
#include "hvh/io_util.hpp"
#include "hvh/matcher.hpp"
#include "hvh/media_ingest.hpp"
#include "hvh/paillier.hpp"
#include "hvh/robustness.hpp"
#include "hvh/video_hash.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
    int resolution = 64;
    int block_grid = 8;
    double blank_std = 4.0;
    int keyframe_threshold = 16;
    int hash_threshold = 8;
    int drop_threshold = 5;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 0;
    bool json = false;
    bool print_config = false;

    hvh::SelectionParams selection() const {
        hvh::SelectionParams p;
        p.resolution = resolution;
        p.block_grid = block_grid;
        p.blank_std_threshold = blank_std;
        p.keyframe_distance_threshold = keyframe_threshold;
        p.validate();
        return p;
    }

    hvh::MatchParams matching() const {
        hvh::MatchParams p;
        p.hash_threshold = hash_threshold;
        p.drop_threshold = drop_threshold;
        p.validate(block_grid * block_grid);
        return p;
    }

    std::optional<std::uint64_t> seed_opt() const {
        if (seed_set) return seed;
        return std::nullopt;
    }

    void print(std::ostream& os) const {
        os << "resolution=" << resolution << "\n"
           << "block-grid=" << block_grid << "\n"
           << "blank-std=" << blank_std << "\n"
           << "keyframe-threshold=" << keyframe_threshold << "\n"
           << "hash-threshold=" << hash_threshold << "\n"
           << "drop-threshold=" << drop_threshold << "\n"
           << "seed=" << (seed_set ? std::to_string(seed) : std::string("(entropy)")) << "\n"
           << "threads=" << threads << "\n"
           << "json=" << (json ? "true" : "false") << "\n";
    }
};

std::vector<std::uint8_t> read_stream_bytes(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

hvh::VideoStream load_input_video(const std::string& input, double fps,
                                  const std::string& id_flag) {
    std::string id = id_flag;
    if (input == "-") {
        if (id.empty()) id = "stdin";
        return hvh::parse_y4m(read_stream_bytes(std::cin), id);
    }
    const fs::path path(input);
    if (id.empty()) id = path.stem().string();
    if (fs::is_directory(path)) {
        hvh::VideoStream s = hvh::load_frame_directory(path, fps);
        s.source_id = id;
        return s;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hvh::IoError("cannot read " + input);
    return hvh::parse_y4m(read_stream_bytes(in), id);
}

json hash_summary(const hvh::VideoHash& h, const std::string& out_path) {
    json j;
    j["source_id"] = h.header.source_id;
    j["total_frames"] = h.header.total_frames;
    j["frame_rate"] = h.header.frame_rate;
    j["keyframes"] = h.records.size();
    j["blank_count"] = h.header.blank_count;
    j["trailing_drops"] = h.header.trailing_drops;
    j["keyframe_percentage"] = h.header.keyframe_percentage;
    j["resolution"] = h.header.resolution;
    j["block_grid"] = h.header.block_grid;
    if (!out_path.empty()) j["out"] = out_path;
    return j;
}

void print_hash_summary(const hvh::VideoHash& h) {
    std::cout << "source_id           " << h.header.source_id << "\n"
              << "total_frames        " << h.header.total_frames << "\n"
              << "frame_rate          " << h.header.frame_rate << "\n"
              << "keyframes           " << h.records.size() << "\n"
              << "blank_count         " << h.header.blank_count << "\n"
              << "trailing_drops      " << h.header.trailing_drops << "\n"
              << "keyframe_percentage " << h.header.keyframe_percentage << "\n"
              << "resolution          " << h.header.resolution << "\n"
              << "block_grid          " << h.header.block_grid << "\n";
}

int run_keygen(const GlobalOptions& g, unsigned bits, const std::string& out_dir) {
    const auto kp = hvh::generate_keypair(bits, g.seed_opt());
    fs::create_directories(out_dir);
    const fs::path pub = fs::path(out_dir) / "paillier_public.key";
    const fs::path priv = fs::path(out_dir) / "paillier_private.key";
    hvh::save_public_key(pub, kp.pub);
    hvh::save_private_key(priv, kp.priv);
    if (g.json) {
        json j;
        j["public_key"] = pub.string();
        j["private_key"] = priv.string();
        j["key_bits"] = bits;
        j["fingerprint"] = hvh::key_fingerprint(kp.pub);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "wrote " << pub.string() << "\n"
                  << "wrote " << priv.string() << "\n";
    }
    return 0;
}

int run_hash(const GlobalOptions& g, const std::string& input, const std::string& out,
             const std::string& id, double fps) {
    const hvh::VideoStream stream = load_input_video(input, fps, id);
    const hvh::VideoHash h = hvh::build_video_hash(stream, g.selection());
    if (!out.empty()) hvh::save_video_hash(out, h);
    if (g.json) {
        std::cout << hash_summary(h, out).dump(2) << "\n";
    } else {
        print_hash_summary(h);
    }
    return 0;
}

int run_tz_prepare(const GlobalOptions& g, const std::string& input,
                   const std::string& public_key, const std::string& private_key,
                   const std::string& out_frames, const std::string& out_meta,
                   const std::string& id, double fps) {
    hvh::PaillierKeyPair kp;
    kp.pub = hvh::load_public_key(public_key);
    kp.priv = hvh::load_private_key(private_key);
    const hvh::TrustedZoneContext tz(kp, g.selection());
    hvh::Rng rng(g.seed_opt());

    const hvh::VideoStream stream = load_input_video(input, fps, id);
    const hvh::TrustedZonePrepared prep = tz.prepare(stream, rng, g.threads);
    hvh::save_encrypted_frames(out_frames, prep.frames, kp.pub, g.block_grid);
    hvh::save_metadata(out_meta, prep.meta);

    if (g.json) {
        json j;
        j["encrypted_frames"] = out_frames;
        j["metadata"] = out_meta;
        j["keyframes"] = prep.frames.size();
        j["total_frames"] = prep.meta.total_frames;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "wrote " << out_frames << " (" << prep.frames.size()
                  << " encrypted keyframes)\n"
                  << "wrote " << out_meta << "\n";
    }
    return 0;
}

int run_server_aggregate(const GlobalOptions& g, const std::string& frames_path,
                         const std::string& public_key, const std::string& out) {
    const auto pk = hvh::load_public_key(public_key);
    int block_grid = 0;
    const auto frames = hvh::load_encrypted_frames(frames_path, pk, &block_grid);
    hvh::Rng rng(g.seed_opt());
    const auto comps = hvh::server::aggregate_video(frames, pk, block_grid, rng, g.threads);
    const int resolution = frames.empty() ? g.resolution : frames.front().resolution;
    hvh::save_components(out, comps, pk, resolution, block_grid);
    if (g.json) {
        json j;
        j["components"] = out;
        j["frames"] = comps.size();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "wrote " << out << " (" << comps.size() << " component sets)\n";
    }
    return 0;
}

int run_tz_finalize(const GlobalOptions& g, const std::string& components_path,
                    const std::string& meta_path, const std::string& public_key,
                    const std::string& private_key, const std::string& out) {
    hvh::PaillierKeyPair kp;
    kp.pub = hvh::load_public_key(public_key);
    kp.priv = hvh::load_private_key(private_key);
    const hvh::TrustedZoneContext tz(kp, g.selection());

    const auto comps = hvh::load_components(components_path, kp.pub);
    const auto meta = hvh::load_metadata(meta_path);
    const hvh::VideoHash h = tz.finalize_video(meta, comps);
    hvh::save_video_hash(out, h);
    if (g.json) {
        std::cout << hash_summary(h, out).dump(2) << "\n";
    } else {
        print_hash_summary(h);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int run_compare(const GlobalOptions& g, const std::string& a_path, const std::string& b_path) {
    const hvh::VideoHash a = hvh::load_video_hash(a_path);
    const hvh::VideoHash b = hvh::load_video_hash(b_path);
    const hvh::MatchResult r = hvh::compare(a, b, g.matching());
    if (g.json) {
        json j;
        j["a"] = a.header.source_id;
        j["b"] = b.header.source_id;
        j["score"] = r.score;
        j["similarity"] = hvh::similarity(r);
        j["self_score_a"] = r.self_score_a;
        j["self_score_b"] = r.self_score_b;
        j["hash_threshold"] = g.hash_threshold;
        j["drop_threshold"] = g.drop_threshold;
        j["alignment"] = json::array();
        for (const auto& [i, k] : r.alignment) j["alignment"].push_back({i, k});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "score       " << r.score << "\n"
                  << "similarity  " << hvh::similarity(r) << "\n"
                  << "self scores " << r.self_score_a << " / " << r.self_score_b << "\n"
                  << "alignment   ";
        for (const auto& [i, k] : r.alignment) std::cout << "(" << i << "," << k << ") ";
        std::cout << "\n";
    }
    return 0;
}

int run_index_add(const GlobalOptions&, const std::string& index_path,
                  const std::vector<std::string>& hash_paths) {
    hvh::HashIndex idx = hvh::HashIndex::open_or_create(index_path);
    for (const std::string& p : hash_paths) {
        idx.add(hvh::load_video_hash(p));
    }
    std::cout << "index " << index_path << " now holds " << idx.entries().size()
              << " hashes\n";
    return 0;
}

int run_index_query(const GlobalOptions& g, const std::string& index_path,
                    const std::string& query_path, std::int64_t min_score) {
    const hvh::HashIndex idx = hvh::HashIndex::open(index_path);
    const hvh::VideoHash q = hvh::load_video_hash(query_path);
    const auto hits = idx.query(q, min_score, g.matching());
    if (g.json) {
        json j;
        j["query"] = q.header.source_id;
        j["min_score"] = min_score;
        j["hits"] = json::array();
        for (const auto& hit : hits) {
            j["hits"].push_back({{"source_id", hit.source_id},
                                 {"score", hit.result.score},
                                 {"similarity", hvh::similarity(hit.result)}});
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& hit : hits) {
            std::cout << hit.source_id << "  score=" << hit.result.score
                      << "  similarity=" << hvh::similarity(hit.result) << "\n";
        }
        if (hits.empty()) std::cout << "(no hits at min score " << min_score << ")\n";
    }
    return 0;
}

int run_bench(const GlobalOptions& g, const std::string& out_dir, int count, int variants,
              const std::string& ranges_name, const std::string& emit_corpus) {
    hvh::CorpusParams cp;
    cp.count = count;
    cp.seed = g.seed_set ? g.seed : 0;
    const auto corpus = hvh::generate_corpus(cp);

    if (!emit_corpus.empty()) {
        fs::create_directories(emit_corpus);
        for (const auto& v : corpus) {
            const auto bytes = hvh::serialize_y4m(v, hvh::Y4mChroma::kC420);
            std::ofstream out(fs::path(emit_corpus) / (v.source_id + ".y4m"),
                              std::ios::binary);
            out.write(reinterpret_cast<const char*>(bytes.data()),
                      static_cast<std::streamsize>(bytes.size()));
        }
    }

    hvh::DistortionRanges ranges;
    if (ranges_name == "mild") {
        ranges = hvh::DistortionRanges::mild();
    } else if (ranges_name == "identity") {
        ranges = hvh::DistortionRanges::identity();
    }
    const auto report =
        hvh::run_robustness_suite(corpus, variants, g.selection(), g.matching(), ranges,
                                  hvh::mix_seed(cp.seed ^ 0xb001ull), g.threads);

    fs::create_directories(out_dir);
    hvh::write_report_json(fs::path(out_dir) / "report.json", report);
    hvh::write_sensitivity_csvs(out_dir, "sensitivity", report);

    std::cout << "similar pairs      " << report.roc.similar_count << "\n"
              << "different pairs    " << report.roc.different_count << "\n"
              << "crossover accuracy " << report.roc.crossover_accuracy << "\n"
              << "report             " << (fs::path(out_dir) / "report.json").string() << "\n";
    for (const auto& w : report.roc.warnings) std::cout << "warning: " << w << "\n";
    return 0;
}

int run_inspect(const GlobalOptions& g, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hvh::IoError("cannot read " + path);
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    in.close();
    const std::string tag(magic, 4);

    if (tag == "HVH1") {
        const hvh::VideoHash h = hvh::load_video_hash(path);
        if (g.json) {
            json j = hash_summary(h, "");
            j["format"] = "video-hash";
            j["records"] = json::array();
            for (const auto& r : h.records) {
                j["records"].push_back({{"source_index", r.source_index},
                                        {"dropped_before", r.dropped_before},
                                        {"bits", r.hash.bits}});
            }
            std::cout << j.dump(2) << "\n";
        } else {
            print_hash_summary(h);
        }
        return 0;
    }
    if (tag == "HVX1") {
        const hvh::HashIndex idx = hvh::HashIndex::open(path);
        if (g.json) {
            json j;
            j["format"] = "hash-index";
            j["entries"] = json::array();
            for (const auto& [id, h] : idx.entries()) {
                j["entries"].push_back({{"source_id", id}, {"keyframes", h.records.size()}});
            }
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "index with " << idx.entries().size() << " entries\n";
            for (const auto& [id, h] : idx.entries()) {
                std::cout << "  " << id << " (" << h.records.size() << " keyframes)\n";
            }
        }
        return 0;
    }
    if (tag == "HEF1" || tag == "HCM1") {
        std::ifstream raw(path, std::ios::binary);
        const auto bytes = read_stream_bytes(raw);
        hvh::io::Reader rd(bytes, path);
        rd.take(4);
        const auto version = rd.u16();
        const auto resolution = rd.u16();
        const auto block_grid = rd.u16();
        const auto fingerprint = rd.u64();
        rd.u32();
        const auto frames = rd.u32();
        if (g.json) {
            json j;
            j["format"] = (tag == "HEF1") ? "encrypted-frames" : "hash-components";
            j["version"] = version;
            j["resolution"] = resolution;
            j["block_grid"] = block_grid;
            j["key_fingerprint"] = fingerprint;
            j["frames"] = frames;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << ((tag == "HEF1") ? "encrypted frames" : "hash components")
                      << ": version " << version << ", F=" << resolution
                      << ", B=" << block_grid << ", frames=" << frames << ", key fp "
                      << fingerprint << "\n";
        }
        return 0;
    }
    if (tag == "hvh-") {
        try {
            const auto pk = hvh::load_public_key(path);
            if (g.json) {
                json j;
                j["format"] = "paillier-public-key";
                j["key_bits"] = pk.key_bits;
                j["fingerprint"] = hvh::key_fingerprint(pk);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "paillier public key, " << pk.key_bits << " bits, fingerprint "
                          << hvh::key_fingerprint(pk) << "\n";
            }
            return 0;
        } catch (const hvh::Error&) {
            const auto sk = hvh::load_private_key(path);
            hvh::PaillierPublicKey pk;
            pk.n = sk.n;
            pk.g = sk.n + 1;
            pk.n_squared = sk.n * sk.n;
            pk.key_bits = static_cast<unsigned>(mpz_sizeinbase(sk.n.get_mpz_t(), 2));
            if (g.json) {
                json j;
                j["format"] = "paillier-private-key";
                j["key_bits"] = pk.key_bits;
                j["fingerprint"] = hvh::key_fingerprint(pk);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "paillier private key, " << pk.key_bits
                          << " bits, fingerprint " << hvh::key_fingerprint(pk) << "\n";
            }
            return 0;
        }
    }
    throw hvh::ParseError(path + ": unrecognized file format (magic \"" + tag + "\")", 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perceptual video hashing in plaintext and Paillier-encrypted domains"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global options may appear after a subcommand
    app.set_config("--config", "", "flat key=value configuration file");
    app.allow_config_extras(false);

    GlobalOptions g;
    app.add_option("--resolution", g.resolution, "pre-processing resolution F (frames become FxF)")
        ->capture_default_str();
    app.add_option("--block-grid", g.block_grid, "hash block grid B (K = B*B bits per frame)")
        ->capture_default_str();
    app.add_option("--blank-std", g.blank_std, "blank-frame standard-deviation threshold")
        ->capture_default_str();
    app.add_option("--keyframe-threshold", g.keyframe_threshold,
                   "keyframe gating distance in hash bits")
        ->capture_default_str();
    app.add_option("--hash-threshold", g.hash_threshold, "match condition: max hash distance")
        ->capture_default_str();
    app.add_option("--drop-threshold", g.drop_threshold,
                   "match condition: max dropped-count difference")
        ->capture_default_str();
    auto* seed_opt = app.add_option("--seed", g.seed, "seed for all randomness (omit for entropy)");
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_flag("--json", g.json, "machine-readable JSON on stdout");
    app.add_flag("--print-config", g.print_config, "echo the effective configuration and exit");

    // keygen
    auto* keygen = app.add_subcommand("keygen", "generate a Paillier key pair");
    unsigned bits = 2048;
    std::string out_dir = "keys";
    keygen->add_option("--bits", bits, "modulus size in bits")->capture_default_str();
    keygen->add_option("--out", out_dir, "output directory")->capture_default_str();

    // hash
    auto* hash = app.add_subcommand("hash", "hash a video (Y4M file, '-' for stdin, or PGM directory)");
    std::string hash_input, hash_out, hash_id;
    double hash_fps = 30.0;
    hash->add_option("input", hash_input, "input video")->required();
    hash->add_option("--out", hash_out, "write the .hvh hash file here");
    hash->add_option("--id", hash_id, "source id (default: input file stem)");
    hash->add_option("--fps", hash_fps, "frame rate for PGM directories")->capture_default_str();

    // hash-enc with three stages
    auto* hash_enc = app.add_subcommand("hash-enc", "encrypted-domain hashing, split at the trusted-zone boundary");
    hash_enc->require_subcommand(1);

    auto* prep = hash_enc->add_subcommand("tz-prepare",
                                          "trusted zone: select, preprocess, encrypt");
    std::string prep_input, prep_pub, prep_priv, prep_frames = "video.hef",
                            prep_meta = "video.meta.json", prep_id;
    double prep_fps = 30.0;
    prep->add_option("input", prep_input, "input video")->required();
    prep->add_option("--public-key", prep_pub, "Paillier public key file")->required();
    prep->add_option("--private-key", prep_priv, "Paillier private key file (stays in the zone)")
        ->required();
    prep->add_option("--out-frames", prep_frames, "encrypted frames output")->capture_default_str();
    prep->add_option("--out-meta", prep_meta, "plaintext metadata output")->capture_default_str();
    prep->add_option("--id", prep_id, "source id (default: input file stem)");
    prep->add_option("--fps", prep_fps, "frame rate for PGM directories")->capture_default_str();

    auto* agg = hash_enc->add_subcommand("server-aggregate",
                                         "untrusted server: homomorphic hash aggregation");
    std::string agg_frames, agg_pub, agg_out = "video.hcm";
    agg->add_option("frames", agg_frames, "encrypted frames (.hef)")->required();
    agg->add_option("--public-key", agg_pub, "Paillier public key file")->required();
    agg->add_option("--out", agg_out, "components output")->capture_default_str();

    auto* fin = hash_enc->add_subcommand("tz-finalize",
                                         "trusted zone: decrypt components to sign bits");
    std::string fin_comps, fin_meta, fin_pub, fin_priv, fin_out = "video.hvh";
    fin->add_option("components", fin_comps, "components (.hcm)")->required();
    fin->add_option("--meta", fin_meta, "plaintext metadata from tz-prepare")->required();
    fin->add_option("--public-key", fin_pub, "Paillier public key file")->required();
    fin->add_option("--private-key", fin_priv, "Paillier private key file")->required();
    fin->add_option("--out", fin_out, "final .hvh output")->capture_default_str();

    // compare
    auto* cmp = app.add_subcommand("compare", "compare two .hvh hashes");
    std::string cmp_a, cmp_b;
    cmp->add_option("a", cmp_a, "first hash file")->required();
    cmp->add_option("b", cmp_b, "second hash file")->required();

    // index
    auto* index = app.add_subcommand("index", "maintain and query an on-disk hash index");
    index->require_subcommand(1);
    auto* idx_add = index->add_subcommand("add", "add hashes to an index");
    std::string idx_add_path;
    std::vector<std::string> idx_add_hashes;
    idx_add->add_option("index", idx_add_path, "index file (.hvx)")->required();
    idx_add->add_option("hashes", idx_add_hashes, ".hvh files to add")->required();
    auto* idx_query = index->add_subcommand("query", "rank index entries against a query hash");
    std::string idx_query_path, idx_query_hash;
    std::int64_t idx_min_score = 1;
    idx_query->add_option("index", idx_query_path, "index file (.hvx)")->required();
    idx_query->add_option("query", idx_query_hash, "query .hvh file")->required();
    idx_query->add_option("--min-score", idx_min_score, "minimum score to report")
        ->capture_default_str();

    // bench
    auto* bench = app.add_subcommand("bench", "synthetic robustness evaluation (ROC + sensitivity)");
    std::string bench_out = "bench-out", bench_ranges = "full", bench_emit;
    int bench_count = 200, bench_variants = 25;
    bench->add_option("--out-dir", bench_out, "report output directory")->capture_default_str();
    bench->add_option("--count", bench_count, "corpus size")->capture_default_str();
    bench->add_option("--variants", bench_variants, "distorted variants per video")
        ->capture_default_str();
    bench->add_option("--ranges", bench_ranges, "distortion ranges: full, mild, or identity")
        ->check(CLI::IsMember({"full", "mild", "identity"}))
        ->capture_default_str();
    bench->add_option("--emit-corpus", bench_emit, "also write the corpus as .y4m files here");

    // inspect
    auto* inspect = app.add_subcommand("inspect", "describe any hvh file");
    std::string inspect_path;
    inspect->add_option("file", inspect_path, "file to inspect")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    g.seed_set = seed_opt->count() > 0;

    try {
        if (g.print_config) {
            g.selection();  // validate before echoing
            g.print(std::cout);
            return 0;
        }
        if (keygen->parsed()) return run_keygen(g, bits, out_dir);
        if (hash->parsed()) return run_hash(g, hash_input, hash_out, hash_id, hash_fps);
        if (hash_enc->parsed()) {
            if (prep->parsed()) {
                return run_tz_prepare(g, prep_input, prep_pub, prep_priv, prep_frames,
                                      prep_meta, prep_id, prep_fps);
            }
            if (agg->parsed()) return run_server_aggregate(g, agg_frames, agg_pub, agg_out);
            if (fin->parsed()) {
                return run_tz_finalize(g, fin_comps, fin_meta, fin_pub, fin_priv, fin_out);
            }
        }
        if (cmp->parsed()) return run_compare(g, cmp_a, cmp_b);
        if (index->parsed()) {
            if (idx_add->parsed()) return run_index_add(g, idx_add_path, idx_add_hashes);
            if (idx_query->parsed()) {
                return run_index_query(g, idx_query_path, idx_query_hash, idx_min_score);
            }
        }
        if (bench->parsed()) {
            return run_bench(g, bench_out, bench_count, bench_variants, bench_ranges,
                             bench_emit);
        }
        if (inspect->parsed()) return run_inspect(g, inspect_path);
        std::cerr << app.help() << "\n";
        return 1;
    } catch (const hvh::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const hvh::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hvh::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hvh::CryptoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
