#include "hvh/enc_pipeline.hpp"

#include <fstream>
#include <mutex>

#include <nlohmann/json.hpp>

#include "hvh/errors.hpp"
#include "hvh/io_util.hpp"
#include "hvh/media_ingest.hpp"
#include "hvh/parallel.hpp"

namespace hvh {

namespace {

// The signed-residue convention needs |K*S_k - S| < n/2; S is at most
// 255*F*F, so require n > 2*255*F*F.
void check_key_capacity(const PaillierPublicKey& pk, int resolution) {
    const mpz_class bound = 2 * 255 * mpz_class(resolution) * resolution;
    if (pk.n <= bound) {
        throw CryptoError("key too small for resolution " + std::to_string(resolution) +
                          ": need n > " + bound.get_str());
    }
}

std::size_t ciphertext_width_bytes(const PaillierPublicKey& pk) {
    return (mpz_sizeinbase(pk.n_squared.get_mpz_t(), 2) + 7) / 8;
}

void put_ciphertext(std::vector<std::uint8_t>& out, const Ciphertext& c, std::size_t width) {
    std::vector<std::uint8_t> buf(width, 0);
    std::size_t written = 0;
    // big-endian, left-padded to the fixed width
    mpz_export(buf.data() + (width - ((mpz_sizeinbase(c.value.get_mpz_t(), 2) + 7) / 8)),
               &written, 1, 1, 1, 0, c.value.get_mpz_t());
    out.insert(out.end(), buf.begin(), buf.end());
}

Ciphertext take_ciphertext(io::Reader& rd, std::size_t width) {
    auto bytes = rd.take(width);
    Ciphertext c;
    mpz_import(c.value.get_mpz_t(), width, 1, 1, 1, 0, bytes.data());
    return c;
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

constexpr std::string_view kFramesMagic = "HEF1";
constexpr std::string_view kComponentsMagic = "HCM1";
constexpr std::uint16_t kTransferVersion = 1;

}  // namespace

TrustedZoneContext::TrustedZoneContext(PaillierKeyPair keys, SelectionParams params)
    : pk_(std::move(keys.pub)), sk_(std::move(keys.priv)), params_(std::move(params)) {
    params_.validate();
    if (sk_.n != pk_.n) throw CryptoError("public and private keys do not match");
    check_key_capacity(pk_, params_.resolution);
}

TrustedZonePrepared TrustedZoneContext::prepare(const VideoStream& stream, Rng& rng,
                                                unsigned threads) const {
    if (stream.frames.empty()) throw Error("cannot prepare an empty stream");

    // Phases 1-2 run in the clear inside the trusted zone.
    std::vector<PreprocessedFrame> prepped;
    prepped.reserve(stream.frames.size());
    for (const Frame& f : stream.frames) prepped.push_back(preprocess(f, params_.resolution));
    SelectionResult sel = select_keyframes(prepped, params_);

    TrustedZonePrepared out;
    out.meta.source_id = stream.source_id;
    out.meta.total_frames = static_cast<std::uint32_t>(stream.frames.size());
    out.meta.frame_rate = stream.frame_rate;
    out.meta.blank_count = sel.blank_count;
    out.meta.trailing_drops = sel.trailing_drops;
    out.meta.resolution = static_cast<std::uint16_t>(params_.resolution);
    out.meta.block_grid = static_cast<std::uint16_t>(params_.block_grid);

    const int f = params_.resolution;
    const std::size_t pixels_per_frame = static_cast<std::size_t>(f) * f;
    out.frames.resize(sel.records.size());
    for (std::size_t i = 0; i < sel.records.size(); ++i) {
        const KeyframeRecord& rec = sel.records[i];
        out.meta.keyframes.emplace_back(rec.source_index, rec.dropped_before);
        out.frames[i].resolution = static_cast<std::uint16_t>(f);
        out.frames[i].source_index = rec.source_index;
        out.frames[i].ciphertexts.resize(pixels_per_frame);
    }

    // Pixel-wise encryption, parallel over fixed strips with per-strip
    // nonce streams.
    std::vector<const PreprocessedFrame*> selected;
    selected.reserve(sel.records.size());
    for (const KeyframeRecord& rec : sel.records) {
        const PreprocessedFrame* match = nullptr;
        for (const PreprocessedFrame& pf : prepped) {
            if (pf.source_index == rec.source_index) {
                match = &pf;
                break;
            }
        }
        if (!match) throw Error("internal: selected keyframe not found in stream");
        selected.push_back(match);
    }

    constexpr std::size_t kStrip = 256;
    const std::size_t strips_per_frame = (pixels_per_frame + kStrip - 1) / kStrip;
    const std::uint64_t base_seed = rng.u64();
    parallel_for(selected.size() * strips_per_frame, threads, [&](std::size_t task) {
        const std::size_t fi = task / strips_per_frame;
        const std::size_t strip = task % strips_per_frame;
        Rng strip_rng(mix_seed(base_seed ^ (task * 0x9e3779b97f4a7c15ull)));
        const std::uint8_t* px = selected[fi]->pixels.data();
        const std::size_t lo = strip * kStrip;
        const std::size_t hi = std::min(lo + kStrip, pixels_per_frame);
        for (std::size_t p = lo; p < hi; ++p) {
            out.frames[fi].ciphertexts[p] = encrypt(mpz_class(px[p]), pk_, strip_rng);
        }
    });
    return out;
}

FrameHash TrustedZoneContext::finalize_frame(const EncryptedHashComponents& components) const {
    const int k = params_.block_grid * params_.block_grid;
    if (static_cast<int>(components.block_diffs.size()) != k) {
        throw CryptoError("component count " + std::to_string(components.block_diffs.size()) +
                          " does not match block grid " + std::to_string(params_.block_grid));
    }
    if (!components.rerandomized) {
        throw CryptoError("refusing to finalize components that were not rerandomized");
    }
    FrameHash h;
    h.block_count = static_cast<std::uint8_t>(k);
    for (int i = 0; i < k; ++i) {
        const mpz_class value = to_signed(decrypt(components.block_diffs[i], sk_), sk_.n);
        if (value > 0) h.bits |= std::uint64_t{1} << i;  // tie rule: 0
    }
    return h;
}

VideoHash TrustedZoneContext::finalize_video(
    const PlainVideoMetadata& meta, std::span<const EncryptedHashComponents> components) const {
    if (meta.resolution != params_.resolution || meta.block_grid != params_.block_grid) {
        throw ConfigError("metadata parameters do not match the trusted-zone configuration");
    }
    if (components.size() != meta.keyframes.size()) {
        throw Error("component count " + std::to_string(components.size()) +
                    " does not match keyframe count " + std::to_string(meta.keyframes.size()));
    }
    VideoHash h;
    h.header.source_id = meta.source_id;
    h.header.total_frames = meta.total_frames;
    h.header.frame_rate = meta.frame_rate;
    h.header.blank_count = meta.blank_count;
    h.header.trailing_drops = meta.trailing_drops;
    h.header.keyframe_percentage =
        keyframe_percentage_of(meta.keyframes.size(), meta.total_frames, meta.blank_count);
    h.header.resolution = meta.resolution;
    h.header.block_grid = meta.block_grid;
    h.records.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].source_index != meta.keyframes[i].first) {
            throw Error("component order does not match keyframe metadata at record " +
                        std::to_string(i));
        }
        KeyframeRecord rec;
        rec.hash = finalize_frame(components[i]);
        rec.source_index = meta.keyframes[i].first;
        rec.dropped_before = meta.keyframes[i].second;
        h.records.push_back(std::move(rec));
    }
    check_frame_count_identity(h);
    return h;
}

namespace server {

EncryptedHashComponents aggregate(const EncryptedFrame& frame, const PaillierPublicKey& pk,
                                  int block_grid, Rng& rng) {
    const int f = frame.resolution;
    if (block_grid < 1 || block_grid > 8 || f % block_grid != 0) {
        throw ConfigError("invalid block grid " + std::to_string(block_grid) +
                          " for resolution " + std::to_string(f));
    }
    if (frame.ciphertexts.size() != static_cast<std::size_t>(f) * f) {
        throw CryptoError("encrypted frame has " + std::to_string(frame.ciphertexts.size()) +
                          " ciphertexts, expected " + std::to_string(f * f));
    }
    check_key_capacity(pk, f);

    const int bs = f / block_grid;
    const int k = block_grid * block_grid;

    // E(S_k): product of the block's pixel ciphertexts mod n^2.
    std::vector<Ciphertext> block_sums(static_cast<std::size_t>(k));
    for (int br = 0; br < block_grid; ++br) {
        for (int bc = 0; bc < block_grid; ++bc) {
            mpz_class acc = 1;
            for (int r = br * bs; r < (br + 1) * bs; ++r) {
                for (int c = bc * bs; c < (bc + 1) * bs; ++c) {
                    acc *= frame.ciphertexts[static_cast<std::size_t>(r) * f + c].value;
                    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), pk.n_squared.get_mpz_t());
                }
            }
            block_sums[static_cast<std::size_t>(br) * block_grid + bc].value = std::move(acc);
        }
    }

    // E(S) = product of the block sums; E(-S) is shared by every component.
    Ciphertext global_sum{1};
    for (const Ciphertext& c : block_sums) {
        global_sum = homomorphic_add(global_sum, c, pk);
    }
    const Ciphertext neg_global = scalar_multiply(global_sum, mpz_class(-1), pk);

    EncryptedHashComponents out;
    out.source_index = frame.source_index;
    out.block_diffs.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        Ciphertext scaled = scalar_multiply(block_sums[static_cast<std::size_t>(i)],
                                            mpz_class(k), pk);
        Ciphertext diff = homomorphic_add(scaled, neg_global, pk);
        out.block_diffs[static_cast<std::size_t>(i)] = rerandomize(diff, pk, rng);
    }
    out.rerandomized = true;
    return out;
}

std::vector<EncryptedHashComponents> aggregate_video(std::span<const EncryptedFrame> frames,
                                                     const PaillierPublicKey& pk,
                                                     int block_grid, Rng& rng,
                                                     unsigned threads) {
    std::vector<EncryptedHashComponents> out(frames.size());
    const std::uint64_t base_seed = rng.u64();
    parallel_for(frames.size(), threads, [&](std::size_t i) {
        Rng frame_rng(mix_seed(base_seed ^ (i * 0xbf58476d1ce4e5b9ull)));
        out[i] = aggregate(frames[i], pk, block_grid, frame_rng);
    });
    return out;
}

}  // namespace server

void save_encrypted_frames(const std::filesystem::path& path,
                           std::span<const EncryptedFrame> frames,
                           const PaillierPublicKey& pk, int block_grid) {
    const std::size_t width = ciphertext_width_bytes(pk);
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kFramesMagic.begin(), kFramesMagic.end());
    io::put_u16(out, kTransferVersion);
    const std::uint16_t f = frames.empty() ? 0 : frames.front().resolution;
    io::put_u16(out, f);
    io::put_u16(out, static_cast<std::uint16_t>(block_grid));
    io::put_u64(out, key_fingerprint(pk));
    io::put_u32(out, static_cast<std::uint32_t>(width));
    io::put_u32(out, static_cast<std::uint32_t>(frames.size()));
    for (const EncryptedFrame& frame : frames) {
        if (frame.resolution != f) throw Error("mixed resolutions in one bundle");
        io::put_u32(out, frame.source_index);
        for (const Ciphertext& c : frame.ciphertexts) put_ciphertext(out, c, width);
    }
    write_file(path, out);
}

std::vector<EncryptedFrame> load_encrypted_frames(const std::filesystem::path& path,
                                                  const PaillierPublicKey& pk,
                                                  int* block_grid_out) {
    const auto bytes = read_file(path);
    io::Reader rd(bytes, "encrypted frames " + path.string());
    rd.expect_magic(kFramesMagic);
    if (rd.u16() != kTransferVersion) {
        throw ParseError("encrypted frames: unsupported version", 4);
    }
    const std::uint16_t f = rd.u16();
    const std::uint16_t block_grid = rd.u16();
    if (rd.u64() != key_fingerprint(pk)) {
        throw CryptoError("encrypted frames were produced under a different key");
    }
    const std::uint32_t width = rd.u32();
    if (width != ciphertext_width_bytes(pk)) {
        throw CryptoError("ciphertext width does not match the supplied key");
    }
    const std::uint32_t count = rd.u32();
    std::vector<EncryptedFrame> frames(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        frames[i].resolution = f;
        frames[i].source_index = rd.u32();
        frames[i].ciphertexts.resize(static_cast<std::size_t>(f) * f);
        for (auto& c : frames[i].ciphertexts) c = take_ciphertext(rd, width);
    }
    if (block_grid_out) *block_grid_out = block_grid;
    return frames;
}

void save_components(const std::filesystem::path& path,
                     std::span<const EncryptedHashComponents> components,
                     const PaillierPublicKey& pk, int resolution, int block_grid) {
    const std::size_t width = ciphertext_width_bytes(pk);
    const std::size_t k = static_cast<std::size_t>(block_grid) * block_grid;
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kComponentsMagic.begin(), kComponentsMagic.end());
    io::put_u16(out, kTransferVersion);
    io::put_u16(out, static_cast<std::uint16_t>(resolution));
    io::put_u16(out, static_cast<std::uint16_t>(block_grid));
    io::put_u64(out, key_fingerprint(pk));
    io::put_u32(out, static_cast<std::uint32_t>(width));
    io::put_u32(out, static_cast<std::uint32_t>(components.size()));
    for (const EncryptedHashComponents& comp : components) {
        if (comp.block_diffs.size() != k) throw Error("component vector has wrong length");
        if (!comp.rerandomized) {
            throw CryptoError("refusing to serialize components before rerandomization");
        }
        io::put_u32(out, comp.source_index);
        for (const Ciphertext& c : comp.block_diffs) put_ciphertext(out, c, width);
    }
    write_file(path, out);
}

std::vector<EncryptedHashComponents> load_components(const std::filesystem::path& path,
                                                     const PaillierPublicKey& pk) {
    const auto bytes = read_file(path);
    io::Reader rd(bytes, "components " + path.string());
    rd.expect_magic(kComponentsMagic);
    if (rd.u16() != kTransferVersion) {
        throw ParseError("components: unsupported version", 4);
    }
    rd.u16();  // resolution, informational
    const std::uint16_t block_grid = rd.u16();
    if (rd.u64() != key_fingerprint(pk)) {
        throw CryptoError("components were produced under a different key");
    }
    const std::uint32_t width = rd.u32();
    if (width != ciphertext_width_bytes(pk)) {
        throw CryptoError("ciphertext width does not match the supplied key");
    }
    const std::uint32_t count = rd.u32();
    const std::size_t k = static_cast<std::size_t>(block_grid) * block_grid;
    std::vector<EncryptedHashComponents> components(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        components[i].source_index = rd.u32();
        components[i].rerandomized = true;  // enforced at write time
        components[i].block_diffs.resize(k);
        for (auto& c : components[i].block_diffs) c = take_ciphertext(rd, width);
    }
    return components;
}

void save_metadata(const std::filesystem::path& path, const PlainVideoMetadata& meta) {
    nlohmann::json j;
    j["format"] = "hvh-tz-metadata";
    j["version"] = 1;
    j["source_id"] = meta.source_id;
    j["total_frames"] = meta.total_frames;
    j["frame_rate"] = meta.frame_rate;
    j["blank_count"] = meta.blank_count;
    j["trailing_drops"] = meta.trailing_drops;
    j["resolution"] = meta.resolution;
    j["block_grid"] = meta.block_grid;
    j["keyframes"] = nlohmann::json::array();
    for (const auto& [src, dropped] : meta.keyframes) {
        j["keyframes"].push_back({{"source_index", src}, {"dropped_before", dropped}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path.string());
}

PlainVideoMetadata load_metadata(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (j.value("format", "") != "hvh-tz-metadata" || j.value("version", 0) != 1) {
        throw ParseError(path.string() + ": not a hvh-tz-metadata v1 file");
    }
    PlainVideoMetadata meta;
    meta.source_id = j.at("source_id").get<std::string>();
    meta.total_frames = j.at("total_frames").get<std::uint32_t>();
    meta.frame_rate = j.at("frame_rate").get<double>();
    meta.blank_count = j.at("blank_count").get<std::uint32_t>();
    meta.trailing_drops = j.at("trailing_drops").get<std::uint32_t>();
    meta.resolution = j.at("resolution").get<std::uint16_t>();
    meta.block_grid = j.at("block_grid").get<std::uint16_t>();
    for (const auto& kf : j.at("keyframes")) {
        meta.keyframes.emplace_back(kf.at("source_index").get<std::uint32_t>(),
                                    kf.at("dropped_before").get<std::uint32_t>());
    }
    return meta;
}

}  // namespace hvh
