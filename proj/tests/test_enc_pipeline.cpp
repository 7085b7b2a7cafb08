#include <doctest.h>

#include <random>
#include <type_traits>

#include "hvh/corpus.hpp"
#include "hvh/enc_pipeline.hpp"
#include "hvh/errors.hpp"
#include "hvh/frame_hash.hpp"
#include "hvh/media_ingest.hpp"
#include "test_support.hpp"

using namespace hvh;

namespace {

SelectionParams params16() {
    SelectionParams p;
    p.resolution = 16;
    p.block_grid = 4;
    p.keyframe_distance_threshold = 4;
    return p;
}

EncryptedFrame encrypt_pixels(const PixelMatrix& px, const PaillierPublicKey& pk, Rng& rng,
                              std::uint32_t index = 0) {
    EncryptedFrame ef;
    ef.resolution = static_cast<std::uint16_t>(px.rows());
    ef.source_index = index;
    for (Eigen::Index i = 0; i < px.size(); ++i) {
        ef.ciphertexts.push_back(encrypt(mpz_class(static_cast<int>(px.data()[i])), pk, rng));
    }
    return ef;
}

}  // namespace

// The server interface takes public material only; there is no overload
// accepting a private key.
static_assert(std::is_invocable_r_v<EncryptedHashComponents, decltype(&server::aggregate),
                                    const EncryptedFrame&, const PaillierPublicKey&, int,
                                    Rng&>);
static_assert(!std::is_invocable_v<decltype(&server::aggregate), const EncryptedFrame&,
                                   const PaillierPrivateKey&, int, Rng&>);

TEST_CASE("tz_prepare emits the expected shapes") {
    const auto kp = generate_keypair(64, 201);
    TrustedZoneContext tz(kp, params16());
    Rng rng(202);

    VideoStream s;
    s.frame_rate = 30;
    s.source_id = "shape";
    PixelMatrix a(16, 16), b(16, 16);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            a(r, c) = c < 8 ? 220 : 30;
            b(r, c) = c < 8 ? 30 : 220;
        }
    s.frames.push_back(testutil::as_frame(std::move(a), 0));
    s.frames.push_back(testutil::as_frame(std::move(b), 1));

    const TrustedZonePrepared prep = tz.prepare(s, rng);
    REQUIRE(prep.frames.size() == 2);
    CHECK(prep.frames[0].ciphertexts.size() == 256);
    CHECK(prep.frames[1].ciphertexts.size() == 256);
    CHECK(prep.meta.keyframes.size() == 2);
    CHECK(prep.meta.total_frames == 2);

    // test-only: decrypting an emitted ciphertext recovers the pixel
    const PreprocessedFrame pf = preprocess(s.frames[0], 16);
    for (int i : {0, 17, 255}) {
        CHECK(decrypt(prep.frames[0].ciphertexts[static_cast<std::size_t>(i)], kp.priv) ==
              static_cast<int>(pf.pixels.data()[i]));
    }
}

TEST_CASE("tz_prepare on an all-blank video emits nothing") {
    const auto kp = generate_keypair(64, 203);
    TrustedZoneContext tz(kp, params16());
    Rng rng(204);
    VideoStream s;
    s.frame_rate = 30;
    s.source_id = "blank";
    for (int i = 0; i < 6; ++i) {
        s.frames.push_back(testutil::as_frame(testutil::constant_pixels(16, 99),
                                              static_cast<std::uint32_t>(i)));
    }
    const TrustedZonePrepared prep = tz.prepare(s, rng);
    CHECK(prep.frames.empty());
    CHECK(prep.meta.keyframes.empty());
    CHECK(prep.meta.blank_count == 6);
}

TEST_CASE("server aggregation: uniform frame decrypts to zeros") {
    const auto kp = generate_keypair(64, 205);
    Rng rng(206);
    const EncryptedFrame ef = encrypt_pixels(testutil::constant_pixels(16, 77), kp.pub, rng);
    const EncryptedHashComponents comps = server::aggregate(ef, kp.pub, 4, rng);
    REQUIRE(comps.block_diffs.size() == 16);
    CHECK(comps.rerandomized);
    for (const Ciphertext& c : comps.block_diffs) {
        CHECK(to_signed(decrypt(c, kp.priv), kp.priv.n) == 0);
    }
}

TEST_CASE("server aggregation: bright block positive, zero-sum identity") {
    const auto kp = generate_keypair(64, 207);
    Rng rng(208);
    PixelMatrix px = PixelMatrix::Zero(16, 16);
    px.block(0, 0, 4, 4).setConstant(200);
    const EncryptedFrame ef = encrypt_pixels(px, kp.pub, rng);
    const EncryptedHashComponents comps = server::aggregate(ef, kp.pub, 4, rng);

    mpz_class sum = 0;
    for (std::size_t k = 0; k < comps.block_diffs.size(); ++k) {
        const mpz_class v = to_signed(decrypt(comps.block_diffs[k], kp.priv), kp.priv.n);
        if (k == 0) {
            CHECK(v > 0);
        } else {
            CHECK(v < 0);
        }
        sum += v;
    }
    CHECK(sum == 0);
}

TEST_CASE("server aggregation equals the plaintext block diffs") {
    const auto kp = generate_keypair(64, 209);
    Rng rng(210);
    std::mt19937_64 gen(211);
    for (int trial = 0; trial < 3; ++trial) {
        const PixelMatrix px = testutil::random_pixels(gen, 16, 16);
        const EncryptedFrame ef = encrypt_pixels(px, kp.pub, rng);
        const EncryptedHashComponents comps = server::aggregate(ef, kp.pub, 4, rng);
        const auto expected = block_diffs(px, 4);
        REQUIRE(comps.block_diffs.size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k) {
            CHECK(to_signed(decrypt(comps.block_diffs[k], kp.priv), kp.priv.n) ==
                  expected[k]);
        }
    }
}

TEST_CASE("tz_finalize applies the signed convention and tie rule") {
    const auto kp = generate_keypair(64, 213);
    TrustedZoneContext tz(kp, params16());
    Rng rng(214);

    EncryptedHashComponents zeros;
    zeros.rerandomized = true;
    for (int i = 0; i < 16; ++i) zeros.block_diffs.push_back(encrypt(0, kp.pub, rng));
    CHECK(tz.finalize_frame(zeros).bits == 0);

    // n - 5 encodes -5: sign bit must be 0
    EncryptedHashComponents mixed;
    mixed.rerandomized = true;
    mixed.block_diffs.push_back(encrypt(kp.pub.n - 5, kp.pub, rng));
    mixed.block_diffs.push_back(encrypt(12, kp.pub, rng));
    for (int i = 0; i < 14; ++i) mixed.block_diffs.push_back(encrypt(0, kp.pub, rng));
    const FrameHash h = tz.finalize_frame(mixed);
    CHECK_FALSE(h.bit(0));
    CHECK(h.bit(1));
    CHECK(h.bits == 2);
}

TEST_CASE("finalize refuses non-rerandomized components") {
    const auto kp = generate_keypair(64, 215);
    TrustedZoneContext tz(kp, params16());
    Rng rng(216);
    EncryptedHashComponents raw;
    raw.rerandomized = false;
    for (int i = 0; i < 16; ++i) raw.block_diffs.push_back(encrypt(0, kp.pub, rng));
    CHECK_THROWS_AS(tz.finalize_frame(raw), CryptoError);
}

TEST_CASE("encrypted per-frame hash equals hash_frame bit for bit") {
    const auto kp = generate_keypair(64, 217);
    TrustedZoneContext tz(kp, params16());
    Rng rng(218);
    std::mt19937_64 gen(219);
    for (int trial = 0; trial < 20; ++trial) {
        const PixelMatrix px = testutil::random_pixels(gen, 16, 16);
        const EncryptedFrame ef = encrypt_pixels(px, kp.pub, rng);
        const FrameHash enc_hash =
            tz.finalize_frame(server::aggregate(ef, kp.pub, 4, rng));
        CHECK(enc_hash == hash_frame(testutil::as_preprocessed(px), 4));
    }
}

TEST_CASE("full-video equivalence: encrypted pipeline == plaintext pipeline") {
    const auto kp = generate_keypair(64, 221);
    SelectionParams p;  // F=64, B=8 defaults
    TrustedZoneContext tz(kp, p);
    Rng rng(222);

    for (std::uint64_t seed : {1001ull, 1002ull}) {
        const VideoStream v = generate_video(seed, 45, 30.0, 96, 96,
                                             "equiv-" + std::to_string(seed));
        const VideoHash plain = build_video_hash(v, p);

        const TrustedZonePrepared prep = tz.prepare(v, rng);
        for (const EncryptedFrame& ef : prep.frames) {
            CHECK(ef.ciphertexts.size() == 4096);  // F=64: one per pixel
        }
        const auto comps =
            server::aggregate_video(prep.frames, kp.pub, p.block_grid, rng);
        const VideoHash enc = tz.finalize_video(prep.meta, comps);

        CHECK(serialize(enc) == serialize(plain));
    }
}

TEST_CASE("transfer files round-trip and reject foreign keys") {
    testutil::TempDir dir("encio");
    const auto kp = generate_keypair(64, 223);
    const auto other = generate_keypair(64, 224);
    TrustedZoneContext tz(kp, params16());
    Rng rng(225);

    const VideoStream v = generate_video(31, 20, 30.0, 64, 64, "xfer");
    const TrustedZonePrepared prep = tz.prepare(v, rng);
    REQUIRE(!prep.frames.empty());

    const auto frames_path = dir.path() / "v.hef";
    save_encrypted_frames(frames_path, prep.frames, kp.pub, 4);
    int block_grid = 0;
    const auto loaded = load_encrypted_frames(frames_path, kp.pub, &block_grid);
    CHECK(block_grid == 4);
    REQUIRE(loaded.size() == prep.frames.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].source_index == prep.frames[i].source_index);
        CHECK(loaded[i].ciphertexts == prep.frames[i].ciphertexts);
    }
    CHECK_THROWS_AS(load_encrypted_frames(frames_path, other.pub), CryptoError);

    const auto comps = server::aggregate_video(prep.frames, kp.pub, 4, rng);
    const auto comps_path = dir.path() / "v.hcm";
    save_components(comps_path, comps, kp.pub, 16, 4);
    const auto comps_loaded = load_components(comps_path, kp.pub);
    REQUIRE(comps_loaded.size() == comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        CHECK(comps_loaded[i].block_diffs == comps[i].block_diffs);
    }
    CHECK_THROWS_AS(load_components(comps_path, other.pub), CryptoError);

    const auto meta_path = dir.path() / "v.json";
    save_metadata(meta_path, prep.meta);
    CHECK(load_metadata(meta_path) == prep.meta);

    // the finalized hash from reloaded artifacts still matches plaintext
    SelectionParams p16 = params16();
    const VideoHash enc = tz.finalize_video(load_metadata(meta_path), comps_loaded);
    CHECK(serialize(enc) == serialize(build_video_hash(v, p16)));
}

TEST_CASE("keys below the signed-range capacity are rejected") {
    const auto kp = generate_keypair(16, 227);  // n ~ 65535 << 2*255*64^2
    SelectionParams p;                          // F = 64
    CHECK_THROWS_AS(TrustedZoneContext(kp, p), CryptoError);
}

TEST_CASE("component/metadata mismatches are rejected") {
    const auto kp = generate_keypair(64, 229);
    TrustedZoneContext tz(kp, params16());
    Rng rng(230);

    const VideoStream v = generate_video(33, 20, 30.0, 64, 64, "mm");
    const TrustedZonePrepared prep = tz.prepare(v, rng);
    auto comps = server::aggregate_video(prep.frames, kp.pub, 4, rng);
    REQUIRE(!comps.empty());

    // wrong count
    auto short_comps = comps;
    short_comps.pop_back();
    CHECK_THROWS_AS(tz.finalize_video(prep.meta, short_comps), Error);

    // wrong order
    if (comps.size() >= 2) {
        auto swapped = comps;
        std::swap(swapped[0], swapped[1]);
        CHECK_THROWS_AS(tz.finalize_video(prep.meta, swapped), Error);
    }

    // wrong parameters
    PlainVideoMetadata meta = prep.meta;
    meta.block_grid = 8;
    CHECK_THROWS_AS(tz.finalize_video(meta, comps), ConfigError);
}
