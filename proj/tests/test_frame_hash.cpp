#include <doctest.h>

#include <random>

#include "hvh/errors.hpp"
#include "hvh/frame_hash.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace hvh;

TEST_CASE("constant frame hashes to all zeros (tie rule)") {
    const auto f = testutil::as_preprocessed(testutil::constant_pixels(64, 100));
    const FrameHash h = hash_frame(f, 8);
    CHECK(h.bits == 0);
    CHECK(h.block_count == 64);
    for (std::int64_t d : block_diffs(f.pixels, 8)) CHECK(d == 0);
}

TEST_CASE("single dominant block sets exactly its bit") {
    PixelMatrix px = PixelMatrix::Zero(64, 64);
    px.block(0, 0, 8, 8).setConstant(255);
    const FrameHash h = hash_frame(testutil::as_preprocessed(std::move(px)), 8);
    CHECK(h.bit(0));
    CHECK(h.bits == 1);
}

TEST_CASE("hash equals the floating-point mean-comparison oracle") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = testutil::as_preprocessed(testutil::random_pixels(gen, 64, 64));
        const FrameHash h = hash_frame(f, 8);
        const auto ref = oracle::mean_hash_reference(f.pixels, 8);
        REQUIRE(ref.size() == 64);
        for (int k = 0; k < 64; ++k) CHECK(h.bit(k) == ref[static_cast<std::size_t>(k)]);
    }
    // also at a non-default grid
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = testutil::as_preprocessed(testutil::random_pixels(gen, 16, 16));
        const FrameHash h = hash_frame(f, 4);
        CHECK(h.block_count == 16);
        const auto ref = oracle::mean_hash_reference(f.pixels, 4);
        for (int k = 0; k < 16; ++k) CHECK(h.bit(k) == ref[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("hash is invariant to affine intensity changes") {
    std::mt19937_64 gen(14);
    for (int trial = 0; trial < 10; ++trial) {
        PixelMatrix base = testutil::random_pixels(gen, 64, 64);
        for (Eigen::Index i = 0; i < base.size(); ++i) base.data()[i] %= 80;  // room to scale
        const FrameHash h0 = hash_frame(testutil::as_preprocessed(base), 8);

        PixelMatrix scaled = base;
        for (Eigen::Index i = 0; i < scaled.size(); ++i) {
            scaled.data()[i] = static_cast<std::uint8_t>(scaled.data()[i] * 3);
        }
        CHECK(hash_frame(testutil::as_preprocessed(std::move(scaled)), 8) == h0);

        PixelMatrix shifted = base;
        for (Eigen::Index i = 0; i < shifted.size(); ++i) {
            shifted.data()[i] = static_cast<std::uint8_t>(shifted.data()[i] + 100);
        }
        CHECK(hash_frame(testutil::as_preprocessed(std::move(shifted)), 8) == h0);
    }
}

TEST_CASE("hash determinism") {
    std::mt19937_64 gen(15);
    const auto f = testutil::as_preprocessed(testutil::random_pixels(gen, 64, 64));
    CHECK(hash_frame(f, 8) == hash_frame(f, 8));
}

TEST_CASE("hash_distance basics") {
    FrameHash a, b;
    a.block_count = b.block_count = 64;

    a.bits = 0;
    b.bits = ~std::uint64_t{0};
    CHECK(hash_distance(a, a) == 0);
    CHECK(hash_distance(a, b) == 64);

    FrameHash c, d;
    c.block_count = d.block_count = 4;
    c.bits = 0b0011;
    d.bits = 0b0101;
    CHECK(hash_distance(c, d) == 2);

    CHECK_THROWS_AS(hash_distance(a, c), ConfigError);
}

TEST_CASE("hash_distance is a metric") {
    std::mt19937_64 gen(16);
    for (int trial = 0; trial < 200; ++trial) {
        FrameHash x{gen(), 64}, y{gen(), 64}, z{gen(), 64};
        CHECK(hash_distance(x, y) == hash_distance(y, x));
        CHECK(hash_distance(x, x) == 0);
        CHECK(hash_distance(x, z) <= hash_distance(x, y) + hash_distance(y, z));
        if (x.bits != y.bits) CHECK(hash_distance(x, y) > 0);
    }
}

TEST_CASE("grid configuration errors") {
    std::mt19937_64 gen(17);
    const auto f = testutil::as_preprocessed(testutil::random_pixels(gen, 64, 64));
    CHECK_THROWS_AS(hash_frame(f, 5), ConfigError);   // 64 % 5 != 0
    CHECK_THROWS_AS(hash_frame(f, 16), ConfigError);  // K would exceed 64 bits
    CHECK_THROWS_AS(hash_frame(f, 0), ConfigError);
    const auto rect = testutil::as_preprocessed(testutil::random_pixels(gen, 32, 64));
    CHECK_THROWS_AS(hash_frame(rect, 8), ConfigError);
}
