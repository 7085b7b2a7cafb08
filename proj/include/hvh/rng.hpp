#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>

namespace hvh {

/// Splittable 64-bit mixing, used to derive independent per-item seeds
/// from one run seed.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d4ecda037f0db5ull;
    return z ^ (z >> 31);
}

/// Seeded randomness source backing both big-integer draws (key material,
/// encryption nonces) and scalar draws. Not thread-safe: use one per thread
/// or synchronize externally.
class Rng {
public:
    explicit Rng(std::optional<std::uint64_t> seed = std::nullopt) {
        std::uint64_t s = seed ? *seed : std::random_device{}();
        gmp_randinit_mt(state_);
        gmp_randseed_ui(state_, static_cast<unsigned long>(mix_seed(s)));
        engine_.seed(mix_seed(s ^ 0x5bf0361cull));
    }

    ~Rng() { gmp_randclear(state_); }

    Rng(const Rng&) = delete;
    Rng& operator=(const Rng&) = delete;

    /// Uniform integer in [0, bound).
    mpz_class below(const mpz_class& bound) {
        mpz_class r;
        mpz_urandomm(r.get_mpz_t(), state_, bound.get_mpz_t());
        return r;
    }

    /// Uniform integer with exactly `bits` bits (top bit set).
    mpz_class exact_bits(unsigned bits) {
        mpz_class r;
        mpz_urandomb(r.get_mpz_t(), state_, bits);
        mpz_setbit(r.get_mpz_t(), bits - 1);
        return r;
    }

    std::uint64_t u64() { return engine_(); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    gmp_randstate_t state_;
    std::mt19937_64 engine_;
};

}  // namespace hvh
