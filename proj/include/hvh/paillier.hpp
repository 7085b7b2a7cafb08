#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "hvh/rng.hpp"

namespace hvh {

/// Paillier public key (n, g) with g = n + 1 and n = p*q for two primes.
struct PaillierPublicKey {
    mpz_class n;
    mpz_class g;          // always n + 1
    mpz_class n_squared;  // cached n*n
    unsigned key_bits = 0;

    bool operator==(const PaillierPublicKey&) const = default;
};

/// Paillier private key (lambda, mu) with a copy of the modulus.
struct PaillierPrivateKey {
    mpz_class lambda;  // lcm(p-1, q-1)
    mpz_class mu;      // inverse of L(g^lambda mod n^2) mod n
    mpz_class n;

    bool operator==(const PaillierPrivateKey&) const = default;
};

struct PaillierKeyPair {
    PaillierPublicKey pub;
    PaillierPrivateKey priv;
};

/// A Paillier ciphertext: an integer in (0, n^2) coprime to n.
struct Ciphertext {
    mpz_class value;

    bool operator==(const Ciphertext&) const = default;
};

/// Generates a key pair with |n| = key_bits exactly. key_bits >= 16; tiny
/// keys are allowed so tests can use hand-checkable moduli.
PaillierKeyPair generate_keypair(unsigned key_bits,
                                 std::optional<std::uint64_t> rng_seed = std::nullopt);

/// Builds the key pair determined by explicit primes. Intended for tests
/// (e.g. p=5, q=7 gives the hand vector n=35, lambda=12, mu=3).
PaillierKeyPair keypair_from_primes(const mpz_class& p, const mpz_class& q);

/// Encrypts m in [0, n) with a fresh nonce r drawn from rng.
Ciphertext encrypt(const mpz_class& m, const PaillierPublicKey& pk, Rng& rng);

/// Encrypts with a caller-chosen nonce; r must satisfy 0 < r < n and
/// gcd(r, n) = 1. Deterministic, used by tests with pinned vectors.
Ciphertext encrypt_with_nonce(const mpz_class& m, const mpz_class& r,
                              const PaillierPublicKey& pk);

/// Decrypts to the plaintext residue in [0, n).
mpz_class decrypt(const Ciphertext& c, const PaillierPrivateKey& sk);

/// Product of ciphertexts: decrypts to (m1 + m2) mod n.
Ciphertext homomorphic_add(const Ciphertext& c1, const Ciphertext& c2,
                           const PaillierPublicKey& pk);

/// Ciphertext exponentiation: decrypts to (s * m) mod n. Negative s is
/// reduced mod n first (the signed-residue convention).
Ciphertext scalar_multiply(const Ciphertext& c, const mpz_class& s,
                           const PaillierPublicKey& pk);

/// Multiplies in a fresh encryption of zero: same plaintext, new randomness.
Ciphertext rerandomize(const Ciphertext& c, const PaillierPublicKey& pk, Rng& rng);

/// Maps a plaintext residue to a signed value: v > n/2 represents v - n.
mpz_class to_signed(const mpz_class& value, const mpz_class& n);

/// Maps a signed value (|v| < n/2) to its residue in [0, n).
mpz_class to_residue(const mpz_class& value, const mpz_class& n);

/// Non-cryptographic 64-bit fingerprint of the modulus, used by the
/// encrypted-transfer formats to detect key mismatches.
std::uint64_t key_fingerprint(const PaillierPublicKey& pk);

// Key files: versioned self-describing text, one key per file.
// Layout documented in docs/FORMATS.md.
void save_public_key(const std::filesystem::path& path, const PaillierPublicKey& pk);
void save_private_key(const std::filesystem::path& path, const PaillierPrivateKey& sk);
PaillierPublicKey load_public_key(const std::filesystem::path& path);
PaillierPrivateKey load_private_key(const std::filesystem::path& path);

}  // namespace hvh
