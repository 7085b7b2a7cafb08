#include "hvh/paillier.hpp"

#include <fstream>
#include <sstream>

#include "hvh/errors.hpp"

namespace hvh {

namespace {

constexpr int kPrimalityRounds = 64;
constexpr int kPrimeRetryBudget = 100000;

// L(x) = (x - 1) / n, defined on x = 1 mod n.
mpz_class ell(const mpz_class& x, const mpz_class& n) {
    mpz_class out = x - 1;
    mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
    return out;
}

mpz_class random_prime(unsigned bits, Rng& rng) {
    for (int attempt = 0; attempt < kPrimeRetryBudget; ++attempt) {
        mpz_class cand = rng.exact_bits(bits);
        mpz_setbit(cand.get_mpz_t(), 0);  // odd
        if (mpz_probab_prime_p(cand.get_mpz_t(), kPrimalityRounds) > 0) return cand;
    }
    throw CryptoError("key generation: no prime found within retry budget at " +
                      std::to_string(bits) + " bits");
}

PaillierKeyPair assemble_keypair(const mpz_class& p, const mpz_class& q) {
    PaillierKeyPair kp;
    kp.pub.n = p * q;
    kp.pub.g = kp.pub.n + 1;
    kp.pub.n_squared = kp.pub.n * kp.pub.n;
    kp.pub.key_bits = static_cast<unsigned>(mpz_sizeinbase(kp.pub.n.get_mpz_t(), 2));

    mpz_class lambda;
    mpz_class p1 = p - 1, q1 = q - 1;
    mpz_lcm(lambda.get_mpz_t(), p1.get_mpz_t(), q1.get_mpz_t());

    // mu from the Bezout identity on (L(g^lambda mod n^2), n): gcdext yields
    // gamma = alpha*L + beta*n; gamma must be 1 for a valid key, and
    // mu = alpha mod n is then the modular inverse of L.
    mpz_class u;
    mpz_powm(u.get_mpz_t(), kp.pub.g.get_mpz_t(), lambda.get_mpz_t(),
             kp.pub.n_squared.get_mpz_t());
    mpz_class l = ell(u, kp.pub.n);
    mpz_class gamma, alpha, beta;
    mpz_gcdext(gamma.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t(), l.get_mpz_t(),
               kp.pub.n.get_mpz_t());
    if (gamma != 1) {
        throw CryptoError("key generation: gcd(L(g^lambda mod n^2), n) != 1");
    }
    mpz_class mu;
    mpz_mod(mu.get_mpz_t(), alpha.get_mpz_t(), kp.pub.n.get_mpz_t());

    kp.priv.lambda = lambda;
    kp.priv.mu = mu;
    kp.priv.n = kp.pub.n;
    return kp;
}

void check_public_key(const PaillierPublicKey& pk) {
    if (pk.n <= 1 || pk.g != pk.n + 1 || pk.n_squared != pk.n * pk.n) {
        throw CryptoError("malformed public key");
    }
}

void check_ciphertext_range(const Ciphertext& c, const PaillierPublicKey& pk) {
    if (c.value <= 0 || c.value >= pk.n_squared) {
        throw CryptoError("ciphertext out of range for this key");
    }
}

}  // namespace

PaillierKeyPair generate_keypair(unsigned key_bits, std::optional<std::uint64_t> rng_seed) {
    if (key_bits < 16) {
        throw CryptoError("key_bits must be >= 16, got " + std::to_string(key_bits));
    }
    Rng rng(rng_seed);
    unsigned p_bits = key_bits / 2;
    unsigned q_bits = key_bits - p_bits;
    for (int attempt = 0; attempt < kPrimeRetryBudget; ++attempt) {
        mpz_class p = random_prime(p_bits, rng);
        mpz_class q = random_prime(q_bits, rng);
        if (p == q) continue;
        mpz_class n = p * q;
        if (mpz_sizeinbase(n.get_mpz_t(), 2) != key_bits) continue;
        return assemble_keypair(p, q);
    }
    throw CryptoError("key generation: retry budget exhausted");
}

PaillierKeyPair keypair_from_primes(const mpz_class& p, const mpz_class& q) {
    if (p == q || mpz_probab_prime_p(p.get_mpz_t(), kPrimalityRounds) == 0 ||
        mpz_probab_prime_p(q.get_mpz_t(), kPrimalityRounds) == 0) {
        throw CryptoError("keypair_from_primes needs two distinct primes");
    }
    return assemble_keypair(p, q);
}

Ciphertext encrypt(const mpz_class& m, const PaillierPublicKey& pk, Rng& rng) {
    // Nonce r in (0, n) with gcd(r, n) = 1; the coprimality requirement is
    // what keeps ciphertexts invertible under rerandomization.
    mpz_class r, g;
    do {
        r = rng.below(pk.n);
        mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t());
    } while (r == 0 || g != 1);
    return encrypt_with_nonce(m, r, pk);
}

Ciphertext encrypt_with_nonce(const mpz_class& m, const mpz_class& r,
                              const PaillierPublicKey& pk) {
    check_public_key(pk);
    if (m < 0 || m >= pk.n) {
        throw CryptoError("plaintext out of range [0, n)");
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t());
    if (r <= 0 || r >= pk.n || g != 1) {
        throw CryptoError("nonce must satisfy 0 < r < n and gcd(r, n) = 1");
    }
    // c = g^m * r^n mod n^2
    mpz_class gm, rn;
    mpz_powm(gm.get_mpz_t(), pk.g.get_mpz_t(), m.get_mpz_t(), pk.n_squared.get_mpz_t());
    mpz_powm(rn.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t(), pk.n_squared.get_mpz_t());
    Ciphertext c;
    c.value = gm * rn;
    mpz_mod(c.value.get_mpz_t(), c.value.get_mpz_t(), pk.n_squared.get_mpz_t());
    return c;
}

mpz_class decrypt(const Ciphertext& c, const PaillierPrivateKey& sk) {
    mpz_class n2 = sk.n * sk.n;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.value.get_mpz_t(), sk.n.get_mpz_t());
    if (c.value <= 0 || c.value >= n2 || g != 1) {
        throw CryptoError("malformed ciphertext");
    }
    // m = L(c^lambda mod n^2) * mu mod n
    mpz_class u;
    mpz_powm(u.get_mpz_t(), c.value.get_mpz_t(), sk.lambda.get_mpz_t(), n2.get_mpz_t());
    mpz_class m = ell(u, sk.n) * sk.mu;
    mpz_mod(m.get_mpz_t(), m.get_mpz_t(), sk.n.get_mpz_t());
    return m;
}

Ciphertext homomorphic_add(const Ciphertext& c1, const Ciphertext& c2,
                           const PaillierPublicKey& pk) {
    check_ciphertext_range(c1, pk);
    check_ciphertext_range(c2, pk);
    Ciphertext out;
    out.value = c1.value * c2.value;
    mpz_mod(out.value.get_mpz_t(), out.value.get_mpz_t(), pk.n_squared.get_mpz_t());
    return out;
}

Ciphertext scalar_multiply(const Ciphertext& c, const mpz_class& s,
                           const PaillierPublicKey& pk) {
    check_ciphertext_range(c, pk);
    mpz_class e;
    mpz_mod(e.get_mpz_t(), s.get_mpz_t(), pk.n.get_mpz_t());
    Ciphertext out;
    mpz_powm(out.value.get_mpz_t(), c.value.get_mpz_t(), e.get_mpz_t(),
             pk.n_squared.get_mpz_t());
    return out;
}

Ciphertext rerandomize(const Ciphertext& c, const PaillierPublicKey& pk, Rng& rng) {
    check_ciphertext_range(c, pk);
    mpz_class r, g;
    do {
        r = rng.below(pk.n);
        mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t());
    } while (r == 0 || g != 1);
    mpz_class rn;
    mpz_powm(rn.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t(), pk.n_squared.get_mpz_t());
    Ciphertext out;
    out.value = c.value * rn;
    mpz_mod(out.value.get_mpz_t(), out.value.get_mpz_t(), pk.n_squared.get_mpz_t());
    return out;
}

mpz_class to_signed(const mpz_class& value, const mpz_class& n) {
    if (value * 2 > n) return value - n;
    return value;
}

mpz_class to_residue(const mpz_class& value, const mpz_class& n) {
    mpz_class out;
    mpz_mod(out.get_mpz_t(), value.get_mpz_t(), n.get_mpz_t());
    return out;
}

std::uint64_t key_fingerprint(const PaillierPublicKey& pk) {
    // FNV-1a over the hex digits of n: collision-detection only, no
    // security claim.
    std::string hex = pk.n.get_str(16);
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : hex) {
        h ^= static_cast<std::uint8_t>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

void write_key_file(const std::filesystem::path& path, const std::string& kind,
                    const std::vector<std::pair<std::string, std::string>>& fields) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open key file for writing: " + path.string());
    out << "hvh-paillier-" << kind << "-v1\n";
    for (const auto& [k, v] : fields) out << k << " " << v << "\n";
    if (!out) throw IoError("failed writing key file: " + path.string());
}

std::vector<std::pair<std::string, std::string>> read_key_file(
    const std::filesystem::path& path, const std::string& kind) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open key file: " + path.string());
    std::string header;
    std::getline(in, header);
    const std::string expected = "hvh-paillier-" + kind + "-v1";
    if (header != expected) {
        throw ParseError(path.string() + ": expected header \"" + expected + "\", got \"" +
                         header + "\"");
    }
    std::vector<std::pair<std::string, std::string>> fields;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto sp = line.find(' ');
        if (sp == std::string::npos) {
            throw ParseError(path.string() + ": malformed line \"" + line + "\"");
        }
        fields.emplace_back(line.substr(0, sp), line.substr(sp + 1));
    }
    return fields;
}

mpz_class parse_hex(const std::string& text, const std::filesystem::path& path) {
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), text.c_str(), 16) != 0) {
        throw ParseError(path.string() + ": invalid hex integer \"" + text + "\"");
    }
    return v;
}

std::string find_field(const std::vector<std::pair<std::string, std::string>>& fields,
                       const std::string& key, const std::filesystem::path& path) {
    for (const auto& [k, v] : fields) {
        if (k == key) return v;
    }
    throw ParseError(path.string() + ": missing field \"" + key + "\"");
}

}  // namespace

void save_public_key(const std::filesystem::path& path, const PaillierPublicKey& pk) {
    write_key_file(path, "public",
                   {{"key_bits", std::to_string(pk.key_bits)}, {"n", pk.n.get_str(16)}});
}

void save_private_key(const std::filesystem::path& path, const PaillierPrivateKey& sk) {
    write_key_file(path, "private",
                   {{"n", sk.n.get_str(16)},
                    {"lambda", sk.lambda.get_str(16)},
                    {"mu", sk.mu.get_str(16)}});
}

PaillierPublicKey load_public_key(const std::filesystem::path& path) {
    auto fields = read_key_file(path, "public");
    PaillierPublicKey pk;
    pk.key_bits = static_cast<unsigned>(std::stoul(find_field(fields, "key_bits", path)));
    pk.n = parse_hex(find_field(fields, "n", path), path);
    pk.g = pk.n + 1;
    pk.n_squared = pk.n * pk.n;
    if (mpz_sizeinbase(pk.n.get_mpz_t(), 2) != pk.key_bits) {
        throw ParseError(path.string() + ": key_bits does not match the modulus width");
    }
    return pk;
}

PaillierPrivateKey load_private_key(const std::filesystem::path& path) {
    auto fields = read_key_file(path, "private");
    PaillierPrivateKey sk;
    sk.n = parse_hex(find_field(fields, "n", path), path);
    sk.lambda = parse_hex(find_field(fields, "lambda", path), path);
    sk.mu = parse_hex(find_field(fields, "mu", path), path);
    return sk;
}

}  // namespace hvh
