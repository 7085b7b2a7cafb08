#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hvh/frame.hpp"
#include "hvh/keyframes.hpp"
#include "hvh/paillier.hpp"
#include "hvh/rng.hpp"
#include "hvh/video_hash.hpp"

namespace hvh {

/// One keyframe encrypted pixel-wise: F*F ciphertexts, row-major, all
/// under one public key.
struct EncryptedFrame {
    std::vector<Ciphertext> ciphertexts;
    std::uint16_t resolution = 64;
    std::uint32_t source_index = 0;
};

/// K ciphertexts, the k-th encrypting K*S_k - S under the signed-residue
/// convention. `rerandomized` must be true before the components leave
/// the server.
struct EncryptedHashComponents {
    std::vector<Ciphertext> block_diffs;
    std::uint32_t source_index = 0;
    bool rerandomized = false;
};

/// Plaintext supplementary information emitted by the trusted zone: the
/// dropped-frame counts and header metadata. Contains no hash bits.
struct PlainVideoMetadata {
    std::string source_id;
    std::uint32_t total_frames = 0;
    double frame_rate = 0.0;
    std::uint32_t blank_count = 0;
    std::uint32_t trailing_drops = 0;
    std::uint16_t resolution = 64;
    std::uint16_t block_grid = 8;
    // (source_index, dropped_before) per selected keyframe, in order.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> keyframes;

    bool operator==(const PlainVideoMetadata&) const = default;
};

/// The single trusted-zone -> server transfer for one video.
struct TrustedZonePrepared {
    std::vector<EncryptedFrame> frames;
    PlainVideoMetadata meta;
};

/// Holds the private key and the selection parameters. The private key
/// never crosses this boundary: no member returns it, and decrypted
/// component magnitudes never leave either — finalize releases sign bits
/// only.
class TrustedZoneContext {
public:
    TrustedZoneContext(PaillierKeyPair keys, SelectionParams params);

    const PaillierPublicKey& public_key() const { return pk_; }
    const SelectionParams& params() const { return params_; }

    /// Phases 1-2 in the clear plus pixel-wise encryption of the selected
    /// keyframes. Dropped counts are emitted in plaintext.
    TrustedZonePrepared prepare(const VideoStream& stream, Rng& rng,
                                unsigned threads = 0) const;

    /// Decrypts rerandomized components and emits only the sign bits.
    FrameHash finalize_frame(const EncryptedHashComponents& components) const;

    /// Assembles the final VideoHash from plaintext metadata and the
    /// server's components; byte-identical to the plaintext pipeline.
    VideoHash finalize_video(const PlainVideoMetadata& meta,
                             std::span<const EncryptedHashComponents> components) const;

private:
    PaillierPublicKey pk_;
    PaillierPrivateKey sk_;
    SelectionParams params_;
};

namespace server {

/// Homomorphic hash aggregation: block sums via ciphertext products, then
/// component_k = E(S_k)^K * E(S)^(n-1), rerandomized before return. Takes
/// only public material.
EncryptedHashComponents aggregate(const EncryptedFrame& frame, const PaillierPublicKey& pk,
                                  int block_grid, Rng& rng);

/// aggregate over every frame of a prepared bundle; one bundle in, one
/// bundle out.
std::vector<EncryptedHashComponents> aggregate_video(std::span<const EncryptedFrame> frames,
                                                     const PaillierPublicKey& pk,
                                                     int block_grid, Rng& rng,
                                                     unsigned threads = 0);

}  // namespace server

// Cross-process transfer formats (.hef encrypted frames, .hcm components,
// .json plaintext metadata); byte layouts in docs/FORMATS.md. Readers
// verify the embedded key fingerprint against the supplied key.

void save_encrypted_frames(const std::filesystem::path& path,
                           std::span<const EncryptedFrame> frames,
                           const PaillierPublicKey& pk, int block_grid);
std::vector<EncryptedFrame> load_encrypted_frames(const std::filesystem::path& path,
                                                  const PaillierPublicKey& pk,
                                                  int* block_grid_out = nullptr);

void save_components(const std::filesystem::path& path,
                     std::span<const EncryptedHashComponents> components,
                     const PaillierPublicKey& pk, int resolution, int block_grid);
std::vector<EncryptedHashComponents> load_components(const std::filesystem::path& path,
                                                     const PaillierPublicKey& pk);

void save_metadata(const std::filesystem::path& path, const PlainVideoMetadata& meta);
PlainVideoMetadata load_metadata(const std::filesystem::path& path);

}  // namespace hvh
