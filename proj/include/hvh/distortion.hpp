#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "hvh/frame.hpp"

namespace hvh {

/// One sampled manipulation: gamma correction, rescaling, a DCT
/// quantization compression surrogate, and additive Gaussian noise, in
/// that fixed order. Identity values (gamma 1, scale 1, no quality,
/// infinite SNR) leave frames untouched.
struct DistortionSpec {
    double gamma = 1.0;                     // [0.5, 2]
    double snr_db = std::numeric_limits<double>::infinity();  // [15, 60] or inf
    std::optional<double> quality;          // [2, 23], higher is stronger
    double scale = 1.0;                     // [0.25, 1]
    std::uint64_t seed = 0;

    void validate() const;
    bool is_identity() const;
    std::string describe() const;
};

/// Applies the distortion chain to every frame. Deterministic per spec
/// (noise is seeded per frame from spec.seed).
VideoStream apply_distortion(const VideoStream& stream, const DistortionSpec& spec);

/// Applies the chain to a single frame; exposed for calibration tests.
PixelMatrix distort_pixels(const PixelMatrix& pixels, const DistortionSpec& spec,
                           std::uint64_t frame_seed);

}  // namespace hvh
