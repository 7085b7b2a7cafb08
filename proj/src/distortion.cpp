#include "hvh/distortion.hpp"

#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "hvh/errors.hpp"
#include "hvh/media_ingest.hpp"
#include "hvh/rng.hpp"

namespace hvh {

namespace {

// JPEG Annex K luminance quantization table.
constexpr std::array<int, 64> kLumaQuant = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99};

// Quality 2 (mild) .. 23 (strong) maps linearly onto this table multiplier.
constexpr double kQuantMultMin = 0.1;
constexpr double kQuantMultMax = 2.0;

using Block8 = Eigen::Matrix<double, 8, 8>;

const Block8& dct_basis() {
    static const Block8 basis = [] {
        Block8 c;
        const double pi = std::acos(-1.0);
        for (int u = 0; u < 8; ++u) {
            const double a = (u == 0) ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int x = 0; x < 8; ++x) {
                c(u, x) = a * std::cos((2 * x + 1) * u * pi / 16.0);
            }
        }
        return c;
    }();
    return basis;
}

PixelMatrix apply_gamma(const PixelMatrix& px, double gamma) {
    std::array<std::uint8_t, 256> lut;
    for (int v = 0; v < 256; ++v) {
        lut[v] = static_cast<std::uint8_t>(
            std::clamp(std::lround(255.0 * std::pow(v / 255.0, gamma)), 0l, 255l));
    }
    PixelMatrix out(px.rows(), px.cols());
    for (Eigen::Index i = 0; i < px.size(); ++i) out.data()[i] = lut[px.data()[i]];
    return out;
}

PixelMatrix apply_scale(const PixelMatrix& px, double scale) {
    const int rows = static_cast<int>(px.rows());
    const int cols = static_cast<int>(px.cols());
    const int down_rows = std::max(1, static_cast<int>(std::lround(rows * scale)));
    const int down_cols = std::max(1, static_cast<int>(std::lround(cols * scale)));
    return resize_bilinear(resize_bilinear(px, down_rows, down_cols), rows, cols);
}

PixelMatrix apply_compression(const PixelMatrix& px, double quality) {
    const double t = (quality - 2.0) / (23.0 - 2.0);
    const double mult = kQuantMultMin + t * (kQuantMultMax - kQuantMultMin);

    const int rows = static_cast<int>(px.rows());
    const int cols = static_cast<int>(px.cols());
    const int padded_rows = (rows + 7) / 8 * 8;
    const int padded_cols = (cols + 7) / 8 * 8;

    // Edge-replicated pad to an 8x8 grid, level-shifted to [-128, 127].
    Eigen::MatrixXd work(padded_rows, padded_cols);
    for (int r = 0; r < padded_rows; ++r) {
        const int sr = std::min(r, rows - 1);
        for (int c = 0; c < padded_cols; ++c) {
            work(r, c) = static_cast<double>(px(sr, std::min(c, cols - 1))) - 128.0;
        }
    }

    const Block8& basis = dct_basis();
    for (int br = 0; br < padded_rows; br += 8) {
        for (int bc = 0; bc < padded_cols; bc += 8) {
            Block8 block = work.block<8, 8>(br, bc);
            Block8 coef = basis * block * basis.transpose();
            for (int i = 0; i < 8; ++i) {
                for (int j = 0; j < 8; ++j) {
                    const double q = kLumaQuant[i * 8 + j] * mult;
                    coef(i, j) = std::round(coef(i, j) / q) * q;
                }
            }
            work.block<8, 8>(br, bc) = basis.transpose() * coef * basis;
        }
    }

    PixelMatrix out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            out(r, c) = static_cast<std::uint8_t>(
                std::clamp(std::lround(work(r, c) + 128.0), 0l, 255l));
        }
    }
    return out;
}

double mean_squared_value(const PixelMatrix& px) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < px.size(); ++i) {
        const double v = px.data()[i];
        acc += v * v;
    }
    return acc / static_cast<double>(px.size());
}

PixelMatrix apply_noise(const PixelMatrix& px, double sigma, std::uint64_t frame_seed) {
    std::mt19937_64 gen(frame_seed);
    std::normal_distribution<double> noise(0.0, sigma);
    PixelMatrix out(px.rows(), px.cols());
    for (Eigen::Index i = 0; i < px.size(); ++i) {
        const double v = px.data()[i] + noise(gen);
        out.data()[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
    }
    return out;
}

}  // namespace

void DistortionSpec::validate() const {
    if (gamma < 0.5 || gamma > 2.0) throw ConfigError("gamma must be in [0.5, 2]");
    if (!std::isinf(snr_db) && (snr_db < 15.0 || snr_db > 60.0)) {
        throw ConfigError("snr_db must be in [15, 60] or infinite");
    }
    if (quality && (*quality < 2.0 || *quality > 23.0)) {
        throw ConfigError("quality must be in [2, 23] or absent");
    }
    if (scale < 0.25 || scale > 1.0) throw ConfigError("scale must be in [0.25, 1]");
}

bool DistortionSpec::is_identity() const {
    return gamma == 1.0 && std::isinf(snr_db) && !quality && scale == 1.0;
}

std::string DistortionSpec::describe() const {
    std::ostringstream os;
    os << "gamma=" << gamma << " scale=" << scale;
    if (quality) os << " quality=" << *quality;
    if (!std::isinf(snr_db)) os << " snr_db=" << snr_db;
    return os.str();
}

PixelMatrix distort_pixels(const PixelMatrix& pixels, const DistortionSpec& spec,
                           std::uint64_t frame_seed) {
    PixelMatrix out = pixels;
    if (spec.gamma != 1.0) out = apply_gamma(out, spec.gamma);
    if (spec.scale != 1.0) out = apply_scale(out, spec.scale);
    if (spec.quality) out = apply_compression(out, *spec.quality);
    if (!std::isinf(spec.snr_db)) {
        // The noise power is set by the source frame, not the partially
        // distorted one, so the injected noise depends only on the SNR
        // draw and the per-parameter sensitivity buckets stay unconfounded.
        const double sigma =
            std::sqrt(mean_squared_value(pixels) / std::pow(10.0, spec.snr_db / 10.0));
        out = apply_noise(out, sigma, frame_seed);
    }
    return out;
}

VideoStream apply_distortion(const VideoStream& stream, const DistortionSpec& spec) {
    spec.validate();
    VideoStream out;
    out.frame_rate = stream.frame_rate;
    out.source_id = stream.source_id;
    out.frames.reserve(stream.frames.size());
    for (const Frame& f : stream.frames) {
        Frame g;
        g.source_index = f.source_index;
        g.pixels = distort_pixels(f.pixels, spec, mix_seed(spec.seed ^ (f.source_index * 0x9e3779b97f4a7c15ull)));
        out.frames.push_back(std::move(g));
    }
    return out;
}

}  // namespace hvh
