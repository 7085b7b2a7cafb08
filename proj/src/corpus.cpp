#include "hvh/corpus.hpp"

#include <cmath>
#include <random>

#include "hvh/errors.hpp"
#include "hvh/rng.hpp"

namespace hvh {

namespace {

struct Wave {
    double kx, ky, omega, phase, amplitude;
};

struct Shape {
    double cx, cy, vx, vy, half_w, half_h;
    double level;
    bool round;
};

// Smooth superposition of drifting plane waves; the workhorse pattern.
// base_level sits below mid-gray: natural video skews dark of 128.
PixelMatrix render_waves(const std::vector<Wave>& waves, double base_level, int w, int h,
                         int t) {
    PixelMatrix px(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double v = base_level;
            for (const Wave& wave : waves) {
                v += wave.amplitude *
                     std::sin(wave.kx * x + wave.ky * y + wave.omega * t + wave.phase);
            }
            px(y, x) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
        }
    }
    return px;
}

PixelMatrix render_shapes(const std::vector<Shape>& shapes, double bg_angle, double bg_lo,
                          int w, int h, int t) {
    const double gx = std::cos(bg_angle), gy = std::sin(bg_angle);
    PixelMatrix px(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double proj = (gx * x / w + gy * y / h + 1.0) / 2.0;
            double v = bg_lo + 130.0 * proj;
            for (const Shape& s : shapes) {
                double cx = std::fmod(s.cx + s.vx * t, static_cast<double>(w));
                double cy = std::fmod(s.cy + s.vy * t, static_cast<double>(h));
                if (cx < 0) cx += w;
                if (cy < 0) cy += h;
                double dx = std::abs(x - cx), dy = std::abs(y - cy);
                dx = std::min(dx, w - dx);  // wraparound distance
                dy = std::min(dy, h - dy);
                const bool inside = s.round
                                        ? (dx * dx) / (s.half_w * s.half_w) +
                                                  (dy * dy) / (s.half_h * s.half_h) <=
                                              1.0
                                        : dx <= s.half_w && dy <= s.half_h;
                if (inside) v = s.level;
            }
            px(y, x) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
        }
    }
    return px;
}

}  // namespace

void CorpusParams::validate() const {
    if (count < 2) throw ConfigError("corpus count must be >= 2");
    if (duration_lo_s <= 0 || duration_hi_s < duration_lo_s) {
        throw ConfigError("duration range must satisfy 0 < lo <= hi");
    }
    if (frame_rate <= 0) throw ConfigError("frame rate must be positive");
    if (width < 64 || height < 64) throw ConfigError("corpus frames must be at least 64x64");
}

VideoStream generate_video(std::uint64_t video_seed, int frame_count, double frame_rate,
                           int width, int height, std::string source_id) {
    if (frame_count < 1) throw ConfigError("frame count must be >= 1");
    std::mt19937_64 gen(video_seed);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    };
    auto pick = [&](int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); };

    VideoStream stream;
    stream.frame_rate = frame_rate;
    stream.source_id = std::move(source_id);
    stream.frames.reserve(static_cast<std::size_t>(frame_count));

    const int kind = pick(3);
    if (kind == 0 || kind == 2) {
        // kind 0: few large slow waves; kind 2: busier evolving texture.
        const int n_waves = (kind == 0) ? 3 : 5;
        const double freq_hi = (kind == 0) ? 0.08 : 0.16;
        const double base_level = uniform(92.0, 122.0);
        std::vector<Wave> waves;
        for (int i = 0; i < n_waves; ++i) {
            Wave wv;
            wv.kx = uniform(0.02, freq_hi) * (pick(2) ? 1 : -1);
            wv.ky = uniform(0.02, freq_hi) * (pick(2) ? 1 : -1);
            wv.omega = uniform(0.06, 0.28) * (pick(2) ? 1 : -1);
            wv.phase = uniform(0.0, 2.0 * std::acos(-1.0));
            wv.amplitude = uniform(25.0, 45.0) / std::sqrt(static_cast<double>(n_waves) / 3.0);
            waves.push_back(wv);
        }
        for (int t = 0; t < frame_count; ++t) {
            Frame f;
            f.source_index = static_cast<std::uint32_t>(t);
            f.pixels = render_waves(waves, base_level, width, height, t);
            stream.frames.push_back(std::move(f));
        }
    } else {
        std::vector<Shape> shapes;
        const int n_shapes = 2 + pick(3);
        for (int i = 0; i < n_shapes; ++i) {
            Shape s;
            s.cx = uniform(0.0, width);
            s.cy = uniform(0.0, height);
            s.vx = uniform(0.6, 2.2) * (pick(2) ? 1 : -1);
            s.vy = uniform(0.6, 2.2) * (pick(2) ? 1 : -1);
            s.half_w = uniform(10.0, 22.0);
            s.half_h = uniform(10.0, 22.0);
            s.level = pick(2) ? uniform(0.0, 40.0) : uniform(215.0, 255.0);
            s.round = pick(2) == 0;
            shapes.push_back(s);
        }
        const double bg_angle = uniform(0.0, 2.0 * std::acos(-1.0));
        const double bg_lo = uniform(25.0, 55.0);
        for (int t = 0; t < frame_count; ++t) {
            Frame f;
            f.source_index = static_cast<std::uint32_t>(t);
            f.pixels = render_shapes(shapes, bg_angle, bg_lo, width, height, t);
            stream.frames.push_back(std::move(f));
        }
    }
    return stream;
}

std::vector<VideoStream> generate_corpus(const CorpusParams& params) {
    params.validate();
    std::vector<VideoStream> corpus;
    corpus.reserve(static_cast<std::size_t>(params.count));
    for (int i = 0; i < params.count; ++i) {
        const std::uint64_t video_seed =
            mix_seed(params.seed ^ mix_seed(static_cast<std::uint64_t>(i) + 1));
        std::mt19937_64 gen(video_seed ^ 0xd1b54a32d192ed03ull);
        const double duration = std::uniform_real_distribution<double>(
            params.duration_lo_s, params.duration_hi_s)(gen);
        const int frames =
            std::max(1, static_cast<int>(std::lround(duration * params.frame_rate)));
        char id[32];
        std::snprintf(id, sizeof(id), "synth-%04d", i);
        corpus.push_back(generate_video(video_seed, frames, params.frame_rate, params.width,
                                        params.height, id));
    }
    return corpus;
}

}  // namespace hvh
