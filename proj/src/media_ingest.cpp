#include "hvh/media_ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hvh/errors.hpp"

namespace hvh {

namespace {

struct Y4mHeader {
    int width = -1;
    int height = -1;
    long rate_num = 30;
    long rate_den = 1;
    Y4mChroma chroma = Y4mChroma::kC420;
};

Y4mChroma parse_chroma_tag(const std::string& tag, std::size_t offset) {
    if (tag == "420" || tag == "420jpeg" || tag == "420mpeg2" || tag == "420paldv") {
        return Y4mChroma::kC420;
    }
    if (tag == "422") return Y4mChroma::kC422;
    if (tag == "444") return Y4mChroma::kC444;
    if (tag == "mono") return Y4mChroma::kMono;
    if (tag.find("p10") != std::string::npos || tag.find("p12") != std::string::npos ||
        tag.find("p14") != std::string::npos || tag.find("p16") != std::string::npos) {
        throw ParseError("Y4M: unsupported bit depth in colourspace C" + tag, offset);
    }
    throw ParseError("Y4M: unsupported colourspace C" + tag, offset);
}

std::size_t chroma_plane_bytes(Y4mChroma chroma, int w, int h) {
    std::size_t cw = (static_cast<std::size_t>(w) + 1) / 2;
    std::size_t ch = (static_cast<std::size_t>(h) + 1) / 2;
    switch (chroma) {
        case Y4mChroma::kC420: return cw * ch;
        case Y4mChroma::kC422: return cw * static_cast<std::size_t>(h);
        case Y4mChroma::kC444: return static_cast<std::size_t>(w) * h;
        case Y4mChroma::kMono: return 0;
    }
    return 0;
}

const char* chroma_tag(Y4mChroma chroma) {
    switch (chroma) {
        case Y4mChroma::kC420: return "420jpeg";
        case Y4mChroma::kC422: return "422";
        case Y4mChroma::kC444: return "444";
        case Y4mChroma::kMono: return "mono";
    }
    return "420jpeg";
}

Y4mHeader parse_y4m_header(std::span<const std::uint8_t> bytes, std::size_t& pos) {
    constexpr std::string_view kSignature = "YUV4MPEG2";
    if (bytes.size() < kSignature.size() ||
        !std::equal(kSignature.begin(), kSignature.end(), bytes.begin())) {
        throw ParseError("Y4M: missing YUV4MPEG2 signature", 0);
    }
    std::size_t eol = kSignature.size();
    while (eol < bytes.size() && bytes[eol] != '\n') ++eol;
    if (eol == bytes.size()) {
        throw ParseError("Y4M: unterminated stream header", eol);
    }

    Y4mHeader hdr;
    std::size_t i = kSignature.size();
    while (i < eol) {
        if (bytes[i] == ' ') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < eol && bytes[i] != ' ') ++i;
        std::string tag(reinterpret_cast<const char*>(bytes.data()) + start, i - start);
        try {
            switch (tag[0]) {
                case 'W': hdr.width = std::stoi(tag.substr(1)); break;
                case 'H': hdr.height = std::stoi(tag.substr(1)); break;
                case 'F': {
                    auto colon = tag.find(':');
                    if (colon == std::string::npos) {
                        throw ParseError("Y4M: malformed frame-rate tag " + tag, start);
                    }
                    hdr.rate_num = std::stol(tag.substr(1, colon - 1));
                    hdr.rate_den = std::stol(tag.substr(colon + 1));
                    break;
                }
                case 'C': hdr.chroma = parse_chroma_tag(tag.substr(1), start); break;
                case 'I':
                case 'A':
                case 'X': break;  // interlacing/aspect/comments: ignored
                default: break;
            }
        } catch (const std::invalid_argument&) {
            throw ParseError("Y4M: malformed header tag " + tag, start);
        } catch (const std::out_of_range&) {
            throw ParseError("Y4M: header tag out of range " + tag, start);
        }
    }

    if (hdr.width <= 0 || hdr.height <= 0) {
        throw ParseError("Y4M: header is missing a positive W/H tag", eol);
    }
    if (hdr.rate_num <= 0 || hdr.rate_den <= 0) {
        throw ParseError("Y4M: frame rate must be positive", eol);
    }
    pos = eol + 1;
    return hdr;
}

// Smallest continued-fraction rational for a frame rate, so headers we
// write parse back to the identical double.
std::pair<long, long> rate_to_rational(double rate) {
    double integral = std::floor(rate);
    if (rate == integral && integral >= 1) return {static_cast<long>(integral), 1};
    long best_num = 30, best_den = 1;
    double best_err = std::abs(rate - 30.0);
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double x = rate;
    for (int iter = 0; iter < 32; ++iter) {
        long a = static_cast<long>(std::floor(x));
        long h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 <= 0 || k2 > 1000000) break;
        double err = std::abs(rate - static_cast<double>(h2) / k2);
        if (err < best_err) {
            best_err = err;
            best_num = h2;
            best_den = k2;
        }
        if (err == 0.0) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double frac = x - a;
        if (frac <= 0) break;
        x = 1.0 / frac;
    }
    return {best_num, best_den};
}

}  // namespace

VideoStream parse_y4m(std::span<const std::uint8_t> bytes, std::string source_id) {
    std::size_t pos = 0;
    Y4mHeader hdr = parse_y4m_header(bytes, pos);

    const std::size_t luma_bytes =
        static_cast<std::size_t>(hdr.width) * static_cast<std::size_t>(hdr.height);
    const std::size_t chroma_bytes = 2 * chroma_plane_bytes(hdr.chroma, hdr.width, hdr.height);

    VideoStream stream;
    stream.frame_rate = static_cast<double>(hdr.rate_num) / static_cast<double>(hdr.rate_den);
    stream.source_id = std::move(source_id);

    constexpr std::string_view kFrameMarker = "FRAME";
    std::uint32_t index = 0;
    while (pos < bytes.size()) {
        if (bytes.size() - pos < kFrameMarker.size() ||
            !std::equal(kFrameMarker.begin(), kFrameMarker.end(), bytes.begin() + pos)) {
            throw ParseError("Y4M: expected FRAME marker for frame " + std::to_string(index),
                             pos);
        }
        std::size_t eol = pos + kFrameMarker.size();
        while (eol < bytes.size() && bytes[eol] != '\n') ++eol;
        if (eol == bytes.size()) {
            throw ParseError("Y4M: unterminated FRAME header for frame " + std::to_string(index),
                             pos);
        }
        pos = eol + 1;

        if (bytes.size() - pos < luma_bytes + chroma_bytes) {
            throw ParseError("Y4M: truncated payload for frame " + std::to_string(index), pos);
        }
        Frame frame;
        frame.source_index = index;
        frame.pixels.resize(hdr.height, hdr.width);
        std::memcpy(frame.pixels.data(), bytes.data() + pos, luma_bytes);
        pos += luma_bytes + chroma_bytes;  // chroma parsed and skipped
        stream.frames.push_back(std::move(frame));
        ++index;
    }

    if (stream.frames.empty()) {
        throw ParseError("Y4M: stream contains no frames", pos);
    }
    return stream;
}

std::vector<std::uint8_t> serialize_y4m(const VideoStream& stream, Y4mChroma chroma) {
    if (stream.frames.empty()) throw Error("cannot serialize an empty stream");
    const int w = stream.frames.front().width();
    const int h = stream.frames.front().height();
    auto [num, den] = rate_to_rational(stream.frame_rate);

    std::ostringstream header;
    header << "YUV4MPEG2 W" << w << " H" << h << " F" << num << ":" << den << " Ip A1:1 C"
           << chroma_tag(chroma) << "\n";
    std::string head = header.str();

    const std::size_t luma_bytes = static_cast<std::size_t>(w) * h;
    const std::size_t chroma_bytes = 2 * chroma_plane_bytes(chroma, w, h);

    std::vector<std::uint8_t> out;
    out.reserve(head.size() + stream.frames.size() * (6 + luma_bytes + chroma_bytes));
    out.insert(out.end(), head.begin(), head.end());
    for (const Frame& f : stream.frames) {
        if (f.width() != w || f.height() != h) {
            throw Error("cannot serialize: frame dimensions vary across the stream");
        }
        static constexpr std::string_view kMarker = "FRAME\n";
        out.insert(out.end(), kMarker.begin(), kMarker.end());
        out.insert(out.end(), f.pixels.data(), f.pixels.data() + luma_bytes);
        out.insert(out.end(), chroma_bytes, std::uint8_t{128});
    }
    return out;
}

PixelMatrix parse_pnm(std::span<const std::uint8_t> bytes, const std::string& name) {
    if (bytes.size() < 2 || bytes[0] != 'P') {
        throw ParseError(name + ": not a PNM raster", 0);
    }
    const char kind = static_cast<char>(bytes[1]);
    if (kind != '5' && kind != '6') {
        throw ParseError(name + ": only binary PGM (P5) and PPM (P6) are supported, got P" +
                             std::string(1, kind),
                         1);
    }

    std::size_t pos = 2;
    auto next_int = [&](const char* what) {
        while (pos < bytes.size()) {
            if (std::isspace(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
        if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
            throw ParseError(name + ": expected " + std::string(what) + " in header", pos);
        }
        long v = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1 << 20) throw ParseError(name + ": header value too large", pos);
            ++pos;
        }
        return v;
    };

    const long w = next_int("width");
    const long h = next_int("height");
    const long maxval = next_int("maxval");
    if (maxval != 255) {
        throw ParseError(name + ": only maxval 255 is supported, got " + std::to_string(maxval),
                         pos);
    }
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
        throw ParseError(name + ": missing whitespace before raster data", pos);
    }
    ++pos;

    const std::size_t channels = (kind == '5') ? 1 : 3;
    const std::size_t need = static_cast<std::size_t>(w) * h * channels;
    if (bytes.size() - pos < need) {
        throw ParseError(name + ": truncated raster data", pos);
    }

    PixelMatrix px(h, w);
    if (kind == '5') {
        std::memcpy(px.data(), bytes.data() + pos, need);
    } else {
        const std::uint8_t* p = bytes.data() + pos;
        for (long i = 0; i < w * h; ++i) {
            const unsigned r = p[3 * i], g = p[3 * i + 1], b = p[3 * i + 2];
            px.data()[i] = static_cast<std::uint8_t>((77 * r + 150 * g + 29 * b + 128) >> 8);
        }
    }
    return px;
}

void write_pgm(const std::filesystem::path& path, const PixelMatrix& pixels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "P5\n" << pixels.cols() << " " << pixels.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

VideoStream load_frame_directory(const std::filesystem::path& dir, double frame_rate) {
    if (frame_rate <= 0) throw ConfigError("frame rate must be positive");
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("not a directory: " + dir.string());
    }

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") files.push_back(entry.path());
    }
    if (files.empty()) {
        throw IoError("no .pgm/.ppm frames found in " + dir.string());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

    VideoStream stream;
    stream.frame_rate = frame_rate;
    stream.source_id = dir.filename().string();
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::ifstream in(files[i], std::ios::binary);
        if (!in) throw IoError("cannot read " + files[i].string());
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
        Frame frame;
        frame.pixels = parse_pnm(bytes, files[i].filename().string());
        frame.source_index = static_cast<std::uint32_t>(i);
        if (i > 0 && (frame.width() != stream.frames.front().width() ||
                      frame.height() != stream.frames.front().height())) {
            throw Error("frame dimension mismatch: " + files[i].filename().string() + " is " +
                        std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
                        " but earlier frames are " + std::to_string(stream.frames.front().width()) +
                        "x" + std::to_string(stream.frames.front().height()));
        }
        stream.frames.push_back(std::move(frame));
    }
    return stream;
}

PixelMatrix resize_bilinear(const PixelMatrix& src, int out_rows, int out_cols) {
    if (out_rows <= 0 || out_cols <= 0) {
        throw ConfigError("resize target must be positive");
    }
    if (src.rows() == out_rows && src.cols() == out_cols) return src;

    const int in_rows = static_cast<int>(src.rows());
    const int in_cols = static_cast<int>(src.cols());

    // Pixel-center mapping: dst pixel r samples src at (r + 0.5) * in/out - 0.5.
    PixelMatrix out(out_rows, out_cols);
    for (int r = 0; r < out_rows; ++r) {
        double sr = (r + 0.5) * in_rows / out_rows - 0.5;
        sr = std::clamp(sr, 0.0, static_cast<double>(in_rows - 1));
        const int r0 = static_cast<int>(sr);
        const int r1 = std::min(r0 + 1, in_rows - 1);
        const double fr = sr - r0;
        for (int c = 0; c < out_cols; ++c) {
            double sc = (c + 0.5) * in_cols / out_cols - 0.5;
            sc = std::clamp(sc, 0.0, static_cast<double>(in_cols - 1));
            const int c0 = static_cast<int>(sc);
            const int c1 = std::min(c0 + 1, in_cols - 1);
            const double fc = sc - c0;
            const double v = src(r0, c0) * (1.0 - fr) * (1.0 - fc) +
                             src(r0, c1) * (1.0 - fr) * fc +
                             src(r1, c0) * fr * (1.0 - fc) +  //
                             src(r1, c1) * fr * fc;
            out(r, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
        }
    }
    return out;
}

PixelMatrix equalize_histogram(const PixelMatrix& img) {
    const std::size_t total = static_cast<std::size_t>(img.size());
    if (total == 0) return img;

    std::array<std::size_t, 256> hist{};
    for (std::size_t i = 0; i < total; ++i) ++hist[img.data()[i]];

    std::array<std::size_t, 256> cdf{};
    std::partial_sum(hist.begin(), hist.end(), cdf.begin());

    std::size_t cdf_min = 0;
    for (std::size_t count : cdf) {
        if (count > 0) {
            cdf_min = count;
            break;
        }
    }
    if (cdf_min == total) return img;  // single intensity level

    const double denom = static_cast<double>(total - cdf_min);
    std::array<std::uint8_t, 256> lut{};
    for (int v = 0; v < 256; ++v) {
        const double num = cdf[v] > cdf_min ? static_cast<double>(cdf[v] - cdf_min) : 0.0;
        lut[v] = static_cast<std::uint8_t>(std::clamp(std::lround(255.0 * num / denom), 0l, 255l));
    }

    PixelMatrix out(img.rows(), img.cols());
    for (std::size_t i = 0; i < total; ++i) out.data()[i] = lut[img.data()[i]];
    return out;
}

PreprocessedFrame preprocess(const Frame& f, int resolution) {
    PreprocessedFrame out;
    out.source_index = f.source_index;
    out.pixels = equalize_histogram(resize_bilinear(f.pixels, resolution, resolution));
    return out;
}

}  // namespace hvh
