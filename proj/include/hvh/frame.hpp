#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace hvh {

/// Row-major grid of 8-bit luma values; rows = height, cols = width.
using PixelMatrix =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// One decoded grayscale frame.
struct Frame {
    PixelMatrix pixels;
    std::uint32_t source_index = 0;

    int width() const { return static_cast<int>(pixels.cols()); }
    int height() const { return static_cast<int>(pixels.rows()); }

    bool operator==(const Frame&) const = default;
};

/// A frame after the resize + equalization chain: exactly F x F pixels.
struct PreprocessedFrame {
    PixelMatrix pixels;
    std::uint32_t source_index = 0;

    int resolution() const { return static_cast<int>(pixels.rows()); }

    bool operator==(const PreprocessedFrame&) const = default;
};

/// An ordered sequence of frames with a frame rate and a source label.
struct VideoStream {
    std::vector<Frame> frames;
    double frame_rate = 30.0;
    std::string source_id;

    bool operator==(const VideoStream&) const = default;
};

}  // namespace hvh
