#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hvh/frame.hpp"

namespace hvh {

/// Synthetic corpus knobs. Videos are randomly parameterized moving
/// patterns (drifting sinusoid fields, moving shapes, evolving smooth
/// textures) chosen so distinct seeds give perceptually distinct content.
struct CorpusParams {
    int count = 200;
    double duration_lo_s = 2.0;
    double duration_hi_s = 6.0;
    double frame_rate = 30.0;
    int width = 96;
    int height = 96;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Deterministic per seed: the same params yield byte-identical streams.
std::vector<VideoStream> generate_corpus(const CorpusParams& params);

/// One synthetic video; exposed so tests and the bench CLI can generate
/// single clips.
VideoStream generate_video(std::uint64_t video_seed, int frame_count, double frame_rate,
                           int width, int height, std::string source_id);

}  // namespace hvh
