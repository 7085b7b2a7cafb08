#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "hvh/errors.hpp"

namespace hvh::io {

// Little-endian fixed-width encoding helpers shared by the .hvh and index
// file formats. Layouts are documented in docs/FORMATS.md.

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f64(std::vector<std::uint8_t>& out, double v) {
    static_assert(sizeof(double) == 8);
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

/// Bounds-checked sequential reader over a byte span.
class Reader {
public:
    Reader(std::span<const std::uint8_t> bytes, std::string context)
        : bytes_(bytes), context_(std::move(context)) {}

    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

    std::span<const std::uint8_t> take(std::size_t count) {
        if (remaining() < count) {
            throw ParseError(context_ + ": truncated, needed " + std::to_string(count) +
                                 " more bytes but only " + std::to_string(remaining()) + " left",
                             pos_);
        }
        auto s = bytes_.subspan(pos_, count);
        pos_ += count;
        return s;
    }

    std::uint8_t u8() { return take(1)[0]; }

    std::uint16_t u16() {
        auto s = take(2);
        return static_cast<std::uint16_t>(s[0] | (s[1] << 8));
    }

    std::uint32_t u32() {
        auto s = take(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(s[i]) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        auto s = take(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(s[i]) << (8 * i);
        return v;
    }

    double f64() {
        std::uint64_t bits = u64();
        double v = 0;
        std::memcpy(&v, &bits, 8);
        return v;
    }

    void expect_magic(std::string_view magic) {
        std::size_t at = pos_;
        auto s = take(magic.size());
        if (!std::equal(magic.begin(), magic.end(), s.begin())) {
            throw ParseError(context_ + ": bad magic, expected \"" + std::string(magic) + "\"", at);
        }
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::string context_;
    std::size_t pos_ = 0;
};

}  // namespace hvh::io
