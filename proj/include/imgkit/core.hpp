#ifndef IMGKIT_CORE_HPP
#define IMGKIT_CORE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace imgkit {

enum class ElemKind { U8, F32 };

// Integer pixel position, (row, col) order.
struct PixelCoord {
    int row = 0;
    int col = 0;
    auto operator<=>(const PixelCoord&) const = default;
};

// Point in transform space, (x, y) = (col, row) order. The row/col <-> x/y
// conversion happens only at the transform boundary (apply/warp).
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Rectangular pixel array, row-major, channel-interleaved.
// U8 samples span {0..255}; F32 samples of valid images lie in [0, 1]
// (the -1 background sentinel used by warping is the documented exception).
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int height, int width, int channels, ElemKind kind);

    static ImageBuffer make_u8(int height, int width, int channels = 1);
    static ImageBuffer make_f32(int height, int width, int channels = 1);

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }
    ElemKind kind() const { return kind_; }
    bool is_u8() const { return kind_ == ElemKind::U8; }
    bool is_f32() const { return kind_ == ElemKind::F32; }
    bool empty() const { return height_ == 0; }
    std::size_t size() const {
        return static_cast<std::size_t>(height_) * width_ * channels_;
    }

    std::size_t index(int r, int c, int ch = 0) const {
        return (static_cast<std::size_t>(r) * width_ + c) * channels_ + ch;
    }

    std::span<const std::uint8_t> u8() const;
    std::span<std::uint8_t> u8();
    std::span<const float> f32() const;
    std::span<float> f32();

    std::uint8_t u8_at(int r, int c, int ch = 0) const { return u8()[index(r, c, ch)]; }
    std::uint8_t& u8_at(int r, int c, int ch = 0) { return u8()[index(r, c, ch)]; }
    float f32_at(int r, int c, int ch = 0) const { return f32()[index(r, c, ch)]; }
    float& f32_at(int r, int c, int ch = 0) { return f32()[index(r, c, ch)]; }

    // Numeric view independent of element kind: U8 values read as 0..255.
    double value_at(int r, int c, int ch = 0) const {
        return is_u8() ? static_cast<double>(u8_at(r, c, ch))
                       : static_cast<double>(f32_at(r, c, ch));
    }

private:
    int height_ = 0;
    int width_ = 0;
    int channels_ = 1;
    ElemKind kind_ = ElemKind::U8;
    std::vector<std::uint8_t> bytes_;
    std::vector<float> floats_;
};

// reflect-101 boundary index: ... 2 1 | 0 1 2 ... n-1 | n-2 n-3 ...
// (the edge sample is not duplicated).
inline int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n - 2;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - m;
}

struct Histogram {
    std::array<long long, 256> counts{};
    long long total = 0;
};

// out(p) = in(p) / 255
ImageBuffer img_as_float(const ImageBuffer& img);

// out(p) = round_half_away_from_zero(clamp(in(p), 0, 1) * 255)
ImageBuffer img_as_ubyte(const ImageBuffer& img);

// 256-bin intensity histogram of a single-channel U8 image.
Histogram histogram(const ImageBuffer& img);

// Half-open crop [r0, r1) x [c0, c1).
ImageBuffer crop(const ImageBuffer& img, int r0, int r1, int c0, int c1);

// 31-bit linear congruential generator used wherever a seeded deterministic
// sample stream is needed (BRIEF offsets, RANSAC sampling).
class Lcg31 {
public:
    explicit Lcg31(std::uint32_t seed) : state_(seed & 0x7fffffffu) {}
    std::uint32_t next() {
        state_ = static_cast<std::uint32_t>(
            (1103515245ull * state_ + 12345ull) & 0x7fffffffull);
        return state_;
    }

private:
    std::uint32_t state_;
};

}  // namespace imgkit

#endif
