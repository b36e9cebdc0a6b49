#include "imgkit/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace imgkit {

namespace {

void check_shape(int height, int width, int channels) {
    if (height < 1 || width < 1)
        throw std::invalid_argument("image dimensions must be positive");
    if (channels != 1 && channels != 3 && channels != 4)
        throw std::invalid_argument("channels must be 1, 3 or 4");
}

}  // namespace

ImageBuffer::ImageBuffer(int height, int width, int channels, ElemKind kind)
    : height_(height), width_(width), channels_(channels), kind_(kind) {
    check_shape(height, width, channels);
    const std::size_t n =
        static_cast<std::size_t>(height) * width * channels;
    if (kind == ElemKind::U8)
        bytes_.assign(n, 0);
    else
        floats_.assign(n, 0.0f);
}

ImageBuffer ImageBuffer::make_u8(int height, int width, int channels) {
    return ImageBuffer(height, width, channels, ElemKind::U8);
}

ImageBuffer ImageBuffer::make_f32(int height, int width, int channels) {
    return ImageBuffer(height, width, channels, ElemKind::F32);
}

std::span<const std::uint8_t> ImageBuffer::u8() const {
    if (!is_u8()) throw std::logic_error("image is not 8-bit");
    return bytes_;
}

std::span<std::uint8_t> ImageBuffer::u8() {
    if (!is_u8()) throw std::logic_error("image is not 8-bit");
    return bytes_;
}

std::span<const float> ImageBuffer::f32() const {
    if (!is_f32()) throw std::logic_error("image is not floating point");
    return floats_;
}

std::span<float> ImageBuffer::f32() {
    if (!is_f32()) throw std::logic_error("image is not floating point");
    return floats_;
}

ImageBuffer img_as_float(const ImageBuffer& img) {
    if (!img.is_u8()) throw std::invalid_argument("img_as_float expects a U8 image");
    ImageBuffer out(img.height(), img.width(), img.channels(), ElemKind::F32);
    auto src = img.u8();
    auto dst = out.f32();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = static_cast<float>(src[i]) / 255.0f;
    return out;
}

ImageBuffer img_as_ubyte(const ImageBuffer& img) {
    if (!img.is_f32()) throw std::invalid_argument("img_as_ubyte expects an F32 image");
    ImageBuffer out(img.height(), img.width(), img.channels(), ElemKind::U8);
    auto src = img.f32();
    auto dst = out.u8();
    for (std::size_t i = 0; i < src.size(); ++i) {
        double v = src[i];
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        dst[i] = static_cast<std::uint8_t>(std::round(v * 255.0));
    }
    return out;
}

Histogram histogram(const ImageBuffer& img) {
    if (img.channels() != 1)
        throw std::invalid_argument("histogram requires single channel");
    if (!img.is_u8())
        throw std::invalid_argument("histogram requires a U8 image");
    Histogram h;
    for (std::uint8_t v : img.u8()) ++h.counts[v];
    h.total = static_cast<long long>(img.height()) * img.width();
    return h;
}

ImageBuffer crop(const ImageBuffer& img, int r0, int r1, int c0, int c1) {
    if (r0 < 0 || r1 > img.height() || r0 >= r1)
        throw std::out_of_range("crop: row range [" + std::to_string(r0) + ", " +
                                std::to_string(r1) + ") out of bounds");
    if (c0 < 0 || c1 > img.width() || c0 >= c1)
        throw std::out_of_range("crop: col range [" + std::to_string(c0) + ", " +
                                std::to_string(c1) + ") out of bounds");
    ImageBuffer out(r1 - r0, c1 - c0, img.channels(), img.kind());
    const int ch = img.channels();
    const std::size_t row_bytes = static_cast<std::size_t>(c1 - c0) * ch;
    for (int r = r0; r < r1; ++r) {
        const std::size_t src_off = img.index(r, c0, 0);
        const std::size_t dst_off = out.index(r - r0, 0, 0);
        if (img.is_u8()) {
            auto src = img.u8();
            auto dst = out.u8();
            for (std::size_t i = 0; i < row_bytes; ++i) dst[dst_off + i] = src[src_off + i];
        } else {
            auto src = img.f32();
            auto dst = out.f32();
            for (std::size_t i = 0; i < row_bytes; ++i) dst[dst_off + i] = src[src_off + i];
        }
    }
    return out;
}

}  // namespace imgkit
