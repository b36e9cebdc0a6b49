#include "imgkit/color.hpp"

#include <stdexcept>

namespace imgkit {

ImageBuffer rgb2gray(const ImageBuffer& img) {
    if (img.channels() != 3)
        throw std::invalid_argument("rgb2gray requires a 3-channel image");
    ImageBuffer converted;
    const ImageBuffer* src = &img;
    if (img.is_u8()) {
        converted = img_as_float(img);
        src = &converted;
    }
    ImageBuffer out = ImageBuffer::make_f32(img.height(), img.width(), 1);
    auto in = src->f32();
    auto dst = out.f32();
    const std::size_t n = dst.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = 3 * i;
        dst[i] = static_cast<float>(kLumaR * in[b] + kLumaG * in[b + 1] +
                                    kLumaB * in[b + 2]);
    }
    return out;
}

ImageBuffer gray2rgb(const ImageBuffer& img) {
    if (img.channels() != 1)
        throw std::invalid_argument("gray2rgb requires a single-channel image");
    ImageBuffer out(img.height(), img.width(), 3, img.kind());
    const std::size_t n = img.size();
    if (img.is_u8()) {
        auto in = img.u8();
        auto dst = out.u8();
        for (std::size_t i = 0; i < n; ++i)
            dst[3 * i] = dst[3 * i + 1] = dst[3 * i + 2] = in[i];
    } else {
        auto in = img.f32();
        auto dst = out.f32();
        for (std::size_t i = 0; i < n; ++i)
            dst[3 * i] = dst[3 * i + 1] = dst[3 * i + 2] = in[i];
    }
    return out;
}

ImageBuffer add_alpha(const ImageBuffer& img, float background) {
    if (img.channels() != 1)
        throw std::invalid_argument("add_alpha requires a single-channel image");
    if (!img.is_f32())
        throw std::invalid_argument("add_alpha requires an F32 image");
    ImageBuffer out = ImageBuffer::make_f32(img.height(), img.width(), 4);
    auto in = img.f32();
    auto dst = out.f32();
    const std::size_t n = in.size();
    for (std::size_t i = 0; i < n; ++i) {
        const float v = in[i];
        dst[4 * i] = dst[4 * i + 1] = dst[4 * i + 2] = v;
        dst[4 * i + 3] = (v != background) ? 1.0f : 0.0f;
    }
    return out;
}

}  // namespace imgkit
