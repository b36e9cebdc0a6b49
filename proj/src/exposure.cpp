#include "imgkit/exposure.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace imgkit {

namespace {

int quantize_bin(float v) {
    int bin = static_cast<int>(std::floor(static_cast<double>(v) * 256.0));
    if (bin < 0) bin = 0;
    if (bin > 255) bin = 255;
    return bin;
}

}  // namespace

ImageBuffer equalize_hist(const ImageBuffer& img) {
    if (img.channels() != 1)
        throw std::invalid_argument("equalize_hist requires a single-channel image");

    std::array<long long, 256> counts{};
    const std::size_t n = img.size();
    if (img.is_u8()) {
        for (std::uint8_t v : img.u8()) ++counts[v];
    } else {
        for (float v : img.f32()) ++counts[quantize_bin(v)];
    }

    std::array<double, 256> cdf{};
    long long running = 0;
    for (int b = 0; b < 256; ++b) {
        running += counts[b];
        cdf[b] = static_cast<double>(running) / static_cast<double>(n);
    }

    ImageBuffer out = ImageBuffer::make_f32(img.height(), img.width(), 1);
    auto dst = out.f32();
    if (img.is_u8()) {
        auto src = img.u8();
        for (std::size_t i = 0; i < n; ++i)
            dst[i] = static_cast<float>(cdf[src[i]]);
    } else {
        auto src = img.f32();
        for (std::size_t i = 0; i < n; ++i)
            dst[i] = static_cast<float>(cdf[quantize_bin(src[i])]);
    }
    return out;
}

ImageBuffer rescale_intensity(const ImageBuffer& img, double in_lo, double in_hi,
                              double out_lo, double out_hi) {
    if (!(in_lo < in_hi))
        throw std::invalid_argument("rescale_intensity: in_lo must be < in_hi");
    ImageBuffer out =
        ImageBuffer(img.height(), img.width(), img.channels(), ElemKind::F32);
    auto dst = out.f32();
    const double span = in_hi - in_lo;
    const std::size_t n = img.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = img.is_u8() ? static_cast<double>(img.u8()[i])
                                     : static_cast<double>(img.f32()[i]);
        double t = (v - in_lo) / span;
        if (t < 0.0) t = 0.0;
        if (t > 1.0) t = 1.0;
        dst[i] = static_cast<float>(t * (out_hi - out_lo) + out_lo);
    }
    return out;
}

}  // namespace imgkit
