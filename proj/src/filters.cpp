#include "imgkit/filters.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace imgkit {
namespace {

std::vector<double> gaussian_taps(double sigma, int radius) {
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double t = std::exp(-0.5 * (i / sigma) * (i / sigma));
        taps[static_cast<std::size_t>(i + radius)] = t;
        sum += t;
    }
    for (double& t : taps) t /= sum;
    return taps;
}

// 1-D convolution along rows (axis 0) or columns (axis 1) with a symmetric
// kernel, reflect-101 borders, double accumulation.
std::vector<double> convolve_axis(const std::vector<double>& src, int h, int w,
                                  const std::vector<double>& taps, int axis) {
    const int radius = (static_cast<int>(taps.size()) - 1) / 2;
    std::vector<double> out(src.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int rr = axis == 0 ? reflect_index(r + k, h) : r;
                const int cc = axis == 0 ? c : reflect_index(c + k, w);
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       src[static_cast<std::size_t>(rr) * static_cast<std::size_t>(w) + static_cast<std::size_t>(cc)];
            }
            out[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)] = acc;
        }
    }
    return out;
}

std::vector<double> to_doubles(const ImageBuffer& img) {
    std::vector<double> vals(img.size());
    if (img.is_u8()) {
        const auto s = img.u8();
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = s[i];
    } else {
        const auto s = img.f32();
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = s[i];
    }
    return vals;
}

// Unscaled Sobel derivatives of a double grid: [1 2 1] smoothing across the
// other axis, central difference (v[i+1] - v[i-1]) along the given axis.
void sobel_gradients(const std::vector<double>& vals, int h, int w,
                     std::vector<double>& gr, std::vector<double>& gc) {
    const std::vector<double> smooth = {1.0, 2.0, 1.0};
    gr.assign(vals.size(), 0.0);
    gc.assign(vals.size(), 0.0);
    const std::vector<double> row_smoothed = convolve_axis(vals, h, w, smooth, 1);
    const std::vector<double> col_smoothed = convolve_axis(vals, h, w, smooth, 0);
    const auto at = [w](const std::vector<double>& v, int r, int c) {
        return v[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)];
    };
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c);
            gr[i] = at(row_smoothed, reflect_index(r + 1, h), c) -
                    at(row_smoothed, reflect_index(r - 1, h), c);
            gc[i] = at(col_smoothed, r, reflect_index(c + 1, w)) -
                    at(col_smoothed, r, reflect_index(c - 1, w));
        }
    }
}

void require_single_channel(const ImageBuffer& img, const char* op) {
    if (img.channels() != 1)
        throw std::invalid_argument(std::string(op) + ": single-channel input required");
}

}  // namespace

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_kernel: sigma must be positive");
    const int radius = static_cast<int>(std::ceil(4.0 * sigma));
    return gaussian_taps(sigma, radius);
}

ImageBuffer gaussian(const ImageBuffer& img, double sigma) {
    require_single_channel(img, "gaussian");
    if (!img.is_f32())
        throw std::invalid_argument("gaussian: float input required");
    ImageBuffer out = ImageBuffer::make_f32(img.height(), img.width(), 1);
    if (sigma <= 0.0) {
        std::copy(img.f32().begin(), img.f32().end(), out.f32().begin());
        return out;
    }
    const int h = static_cast<int>(img.height());
    const int w = static_cast<int>(img.width());
    const std::vector<double> taps = gaussian_kernel(sigma);
    std::vector<double> vals = to_doubles(img);
    vals = convolve_axis(vals, h, w, taps, 0);
    vals = convolve_axis(vals, h, w, taps, 1);
    auto dst = out.f32();
    for (std::size_t i = 0; i < vals.size(); ++i) dst[i] = static_cast<float>(vals[i]);
    return out;
}

ImageBuffer sobel(const ImageBuffer& img) {
    require_single_channel(img, "sobel");
    if (!img.is_f32())
        throw std::invalid_argument("sobel: float input required");
    const int h = static_cast<int>(img.height());
    const int w = static_cast<int>(img.width());
    const std::vector<double> vals = to_doubles(img);
    std::vector<double> gr, gc;
    sobel_gradients(vals, h, w, gr, gc);
    ImageBuffer out = ImageBuffer::make_f32(img.height(), img.width(), 1);
    auto dst = out.f32();
    const double inv = 1.0 / (4.0 * std::sqrt(2.0));
    for (std::size_t i = 0; i < vals.size(); ++i)
        dst[i] = static_cast<float>(std::hypot(gr[i], gc[i]) * inv);
    return out;
}

ImageBuffer difference_of_gaussians(const ImageBuffer& img, double low_sigma,
                                    double high_sigma) {
    if (!(low_sigma > 0.0) || !(high_sigma > low_sigma))
        throw std::invalid_argument(
            "difference_of_gaussians: require 0 < low_sigma < high_sigma");
    const ImageBuffer low = gaussian(img, low_sigma);
    const ImageBuffer high = gaussian(img, high_sigma);
    ImageBuffer out = ImageBuffer::make_f32(img.height(), img.width(), 1);
    auto dst = out.f32();
    const auto a = low.f32();
    const auto b = high.f32();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] - b[i];
    return out;
}

ImageBuffer median(const ImageBuffer& img, int size) {
    require_single_channel(img, "median");
    if (size < 1 || size % 2 == 0)
        throw std::invalid_argument("median: size must be odd and positive");
    const int h = static_cast<int>(img.height());
    const int w = static_cast<int>(img.width());
    const int radius = size / 2;
    const std::vector<double> vals = to_doubles(img);
    std::vector<double> window;
    window.reserve(static_cast<std::size_t>(size) * static_cast<std::size_t>(size));
    std::vector<double> result(vals.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            window.clear();
            for (int dr = -radius; dr <= radius; ++dr) {
                const int rr = reflect_index(r + dr, h);
                for (int dc = -radius; dc <= radius; ++dc) {
                    const int cc = reflect_index(c + dc, w);
                    window.push_back(vals[static_cast<std::size_t>(rr) * static_cast<std::size_t>(w) + static_cast<std::size_t>(cc)]);
                }
            }
            auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
            std::nth_element(window.begin(), mid, window.end());
            result[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)] = *mid;
        }
    }
    ImageBuffer out = img.is_u8()
                          ? ImageBuffer::make_u8(img.height(), img.width(), 1)
                          : ImageBuffer::make_f32(img.height(), img.width(), 1);
    if (out.is_u8()) {
        auto dst = out.u8();
        for (std::size_t i = 0; i < result.size(); ++i)
            dst[i] = static_cast<std::uint8_t>(result[i]);
    } else {
        auto dst = out.f32();
        for (std::size_t i = 0; i < result.size(); ++i)
            dst[i] = static_cast<float>(result[i]);
    }
    return out;
}

ImageBuffer canny(const ImageBuffer& img, const CannyParams& params) {
    require_single_channel(img, "canny");
    if (params.low_threshold > params.high_threshold)
        throw std::invalid_argument(
            "canny: low_threshold must not exceed high_threshold");
    const int h = static_cast<int>(img.height());
    const int w = static_cast<int>(img.width());
    double low = params.low_threshold;
    double high = params.high_threshold;
    std::vector<double> vals = to_doubles(img);
    if (img.is_u8()) {
        for (double& v : vals) v /= 255.0;
        low /= 255.0;
        high /= 255.0;
    }
    if (params.sigma > 0.0) {
        const std::vector<double> taps = gaussian_kernel(params.sigma);
        vals = convolve_axis(vals, h, w, taps, 0);
        vals = convolve_axis(vals, h, w, taps, 1);
    }

    std::vector<double> gr, gc;
    sobel_gradients(vals, h, w, gr, gc);
    std::vector<double> mag(vals.size());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(gr[i], gc[i]);

    const auto mag_at = [&](int r, int c) {
        return mag[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)];
    };

    // Non-maximum suppression: interpolate the magnitude one pixel away on
    // both sides along the gradient direction; keep the pixel iff it is >=
    // both. Border pixels are never candidates.
    std::vector<unsigned char> state(mag.size(), 0);  // 1 candidate, 2 edge
    for (int r = 1; r < h - 1; ++r) {
        for (int c = 1; c < w - 1; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c);
            const double dr = gr[i];
            const double dc = gc[i];
            if (dr == 0.0 && dc == 0.0) continue;
            const double m = mag[i];
            if (m < low) continue;
            const double adr = std::abs(dr);
            const double adc = std::abs(dc);
            const bool same_sign = (dr >= 0.0 && dc >= 0.0) || (dr <= 0.0 && dc <= 0.0);
            double plus, minus;
            if (adr <= adc) {
                // mostly horizontal gradient: step +-1 column, blend rows
                const double t = adr / adc;
                const int rs = same_sign ? 1 : -1;
                plus = (1.0 - t) * mag_at(r, c + 1) + t * mag_at(r + rs, c + 1);
                minus = (1.0 - t) * mag_at(r, c - 1) + t * mag_at(r - rs, c - 1);
            } else {
                // mostly vertical gradient: step +-1 row, blend columns
                const double t = adc / adr;
                const int cs = same_sign ? 1 : -1;
                plus = (1.0 - t) * mag_at(r + 1, c) + t * mag_at(r + 1, c + cs);
                minus = (1.0 - t) * mag_at(r - 1, c) + t * mag_at(r - 1, c - cs);
            }
            if (m >= plus && m >= minus) state[i] = 1;
        }
    }

    // Hysteresis: grow 8-connected from strong candidates through weak ones.
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i] == 1 && mag[i] >= high) {
            state[i] = 2;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const int r = static_cast<int>(i / static_cast<std::size_t>(w));
        const int c = static_cast<int>(i % static_cast<std::size_t>(w));
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                const int rr = r + dr;
                const int cc = c + dc;
                if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                const std::size_t j = static_cast<std::size_t>(rr) * static_cast<std::size_t>(w) + static_cast<std::size_t>(cc);
                if (state[j] == 1) {
                    state[j] = 2;
                    stack.push_back(j);
                }
            }
        }
    }

    ImageBuffer out = ImageBuffer::make_u8(img.height(), img.width(), 1);
    auto dst = out.u8();
    for (std::size_t i = 0; i < state.size(); ++i) dst[i] = state[i] == 2 ? 255 : 0;
    return out;
}

ImageBuffer threshold_adaptive(const ImageBuffer& img, int block_size,
                               double offset) {
    require_single_channel(img, "threshold_adaptive");
    if (block_size < 3 || block_size % 2 == 0)
        throw std::invalid_argument(
            "threshold_adaptive: block_size must be odd and >= 3");
    const int h = static_cast<int>(img.height());
    const int w = static_cast<int>(img.width());
    const int radius = (block_size - 1) / 2;
    const double sigma = (block_size - 1) / 6.0;
    const std::vector<double> taps = gaussian_taps(sigma, radius);
    const std::vector<double> vals = to_doubles(img);
    std::vector<double> mean = convolve_axis(vals, h, w, taps, 0);
    mean = convolve_axis(mean, h, w, taps, 1);
    ImageBuffer out = ImageBuffer::make_u8(img.height(), img.width(), 1);
    auto dst = out.u8();
    for (std::size_t i = 0; i < vals.size(); ++i)
        dst[i] = vals[i] > mean[i] - offset ? 255 : 0;
    return out;
}

}  // namespace imgkit
