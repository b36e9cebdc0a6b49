#pragma once

#include <vector>

#include "imgkit/core.hpp"

namespace imgkit {

// Normalized 1-D Gaussian taps for the given sigma; radius = ceil(4*sigma),
// so the kernel has 2*radius+1 entries. sigma must be > 0.
std::vector<double> gaussian_kernel(double sigma);

// Separable Gaussian blur. Single-channel F32 in, F32 out. Borders use
// reflect-101 (edge pixel not duplicated). sigma <= 0 returns a copy.
ImageBuffer gaussian(const ImageBuffer& img, double sigma);

// Sobel gradient magnitude: 3x3 kernels scaled by 1/4, magnitude
// hypot(gr, gc) / sqrt(2), so a unit step yields 1/sqrt(2) on the two
// interior columns. Single-channel F32 in, F32 out, reflect-101 borders.
ImageBuffer sobel(const ImageBuffer& img);

// gaussian(img, low_sigma) - gaussian(img, high_sigma). Requires
// 0 < low_sigma < high_sigma.
ImageBuffer difference_of_gaussians(const ImageBuffer& img, double low_sigma,
                                    double high_sigma);

// Square-window median. size must be odd and >= 1. Works on U8 or F32
// single-channel images; output keeps the input element kind. Borders use
// reflect-101.
ImageBuffer median(const ImageBuffer& img, int size);

struct CannyParams {
    double sigma = 1.0;
    double low_threshold = 0.1;
    double high_threshold = 0.2;
};

// Canny edge detector: Gaussian smooth, gradient, non-maximum suppression
// with linear interpolation across the gradient direction, then hysteresis
// (8-connected). Input is single-channel U8 or F32; U8 intensities and the
// thresholds given for U8 input are divided by 255. Returns a U8 mask with
// edges = 255. Border pixels are never edges.
ImageBuffer canny(const ImageBuffer& img, const CannyParams& params);

// Adaptive threshold against a Gaussian-weighted local mean with
// sigma = (block_size - 1) / 6 and kernel radius (block_size - 1) / 2.
// block_size must be odd and >= 3. Pixel passes iff value > mean - offset,
// compared in the input's native intensity units. Returns a U8 mask with
// passing pixels = 255.
ImageBuffer threshold_adaptive(const ImageBuffer& img, int block_size,
                               double offset);

}  // namespace imgkit
