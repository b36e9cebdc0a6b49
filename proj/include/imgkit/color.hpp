#ifndef IMGKIT_COLOR_HPP
#define IMGKIT_COLOR_HPP

#include "imgkit/core.hpp"

namespace imgkit {

// Luma weights used by rgb2gray.
inline constexpr double kLumaR = 0.2125;
inline constexpr double kLumaG = 0.7154;
inline constexpr double kLumaB = 0.0721;

// Weighted channel sum; U8 input is converted through img_as_float first.
ImageBuffer rgb2gray(const ImageBuffer& img);

// Replicates the single channel three times; element kind preserved.
ImageBuffer gray2rgb(const ImageBuffer& img);

// Channels 0-2 replicate the gray input; channel 3 is 1 where the pixel
// differs from `background` (exact comparison) and 0 elsewhere.
ImageBuffer add_alpha(const ImageBuffer& img, float background = -1.0f);

}  // namespace imgkit

#endif
