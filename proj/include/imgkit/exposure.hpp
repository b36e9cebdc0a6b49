#ifndef IMGKIT_EXPOSURE_HPP
#define IMGKIT_EXPOSURE_HPP

#include "imgkit/core.hpp"

namespace imgkit {

// Maps each pixel to the value of the normalized cumulative 256-bin histogram
// at its bin. U8 values index bins directly; F32 values are quantized over
// [0, 1]. The CDF is inclusive, so outputs lie in (0, 1].
ImageBuffer equalize_hist(const ImageBuffer& img);

// out = clamp((in - in_lo) / (in_hi - in_lo), 0, 1) * (out_hi - out_lo) + out_lo.
// Pixel values are used in their native units (U8 as 0..255).
ImageBuffer rescale_intensity(const ImageBuffer& img, double in_lo, double in_hi,
                              double out_lo, double out_hi);

}  // namespace imgkit

#endif
