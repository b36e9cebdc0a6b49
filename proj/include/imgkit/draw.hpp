#ifndef IMGKIT_DRAW_HPP
#define IMGKIT_DRAW_HPP

#include <vector>

#include "imgkit/core.hpp"

namespace imgkit {

// Rasterization primitives. All return coordinate lists; coordinates may be
// negative or exceed any particular image, clipping is the caller's job.

// Bresenham line, endpoints included, 8-connected, ordered from (r0,c0).
std::vector<PixelCoord> line(int r0, int c0, int r1, int c1);

// Midpoint circle, 8-fold symmetric, deduplicated, sorted by (row, col).
std::vector<PixelCoord> circle_perimeter(int r, int c, int radius);

// Border pixels of the half-open box [min_row,max_row) x [min_col,max_col),
// deduplicated, sorted by (row, col).
std::vector<PixelCoord> rectangle_perimeter(int min_row, int min_col,
                                            int max_row, int max_col);

}  // namespace imgkit

#endif
