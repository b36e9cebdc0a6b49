#include "imgkit/draw.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace imgkit {

std::vector<PixelCoord> line(int r0, int c0, int r1, int c1) {
    std::vector<PixelCoord> pts;
    const int dr = std::abs(r1 - r0);
    const int dc = std::abs(c1 - c0);
    const int sr = r0 < r1 ? 1 : -1;
    const int sc = c0 < c1 ? 1 : -1;
    int err = dc - dr;
    int r = r0, c = c0;
    pts.reserve(static_cast<std::size_t>(std::max(dr, dc)) + 1);
    while (true) {
        pts.push_back({r, c});
        if (r == r1 && c == c1) break;
        const int e2 = 2 * err;
        if (e2 > -dr) {
            err -= dr;
            c += sc;
        }
        if (e2 < dc) {
            err += dc;
            r += sr;
        }
    }
    return pts;
}

std::vector<PixelCoord> circle_perimeter(int r, int c, int radius) {
    if (radius < 0) throw std::invalid_argument("circle_perimeter: negative radius");
    std::vector<PixelCoord> pts;
    if (radius == 0) {
        pts.push_back({r, c});
        return pts;
    }
    int x = radius;
    int y = 0;
    int d = 1 - radius;  // midpoint decision variable
    while (y <= x) {
        pts.push_back({r + y, c + x});
        pts.push_back({r + y, c - x});
        pts.push_back({r - y, c + x});
        pts.push_back({r - y, c - x});
        pts.push_back({r + x, c + y});
        pts.push_back({r + x, c - y});
        pts.push_back({r - x, c + y});
        pts.push_back({r - x, c - y});
        ++y;
        if (d < 0) {
            d += 2 * y + 1;
        } else {
            --x;
            d += 2 * (y - x) + 1;
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<PixelCoord> rectangle_perimeter(int min_row, int min_col,
                                            int max_row, int max_col) {
    if (min_row >= max_row || min_col >= max_col)
        throw std::invalid_argument("rectangle_perimeter: empty box");
    std::vector<PixelCoord> pts;
    for (int c = min_col; c < max_col; ++c) {
        pts.push_back({min_row, c});
        pts.push_back({max_row - 1, c});
    }
    for (int r = min_row; r < max_row; ++r) {
        pts.push_back({r, min_col});
        pts.push_back({r, max_col - 1});
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace imgkit
