#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "imgkit/draw.hpp"

using namespace imgkit;

namespace {

std::set<std::pair<int, int>> as_set(const std::vector<PixelCoord>& pts) {
    std::set<std::pair<int, int>> s;
    for (const PixelCoord& p : pts) s.insert({p.row, p.col});
    return s;
}

}  // namespace

TEST_CASE("line covers axis-aligned and diagonal segments exactly") {
    CHECK(as_set(line(2, 1, 2, 4)) ==
          std::set<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}});
    CHECK(as_set(line(1, 3, 4, 3)) ==
          std::set<std::pair<int, int>>{{1, 3}, {2, 3}, {3, 3}, {4, 3}});
    CHECK(as_set(line(0, 0, 3, 3)) ==
          std::set<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    CHECK(as_set(line(5, 5, 5, 5)) == std::set<std::pair<int, int>>{{5, 5}});
}

TEST_CASE("line is an 8-connected chain from start to end") {
    const std::vector<PixelCoord> pts = line(7, -2, -3, 11);
    REQUIRE(!pts.empty());
    CHECK(pts.front().row == 7);
    CHECK(pts.front().col == -2);
    CHECK(pts.back().row == -3);
    CHECK(pts.back().col == 11);
    CHECK(pts.size() == std::max(std::abs(7 - -3), std::abs(-2 - 11)) + 1u);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        CHECK(std::abs(pts[i].row - pts[i - 1].row) <= 1);
        CHECK(std::abs(pts[i].col - pts[i - 1].col) <= 1);
        CHECK((pts[i].row != pts[i - 1].row || pts[i].col != pts[i - 1].col));
    }
    // every pixel is within half a pixel of the ideal segment
    const double dr = -3 - 7, dc = 11 - -2;
    const double len = std::hypot(dr, dc);
    for (const PixelCoord& p : pts) {
        const double dist =
            std::abs(dc * (p.row - 7) - dr * (p.col - -2)) / len;
        CHECK(dist <= 0.5 + 1e-9);
    }
}

TEST_CASE("line gentle slope matches the classic rasterization") {
    CHECK(as_set(line(0, 0, 2, 5)) ==
          std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 4}, {2, 5}});
}

TEST_CASE("circle_perimeter generates the midpoint circle") {
    const std::set<std::pair<int, int>> want = {
        {0, 3},  {0, -3},  {3, 0},  {-3, 0},  {1, 3},  {1, -3},  {-1, 3}, {-1, -3},
        {3, 1},  {3, -1},  {-3, 1}, {-3, -1}, {2, 2},  {2, -2},  {-2, 2}, {-2, -2}};
    const std::vector<PixelCoord> pts = circle_perimeter(0, 0, 3);
    CHECK(as_set(pts) == want);
    CHECK(pts.size() == want.size());  // no duplicates
    CHECK(std::is_sorted(pts.begin(), pts.end(), [](const PixelCoord& a, const PixelCoord& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    }));
}

TEST_CASE("circle_perimeter offsets translate with the center") {
    const std::vector<PixelCoord> at_origin = circle_perimeter(0, 0, 7);
    const std::vector<PixelCoord> moved = circle_perimeter(10, -4, 7);
    REQUIRE(at_origin.size() == moved.size());
    for (std::size_t i = 0; i < moved.size(); ++i) {
        CHECK(moved[i].row == at_origin[i].row + 10);
        CHECK(moved[i].col == at_origin[i].col - 4);
    }
    // all pixels close to the ideal ring
    for (const PixelCoord& p : at_origin)
        CHECK(std::abs(std::hypot(p.row, p.col) - 7.0) < 0.75);
}

TEST_CASE("circle_perimeter handles the degenerate radii") {
    const std::vector<PixelCoord> dot = circle_perimeter(4, 5, 0);
    REQUIRE(dot.size() == 1);
    CHECK(dot[0].row == 4);
    CHECK(dot[0].col == 5);
    CHECK_THROWS_AS(circle_perimeter(0, 0, -1), std::invalid_argument);
}

TEST_CASE("rectangle_perimeter walks the half-open box border") {
    CHECK(as_set(rectangle_perimeter(1, 2, 4, 6)) ==
          std::set<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {3, 2}, {3, 3},
                                        {3, 4}, {3, 5}, {2, 2}, {2, 5}});
    CHECK(as_set(rectangle_perimeter(0, 0, 1, 1)) == std::set<std::pair<int, int>>{{0, 0}});
    CHECK(as_set(rectangle_perimeter(0, 0, 2, 2)) ==
          std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK_THROWS_AS(rectangle_perimeter(2, 0, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(rectangle_perimeter(0, 3, 5, 3), std::invalid_argument);
}
