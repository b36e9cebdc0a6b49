#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "imgkit/core.hpp"

namespace imgkit {

enum class TransformKind { Similarity, Affine, Projective };

// Row-major 3x3 homogeneous matrix acting on (x, y) = (col, row) points.
// Images index (row, col); the swap happens inside apply/warp and nowhere
// else. Invertible, and normalized so m[8] == 1 whenever it is nonzero.
struct Homography2D {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};
    TransformKind kind = TransformKind::Projective;
};

// Checks invertibility (|det| > 1e-12) and that the matrix fits the claimed
// kind (Similarity: upper-left 2x2 is a positive scale times a rotation,
// last row (0,0,1); Affine: last row (0,0,1)), then normalizes m[8] to 1.
Homography2D make_transform(const std::array<double, 9>& matrix,
                            TransformKind kind);

Homography2D similarity_from_translation(double tx, double ty);

// (x', y', w) = M * (x, y, 1) -> (x'/w, y'/w). Throws "point at infinity"
// when |w| <= 1e-12.
Point2 apply(const Homography2D& t, Point2 p);
std::vector<Point2> apply(const Homography2D& t, const std::vector<Point2>& pts);

Homography2D inverse(const Homography2D& t);

// compose(a, b) applies a first, then b: matrix = M_b * M_a. The result
// kind is the most general of the two operands.
Homography2D compose(const Homography2D& a, const Homography2D& b);

// Least-squares estimators from (x, y) point correspondences. All throw
// std::runtime_error("degenerate configuration") when the correspondences
// do not determine a model of the requested kind.
//
// estimate_projective: >= 4 pairs, Hartley-normalized DLT solved as the
// null space of the 2n x 9 design matrix.
// estimate_affine: >= 3 pairs, linear least squares on centered points.
// estimate_similarity: >= 2 pairs, closed-form rotation+scale+translation.
Homography2D estimate_projective(const std::vector<Point2>& src,
                                 const std::vector<Point2>& dst);
Homography2D estimate_affine(const std::vector<Point2>& src,
                             const std::vector<Point2>& dst);
Homography2D estimate_similarity(const std::vector<Point2>& src,
                                 const std::vector<Point2>& dst);

// Inverse-mapped warp: every output pixel (r, c) samples the input at
// (x, y) = apply(inverse_map, (c, r)) with bilinear interpolation. A pixel
// whose interpolation support leaves the input (or whose homogeneous w is
// ~0) is set to cval in every channel. F32 input, 1/3/4 channels.
ImageBuffer warp(const ImageBuffer& img, const Homography2D& inverse_map,
                 std::size_t out_rows, std::size_t out_cols, float cval);

// Uniform rescale to ceil(scale * dims), implemented as warp with the
// inverse scaling map and cval 0. antialias applies a Gaussian pre-filter
// of sigma = max(0, (1/scale - 1) / 2) before downsampling; off by default.
ImageBuffer rescale(const ImageBuffer& img, double scale,
                    bool antialias = false);

struct MosaicExtent {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Homography2D offset;  // translation that shifts the mosaic into view
};

// Warps the target frame's corners by model, stacks them with the reference
// frame's corners, and returns the bounding canvas plus the translation
// that moves its minimum corner to the origin.
MosaicExtent mosaic_extent(const Homography2D& model,
                           std::size_t ref_rows, std::size_t ref_cols,
                           std::size_t tgt_rows, std::size_t tgt_cols);

// Per-pixel average of RGBA frames: sum of alpha-masked RGB divided by
// max(sum of alphas, 1). Alpha planes are expected to be 0/1 masks. The
// result drops alpha (3-channel F32).
ImageBuffer blend_average(const std::vector<ImageBuffer>& frames);

struct HoughLineAccumulator {
    // rho-major: votes[rho_bin * thetas.size() + theta_bin]
    std::vector<long long> votes;
    std::vector<double> thetas;
    std::vector<double> rhos;

    long long at(std::size_t rho_bin, std::size_t theta_bin) const {
        return votes[rho_bin * thetas.size() + theta_bin];
    }
};

// Straight-line Hough transform of a binary mask (nonzero = foreground).
// rho = c*cos(theta) + r*sin(theta), binned at unit spacing over
// [-D, D] with D = ceil(diagonal). The overload without thetas uses 180
// evenly spaced angles in [-pi/2, pi/2).
HoughLineAccumulator hough_line(const ImageBuffer& mask);
HoughLineAccumulator hough_line(const ImageBuffer& mask,
                                const std::vector<double>& thetas);

struct HoughLinePeak {
    long long votes = 0;
    double theta = 0.0;
    double rho = 0.0;
};

// Greedy peak extraction: repeatedly take the largest remaining cell and
// suppress the surrounding +-min_distance rho bins x +-min_angle theta bins
// (no angular wraparound). Stops early when only zero cells remain.
std::vector<HoughLinePeak> hough_line_peaks(const HoughLineAccumulator& acc,
                                            std::size_t num_peaks,
                                            int min_distance, int min_angle);

struct HoughCircleAccumulator {
    std::vector<std::vector<long long>> stack;  // one vote grid per radius
    std::vector<int> radii;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

// Circular Hough transform: every foreground pixel votes for the candidate
// centers on the midpoint circle of each radius around it (same
// rasterization as draw's circle_perimeter); votes landing outside the
// image are dropped.
HoughCircleAccumulator hough_circle(const ImageBuffer& mask,
                                    const std::vector<int>& radii);

struct HoughCirclePeak {
    int radius = 0;
    PixelCoord center{0, 0};
    long long votes = 0;
};

// Strongest cell of the stack; ties resolve to the first in (radius, row,
// col) scan order.
HoughCirclePeak hough_circle_argmax(const HoughCircleAccumulator& acc);

}  // namespace imgkit
