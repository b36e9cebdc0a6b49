#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "imgkit/core.hpp"
#include "imgkit/transform.hpp"

namespace imgkit {

struct LabelImage {
    std::vector<int> labels;  // row-major; 0 = background, regions 1..count
    int rows = 0;
    int cols = 0;
    int count = 0;

    int at(int r, int c) const {
        return labels[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                      static_cast<std::size_t>(c)];
    }
};

// Connected components of a binary mask (nonzero = foreground) under 4- or
// 8-connectivity (default 8). Components are numbered 1..n in raster order
// of their first pixel.
LabelImage label(const ImageBuffer& mask, int connectivity = 8);

struct RegionProps {
    int label = 0;
    long long area = 0;
    // half-open bounding box
    int min_row = 0;
    int min_col = 0;
    int max_row = 0;
    int max_col = 0;
    double centroid_row = 0.0;
    double centroid_col = 0.0;
    // central moments mu[p][q] about the centroid, p (rows) + q (cols) <= 3
    std::array<std::array<double, 4>, 4> central_moments{};
    double eccentricity = 0.0;       // sqrt(1 - l2/l1); 0 when l1 = 0
    double orientation = 0.0;        // major-axis angle from the row axis
    long long perimeter = 0;         // crack-boundary edge count
    double mean_intensity = 0.0;     // 0 unless an intensity image was given
};

// Per-region measurements, ordered by label. The optional intensity image
// (single channel, same shape) adds mean_intensity in its native units.
std::vector<RegionProps> regionprops(const LabelImage& lbl,
                                     const ImageBuffer* intensity = nullptr);

// Samples a single-channel F32 image along the segment src -> dst at unit
// spacing: ceil(length)+1 bilinear samples (the last may overshoot dst).
// linewidth (odd) averages that many samples placed at integer offsets
// along the unit normal. Sample coordinates are clamped to the image.
std::vector<double> profile_line(const ImageBuffer& img,
                                 double src_row, double src_col,
                                 double dst_row, double dst_col,
                                 int linewidth = 1);

struct RansacResult {
    Homography2D model;
    std::vector<bool> inliers;  // mask over input pairs, w.r.t. final model
    int trials_run = 0;
    int best_inlier_count = 0;  // count of true entries in inliers
};

// Classic RANSAC over point correspondences: max_trials random minimal
// samples (seeded LCG), model with most inliers wins (ties: lower total
// inlier residual, then earlier trial), final model re-estimated on the
// winning trial's inliers and the mask recomputed against that refit.
// Residual = Euclidean distance between apply(model, src) and dst.
RansacResult ransac(const std::vector<Point2>& src,
                    const std::vector<Point2>& dst,
                    TransformKind model_kind,
                    std::size_t min_samples,
                    double residual_threshold,
                    int max_trials = 100,
                    std::uint32_t seed = 0);

}  // namespace imgkit
