#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "imgkit/core.hpp"

namespace imgkit {

// 256-bit binary descriptor, bit b stored at word b/64, bit b%64.
using Descriptor = std::array<std::uint64_t, 4>;

struct KeypointSet {
    std::vector<PixelCoord> coords;       // level-0 frame, integer positions
    std::vector<double> scores;           // Harris response
    std::vector<double> orientations;     // radians in (-pi, pi]
    std::vector<int> scales;              // pyramid level index
    std::vector<Descriptor> descriptors;  // aligned with coords

    std::size_t size() const { return coords.size(); }
};

struct MatchSet {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<int> distances;  // Hamming distance per pair

    std::size_t size() const { return pairs.size(); }
};

// Local maxima of a single-channel image: pixels with positive value equal
// to the maximum of the (2*min_distance+1)^2 window around them (clipped at
// the borders), greedily thinned in descending-value order so that any two
// returned peaks are more than min_distance apart in Chebyshev distance.
// Value ties break by (row, col); the result keeps the greedy order
// (descending value, then lexicographic).
std::vector<PixelCoord> peak_local_max(const ImageBuffer& img, int min_distance);

struct BriefPair {
    int dr1 = 0, dc1 = 0, dr2 = 0, dc2 = 0;
};

// The fixed 256-entry BRIEF sampling table: coordinates in [-12, 12] drawn
// from the 31-bit LCG seeded with 42, consumed in (dr1, dc1, dr2, dc2) order.
const std::array<BriefPair, 256>& brief_pair_table();

// ORB keypoints + steered BRIEF descriptors. Pyramid with downscale factor
// 1.2 stopping after 8 levels or when the level's min dimension drops under
// 32; per level: FAST-9 corners with threshold fast_threshold on the [0,1]
// scale, Harris scores (Gaussian window sigma=1, k=0.04), orientation from
// intensity moments over a radius-15 disc, 256-bit descriptor sampled from
// the sigma=2 smoothed level with offsets rotated by the orientation. All
// levels pooled in the level-0 frame, strongest n_keypoints kept.
KeypointSet orb_detect_and_extract(const ImageBuffer& img,
                                   std::size_t n_keypoints,
                                   double fast_threshold);

int hamming_distance(const Descriptor& a, const Descriptor& b);

// Nearest-neighbour matching by Hamming distance (argmin ties keep the
// lowest index). With cross_check only mutual nearest neighbours survive.
// Pairs come back sorted by the first index.
MatchSet match_descriptors(const std::vector<Descriptor>& d1,
                           const std::vector<Descriptor>& d2,
                           bool cross_check);

}  // namespace imgkit
