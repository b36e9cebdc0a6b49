#include "imgkit/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "imgkit/filters.hpp"
#include "imgkit/transform.hpp"

namespace imgkit {
namespace {

// FAST test circle of radius 3, clockwise from the top.
constexpr std::array<PixelCoord, 16> kFastCircle = {{
    {-3, 0}, {-3, 1}, {-2, 2}, {-1, 3}, {0, 3}, {1, 3}, {2, 2}, {3, 1},
    {3, 0}, {3, -1}, {2, -2}, {1, -3}, {0, -3}, {-1, -3}, {-2, -2}, {-3, -1},
}};

int max_circular_run(const std::array<bool, 16>& flags) {
    int best = 0;
    int run = 0;
    for (int i = 0; i < 32; ++i) {
        if (flags[static_cast<std::size_t>(i % 16)]) {
            run = std::min(run + 1, 16);
            best = std::max(best, run);
        } else {
            run = 0;
        }
    }
    return best;
}

std::vector<PixelCoord> fast_corners(const ImageBuffer& level, double threshold) {
    const int h = level.height();
    const int w = level.width();
    std::vector<PixelCoord> out;
    std::array<bool, 16> bright{};
    std::array<bool, 16> dark{};
    for (int r = 3; r < h - 3; ++r) {
        for (int c = 3; c < w - 3; ++c) {
            const double center = level.f32_at(r, c);
            for (std::size_t k = 0; k < 16; ++k) {
                const double v = level.f32_at(r + kFastCircle[k].row, c + kFastCircle[k].col);
                bright[k] = v > center + threshold;
                dark[k] = v < center - threshold;
            }
            if (max_circular_run(bright) >= 9 || max_circular_run(dark) >= 9)
                out.push_back({r, c});
        }
    }
    return out;
}

// Sobel derivatives scaled by 1/4, as double grids.
void scaled_sobel(const ImageBuffer& img, std::vector<double>& gr,
                  std::vector<double>& gc) {
    const int h = img.height();
    const int w = img.width();
    gr.assign(img.size(), 0.0);
    gc.assign(img.size(), 0.0);
    const auto at = [&](int r, int c) {
        return static_cast<double>(img.f32_at(reflect_index(r, h), reflect_index(c, w)));
    };
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c);
            gr[i] = (at(r + 1, c - 1) + 2.0 * at(r + 1, c) + at(r + 1, c + 1) -
                     at(r - 1, c - 1) - 2.0 * at(r - 1, c) - at(r - 1, c + 1)) / 4.0;
            gc[i] = (at(r - 1, c + 1) + 2.0 * at(r, c + 1) + at(r + 1, c + 1) -
                     at(r - 1, c - 1) - 2.0 * at(r, c - 1) - at(r + 1, c - 1)) / 4.0;
        }
    }
}

// Harris corner response with a Gaussian window (sigma 1) and k = 0.04.
std::vector<double> harris_response(const ImageBuffer& level) {
    const int h = level.height();
    const int w = level.width();
    std::vector<double> gr, gc;
    scaled_sobel(level, gr, gc);
    ImageBuffer grr = ImageBuffer::make_f32(h, w, 1);
    ImageBuffer gcc = ImageBuffer::make_f32(h, w, 1);
    ImageBuffer grc = ImageBuffer::make_f32(h, w, 1);
    auto rr = grr.f32();
    auto cc = gcc.f32();
    auto rc = grc.f32();
    for (std::size_t i = 0; i < gr.size(); ++i) {
        rr[i] = static_cast<float>(gr[i] * gr[i]);
        cc[i] = static_cast<float>(gc[i] * gc[i]);
        rc[i] = static_cast<float>(gr[i] * gc[i]);
    }
    const ImageBuffer srr = gaussian(grr, 1.0);
    const ImageBuffer scc = gaussian(gcc, 1.0);
    const ImageBuffer src = gaussian(grc, 1.0);
    std::vector<double> resp(gr.size());
    const auto a = srr.f32();
    const auto b = scc.f32();
    const auto c = src.f32();
    for (std::size_t i = 0; i < resp.size(); ++i) {
        const double xx = a[i];
        const double yy = b[i];
        const double xy = c[i];
        const double tr = xx + yy;
        resp[i] = xx * yy - xy * xy - 0.04 * tr * tr;
    }
    return resp;
}

// Orientation from intensity moments over a radius-15 disc:
// theta = atan2(m01, m10) with m10 = sum(dc * I), m01 = sum(dr * I).
double keypoint_orientation(const ImageBuffer& level, int r, int c) {
    const int h = level.height();
    const int w = level.width();
    double m01 = 0.0;
    double m10 = 0.0;
    for (int dr = -15; dr <= 15; ++dr) {
        for (int dc = -15; dc <= 15; ++dc) {
            if (dr * dr + dc * dc > 225) continue;
            const double v = level.f32_at(reflect_index(r + dr, h), reflect_index(c + dc, w));
            m10 += dc * v;
            m01 += dr * v;
        }
    }
    return std::atan2(m01, m10);
}

Descriptor extract_descriptor(const ImageBuffer& smoothed, int r, int c,
                              double theta) {
    Descriptor d{};
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const int h = smoothed.height();
    const int w = smoothed.width();
    const auto& table = brief_pair_table();
    for (std::size_t b = 0; b < table.size(); ++b) {
        const BriefPair& p = table[b];
        const int r1 = r + static_cast<int>(std::lround(p.dc1 * st + p.dr1 * ct));
        const int c1 = c + static_cast<int>(std::lround(p.dc1 * ct - p.dr1 * st));
        const int r2 = r + static_cast<int>(std::lround(p.dc2 * st + p.dr2 * ct));
        const int c2 = c + static_cast<int>(std::lround(p.dc2 * ct - p.dr2 * st));
        const float v1 = smoothed.f32_at(reflect_index(r1, h), reflect_index(c1, w));
        const float v2 = smoothed.f32_at(reflect_index(r2, h), reflect_index(c2, w));
        if (v1 < v2) d[b / 64] |= 1ull << (b % 64);
    }
    return d;
}

}  // namespace

std::vector<PixelCoord> peak_local_max(const ImageBuffer& img, int min_distance) {
    if (img.channels() != 1)
        throw std::invalid_argument("peak_local_max: single-channel input required");
    if (min_distance < 1)
        throw std::invalid_argument("peak_local_max: min_distance must be >= 1");
    const int h = img.height();
    const int w = img.width();
    struct Candidate {
        double v;
        PixelCoord p;
    };
    std::vector<Candidate> cands;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double v = img.value_at(r, c);
            if (v <= 0.0) continue;
            bool is_max = true;
            const int r_lo = std::max(0, r - min_distance);
            const int r_hi = std::min(h - 1, r + min_distance);
            const int c_lo = std::max(0, c - min_distance);
            const int c_hi = std::min(w - 1, c + min_distance);
            for (int rr = r_lo; rr <= r_hi && is_max; ++rr)
                for (int cc = c_lo; cc <= c_hi; ++cc)
                    if (img.value_at(rr, cc) > v) {
                        is_max = false;
                        break;
                    }
            if (is_max) cands.push_back({v, {r, c}});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.v != b.v) return a.v > b.v;
        return a.p < b.p;
    });
    std::vector<PixelCoord> peaks;
    for (const Candidate& cand : cands) {
        bool keep = true;
        for (const PixelCoord& q : peaks) {
            const int dist = std::max(std::abs(cand.p.row - q.row),
                                      std::abs(cand.p.col - q.col));
            if (dist <= min_distance) {
                keep = false;
                break;
            }
        }
        if (keep) peaks.push_back(cand.p);
    }
    return peaks;
}

const std::array<BriefPair, 256>& brief_pair_table() {
    static const std::array<BriefPair, 256> table = [] {
        std::array<BriefPair, 256> t{};
        Lcg31 rng(42);
        const auto coord = [&rng] { return static_cast<int>(rng.next() % 25u) - 12; };
        for (BriefPair& p : t) {
            p.dr1 = coord();
            p.dc1 = coord();
            p.dr2 = coord();
            p.dc2 = coord();
        }
        return t;
    }();
    return table;
}

KeypointSet orb_detect_and_extract(const ImageBuffer& img,
                                   std::size_t n_keypoints,
                                   double fast_threshold) {
    if (img.channels() != 1 || !img.is_f32())
        throw std::invalid_argument(
            "orb_detect_and_extract: single-channel float input required");
    if (std::min(img.height(), img.width()) < 32)
        throw std::invalid_argument(
            "orb_detect_and_extract: image min dimension must be >= 32");

    struct Pooled {
        double score = 0.0;
        PixelCoord c0;
        int level = 0;
        double orientation = 0.0;
        Descriptor desc{};
    };
    std::vector<Pooled> pool;
    const int h0 = img.height();
    const int w0 = img.width();
    for (int level = 0; level < 8; ++level) {
        const double scale = std::pow(1.2, level);
        const double inv_scale = 1.0 / scale;
        ImageBuffer scaled;
        const ImageBuffer* lv = &img;
        if (level > 0) {
            const int lh = static_cast<int>(std::ceil(inv_scale * static_cast<double>(h0)));
            const int lw = static_cast<int>(std::ceil(inv_scale * static_cast<double>(w0)));
            if (std::min(lh, lw) < 32) break;
            scaled = rescale(img, inv_scale);
            lv = &scaled;
        }
        const std::vector<PixelCoord> corners = fast_corners(*lv, fast_threshold);
        if (corners.empty()) continue;
        const std::vector<double> response = harris_response(*lv);
        const ImageBuffer smoothed = gaussian(*lv, 2.0);
        const int lw = lv->width();
        for (const PixelCoord& p : corners) {
            Pooled kp;
            kp.score = response[static_cast<std::size_t>(p.row) * static_cast<std::size_t>(lw) + static_cast<std::size_t>(p.col)];
            kp.level = level;
            kp.orientation = keypoint_orientation(*lv, p.row, p.col);
            kp.desc = extract_descriptor(smoothed, p.row, p.col, kp.orientation);
            kp.c0 = {std::clamp(static_cast<int>(std::lround(p.row * scale)), 0, h0 - 1),
                     std::clamp(static_cast<int>(std::lround(p.col * scale)), 0, w0 - 1)};
            pool.push_back(kp);
        }
    }
    std::sort(pool.begin(), pool.end(), [](const Pooled& a, const Pooled& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.c0 != b.c0) return a.c0 < b.c0;
        return a.level < b.level;
    });
    if (pool.size() > n_keypoints) pool.resize(n_keypoints);
    KeypointSet out;
    out.coords.reserve(pool.size());
    out.scores.reserve(pool.size());
    out.orientations.reserve(pool.size());
    out.scales.reserve(pool.size());
    out.descriptors.reserve(pool.size());
    for (const Pooled& kp : pool) {
        out.coords.push_back(kp.c0);
        out.scores.push_back(kp.score);
        out.orientations.push_back(kp.orientation);
        out.scales.push_back(kp.level);
        out.descriptors.push_back(kp.desc);
    }
    return out;
}

int hamming_distance(const Descriptor& a, const Descriptor& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += std::popcount(a[i] ^ b[i]);
    return d;
}

MatchSet match_descriptors(const std::vector<Descriptor>& d1,
                           const std::vector<Descriptor>& d2,
                           bool cross_check) {
    MatchSet out;
    if (d1.empty() || d2.empty()) return out;
    const auto nearest = [](const Descriptor& q, const std::vector<Descriptor>& set) {
        std::size_t best = 0;
        int best_dist = hamming_distance(q, set[0]);
        for (std::size_t j = 1; j < set.size(); ++j) {
            const int dist = hamming_distance(q, set[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        return std::make_pair(best, best_dist);
    };
    std::vector<std::size_t> backward;
    if (cross_check) {
        backward.resize(d2.size());
        for (std::size_t j = 0; j < d2.size(); ++j)
            backward[j] = nearest(d2[j], d1).first;
    }
    for (std::size_t i = 0; i < d1.size(); ++i) {
        const auto [j, dist] = nearest(d1[i], d2);
        if (cross_check && backward[j] != i) continue;
        out.pairs.emplace_back(i, j);
        out.distances.push_back(dist);
    }
    return out;
}

}  // namespace imgkit
