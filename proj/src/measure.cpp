#include "imgkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace imgkit {
namespace {

struct UnionFind {
    std::vector<int> parent;

    int make() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

double bilinear_clamped(const ImageBuffer& img, double r, double c) {
    const int h = img.height();
    const int w = img.width();
    r = std::clamp(r, 0.0, static_cast<double>(h - 1));
    c = std::clamp(c, 0.0, static_cast<double>(w - 1));
    const int r0 = static_cast<int>(std::floor(r));
    const int c0 = static_cast<int>(std::floor(c));
    const int r1 = std::min(r0 + 1, h - 1);
    const int c1 = std::min(c0 + 1, w - 1);
    const double fr = r - r0;
    const double fc = c - c0;
    return (1.0 - fr) * ((1.0 - fc) * img.f32_at(r0, c0) + fc * img.f32_at(r0, c1)) +
           fr * ((1.0 - fc) * img.f32_at(r1, c0) + fc * img.f32_at(r1, c1));
}

std::size_t minimal_samples_for(TransformKind kind) {
    switch (kind) {
        case TransformKind::Similarity: return 2;
        case TransformKind::Affine: return 3;
        case TransformKind::Projective: return 4;
    }
    return 4;
}

Homography2D estimate_for(TransformKind kind, const std::vector<Point2>& src,
                          const std::vector<Point2>& dst) {
    switch (kind) {
        case TransformKind::Similarity: return estimate_similarity(src, dst);
        case TransformKind::Affine: return estimate_affine(src, dst);
        case TransformKind::Projective: return estimate_projective(src, dst);
    }
    return estimate_projective(src, dst);
}

double residual_of(const Homography2D& t, Point2 s, Point2 d) {
    const auto& m = t.m;
    const double w = m[6] * s.x + m[7] * s.y + m[8];
    if (std::abs(w) <= 1e-12) return std::numeric_limits<double>::infinity();
    const double x = (m[0] * s.x + m[1] * s.y + m[2]) / w;
    const double y = (m[3] * s.x + m[4] * s.y + m[5]) / w;
    return std::hypot(x - d.x, y - d.y);
}

}  // namespace

LabelImage label(const ImageBuffer& mask, int connectivity) {
    if (mask.channels() != 1)
        throw std::invalid_argument("label: single-channel mask required");
    if (connectivity != 4 && connectivity != 8)
        throw std::invalid_argument("label: connectivity must be 4 or 8");
    const int h = mask.height();
    const int w = mask.width();
    LabelImage out;
    out.rows = h;
    out.cols = w;
    out.labels.assign(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), 0);

    std::vector<int> provisional(out.labels.size(), -1);
    UnionFind uf;
    const bool diag = connectivity == 8;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (mask.value_at(r, c) == 0.0) continue;
            const std::size_t i = static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c);
            int lbl = -1;
            const auto consider = [&](int rr, int cc) {
                if (rr < 0 || cc < 0 || cc >= w) return;
                const int nb = provisional[static_cast<std::size_t>(rr) * static_cast<std::size_t>(w) + static_cast<std::size_t>(cc)];
                if (nb < 0) return;
                if (lbl < 0)
                    lbl = uf.find(nb);
                else
                    uf.unite(lbl, nb);
            };
            consider(r, c - 1);
            consider(r - 1, c);
            if (diag) {
                consider(r - 1, c - 1);
                consider(r - 1, c + 1);
            }
            provisional[i] = lbl >= 0 ? uf.find(lbl) : uf.make();
        }
    }

    // Final numbering: raster order of each component's first pixel.
    std::vector<int> remap(uf.parent.size(), 0);
    int next = 0;
    for (std::size_t i = 0; i < provisional.size(); ++i) {
        if (provisional[i] < 0) continue;
        const int root = uf.find(provisional[i]);
        if (remap[static_cast<std::size_t>(root)] == 0) remap[static_cast<std::size_t>(root)] = ++next;
        out.labels[i] = remap[static_cast<std::size_t>(root)];
    }
    out.count = next;
    return out;
}

std::vector<RegionProps> regionprops(const LabelImage& lbl,
                                     const ImageBuffer* intensity) {
    if (intensity != nullptr) {
        if (intensity->channels() != 1)
            throw std::invalid_argument("regionprops: intensity image must be single-channel");
        if (intensity->height() != lbl.rows || intensity->width() != lbl.cols)
            throw std::invalid_argument("regionprops: intensity shape mismatch");
    }
    const int h = lbl.rows;
    const int w = lbl.cols;
    const std::size_t n = static_cast<std::size_t>(lbl.count);
    std::vector<RegionProps> props(n);
    for (std::size_t k = 0; k < n; ++k) {
        props[k].label = static_cast<int>(k) + 1;
        props[k].min_row = h;
        props[k].min_col = w;
    }
    std::vector<double> sum_r(n, 0.0), sum_c(n, 0.0), sum_i(n, 0.0);

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int id = lbl.at(r, c);
            if (id == 0) continue;
            RegionProps& p = props[static_cast<std::size_t>(id - 1)];
            p.area += 1;
            p.min_row = std::min(p.min_row, r);
            p.min_col = std::min(p.min_col, c);
            p.max_row = std::max(p.max_row, r + 1);
            p.max_col = std::max(p.max_col, c + 1);
            sum_r[static_cast<std::size_t>(id - 1)] += r;
            sum_c[static_cast<std::size_t>(id - 1)] += c;
            if (intensity != nullptr)
                sum_i[static_cast<std::size_t>(id - 1)] += intensity->value_at(r, c);
            const auto member = [&](int rr, int cc) {
                return rr >= 0 && rr < h && cc >= 0 && cc < w && lbl.at(rr, cc) == id;
            };
            if (!member(r - 1, c)) p.perimeter += 1;
            if (!member(r + 1, c)) p.perimeter += 1;
            if (!member(r, c - 1)) p.perimeter += 1;
            if (!member(r, c + 1)) p.perimeter += 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double area = static_cast<double>(props[k].area);
        props[k].centroid_row = sum_r[k] / area;
        props[k].centroid_col = sum_c[k] / area;
        if (intensity != nullptr) props[k].mean_intensity = sum_i[k] / area;
    }

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int id = lbl.at(r, c);
            if (id == 0) continue;
            RegionProps& p = props[static_cast<std::size_t>(id - 1)];
            const double dr = r - p.centroid_row;
            const double dc = c - p.centroid_col;
            double rp = 1.0;
            for (int pp = 0; pp <= 3; ++pp) {
                double cq = 1.0;
                for (int q = 0; pp + q <= 3; ++q) {
                    p.central_moments[static_cast<std::size_t>(pp)][static_cast<std::size_t>(q)] += rp * cq;
                    cq *= dc;
                }
                rp *= dr;
            }
        }
    }

    for (RegionProps& p : props) {
        const double mu00 = p.central_moments[0][0];
        const double a = p.central_moments[2][0] / mu00;
        const double b = p.central_moments[1][1] / mu00;
        const double c = p.central_moments[0][2] / mu00;
        const double half_gap = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
        const double l1 = 0.5 * (a + c) + half_gap;
        const double l2 = 0.5 * (a + c) - half_gap;
        if (l1 <= 0.0) {
            p.eccentricity = 0.0;
        } else {
            const double ratio = std::clamp(l2 / l1, 0.0, 1.0);
            p.eccentricity = std::sqrt(1.0 - ratio);
        }
        p.orientation = 0.5 * std::atan2(2.0 * b, a - c);
    }
    return props;
}

std::vector<double> profile_line(const ImageBuffer& img,
                                 double src_row, double src_col,
                                 double dst_row, double dst_col,
                                 int linewidth) {
    if (img.channels() != 1 || !img.is_f32())
        throw std::invalid_argument("profile_line: single-channel float input required");
    if (linewidth < 1 || linewidth % 2 == 0)
        throw std::invalid_argument("profile_line: linewidth must be odd and positive");
    const double dr = dst_row - src_row;
    const double dc = dst_col - src_col;
    const double len = std::hypot(dr, dc);
    if (len == 0.0)
        throw std::invalid_argument("profile_line: src and dst must differ");
    const double ur = dr / len;
    const double uc = dc / len;
    const double nr = -uc;  // unit normal
    const double nc = ur;
    const int half = (linewidth - 1) / 2;
    const std::size_t count = static_cast<std::size_t>(std::ceil(len)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double kr = src_row + static_cast<double>(k) * ur;
        const double kc = src_col + static_cast<double>(k) * uc;
        double acc = 0.0;
        for (int off = -half; off <= half; ++off) {
            acc += bilinear_clamped(img, kr + off * nr, kc + off * nc);
        }
        out.push_back(acc / linewidth);
    }
    return out;
}

RansacResult ransac(const std::vector<Point2>& src,
                    const std::vector<Point2>& dst,
                    TransformKind model_kind,
                    std::size_t min_samples,
                    double residual_threshold,
                    int max_trials,
                    std::uint32_t seed) {
    if (src.size() != dst.size())
        throw std::invalid_argument("ransac: src and dst size mismatch");
    if (min_samples < minimal_samples_for(model_kind))
        throw std::invalid_argument("ransac: min_samples insufficient for model kind");
    if (src.size() < min_samples)
        throw std::invalid_argument("ransac: too few pairs");
    if (max_trials < 1)
        throw std::invalid_argument("ransac: max_trials must be positive");

    const std::size_t n = src.size();
    Lcg31 rng(seed);
    bool have_best = false;
    long long best_count = -1;
    double best_residual_sum = std::numeric_limits<double>::infinity();
    Homography2D best_model;

    std::vector<std::size_t> sample;
    std::vector<Point2> sample_src, sample_dst;
    for (int trial = 0; trial < max_trials; ++trial) {
        sample.clear();
        while (sample.size() < min_samples) {
            const std::size_t idx = rng.next() % n;
            if (std::find(sample.begin(), sample.end(), idx) == sample.end())
                sample.push_back(idx);
        }
        sample_src.clear();
        sample_dst.clear();
        for (const std::size_t idx : sample) {
            sample_src.push_back(src[idx]);
            sample_dst.push_back(dst[idx]);
        }
        Homography2D model;
        try {
            model = estimate_for(model_kind, sample_src, sample_dst);
        } catch (const std::runtime_error&) {
            continue;  // degenerate sample
        }
        long long count = 0;
        double residual_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double res = residual_of(model, src[i], dst[i]);
            if (res <= residual_threshold) {
                ++count;
                residual_sum += res;
            }
        }
        if (count > best_count ||
            (count == best_count && residual_sum < best_residual_sum)) {
            best_count = count;
            best_residual_sum = residual_sum;
            best_model = model;
            have_best = true;
        }
    }
    if (!have_best || best_count < static_cast<long long>(min_samples))
        throw std::runtime_error("no consensus");

    // Refit on the winning trial's inliers, then recompute the mask against
    // the refit model so mask and model stay consistent.
    std::vector<Point2> in_src, in_dst;
    for (std::size_t i = 0; i < n; ++i) {
        if (residual_of(best_model, src[i], dst[i]) <= residual_threshold) {
            in_src.push_back(src[i]);
            in_dst.push_back(dst[i]);
        }
    }
    Homography2D final_model = best_model;
    try {
        final_model = estimate_for(model_kind, in_src, in_dst);
    } catch (const std::runtime_error&) {
        final_model = best_model;
    }
    RansacResult result;
    result.model = final_model;
    result.inliers.assign(n, false);
    result.trials_run = max_trials;
    int final_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (residual_of(final_model, src[i], dst[i]) <= residual_threshold) {
            result.inliers[i] = true;
            ++final_count;
        }
    }
    result.best_inlier_count = final_count;
    return result;
}

}  // namespace imgkit
