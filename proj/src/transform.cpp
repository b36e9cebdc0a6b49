#include "imgkit/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "imgkit/draw.hpp"
#include "imgkit/filters.hpp"

namespace imgkit {
namespace {

double det3(const std::array<double, 9>& m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double max_abs(const std::array<double, 9>& m) {
    double v = 0.0;
    for (double e : m) v = std::max(v, std::abs(e));
    return v;
}

Eigen::Matrix3d to_eigen(const std::array<double, 9>& m) {
    Eigen::Matrix3d e;
    e << m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8];
    return e;
}

std::array<double, 9> from_eigen(const Eigen::Matrix3d& e) {
    return {e(0, 0), e(0, 1), e(0, 2), e(1, 0), e(1, 1), e(1, 2),
            e(2, 0), e(2, 1), e(2, 2)};
}

struct NormalizedPoints {
    Eigen::Matrix3d T;
    std::vector<Point2> pts;
};

// Hartley normalization: centroid to the origin, mean distance sqrt(2).
NormalizedPoints hartley_normalize(const std::vector<Point2>& pts) {
    const double n = static_cast<double>(pts.size());
    double mx = 0.0, my = 0.0;
    for (const Point2& p : pts) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;
    double mean_dist = 0.0;
    for (const Point2& p : pts) mean_dist += std::hypot(p.x - mx, p.y - my);
    mean_dist /= n;
    if (mean_dist <= 0.0) throw std::runtime_error("degenerate configuration");
    const double s = std::sqrt(2.0) / mean_dist;
    NormalizedPoints out;
    out.T << s, 0, -s * mx, 0, s, -s * my, 0, 0, 1;
    out.pts.reserve(pts.size());
    for (const Point2& p : pts) out.pts.push_back({s * (p.x - mx), s * (p.y - my)});
    return out;
}

void check_pairs(const std::vector<Point2>& src, const std::vector<Point2>& dst,
                 std::size_t min_pairs, const char* op) {
    if (src.size() != dst.size())
        throw std::invalid_argument(std::string(op) + ": src and dst size mismatch");
    if (src.size() < min_pairs)
        throw std::invalid_argument(std::string(op) + ": at least " +
                                    std::to_string(min_pairs) +
                                    " point pairs required");
}

Homography2D finish_estimate(const std::array<double, 9>& matrix,
                             TransformKind kind) {
    try {
        return make_transform(matrix, kind);
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("degenerate configuration");
    }
}

// Gaussian blur applied channel by channel (used by rescale's anti-alias).
ImageBuffer blur_all_channels(const ImageBuffer& img, double sigma) {
    if (img.channels() == 1) return gaussian(img, sigma);
    ImageBuffer out = ImageBuffer::make_f32(img.height(), img.width(), img.channels());
    const std::size_t ch = img.channels();
    const std::size_t n = img.height() * img.width();
    const auto src = img.f32();
    auto dst = out.f32();
    ImageBuffer plane = ImageBuffer::make_f32(img.height(), img.width(), 1);
    for (std::size_t k = 0; k < ch; ++k) {
        auto pv = plane.f32();
        for (std::size_t i = 0; i < n; ++i) pv[i] = src[i * ch + k];
        const ImageBuffer blurred = gaussian(plane, sigma);
        const auto bv = blurred.f32();
        for (std::size_t i = 0; i < n; ++i) dst[i * ch + k] = bv[i];
    }
    return out;
}

}  // namespace

Homography2D make_transform(const std::array<double, 9>& matrix,
                            TransformKind kind) {
    std::array<double, 9> m = matrix;
    const double w = m[8];
    if (w != 0.0)
        for (double& v : m) v /= w;
    if (std::abs(det3(m)) <= 1e-12)
        throw std::invalid_argument("make_transform: singular matrix");
    const double tol = 1e-6 * std::max(1.0, max_abs(m));
    if (kind != TransformKind::Projective) {
        if (std::abs(m[6]) > tol || std::abs(m[7]) > tol || std::abs(m[8] - 1.0) > tol)
            throw std::invalid_argument("make_transform: matrix does not match kind");
    }
    if (kind == TransformKind::Similarity) {
        if (std::abs(m[0] - m[4]) > tol || std::abs(m[1] + m[3]) > tol)
            throw std::invalid_argument("make_transform: matrix does not match kind");
    }
    Homography2D t;
    t.m = m;
    t.kind = kind;
    return t;
}

Homography2D similarity_from_translation(double tx, double ty) {
    return make_transform({1, 0, tx, 0, 1, ty, 0, 0, 1}, TransformKind::Similarity);
}

Point2 apply(const Homography2D& t, Point2 p) {
    const auto& m = t.m;
    const double w = m[6] * p.x + m[7] * p.y + m[8];
    if (std::abs(w) <= 1e-12) throw std::runtime_error("point at infinity");
    return {(m[0] * p.x + m[1] * p.y + m[2]) / w,
            (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

std::vector<Point2> apply(const Homography2D& t, const std::vector<Point2>& pts) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const Point2& p : pts) out.push_back(apply(t, p));
    return out;
}

Homography2D inverse(const Homography2D& t) {
    const auto& m = t.m;
    // adjugate; make_transform renormalizes
    std::array<double, 9> a;
    a[0] = m[4] * m[8] - m[5] * m[7];
    a[1] = m[2] * m[7] - m[1] * m[8];
    a[2] = m[1] * m[5] - m[2] * m[4];
    a[3] = m[5] * m[6] - m[3] * m[8];
    a[4] = m[0] * m[8] - m[2] * m[6];
    a[5] = m[2] * m[3] - m[0] * m[5];
    a[6] = m[3] * m[7] - m[4] * m[6];
    a[7] = m[1] * m[6] - m[0] * m[7];
    a[8] = m[0] * m[4] - m[1] * m[3];
    const double d = det3(m);
    for (double& v : a) v /= d;
    return make_transform(a, t.kind);
}

Homography2D compose(const Homography2D& a, const Homography2D& b) {
    const Eigen::Matrix3d prod = to_eigen(b.m) * to_eigen(a.m);
    const TransformKind kind = static_cast<TransformKind>(
        std::max(static_cast<int>(a.kind), static_cast<int>(b.kind)));
    return make_transform(from_eigen(prod), kind);
}

Homography2D estimate_projective(const std::vector<Point2>& src,
                                 const std::vector<Point2>& dst) {
    check_pairs(src, dst, 4, "estimate_projective");
    const NormalizedPoints ns = hartley_normalize(src);
    const NormalizedPoints nd = hartley_normalize(dst);
    const std::size_t n = src.size();
    Eigen::MatrixXd A(2 * n, 9);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = ns.pts[i].x, y = ns.pts[i].y;
        const double u = nd.pts[i].x, v = nd.pts[i].y;
        A.row(2 * i) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
        A.row(2 * i + 1) << x, y, 1, 0, 0, 0, -u * x, -u * y, -u;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(7) <= 1e-8 * sv(0))
        throw std::runtime_error("degenerate configuration");
    const Eigen::VectorXd h = svd.matrixV().col(8);
    Eigen::Matrix3d Mhat;
    Mhat << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
    const Eigen::Matrix3d M = nd.T.inverse() * Mhat * ns.T;
    return finish_estimate(from_eigen(M), TransformKind::Projective);
}

Homography2D estimate_affine(const std::vector<Point2>& src,
                             const std::vector<Point2>& dst) {
    check_pairs(src, dst, 3, "estimate_affine");
    const std::size_t n = src.size();
    double msx = 0, msy = 0, mdx = 0, mdy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        msx += src[i].x;
        msy += src[i].y;
        mdx += dst[i].x;
        mdy += dst[i].y;
    }
    msx /= n; msy /= n; mdx /= n; mdy /= n;
    Eigen::MatrixXd Xc(n, 2), Yc(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        Xc(i, 0) = src[i].x - msx;
        Xc(i, 1) = src[i].y - msy;
        Yc(i, 0) = dst[i].x - mdx;
        Yc(i, 1) = dst[i].y - mdy;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xc, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(1) <= 1e-8 * sv(0))
        throw std::runtime_error("degenerate configuration");
    const Eigen::Matrix2d A = svd.solve(Yc).transpose();
    const double tx = mdx - (A(0, 0) * msx + A(0, 1) * msy);
    const double ty = mdy - (A(1, 0) * msx + A(1, 1) * msy);
    return finish_estimate({A(0, 0), A(0, 1), tx, A(1, 0), A(1, 1), ty, 0, 0, 1},
                           TransformKind::Affine);
}

Homography2D estimate_similarity(const std::vector<Point2>& src,
                                 const std::vector<Point2>& dst) {
    check_pairs(src, dst, 2, "estimate_similarity");
    const std::size_t n = src.size();
    double msx = 0, msy = 0, mdx = 0, mdy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        msx += src[i].x;
        msy += src[i].y;
        mdx += dst[i].x;
        mdy += dst[i].y;
    }
    msx /= n; msy /= n; mdx /= n; mdy /= n;
    double spread = 0.0, sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = src[i].x - msx, y = src[i].y - msy;
        const double u = dst[i].x - mdx, v = dst[i].y - mdy;
        spread += x * x + y * y;
        sa += x * u + y * v;
        sb += x * v - y * u;
    }
    if (spread <= 0.0) throw std::runtime_error("degenerate configuration");
    const double alpha = sa / spread;
    const double beta = sb / spread;
    const double tx = mdx - (alpha * msx - beta * msy);
    const double ty = mdy - (beta * msx + alpha * msy);
    return finish_estimate({alpha, -beta, tx, beta, alpha, ty, 0, 0, 1},
                           TransformKind::Similarity);
}

ImageBuffer warp(const ImageBuffer& img, const Homography2D& inverse_map,
                 std::size_t out_rows, std::size_t out_cols, float cval) {
    if (!img.is_f32())
        throw std::invalid_argument("warp: float input required");
    if (out_rows == 0 || out_cols == 0)
        throw std::invalid_argument("warp: output shape must be positive");
    const int h = static_cast<int>(img.height());
    const int w = static_cast<int>(img.width());
    const std::size_t ch = img.channels();
    ImageBuffer out = ImageBuffer::make_f32(out_rows, out_cols, ch);
    const auto src = img.f32();
    auto dst = out.f32();
    const auto& m = inverse_map.m;
    const auto sample = [&](int rr, int cc, std::size_t k) {
        return static_cast<double>(
            src[(static_cast<std::size_t>(rr) * static_cast<std::size_t>(w) +
                 static_cast<std::size_t>(cc)) * ch + k]);
    };
    for (std::size_t r = 0; r < out_rows; ++r) {
        for (std::size_t c = 0; c < out_cols; ++c) {
            const double xc = static_cast<double>(c);
            const double yr = static_cast<double>(r);
            const std::size_t o = (r * out_cols + c) * ch;
            const double denom = m[6] * xc + m[7] * yr + m[8];
            bool filled = false;
            if (std::abs(denom) > 1e-12) {
                const double x = (m[0] * xc + m[1] * yr + m[2]) / denom;
                const double y = (m[3] * xc + m[4] * yr + m[5]) / denom;
                const double x0d = std::floor(x);
                const double y0d = std::floor(y);
                const double ax = x - x0d;
                const double ay = y - y0d;
                const bool need_x1 = ax != 0.0;
                const bool need_y1 = ay != 0.0;
                if (x0d >= 0.0 && y0d >= 0.0 &&
                    x0d <= static_cast<double>(w - 1 - (need_x1 ? 1 : 0)) &&
                    y0d <= static_cast<double>(h - 1 - (need_y1 ? 1 : 0))) {
                    const int x0 = static_cast<int>(x0d);
                    const int y0 = static_cast<int>(y0d);
                    for (std::size_t k = 0; k < ch; ++k) {
                        double v = (1.0 - ay) * ((1.0 - ax) * sample(y0, x0, k) +
                                                 (need_x1 ? ax * sample(y0, x0 + 1, k) : 0.0));
                        if (need_y1)
                            v += ay * ((1.0 - ax) * sample(y0 + 1, x0, k) +
                                       (need_x1 ? ax * sample(y0 + 1, x0 + 1, k) : 0.0));
                        dst[o + k] = static_cast<float>(v);
                    }
                    filled = true;
                }
            }
            if (!filled)
                for (std::size_t k = 0; k < ch; ++k) dst[o + k] = cval;
        }
    }
    return out;
}

ImageBuffer rescale(const ImageBuffer& img, double scale, bool antialias) {
    if (!(scale > 0.0))
        throw std::invalid_argument("rescale: scale must be positive");
    if (!img.is_f32())
        throw std::invalid_argument("rescale: float input required");
    const std::size_t out_rows = static_cast<std::size_t>(
        std::ceil(scale * static_cast<double>(img.height())));
    const std::size_t out_cols = static_cast<std::size_t>(
        std::ceil(scale * static_cast<double>(img.width())));
    const ImageBuffer* source = &img;
    ImageBuffer smoothed;
    if (antialias) {
        const double sigma = std::max(0.0, (1.0 / scale - 1.0) / 2.0);
        if (sigma > 0.0) {
            smoothed = blur_all_channels(img, sigma);
            source = &smoothed;
        }
    }
    const Homography2D inv = make_transform(
        {1.0 / scale, 0, 0, 0, 1.0 / scale, 0, 0, 0, 1}, TransformKind::Similarity);
    return warp(*source, inv, out_rows, out_cols, 0.0f);
}

MosaicExtent mosaic_extent(const Homography2D& model,
                           std::size_t ref_rows, std::size_t ref_cols,
                           std::size_t tgt_rows, std::size_t tgt_cols) {
    const auto corners_of = [](std::size_t rows, std::size_t cols) {
        const double r = static_cast<double>(rows);
        const double c = static_cast<double>(cols);
        return std::vector<Point2>{{0, 0}, {0, r}, {c, 0}, {c, r}};
    };
    std::vector<Point2> all = imgkit::apply(model, corners_of(tgt_rows, tgt_cols));
    for (const Point2& p : corners_of(ref_rows, ref_cols)) all.push_back(p);
    double min_x = all[0].x, max_x = all[0].x;
    double min_y = all[0].y, max_y = all[0].y;
    for (const Point2& p : all) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    MosaicExtent ext;
    ext.rows = static_cast<std::size_t>(std::ceil(max_y - min_y));
    ext.cols = static_cast<std::size_t>(std::ceil(max_x - min_x));
    ext.offset = similarity_from_translation(-min_x, -min_y);
    return ext;
}

ImageBuffer blend_average(const std::vector<ImageBuffer>& frames) {
    if (frames.empty())
        throw std::invalid_argument("blend_average: no frames");
    const int h = frames[0].height();
    const int w = frames[0].width();
    for (const ImageBuffer& f : frames) {
        if (!f.is_f32() || f.channels() != 4)
            throw std::invalid_argument("blend_average: RGBA float frames required");
        if (f.height() != h || f.width() != w)
            throw std::invalid_argument("blend_average: frame shape mismatch");
    }
    ImageBuffer out = ImageBuffer::make_f32(h, w, 3);
    auto dst = out.f32();
    const std::size_t n = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
    for (std::size_t i = 0; i < n; ++i) {
        double sum[3] = {0.0, 0.0, 0.0};
        double alpha_sum = 0.0;
        for (const ImageBuffer& f : frames) {
            const auto fv = f.f32();
            const double a = fv[i * 4 + 3];
            alpha_sum += a;
            for (std::size_t k = 0; k < 3; ++k) sum[k] += a * fv[i * 4 + k];
        }
        const double div = std::max(alpha_sum, 1.0);
        for (std::size_t k = 0; k < 3; ++k)
            dst[i * 3 + k] = static_cast<float>(sum[k] / div);
    }
    return out;
}

HoughLineAccumulator hough_line(const ImageBuffer& mask) {
    std::vector<double> thetas(180);
    const double pi = std::acos(-1.0);
    for (std::size_t k = 0; k < thetas.size(); ++k)
        thetas[k] = -pi / 2.0 + pi * static_cast<double>(k) / 180.0;
    return hough_line(mask, thetas);
}

HoughLineAccumulator hough_line(const ImageBuffer& mask,
                                const std::vector<double>& thetas) {
    if (mask.channels() != 1)
        throw std::invalid_argument("hough_line: single-channel mask required");
    if (thetas.empty())
        throw std::invalid_argument("hough_line: thetas must not be empty");
    const int h = static_cast<int>(mask.height());
    const int w = static_cast<int>(mask.width());
    const int d = static_cast<int>(
        std::ceil(std::hypot(static_cast<double>(h), static_cast<double>(w))));
    HoughLineAccumulator acc;
    acc.thetas = thetas;
    acc.rhos.resize(static_cast<std::size_t>(2 * d + 1));
    for (std::size_t i = 0; i < acc.rhos.size(); ++i)
        acc.rhos[i] = static_cast<double>(static_cast<int>(i) - d);
    acc.votes.assign(acc.rhos.size() * thetas.size(), 0);
    std::vector<double> cos_t(thetas.size()), sin_t(thetas.size());
    for (std::size_t t = 0; t < thetas.size(); ++t) {
        cos_t[t] = std::cos(thetas[t]);
        sin_t[t] = std::sin(thetas[t]);
    }
    const std::size_t nt = thetas.size();
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (mask.value_at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), 0) == 0.0f)
                continue;
            for (std::size_t t = 0; t < nt; ++t) {
                const double rho = c * cos_t[t] + r * sin_t[t];
                const long long bin = std::llround(rho) + d;
                acc.votes[static_cast<std::size_t>(bin) * nt + t] += 1;
            }
        }
    }
    return acc;
}

std::vector<HoughLinePeak> hough_line_peaks(const HoughLineAccumulator& acc,
                                            std::size_t num_peaks,
                                            int min_distance, int min_angle) {
    if (min_distance < 0 || min_angle < 0)
        throw std::invalid_argument(
            "hough_line_peaks: suppression windows must be non-negative");
    const std::size_t nr = acc.rhos.size();
    const std::size_t nt = acc.thetas.size();
    std::vector<long long> votes = acc.votes;
    std::vector<HoughLinePeak> peaks;
    while (peaks.size() < num_peaks) {
        long long best = 0;
        std::size_t br = 0, bt = 0;
        bool found = false;
        for (std::size_t r = 0; r < nr; ++r) {
            for (std::size_t t = 0; t < nt; ++t) {
                if (votes[r * nt + t] > best) {
                    best = votes[r * nt + t];
                    br = r;
                    bt = t;
                    found = true;
                }
            }
        }
        if (!found) break;
        peaks.push_back({best, acc.thetas[bt], acc.rhos[br]});
        const std::size_t r_lo = br >= static_cast<std::size_t>(min_distance)
                                     ? br - static_cast<std::size_t>(min_distance)
                                     : 0;
        const std::size_t r_hi = std::min(nr - 1, br + static_cast<std::size_t>(min_distance));
        const std::size_t t_lo = bt >= static_cast<std::size_t>(min_angle)
                                     ? bt - static_cast<std::size_t>(min_angle)
                                     : 0;
        const std::size_t t_hi = std::min(nt - 1, bt + static_cast<std::size_t>(min_angle));
        for (std::size_t r = r_lo; r <= r_hi; ++r)
            for (std::size_t t = t_lo; t <= t_hi; ++t) votes[r * nt + t] = 0;
    }
    return peaks;
}

HoughCircleAccumulator hough_circle(const ImageBuffer& mask,
                                    const std::vector<int>& radii) {
    if (mask.channels() != 1)
        throw std::invalid_argument("hough_circle: single-channel mask required");
    for (int radius : radii)
        if (radius <= 0)
            throw std::invalid_argument("hough_circle: radii must be positive");
    const int h = static_cast<int>(mask.height());
    const int w = static_cast<int>(mask.width());
    HoughCircleAccumulator acc;
    acc.radii = radii;
    acc.rows = mask.height();
    acc.cols = mask.width();
    acc.stack.assign(radii.size(),
                     std::vector<long long>(mask.height() * mask.width(), 0));
    std::vector<PixelCoord> fg;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (mask.value_at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), 0) != 0.0f)
                fg.push_back({r, c});
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const std::vector<PixelCoord> offsets = circle_perimeter(0, 0, radii[k]);
        std::vector<long long>& grid = acc.stack[k];
        for (const PixelCoord& p : fg) {
            for (const PixelCoord& off : offsets) {
                const int rr = p.row + off.row;
                const int cc = p.col + off.col;
                if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                grid[static_cast<std::size_t>(rr) * static_cast<std::size_t>(w) +
                     static_cast<std::size_t>(cc)] += 1;
            }
        }
    }
    return acc;
}

HoughCirclePeak hough_circle_argmax(const HoughCircleAccumulator& acc) {
    if (acc.stack.empty())
        throw std::invalid_argument("hough_circle_argmax: empty accumulator");
    HoughCirclePeak peak;
    peak.radius = acc.radii[0];
    peak.votes = -1;
    for (std::size_t k = 0; k < acc.stack.size(); ++k) {
        const std::vector<long long>& grid = acc.stack[k];
        for (std::size_t r = 0; r < acc.rows; ++r) {
            for (std::size_t c = 0; c < acc.cols; ++c) {
                const long long v = grid[r * acc.cols + c];
                if (v > peak.votes) {
                    peak.votes = v;
                    peak.radius = acc.radii[k];
                    peak.center = {static_cast<int>(r), static_cast<int>(c)};
                }
            }
        }
    }
    return peak;
}

}  // namespace imgkit
