#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "imgkit/color.hpp"
#include "imgkit/core.hpp"
#include "imgkit/draw.hpp"
#include "imgkit/exposure.hpp"
#include "imgkit/features.hpp"
#include "imgkit/filters.hpp"
#include "imgkit/measure.hpp"
#include "imgkit/pnm.hpp"
#include "imgkit/transform.hpp"

namespace fs = std::filesystem;

namespace imgkit::cli {

namespace {

ImageBuffer load(const std::string& path) {
    try {
        return read_pnm_file(path);
    } catch (const std::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save(const std::string& path, const ImageBuffer& img) {
    const std::vector<std::uint8_t> bytes = write_pnm(img);  // bad image -> processing error
    try {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open");
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("cannot write");
    } catch (const std::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path + ": cannot open");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError(path + ": cannot write");
}

void make_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir + ": " + ec.message());
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ImageBuffer to_gray_float(const ImageBuffer& img) {
    if (img.channels() == 3) return rgb2gray(img);
    return img.is_u8() ? img_as_float(img) : img;
}

ImageBuffer to_gray_u8(const ImageBuffer& img) {
    if (img.channels() == 3) return img_as_ubyte(rgb2gray(img));
    return img.is_u8() ? img : img_as_ubyte(img);
}

ImageBuffer to_u8_output(const ImageBuffer& img, bool float_clip) {
    if (img.is_u8()) return img;
    if (!float_clip) {
        for (float v : img.f32())
            if (v < 0.0f)
                throw std::runtime_error("result has negative values (--float-clip clamps them)");
    }
    return img_as_ubyte(img);
}

int report(const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
}

int report(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
}

void write_keypoints_csv(const std::string& path, const KeypointSet& kp) {
    std::string out = "row,col,score,orientation\n";
    for (std::size_t i = 0; i < kp.size(); ++i) {
        out += std::to_string(kp.coords[i].row) + ',' + std::to_string(kp.coords[i].col) + ',' +
               fmt_g(kp.scores[i]) + ',' + fmt_g(kp.orientations[i]) + '\n';
    }
    write_text(path, out);
}

void write_stitch_debug(const std::string& dir, const KeypointSet& kp0, const KeypointSet& kp1,
                        const MatchSet& matches, const RansacResult& rr,
                        const ImageBuffer& warped0, const ImageBuffer& warped1) {
    make_dir(dir);
    write_keypoints_csv(dir + "/keypoints0.csv", kp0);
    write_keypoints_csv(dir + "/keypoints1.csv", kp1);

    std::string mcsv = "i,j,hamming\n";
    for (std::size_t k = 0; k < matches.size(); ++k) {
        mcsv += std::to_string(matches.pairs[k].first) + ',' +
                std::to_string(matches.pairs[k].second) + ',' +
                std::to_string(matches.distances[k]) + '\n';
    }
    write_text(dir + "/matches.csv", mcsv);

    std::string icsv = "i,j,inlier\n";
    for (std::size_t k = 0; k < matches.size(); ++k) {
        icsv += std::to_string(matches.pairs[k].first) + ',' +
                std::to_string(matches.pairs[k].second) + ',' +
                (rr.inliers[k] ? '1' : '0') + '\n';
    }
    write_text(dir + "/inliers.csv", icsv);

    std::string model;
    for (int r = 0; r < 3; ++r) {
        model += fmt_g(rr.model.m[3 * r]) + ' ' + fmt_g(rr.model.m[3 * r + 1]) + ' ' +
                 fmt_g(rr.model.m[3 * r + 2]) + '\n';
    }
    write_text(dir + "/model.txt", model);

    save(dir + "/warped0.ppm", gray2rgb(img_as_ubyte(warped0)));
    save(dir + "/warped1.ppm", gray2rgb(img_as_ubyte(warped1)));
}

}  // namespace

int run_stitch(const StitchOptions& opt) {
    try {
        ImageBuffer in0 = load(opt.input0);
        ImageBuffer in1 = load(opt.input1);
        if (opt.crop) {
            const CropSpec& c = *opt.crop;
            in0 = crop(in0, c.r0, c.r1, c.c0, c.c1);
            in1 = crop(in1, c.r0, c.r1, c.c0, c.c1);
        }

        const ImageBuffer work0 = rescale(to_gray_float(in0), opt.scale);
        const ImageBuffer work1 = rescale(to_gray_float(in1), opt.scale);

        const KeypointSet kp0 = orb_detect_and_extract(work0, opt.keypoints, opt.fast_threshold);
        const KeypointSet kp1 = orb_detect_and_extract(work1, opt.keypoints, opt.fast_threshold);
        const MatchSet matches = match_descriptors(kp0.descriptors, kp1.descriptors, true);

        // Model maps frame-1 coordinates into frame 0; transforms act on (x, y).
        std::vector<Point2> src, dst;
        src.reserve(matches.size());
        dst.reserve(matches.size());
        for (const auto& [i, j] : matches.pairs) {
            src.push_back({static_cast<double>(kp1.coords[j].col),
                           static_cast<double>(kp1.coords[j].row)});
            dst.push_back({static_cast<double>(kp0.coords[i].col),
                           static_cast<double>(kp0.coords[i].row)});
        }
        const RansacResult rr = ransac(src, dst, TransformKind::Projective, opt.min_samples,
                                       opt.residual_threshold, opt.max_trials, opt.seed);

        const MosaicExtent ext =
            mosaic_extent(rr.model, static_cast<std::size_t>(work0.height()),
                          static_cast<std::size_t>(work0.width()),
                          static_cast<std::size_t>(work1.height()),
                          static_cast<std::size_t>(work1.width()));
        if (ext.rows * ext.cols > 100000000ull)
            throw std::runtime_error("mosaic extent too large; model is likely degenerate");

        const ImageBuffer warped0 =
            warp(work0, inverse(ext.offset), ext.rows, ext.cols, -1.0f);
        const ImageBuffer warped1 =
            warp(work1, inverse(compose(rr.model, ext.offset)), ext.rows, ext.cols, -1.0f);

        ImageBuffer blended = blend_average({add_alpha(warped0), add_alpha(warped1)});
        for (float& v : blended.f32()) v = std::clamp(v, 0.0f, 1.0f);
        save(opt.output, img_as_ubyte(blended));

        if (!opt.debug_dir.empty())
            write_stitch_debug(opt.debug_dir, kp0, kp1, matches, rr, warped0, warped1);
        return 0;
    } catch (const IoError& e) {
        return report(e);
    } catch (const std::exception& e) {
        return report(e);
    }
}

int run_coins_demo(const CoinsOptions& opt) {
    try {
        const ImageBuffer gray = to_gray_u8(load(opt.input));
        make_dir(opt.outdir);

        const Histogram hist = histogram(gray);
        std::string hcsv = "bin,count\n";
        for (int b = 0; b < 256; ++b)
            hcsv += std::to_string(b) + ',' + std::to_string(hist.counts[b]) + '\n';
        write_text(opt.outdir + "/histogram.csv", hcsv);

        save(opt.outdir + "/adaptive.pgm",
             threshold_adaptive(gray, opt.block, opt.offset));

        std::string pcsv = "row,col\n";
        for (const PixelCoord& p : peak_local_max(img_as_float(gray), opt.min_distance))
            pcsv += std::to_string(p.row) + ',' + std::to_string(p.col) + '\n';
        write_text(opt.outdir + "/peaks.csv", pcsv);

        const ImageBuffer edges = canny(gray, {opt.sigma, opt.low, opt.high});
        save(opt.outdir + "/edges.pgm", edges);

        const LabelImage lbl = label(edges, 8);
        ImageBuffer lview = ImageBuffer::make_u8(lbl.rows, lbl.cols, 1);
        for (int r = 0; r < lbl.rows; ++r)
            for (int c = 0; c < lbl.cols; ++c) {
                const int v = lbl.at(r, c);
                lview.u8_at(r, c) = v == 0 ? 0
                                           : static_cast<std::uint8_t>(
                                                 std::llround(v * 255.0 / lbl.count));
            }
        save(opt.outdir + "/labels.pgm", lview);

        ImageBuffer boxes = gray2rgb(gray);
        for (const RegionProps& rp : regionprops(lbl)) {
            for (const PixelCoord& p :
                 rectangle_perimeter(rp.min_row, rp.min_col, rp.max_row, rp.max_col)) {
                boxes.u8_at(p.row, p.col, 0) = 255;
                boxes.u8_at(p.row, p.col, 1) = 0;
                boxes.u8_at(p.row, p.col, 2) = 0;
            }
        }
        save(opt.outdir + "/boxes.ppm", boxes);
        return 0;
    } catch (const IoError& e) {
        return report(e);
    } catch (const std::exception& e) {
        return report(e);
    }
}

namespace {

const char kApplyUsage[] =
    "apply ops:\n"
    "  sobel              gradient magnitude\n"
    "  gaussian:SIGMA     gaussian blur\n"
    "  median:RADIUS      median filter, window 2*RADIUS+1\n"
    "  canny:SIGMA,LO,HI  edge mask (thresholds in 0..255 units)\n"
    "  equalize           histogram equalization\n"
    "  rgb2gray           luma conversion\n"
    "  rescale:SCALE      resize by factor (--antialias to smooth first)\n"
    "  dog:LO,HI          difference of gaussians\n"
    "  adaptive:BLOCK,OFF local threshold\n";

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || v < -1000000000L || v > 1000000000L) return false;
    out = static_cast<int>(v);
    return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

int run_apply(const ApplyOptions& opt) {
    const std::size_t colon = opt.op.find(':');
    const std::string name = opt.op.substr(0, colon);
    const std::vector<std::string> args =
        colon == std::string::npos ? std::vector<std::string>{}
                                   : split(opt.op.substr(colon + 1), ',');

    const auto usage = [&]() {
        std::cerr << "unknown or malformed op '" << opt.op << "'\n" << kApplyUsage;
        return 1;
    };

    double d0 = 0, d1 = 0, d2 = 0;
    int i0 = 0;
    enum class Op { Sobel, Gaussian, Median, Canny, Equalize, Rgb2Gray, Rescale, Dog, Adaptive };
    Op op;
    if (name == "sobel" && args.empty()) {
        op = Op::Sobel;
    } else if (name == "gaussian" && args.size() == 1 && parse_double(args[0], d0)) {
        op = Op::Gaussian;
    } else if (name == "median" && args.size() == 1 && parse_int(args[0], i0) && i0 >= 0) {
        op = Op::Median;
    } else if (name == "canny" && args.size() == 3 && parse_double(args[0], d0) &&
               parse_double(args[1], d1) && parse_double(args[2], d2)) {
        op = Op::Canny;
    } else if (name == "equalize" && args.empty()) {
        op = Op::Equalize;
    } else if (name == "rgb2gray" && args.empty()) {
        op = Op::Rgb2Gray;
    } else if (name == "rescale" && args.size() == 1 && parse_double(args[0], d0)) {
        op = Op::Rescale;
    } else if (name == "dog" && args.size() == 2 && parse_double(args[0], d0) &&
               parse_double(args[1], d1)) {
        op = Op::Dog;
    } else if (name == "adaptive" && args.size() == 2 && parse_int(args[0], i0) &&
               parse_double(args[1], d1)) {
        op = Op::Adaptive;
    } else {
        return usage();
    }

    try {
        const ImageBuffer in = load(opt.input);
        ImageBuffer result;
        switch (op) {
            case Op::Sobel: result = sobel(to_gray_float(in)); break;
            case Op::Gaussian: result = gaussian(to_gray_float(in), d0); break;
            case Op::Median: result = median(to_gray_u8(in), 2 * i0 + 1); break;
            case Op::Canny: result = canny(to_gray_u8(in), {d0, d1, d2}); break;
            case Op::Equalize: result = equalize_hist(to_gray_u8(in)); break;
            case Op::Rgb2Gray: result = rgb2gray(in); break;
            case Op::Rescale:
                result = rescale(in.is_u8() ? img_as_float(in) : in, d0, opt.antialias);
                break;
            case Op::Dog: result = difference_of_gaussians(to_gray_float(in), d0, d1); break;
            case Op::Adaptive: result = threshold_adaptive(to_gray_u8(in), i0, d1); break;
        }
        save(opt.output, to_u8_output(result, opt.float_clip));
        return 0;
    } catch (const IoError& e) {
        return report(e);
    } catch (const std::exception& e) {
        return report(e);
    }
}

int run_info(const InfoOptions& opt) {
    try {
        const ImageBuffer img = load(opt.input);
        const auto data = img.u8();
        const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
        std::printf("%d %d %d u8 %d %d\n", img.width(), img.height(), img.channels(),
                    static_cast<int>(*lo), static_cast<int>(*hi));
        return 0;
    } catch (const IoError& e) {
        return report(e);
    } catch (const std::exception& e) {
        return report(e);
    }
}

}  // namespace imgkit::cli
