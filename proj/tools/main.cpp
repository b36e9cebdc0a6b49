#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"

namespace {

bool parse_crop(const std::string& spec, imgkit::cli::CropSpec& out) {
    int fields[4];
    std::size_t start = 0;
    for (int k = 0; k < 4; ++k) {
        const std::size_t pos = k == 3 ? spec.size() : spec.find(':', start);
        if (pos == std::string::npos) return false;
        const std::string part = spec.substr(start, pos - start);
        if (part.empty()) return false;
        char* end = nullptr;
        const long v = std::strtol(part.c_str(), &end, 10);
        if (end != part.c_str() + part.size() || v < 0 || v > 1000000000L) return false;
        fields[k] = static_cast<int>(v);
        start = pos + 1;
    }
    if (spec.find(':', start) != std::string::npos) return false;
    out = {fields[0], fields[1], fields[2], fields[3]};
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-D image processing toolkit"};
    app.require_subcommand(1);

    imgkit::cli::StitchOptions sopt;
    std::string crop_spec;
    CLI::App* stitch = app.add_subcommand(
        "stitch", "register two overlapping frames and blend them into a mosaic");
    stitch->add_option("input0", sopt.input0, "reference frame (PGM/PPM)")->required();
    stitch->add_option("input1", sopt.input1, "target frame (PGM/PPM)")->required();
    stitch->add_option("output", sopt.output, "output mosaic (PPM)")->required();
    stitch->add_option("--crop", crop_spec, "crop both inputs to R0:R1:C0:C1 (half-open)");
    stitch->add_option("--scale", sopt.scale, "working-resolution factor (default 0.25)");
    stitch->add_option("--keypoints", sopt.keypoints, "keypoints per frame (default 1000)");
    stitch->add_option("--fast-threshold", sopt.fast_threshold,
                       "FAST contrast threshold (default 0.05)");
    stitch->add_option("--min-samples", sopt.min_samples,
                       "RANSAC minimal sample size (default 4)");
    stitch->add_option("--residual-threshold", sopt.residual_threshold,
                       "RANSAC inlier distance in pixels (default 2)");
    stitch->add_option("--max-trials", sopt.max_trials, "RANSAC iterations (default 100)");
    stitch->add_option("--seed", sopt.seed, "RANSAC seed (default 0)");
    stitch->add_option("--debug-dir", sopt.debug_dir,
                       "write keypoints/matches/model/warp artifacts here");

    imgkit::cli::CoinsOptions copt;
    CLI::App* coins = app.add_subcommand(
        "coins-demo", "run the segmentation walkthrough and write its artifacts");
    coins->add_option("input", copt.input, "input image (PGM/PPM)")->required();
    coins->add_option("outdir", copt.outdir, "artifact directory")->required();
    coins->add_option("--block", copt.block, "adaptive threshold block size (default 95)");
    coins->add_option("--offset", copt.offset, "adaptive threshold offset (default -15)");
    coins->add_option("--min-distance", copt.min_distance,
                      "peak separation in pixels (default 20)");
    coins->add_option("--sigma", copt.sigma, "canny smoothing sigma (default 3)");
    coins->add_option("--low", copt.low, "canny low threshold, 0..255 (default 10)");
    coins->add_option("--high", copt.high, "canny high threshold, 0..255 (default 80)");

    imgkit::cli::ApplyOptions aopt;
    CLI::App* apply = app.add_subcommand("apply", "run one operation on an image");
    apply->add_option("op", aopt.op, "operation, e.g. gaussian:2.5 (see 'apply --help')")
        ->required();
    apply->add_option("input", aopt.input, "input image (PGM/PPM)")->required();
    apply->add_option("output", aopt.output, "output image")->required();
    apply->add_flag("--antialias", aopt.antialias, "smooth before rescale downsampling");
    apply->add_flag("--float-clip,!--no-float-clip", aopt.float_clip,
                    "clamp float results to [0,1] before writing (default on)");

    imgkit::cli::InfoOptions iopt;
    CLI::App* info = app.add_subcommand("info", "print width height channels kind min max");
    info->add_option("input", iopt.input, "input image (PGM/PPM)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help requests exit 0; every other parse problem is a usage error.
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (*stitch) {
        if (!crop_spec.empty()) {
            imgkit::cli::CropSpec c;
            if (!parse_crop(crop_spec, c)) {
                std::fprintf(stderr, "error: --crop expects R0:R1:C0:C1\n");
                return 1;
            }
            sopt.crop = c;
        }
        return imgkit::cli::run_stitch(sopt);
    }
    if (*coins) return imgkit::cli::run_coins_demo(copt);
    if (*apply) return imgkit::cli::run_apply(aopt);
    if (*info) return imgkit::cli::run_info(iopt);
    return 1;
}
