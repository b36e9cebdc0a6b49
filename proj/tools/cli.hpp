#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace imgkit::cli {

// Exit codes: 0 success, 1 usage, 2 I/O, 3 processing.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CropSpec {
    int r0 = 0, r1 = 0, c0 = 0, c1 = 0;  // half-open rows/cols
};

struct StitchOptions {
    std::string input0;
    std::string input1;
    std::string output;
    std::optional<CropSpec> crop;  // applied to both inputs
    double scale = 0.25;
    std::size_t keypoints = 1000;
    double fast_threshold = 0.05;
    std::size_t min_samples = 4;
    double residual_threshold = 2.0;
    int max_trials = 100;
    std::uint32_t seed = 0;
    std::string debug_dir;  // empty = no debug artifacts
};

struct CoinsOptions {
    std::string input;
    std::string outdir;
    int block = 95;
    double offset = -15.0;
    int min_distance = 20;
    double sigma = 3.0;
    double low = 10.0;
    double high = 80.0;
};

struct ApplyOptions {
    std::string op;  // "name" or "name:arg,arg,..."
    std::string input;
    std::string output;
    bool antialias = false;   // rescale only
    bool float_clip = true;   // clamp float results; false = reject negatives
};

struct InfoOptions {
    std::string input;
};

int run_stitch(const StitchOptions& opt);
int run_coins_demo(const CoinsOptions& opt);
int run_apply(const ApplyOptions& opt);
int run_info(const InfoOptions& opt);

}  // namespace imgkit::cli
