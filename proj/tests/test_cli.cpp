#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "imgkit/core.hpp"
#include "imgkit/pnm.hpp"

namespace fs = std::filesystem;
using namespace imgkit;

namespace {

const char* cli_path() { return IMGKIT_CLI_PATH; }

int run_cli(const std::string& args) {
    const std::string cmd = '"' + std::string(cli_path()) + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string run_cli_stdout(const std::string& args, const fs::path& scratch) {
    const fs::path out = scratch / "stdout.txt";
    const std::string cmd =
        '"' + std::string(cli_path()) + "\" " + args + " >" + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WEXITSTATUS(status) == 0);
    std::ifstream in(out);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct Scratch {
    fs::path dir;
    explicit Scratch(const char* name) : dir(fs::temp_directory_path() / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(const char* leaf) const { return (dir / leaf).string(); }
};

std::string first_line(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

}  // namespace

TEST_CASE("cli info prints the one-line summary") {
    Scratch s("imgkit_cli_info");
    ImageBuffer img = ImageBuffer::make_u8(3, 4, 1);
    img.u8_at(1, 2) = 77;
    write_pnm_file(s.path("in.pgm"), img);

    const std::string out = run_cli_stdout("info " + s.path("in.pgm"), s.dir);
    CHECK(out == "4 3 1 u8 0 77\n");

    const ImageBuffer black = ImageBuffer::make_u8(1, 1, 1);
    write_pnm_file(s.path("black.pgm"), black);
    CHECK(run_cli_stdout("info " + s.path("black.pgm"), s.dir) == "1 1 1 u8 0 0\n");
}

TEST_CASE("cli exit codes distinguish usage, I/O, and processing failures") {
    Scratch s("imgkit_cli_codes");
    write_pnm_file(s.path("in.pgm"), ImageBuffer::make_u8(8, 8, 1));

    CHECK(run_cli("") == 1);  // missing subcommand
    CHECK(run_cli("apply bogus " + s.path("in.pgm") + " " + s.path("o.pgm")) == 1);
    CHECK(run_cli("apply gaussian:abc " + s.path("in.pgm") + " " + s.path("o.pgm")) == 1);
    CHECK(run_cli("apply gaussian:1 " + s.path("missing.pgm") + " " + s.path("o.pgm")) == 2);
    CHECK(run_cli("apply gaussian:1 " + s.path("in.pgm") + " /nonexistent/dir/o.pgm") == 2);
    CHECK(run_cli("apply rgb2gray " + s.path("in.pgm") + " " + s.path("o.pgm")) == 3);
    CHECK(run_cli("info " + s.path("in.pgm")) == 0);

    // corrupt input counts as an I/O failure
    std::ofstream bad(s.path("bad.pgm"), std::ios::binary);
    bad << "P9 not an image";
    bad.close();
    CHECK(run_cli("info " + s.path("bad.pgm")) == 2);
}

TEST_CASE("cli apply median removes isolated salt") {
    Scratch s("imgkit_cli_median");
    ImageBuffer img = ImageBuffer::make_u8(5, 5, 1);
    img.u8_at(2, 2) = 255;
    write_pnm_file(s.path("salt.pgm"), img);

    REQUIRE(run_cli("apply median:1 " + s.path("salt.pgm") + " " + s.path("clean.pgm")) == 0);
    const ImageBuffer clean = read_pnm_file(s.path("clean.pgm"));
    for (auto v : clean.u8()) CHECK(v == 0);
}

TEST_CASE("cli apply float handling honors --no-float-clip") {
    Scratch s("imgkit_cli_clip");
    ImageBuffer img = ImageBuffer::make_u8(16, 16, 1);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) img.u8_at(r, c) = static_cast<std::uint8_t>(16 * r);
    write_pnm_file(s.path("in.pgm"), img);

    // difference of gaussians goes negative somewhere on a gradient
    CHECK(run_cli("apply dog:1,2 " + s.path("in.pgm") + " " + s.path("ok.pgm")) == 0);
    CHECK(run_cli("apply dog:1,2 --no-float-clip " + s.path("in.pgm") + " " +
                  s.path("strict.pgm")) == 3);
}

TEST_CASE("cli apply rescale changes dimensions as reported by info") {
    Scratch s("imgkit_cli_rescale");
    write_pnm_file(s.path("in.pgm"), ImageBuffer::make_u8(10, 7, 1));
    REQUIRE(run_cli("apply rescale:0.5 " + s.path("in.pgm") + " " + s.path("half.pgm")) == 0);
    CHECK(first_line(s.path("half.pgm")) == "P5");
    const ImageBuffer half = read_pnm_file(s.path("half.pgm"));
    CHECK(half.height() == 5);
    CHECK(half.width() == 4);  // ceil(3.5)

    REQUIRE(run_cli("apply rescale:0.5 --antialias " + s.path("in.pgm") + " " +
                    s.path("aa.pgm")) == 0);
    const ImageBuffer aa = read_pnm_file(s.path("aa.pgm"));
    CHECK(aa.height() == 5);
    CHECK(aa.width() == 4);
}

TEST_CASE("cli coins-demo writes the full artifact set") {
    Scratch s("imgkit_cli_coins");
    // six bright disks on a darker gradient so every stage has work to do
    ImageBuffer img = ImageBuffer::make_u8(120, 180, 1);
    for (int r = 0; r < 120; ++r)
        for (int c = 0; c < 180; ++c)
            img.u8_at(r, c) = static_cast<std::uint8_t>(40 + 30 * c / 180);
    const int centers[6][2] = {{30, 30}, {30, 90}, {30, 150}, {85, 30}, {85, 90}, {85, 150}};
    for (const auto& cc : centers)
        for (int r = -12; r <= 12; ++r)
            for (int c = -12; c <= 12; ++c)
                if (r * r + c * c <= 144)
                    img.u8_at(cc[0] + r, cc[1] + c) = 210;
    write_pnm_file(s.path("coins.pgm"), img);

    const std::string outdir = s.path("out");
    REQUIRE(run_cli("coins-demo " + s.path("coins.pgm") + " " + outdir) == 0);

    CHECK(first_line(outdir + "/histogram.csv") == "bin,count");
    CHECK(first_line(outdir + "/peaks.csv") == "row,col");
    const ImageBuffer adaptive = read_pnm_file(outdir + "/adaptive.pgm");
    CHECK(adaptive.channels() == 1);
    for (auto v : adaptive.u8()) CHECK((v == 0 || v == 255));
    const ImageBuffer edges = read_pnm_file(outdir + "/edges.pgm");
    CHECK(edges.channels() == 1);
    const ImageBuffer labels = read_pnm_file(outdir + "/labels.pgm");
    CHECK(labels.channels() == 1);
    const ImageBuffer boxes = read_pnm_file(outdir + "/boxes.ppm");
    CHECK(boxes.channels() == 3);
    CHECK(boxes.height() == 120);
    CHECK(boxes.width() == 180);

    // histogram.csv has 256 data rows
    std::ifstream hist(outdir + "/histogram.csv");
    int lines = 0;
    std::string line;
    while (std::getline(hist, line)) ++lines;
    CHECK(lines == 257);
}

TEST_CASE("cli stitch fails cleanly when frames carry no features") {
    Scratch s("imgkit_cli_stitch_flat");
    ImageBuffer flat = ImageBuffer::make_u8(48, 48, 1);
    for (auto& v : flat.u8()) v = 128;
    write_pnm_file(s.path("a.pgm"), flat);
    write_pnm_file(s.path("b.pgm"), flat);
    CHECK(run_cli("stitch " + s.path("a.pgm") + " " + s.path("b.pgm") + " " + s.path("m.ppm") +
                  " --scale 1") == 3);
}
