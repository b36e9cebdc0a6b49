#include "imgkit/pnm.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace imgkit {

namespace {

bool pnm_space(int ch) {
    return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' || ch == '\f';
}

bool pnm_digit(int ch) { return ch >= '0' && ch <= '9'; }

struct ByteReader {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    int peek() const { return eof() ? -1 : bytes[pos]; }
    int get() { return eof() ? -1 : bytes[pos++]; }
};

void skip_separators(ByteReader& r) {
    for (;;) {
        if (pnm_space(r.peek())) {
            r.get();
        } else if (r.peek() == '#') {
            while (!r.eof() && r.get() != '\n') {
            }
        } else {
            return;
        }
    }
}

long read_header_number(ByteReader& r) {
    skip_separators(r);
    if (r.eof()) throw std::runtime_error("truncated file");
    if (!pnm_digit(r.peek())) throw std::runtime_error("malformed header");
    long value = 0;
    while (pnm_digit(r.peek())) {
        value = value * 10 + (r.get() - '0');
        if (value > 1000000000L) throw std::runtime_error("malformed header");
    }
    // a token must end at whitespace, a comment, or the end of the buffer
    if (!r.eof() && !pnm_space(r.peek()) && r.peek() != '#')
        throw std::runtime_error("malformed header");
    return value;
}

}  // namespace

ImageBuffer read_pnm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        throw std::runtime_error("unsupported format");
    const int channels = bytes[1] == '5' ? 1 : 3;

    ByteReader r{bytes, 2};
    const long width = read_header_number(r);
    const long height = read_header_number(r);
    const long maxval = read_header_number(r);
    if (width <= 0 || height <= 0) throw std::runtime_error("malformed header");
    if (maxval != 255) throw std::runtime_error("unsupported depth");

    // Exactly one whitespace byte before the payload; a comment here would
    // eat sample bytes, so only a bare separator is legal.
    if (r.eof()) throw std::runtime_error("truncated file");
    if (!pnm_space(r.get())) throw std::runtime_error("malformed header");

    const std::size_t need =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;
    if (bytes.size() - r.pos < need) throw std::runtime_error("truncated file");

    ImageBuffer img = ImageBuffer::make_u8(static_cast<int>(height), static_cast<int>(width),
                                           channels);
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(r.pos), need, img.u8().begin());
    return img;
}

std::vector<std::uint8_t> write_pnm(const ImageBuffer& img) {
    if (img.empty() || img.kind() != ElemKind::U8 ||
        (img.channels() != 1 && img.channels() != 3))
        throw std::invalid_argument("write_pnm: U8 image with 1 or 3 channels required");

    char header[64];
    const int len = std::snprintf(header, sizeof header, "%s\n%d %d\n255\n",
                                  img.channels() == 1 ? "P5" : "P6", img.width(), img.height());
    std::vector<std::uint8_t> out(header, header + len);
    const auto data = img.u8();
    out.insert(out.end(), data.begin(), data.end());
    return out;
}

ImageBuffer read_pnm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw std::runtime_error("cannot read file");
    return read_pnm(bytes);
}

void write_pnm_file(const std::string& path, const ImageBuffer& img) {
    const std::vector<std::uint8_t> bytes = write_pnm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write file");
}

}  // namespace imgkit
