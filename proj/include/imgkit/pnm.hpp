#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imgkit/core.hpp"

namespace imgkit {

// Binary PGM (P5, 1 channel) / PPM (P6, 3 channels), maxval 255 only.
// Header tokens are whitespace-separated; `#` starts a comment running to
// the end of the line; exactly one whitespace byte separates the maxval
// from the raw samples. Errors: "unsupported format" (bad magic),
// "unsupported depth" (maxval != 255), "truncated file" (bytes end early),
// "malformed header" (anything else wrong before the payload).
ImageBuffer read_pnm(const std::vector<std::uint8_t>& bytes);

// Canonical form: magic, '\n', "width height", '\n', "255", '\n', raw
// row-major samples. U8 input with 1 or 3 channels.
std::vector<std::uint8_t> write_pnm(const ImageBuffer& img);

ImageBuffer read_pnm_file(const std::string& path);
void write_pnm_file(const std::string& path, const ImageBuffer& img);

}  // namespace imgkit
