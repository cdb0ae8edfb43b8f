/*
 * Copyright 2026 The Parity Audit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "parity/io/netpbm.hpp"

#include <cctype>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "parity/error.hpp"

namespace parity::io {
namespace {

[[noreturn]] void Fail(const std::string& what) {
  throw ParityError(ErrorCode::kParseError, "netpbm: " + what);
}

// Skips whitespace and '#' comments between header tokens.
void SkipSeparators(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == EOF) return;
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

std::uint32_t ReadHeaderNumber(std::istream& in, const char* what) {
  SkipSeparators(in);
  std::string digits;
  while (std::isdigit(in.peek())) digits.push_back(static_cast<char>(in.get()));
  if (digits.empty() || digits.size() > 9) Fail(std::string("bad ") + what);
  return static_cast<std::uint32_t>(std::stoul(digits));
}

struct Header {
  char kind = 0;  // '2', '3', '5' or '6'
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t maxval = 0;
};

Header ReadHeader(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P') Fail("missing magic number");
  Header h;
  h.kind = magic[1];
  h.width = ReadHeaderNumber(in, "width");
  h.height = ReadHeaderNumber(in, "height");
  h.maxval = ReadHeaderNumber(in, "maxval");
  if (h.width == 0 || h.height == 0) Fail("zero image dimension");
  if (h.maxval == 0 || h.maxval > 65535) Fail("maxval must be in [1, 65535]");
  // Exactly one whitespace byte separates the header from binary data.
  if (!std::isspace(in.get())) Fail("missing whitespace after header");
  return h;
}

std::uint16_t ReadSample(std::istream& in, const Header& h, bool binary) {
  std::uint32_t v = 0;
  if (binary) {
    if (h.maxval < 256) {
      const int c = in.get();
      if (c == EOF) Fail("truncated pixel data");
      v = static_cast<std::uint32_t>(c);
    } else {
      const int hi = in.get();
      const int lo = in.get();
      if (lo == EOF || hi == EOF) Fail("truncated pixel data");
      v = (static_cast<std::uint32_t>(hi) << 8) | static_cast<std::uint32_t>(lo);
    }
  } else {
    SkipSeparators(in);
    if (!std::isdigit(in.peek())) Fail("truncated pixel data");
    v = ReadHeaderNumber(in, "sample");
  }
  if (v > h.maxval) Fail("sample exceeds maxval");
  return static_cast<std::uint16_t>(v);
}

std::uint8_t To8Bit(std::uint32_t v, std::uint32_t maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

}  // namespace

RgbImage ReadPpm(std::istream& in) {
  const Header h = ReadHeader(in);
  if (h.kind != '3' && h.kind != '6') Fail("expected P3 or P6 image");
  const bool binary = h.kind == '6';
  RgbImage image{.width = h.width, .height = h.height, .pixels = {}};
  const std::size_t count = static_cast<std::size_t>(h.width) * h.height;
  image.pixels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto r = ReadSample(in, h, binary);
    const auto g = ReadSample(in, h, binary);
    const auto b = ReadSample(in, h, binary);
    image.pixels.push_back({To8Bit(r, h.maxval), To8Bit(g, h.maxval), To8Bit(b, h.maxval)});
  }
  return image;
}

GrayImage ReadPgm(std::istream& in) {
  const Header h = ReadHeader(in);
  if (h.kind != '2' && h.kind != '5') Fail("expected P2 or P5 mask");
  const bool binary = h.kind == '5';
  GrayImage image{.width = h.width, .height = h.height, .maxval = h.maxval, .pixels = {}};
  const std::size_t count = static_cast<std::size_t>(h.width) * h.height;
  image.pixels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) image.pixels.push_back(ReadSample(in, h, binary));
  return image;
}

void WritePpm(std::ostream& out, const RgbImage& image) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  for (const auto& px : image.pixels) {
    out.put(static_cast<char>(px.r));
    out.put(static_cast<char>(px.g));
    out.put(static_cast<char>(px.b));
  }
}

void WritePgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << '\n' << image.maxval << '\n';
  for (const auto v : image.pixels) {
    if (image.maxval > 255) out.put(static_cast<char>(v >> 8));
    out.put(static_cast<char>(v & 0xFF));
  }
}

std::vector<ita::Rgb> MaskedPixels(const RgbImage& image, const GrayImage& mask) {
  if (image.width != mask.width || image.height != mask.height) {
    Fail("mask is " + std::to_string(mask.width) + "x" + std::to_string(mask.height) +
         ", image is " + std::to_string(image.width) + "x" + std::to_string(image.height));
  }
  std::vector<ita::Rgb> out;
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    if (mask.pixels[i] != 0) out.push_back(image.pixels[i]);
  }
  return out;
}

}  // namespace parity::io
