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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "parity/ita.hpp"

namespace parity::io {

// Color image from a PPM (P3 ASCII or P6 binary). Samples with maxval other
// than 255 are rescaled to 8 bits with rounding.
struct RgbImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<ita::Rgb> pixels;  // row-major
};

// Grayscale image from a PGM (P2 ASCII or P5 binary), raw sample values.
struct GrayImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t maxval = 255;
  std::vector<std::uint16_t> pixels;
};

RgbImage ReadPpm(std::istream& in);
GrayImage ReadPgm(std::istream& in);

void WritePpm(std::ostream& out, const RgbImage& image);  // P6, maxval 255
void WritePgm(std::ostream& out, const GrayImage& image);  // P5

// Pixels of `image` where `mask` is nonzero. Dimensions must match.
std::vector<ita::Rgb> MaskedPixels(const RgbImage& image, const GrayImage& mask);

}  // namespace parity::io
