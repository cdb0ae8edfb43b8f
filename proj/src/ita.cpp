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

#include "parity/ita.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "parity/error.hpp"

namespace parity::ita {
namespace {

double DecodeChannel(std::uint8_t v) {
  const double c = static_cast<double>(v) / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double LabCompand(double t) {
  constexpr double kDelta = 6.0 / 29.0;
  if (t > kDelta * kDelta * kDelta) return std::cbrt(t);
  return t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double Median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

Lab SrgbToLab(Rgb pixel) {
  const double r = DecodeChannel(pixel.r);
  const double g = DecodeChannel(pixel.g);
  const double b = DecodeChannel(pixel.b);

  const double x = 100.0 * (0.4124564 * r + 0.3575761 * g + 0.1804375 * b);
  const double y = 100.0 * (0.2126729 * r + 0.7151522 * g + 0.0721750 * b);
  const double z = 100.0 * (0.0193339 * r + 0.1191920 * g + 0.9503041 * b);

  const double fx = LabCompand(x / kWhiteX);
  const double fy = LabCompand(y / kWhiteY);
  const double fz = LabCompand(z / kWhiteZ);
  return Lab{.l = 116.0 * fy - 16.0, .a = 500.0 * (fx - fy), .b = 200.0 * (fy - fz)};
}

double ItaFromLab(double l, double b) {
  const double numerator = l - 50.0;
  if (b == 0.0) {
    if (numerator == 0.0) return 0.0;
    return numerator > 0.0 ? 90.0 : -90.0;
  }
  return std::atan(numerator / b) * 180.0 / std::numbers::pi;
}

std::string_view SkinToneName(SkinTone tone) {
  switch (tone) {
    case SkinTone::kST1: return "ST1";
    case SkinTone::kST2: return "ST2";
    case SkinTone::kST3: return "ST3";
    case SkinTone::kST4: return "ST4";
    case SkinTone::kST5: return "ST5";
    case SkinTone::kST6: return "ST6";
  }
  return "ST1";
}

SkinTone CategoryForIta(double ita_degrees) {
  if (ita_degrees < -30.0) return SkinTone::kST1;
  if (ita_degrees < 10.0) return SkinTone::kST2;
  if (ita_degrees < 28.0) return SkinTone::kST3;
  if (ita_degrees < 41.0) return SkinTone::kST4;
  if (ita_degrees < 55.0) return SkinTone::kST5;
  return SkinTone::kST6;
}

double MedianIta(std::span<const double> ita_values) {
  if (ita_values.empty()) {
    throw ParityError(ErrorCode::kEmptySkinMask, "no ITA values");
  }
  return Median(std::vector<double>(ita_values.begin(), ita_values.end()));
}

ItaRecord ImageIta(std::span<const Rgb> skin_pixels) {
  if (skin_pixels.empty()) {
    throw ParityError(ErrorCode::kEmptySkinMask, "no skin pixels in sample");
  }
  std::vector<double> itas;
  std::vector<double> ls;
  std::vector<double> bs;
  itas.reserve(skin_pixels.size());
  ls.reserve(skin_pixels.size());
  bs.reserve(skin_pixels.size());
  for (const Rgb& px : skin_pixels) {
    const Lab lab = SrgbToLab(px);
    itas.push_back(ItaFromLab(lab.l, lab.b));
    ls.push_back(lab.l);
    bs.push_back(lab.b);
  }
  ItaRecord record;
  record.ita_degrees = MedianIta(itas);
  record.category = CategoryForIta(record.ita_degrees);
  record.pixel_count = skin_pixels.size();
  record.median_l = Median(std::move(ls));
  record.median_b = Median(std::move(bs));
  return record;
}

}  // namespace parity::ita
