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
#include <optional>
#include <span>
#include <string_view>

namespace parity::ita {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};

struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// D65 reference white, Y normalized to 100.
inline constexpr double kWhiteX = 95.047;
inline constexpr double kWhiteY = 100.000;
inline constexpr double kWhiteZ = 108.883;

/// 8-bit sRGB to CIELAB under D65. Uses the IEC 61966-2-1 transfer curve and
/// the sRGB primaries matrix.
Lab SrgbToLab(Rgb pixel);

/// Individual Typology Angle in degrees, (180/pi) * atan((L* - 50) / b*).
/// b* == 0 gives +/-90 by the sign of L* - 50 (0 when L* == 50); negative b*
/// uses the plain arctangent of the ratio.
double ItaFromLab(double l, double b);

enum class SkinTone { kST1 = 1, kST2, kST3, kST4, kST5, kST6 };

std::string_view SkinToneName(SkinTone tone);

/// Six-band mapping, each band closed on the left:
/// (-inf,-30) ST1, [-30,10) ST2, [10,28) ST3, [28,41) ST4, [41,55) ST5, [55,inf) ST6.
SkinTone CategoryForIta(double ita_degrees);

struct ItaRecord {
  double ita_degrees = 0.0;
  SkinTone category = SkinTone::kST1;
  std::uint64_t pixel_count = 0;
  double median_l = 0.0;  // component-wise medians, diagnostic only
  double median_b = 0.0;
};

/// Median of a set of ITA values; the two middle values are averaged for an
/// even count. Throws EmptySkinMask on an empty set.
double MedianIta(std::span<const double> ita_values);

/// Median of the per-pixel ITA values (mean of the two middle values for an
/// even count) mapped to its category. Throws EmptySkinMask on no pixels.
ItaRecord ImageIta(std::span<const Rgb> skin_pixels);

}  // namespace parity::ita
