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

#include "parity/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "parity/error.hpp"
#include "parity/risk_ratio.hpp"

namespace parity::io {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      return fields;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

[[noreturn]] void Fail(std::size_t line_no, const std::string& what) {
  throw ParityError(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
}

// Reads lines, skipping blank ones and tracking 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool Next(std::string_view& line) {
    while (std::getline(in_, buffer_)) {
      ++line_no_;
      line = Trim(buffer_);
      if (!line.empty()) return true;
    }
    return false;
  }
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_no_ = 0;
};

template <typename T>
T ParseInteger(std::string_view field, std::size_t line_no, std::string_view name) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    Fail(line_no, "invalid " + std::string(name) + " '" + std::string(field) + "'");
  }
  return value;
}

double ParseDouble(std::string_view field, std::size_t line_no, std::string_view name) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty() ||
      !std::isfinite(value)) {
    Fail(line_no, "invalid " + std::string(name) + " '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> ExpectFields(std::string_view line, std::size_t count,
                                           std::size_t line_no) {
  auto fields = Split(line);
  if (fields.size() != count) {
    Fail(line_no, "expected " + std::to_string(count) + " fields, got " +
                      std::to_string(fields.size()));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].empty()) Fail(line_no, "field " + std::to_string(i + 1) + " is empty");
  }
  return fields;
}

void ExpectHeader(LineReader& reader, std::string_view header) {
  std::string_view line;
  if (!reader.Next(line)) Fail(reader.line_no() + 1, "missing header '" + std::string(header) + "'");
  if (line != header) {
    Fail(reader.line_no(), "expected header '" + std::string(header) + "', got '" +
                               std::string(line) + "'");
  }
}

ProtectedLabel Label(std::string_view field, std::size_t line_no) {
  if (field.empty()) Fail(line_no, "empty label");
  return ProtectedLabel(std::string(field));
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

RecommendationLog ReadLogCsv(std::istream& in) {
  LineReader reader(in);
  ExpectHeader(reader, kLogHeader);

  struct Pending {
    QueryRecord record;
    std::size_t first_line;
  };
  std::vector<Pending> pending;
  std::unordered_map<std::string, std::size_t> by_query;

  std::string_view line;
  while (reader.Next(line)) {
    const std::size_t n = reader.line_no();
    const auto f = ExpectFields(line, 5, n);
    const std::string query_id(f[0]);
    ProtectedLabel query_label = Label(f[1], n);
    const auto rank = ParseInteger<std::uint32_t>(f[2], n, "rank");
    if (rank == 0) Fail(n, "rank must be >= 1");

    auto [it, inserted] = by_query.try_emplace(query_id, pending.size());
    if (inserted) {
      pending.push_back({QueryRecord{.query_id = query_id, .query_label = query_label, .results = {}}, n});
    }
    QueryRecord& record = pending[it->second].record;
    if (record.query_label != query_label) {
      Fail(n, "query '" + query_id + "' has label '" + query_label.name() + "', earlier '" +
                  record.query_label.name() + "'");
    }
    record.results.push_back(
        RecommendedItem{.rank = rank, .result_id = std::string(f[3]), .result_label = Label(f[4], n)});
  }

  RecommendationLog log;
  log.records.reserve(pending.size());
  for (auto& [record, first_line] : pending) {
    std::stable_sort(record.results.begin(), record.results.end(),
                     [](const RecommendedItem& a, const RecommendedItem& b) { return a.rank < b.rank; });
    for (std::size_t i = 0; i < record.results.size(); ++i) {
      if (record.results[i].rank != i + 1) {
        Fail(first_line, "query '" + record.query_id + "' ranks are not consecutive from 1");
      }
    }
    log.records.push_back(std::move(record));
  }
  return log;
}

void WriteLogCsv(std::ostream& out, const RecommendationLog& log) {
  out << kLogHeader << '\n';
  for (const auto& record : log.records) {
    for (const auto& item : record.results) {
      out << record.query_id << ',' << record.query_label.name() << ',' << item.rank << ','
          << item.result_id << ',' << item.result_label.name() << '\n';
    }
  }
}

ProtectedDistribution ReadCatalogCsv(std::istream& in) {
  LineReader reader(in);
  ExpectHeader(reader, kCatalogHeader);
  std::vector<ProtectedDistribution::Entry> entries;
  std::map<std::string, std::size_t> seen;
  std::string_view line;
  while (reader.Next(line)) {
    const std::size_t n = reader.line_no();
    const auto f = ExpectFields(line, 2, n);
    if (!seen.emplace(std::string(f[0]), n).second) Fail(n, "duplicate label '" + std::string(f[0]) + "'");
    entries.emplace_back(Label(f[0], n), ParseInteger<std::uint64_t>(f[1], n, "count"));
  }
  if (entries.empty()) Fail(reader.line_no(), "catalog has no labels");
  try {
    return ProtectedDistribution(std::move(entries));
  } catch (const ParityError& e) {
    Fail(reader.line_no(), e.what());
  }
}

void WriteCatalogCsv(std::ostream& out, const ProtectedDistribution& catalog) {
  out << kCatalogHeader << '\n';
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    out << catalog.labels()[i].name() << ',' << catalog.counts()[i] << '\n';
  }
}

retrieval::EmbeddingCatalog ReadEmbeddingsCsv(std::istream& in) {
  LineReader reader(in);
  std::string_view line;
  if (!reader.Next(line)) Fail(1, "missing header 'id,label,group_id,v0,...'");
  const auto header = Split(line);
  if (header.size() < 4 || header[0] != "id" || header[1] != "label" || header[2] != "group_id") {
    Fail(reader.line_no(), "expected header 'id,label,group_id,v0,...', got '" + std::string(line) + "'");
  }
  const std::size_t dim = header.size() - 3;
  for (std::size_t i = 0; i < dim; ++i) {
    if (header[i + 3] != "v" + std::to_string(i)) {
      Fail(reader.line_no(), "expected column 'v" + std::to_string(i) + "', got '" +
                                 std::string(header[i + 3]) + "'");
    }
  }

  std::vector<retrieval::CatalogItem> items;
  while (reader.Next(line)) {
    const std::size_t n = reader.line_no();
    const auto f = Split(line);
    if (f.size() != dim + 3) {
      Fail(n, "expected " + std::to_string(dim + 3) + " fields, got " + std::to_string(f.size()));
    }
    if (f[0].empty()) Fail(n, "empty id");
    retrieval::CatalogItem item{.id = std::string(f[0]),
                                .label = Label(f[1], n),
                                .group_id = std::string(f[2]),
                                .vector = {}};
    item.vector.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) item.vector.push_back(ParseDouble(f[i + 3], n, "coordinate"));
    items.push_back(std::move(item));
  }
  if (items.empty()) Fail(reader.line_no(), "no embeddings");
  try {
    return retrieval::EmbeddingCatalog(std::move(items));
  } catch (const ParityError& e) {
    Fail(reader.line_no(), e.what());
  }
}

void WriteEmbeddingsCsv(std::ostream& out, const retrieval::EmbeddingCatalog& catalog) {
  out << "id,label,group_id";
  for (std::size_t i = 0; i < catalog.dimension(); ++i) out << ",v" << i;
  out << '\n';
  for (const auto& item : catalog.items()) {
    out << item.id << ',' << item.label.name() << ',' << item.group_id;
    for (const double v : item.vector) out << ',' << FormatDouble(v);
    out << '\n';
  }
}

std::vector<ita::Rgb> ReadPixelsCsv(std::istream& in) {
  LineReader reader(in);
  std::vector<ita::Rgb> pixels;
  std::string_view line;
  bool first = true;
  while (reader.Next(line)) {
    const std::size_t n = reader.line_no();
    if (first && line == kPixelsHeader) {
      first = false;
      continue;
    }
    first = false;
    const auto f = ExpectFields(line, 3, n);
    const auto channel = [&](std::string_view field, std::string_view name) {
      const auto v = ParseInteger<int>(field, n, name);
      if (v < 0 || v > 255) Fail(n, std::string(name) + " out of range [0, 255]");
      return static_cast<std::uint8_t>(v);
    };
    pixels.push_back({channel(f[0], "r"), channel(f[1], "g"), channel(f[2], "b")});
  }
  return pixels;
}

std::vector<PowerCurveRow> PowerCurveRows(const PowerCurve& curve) {
  std::vector<PowerCurveRow> rows;
  rows.reserve(curve.points.size());
  for (const auto& point : curve.points) {
    rows.push_back(PowerCurveRow{.test = curve.kind.name(),
                                 .n = point.n,
                                 .rr = point.rr,
                                 .nrr = NormalizedRiskRatio(point.rr),
                                 .power = point.power,
                                 .se = point.standard_error});
  }
  return rows;
}

void WritePowerCurveCsv(std::ostream& out, const std::vector<PowerCurveRow>& rows) {
  out << kPowerCurveHeader << '\n';
  for (const auto& row : rows) {
    out << row.test << ',' << row.n << ',' << FormatDouble(row.rr) << ',' << FormatDouble(row.nrr)
        << ',' << FormatDouble(row.power) << ',' << FormatDouble(row.se) << '\n';
  }
}

std::vector<PowerCurveRow> ReadPowerCurveCsv(std::istream& in) {
  LineReader reader(in);
  ExpectHeader(reader, kPowerCurveHeader);
  std::vector<PowerCurveRow> rows;
  std::string_view line;
  while (reader.Next(line)) {
    const std::size_t n = reader.line_no();
    const auto f = ExpectFields(line, 6, n);
    rows.push_back(PowerCurveRow{.test = std::string(f[0]),
                                 .n = ParseInteger<std::uint64_t>(f[1], n, "n"),
                                 .rr = ParseDouble(f[2], n, "rr"),
                                 .nrr = ParseDouble(f[3], n, "nrr"),
                                 .power = ParseDouble(f[4], n, "power"),
                                 .se = ParseDouble(f[5], n, "se")});
  }
  return rows;
}

}  // namespace parity::io
