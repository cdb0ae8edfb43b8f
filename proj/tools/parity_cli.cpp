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

// parity: distribution-parity audits, power simulations, ITA extraction and
// k-NN log generation.
//
// Exit codes: 0 success (audit: parity not rejected), 2 audit detected bias,
// 1 any error.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parity/audit.hpp"
#include "parity/error.hpp"
#include "parity/io/csv.hpp"
#include "parity/io/netpbm.hpp"
#include "parity/io/report.hpp"
#include "parity/ita.hpp"
#include "parity/montecarlo.hpp"
#include "parity/retrieval.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBias = 2;

std::ifstream OpenInput(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw parity::ParityError(parity::ErrorCode::kIoError, "cannot open '" + path + "'");
  return in;
}

// Writes `body` to `path`, or to stdout when `path` is empty.
void Emit(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parity::ParityError(parity::ErrorCode::kIoError, "cannot write '" + path + "'");
  out << body;
}

// Parse errors get the file name prepended so diagnostics point at the input.
template <typename T, typename Fn>
T ReadFile(const std::string& path, Fn&& read, bool binary = false) {
  auto in = OpenInput(path, binary);
  try {
    return read(in);
  } catch (const parity::ParityError& e) {
    throw parity::ParityError(e.code(), path + ": " + e.what());
  }
}

parity::ProtectedDistribution LoadDistribution(const std::string& path) {
  if (path.empty()) return parity::ReferenceSkinToneDistribution();
  return ReadFile<parity::ProtectedDistribution>(
      path, [](std::istream& in) { return parity::io::ReadCatalogCsv(in); });
}

struct SimulationFlags {
  std::uint64_t n = 1000;
  double rr = 1.0;
  std::uint32_t k = 6;
  std::uint32_t trials = 1000;
  double alpha = 0.01;
  std::uint64_t seed = parity::kDefaultSeed;
  std::string dist_file;
  std::string test = "omnibus";
  std::string catalog_row = "realized";
  unsigned threads = 0;
  std::string out;

  void Register(CLI::App* app, bool single_n) {
    if (single_n) {
      app->add_option("--n", n, "Catalog size (number of query items)")->envname("PARITY_N");
      app->add_option("--rr", rr, "Risk ratio applied to each query's own label")->envname("PARITY_RR");
    }
    app->add_option("--k", k, "Recommendations per query")->envname("PARITY_K");
    app->add_option("--trials", trials, "Monte Carlo trials per estimate")->envname("PARITY_TRIALS");
    app->add_option("--alpha", alpha, "Significance level")->envname("PARITY_ALPHA");
    app->add_option("--seed", seed, "Master seed")->envname("PARITY_SEED");
    app->add_option("--dist-file", dist_file, "label,count CSV for P_Z (default: ST1..ST6 reference)")
        ->envname("PARITY_DIST_FILE");
    app->add_option("--test", test, "omnibus | contrast:LABEL")->envname("PARITY_TEST");
    app->add_option("--catalog-row", catalog_row, "realized | expected")->envname("PARITY_CATALOG_ROW");
    app->add_option("--threads", threads, "Worker threads (0 = all cores)")->envname("PARITY_THREADS");
    app->add_option("--out", out, "Output file (default: stdout)")->envname("PARITY_OUT");
  }

  parity::SimulationConfig Config() const {
    parity::SimulationConfig config;
    config.n = n;
    config.rr = rr;
    config.base = LoadDistribution(dist_file);
    config.k = k;
    config.trials = trials;
    config.alpha = alpha;
    config.master_seed = seed;
    const auto row = parity::ParseCatalogRow(catalog_row);
    if (!row) {
      throw parity::ParityError(parity::ErrorCode::kInvalidArgument,
                                "--catalog-row must be 'realized' or 'expected'");
    }
    config.catalog_row = *row;
    config.threads = threads;
    return config;
  }
};

int RunAudit(const std::string& log_file, const std::string& catalog_file, double alpha,
             std::uint32_t k, std::uint32_t rank, const std::string& p_adjust,
             bool continuity_correction, const std::string& out) {
  const auto log = ReadFile<parity::RecommendationLog>(
      log_file, [](std::istream& in) { return parity::io::ReadLogCsv(in); });
  const auto catalog = ReadFile<parity::ProtectedDistribution>(
      catalog_file, [](std::istream& in) { return parity::io::ReadCatalogCsv(in); });

  parity::AuditOptions options;
  options.alpha = alpha;
  const auto adjust = parity::ParsePAdjust(p_adjust);
  if (!adjust) {
    throw parity::ParityError(parity::ErrorCode::kInvalidArgument,
                              "--p-adjust must be none, bonferroni or benjamini_hochberg");
  }
  options.p_adjust = *adjust;
  options.rank_filter = rank > 0 ? parity::RankFilter{parity::ExactRank{rank}}
                                 : parity::RankFilter{parity::TopK{k}};
  options.risk_ratio.continuity_correction = continuity_correction;

  const parity::AuditReport report = parity::Audit(log, catalog, options);
  if (!out.empty()) Emit(out, parity::io::AuditReportToJson(report, catalog).dump(2) + "\n");
  std::cout << parity::io::FormatAuditTable(report);
  return report.omnibus.reject ? kExitBias : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution-parity auditing for top-K retrieval results"};
  app.require_subcommand(1);
  std::function<int()> action;

  // audit
  auto* audit = app.add_subcommand("audit", "Omnibus and contrast chi-square tests with risk ratios");
  std::string log_file;
  std::string catalog_file;
  double audit_alpha = 0.01;
  std::uint32_t audit_k = 6;
  std::uint32_t audit_rank = 0;
  std::string p_adjust = "none";
  bool continuity = false;
  std::string audit_out;
  audit->add_option("log_file", log_file, "Recommendation log CSV")->required()->envname("PARITY_LOG_FILE");
  audit->add_option("catalog_file", catalog_file, "Catalog label,count CSV")
      ->required()
      ->envname("PARITY_CATALOG_FILE");
  audit->add_option("--alpha", audit_alpha, "Significance level")->envname("PARITY_ALPHA");
  audit->add_option("--k", audit_k, "Pool ranks 1..K (weak parity)")->envname("PARITY_K");
  audit->add_option("--rank", audit_rank, "Test a single rank instead of the top K (strong parity)")
      ->envname("PARITY_RANK");
  audit->add_option("--p-adjust", p_adjust, "none | bonferroni | benjamini_hochberg")
      ->envname("PARITY_P_ADJUST");
  audit->add_flag("--continuity-correction", continuity, "Add 0.5 to every cell of the risk ratio")
      ->envname("PARITY_CONTINUITY_CORRECTION");
  audit->add_option("--out", audit_out, "JSON report path")->envname("PARITY_OUT");
  audit->callback([&] {
    action = [&] {
      return RunAudit(log_file, catalog_file, audit_alpha, audit_k, audit_rank, p_adjust, continuity,
                      audit_out);
    };
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo power estimate at one (n, rr)");
  SimulationFlags sim;
  std::string sim_format = "json";
  sim.Register(simulate, true);
  simulate->add_option("--format", sim_format, "json | csv")->envname("PARITY_FORMAT");
  simulate->callback([&] {
    action = [&] {
      const auto config = sim.Config();
      const auto kind = parity::TestKind::Parse(sim.test);
      const auto estimate = parity::EstimatePower(config, kind);
      if (sim_format == "csv") {
        parity::PowerCurve curve{.kind = kind, .n = config.n, .k = config.k, .alpha = config.alpha,
                                 .points = {estimate}};
        std::ostringstream body;
        parity::io::WritePowerCurveCsv(body, parity::io::PowerCurveRows(curve));
        Emit(sim.out, body.str());
      } else if (sim_format == "json") {
        Emit(sim.out, parity::io::PowerEstimateToJson(estimate, config, kind).dump() + "\n");
      } else {
        throw parity::ParityError(parity::ErrorCode::kInvalidArgument, "--format must be json or csv");
      }
      return kExitOk;
    };
  });

  // power-curve
  auto* curve_cmd = app.add_subcommand("power-curve", "Power as a function of rr for several n");
  SimulationFlags curve_flags;
  std::vector<std::uint64_t> n_list = {100, 250, 1000};
  std::vector<double> rr_grid = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.25, 1.4286, 1.6667, 2.0};
  curve_flags.Register(curve_cmd, false);
  curve_cmd->add_option("--n-list", n_list, "Comma-separated catalog sizes")
      ->delimiter(',')
      ->envname("PARITY_N_LIST");
  curve_cmd->add_option("--rr-grid", rr_grid, "Comma-separated, strictly increasing risk ratios")
      ->delimiter(',')
      ->envname("PARITY_RR_GRID");
  curve_cmd->callback([&] {
    action = [&] {
      const auto kind = parity::TestKind::Parse(curve_flags.test);
      auto config = curve_flags.Config();
      std::vector<parity::io::PowerCurveRow> rows;
      for (const auto n : n_list) {
        config.n = n;
        const auto curve = parity::ComputePowerCurve(config, rr_grid, kind);
        const auto part = parity::io::PowerCurveRows(curve);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      std::ostringstream body;
      parity::io::WritePowerCurveCsv(body, rows);
      Emit(curve_flags.out, body.str());
      return kExitOk;
    };
  });

  // detect-rr
  auto* detect = app.add_subcommand("detect-rr", "Detectable risk ratio at a target power per n");
  SimulationFlags detect_flags;
  std::vector<std::uint64_t> detect_n = {100, 250, 500, 1000};
  double target_power = 0.8;
  std::string side = "both";
  double resolution = 0.01;
  detect_flags.Register(detect, false);
  detect->add_option("--n-list", detect_n, "Comma-separated catalog sizes")
      ->delimiter(',')
      ->envname("PARITY_N_LIST");
  detect->add_option("--target-power", target_power, "Power to reach")->envname("PARITY_TARGET_POWER");
  detect->add_option("--side", side, "below | above | both")->envname("PARITY_SIDE");
  detect->add_option("--resolution", resolution, "Grid step in nRR units")->envname("PARITY_RESOLUTION");
  detect->callback([&] {
    action = [&] {
      const auto kind = parity::TestKind::Parse(detect_flags.test);
      auto config = detect_flags.Config();
      std::vector<parity::RrSide> sides;
      if (side == "both") {
        sides = {parity::RrSide::kBelowOne, parity::RrSide::kAboveOne};
      } else if (const auto parsed = parity::ParseRrSide(side)) {
        sides = {*parsed};
      } else {
        throw parity::ParityError(parity::ErrorCode::kInvalidArgument,
                                  "--side must be below, above or both");
      }
      std::ostringstream body;
      body << parity::io::kDetectHeader << '\n';
      for (const auto n : detect_n) {
        config.n = n;
        for (const auto s : sides) {
          body << n << ',' << parity::RrSideName(s) << ',';
          try {
            const auto found = parity::FindDetectableRr(
                config, kind, {.target_power = target_power, .side = s, .resolution = resolution});
            body << parity::io::FormatDouble(found.rr) << ',' << parity::io::FormatDouble(found.nrr)
                 << '\n';
          } catch (const parity::ParityError& e) {
            if (e.code() != parity::ErrorCode::kUnachievable) throw;
            std::cerr << "n=" << n << " " << parity::RrSideName(s) << ": " << e.what() << '\n';
            body << "NA,NA\n";
          }
        }
      }
      Emit(detect_flags.out, body.str());
      return kExitOk;
    };
  });

  // ita
  auto* ita_cmd = app.add_subcommand("ita", "Median Individual Typology Angle of skin pixels");
  std::string image_file;
  std::string mask_file;
  std::string pixels_file;
  std::string ita_out;
  auto* image_opt = ita_cmd->add_option("--image", image_file, "PPM image (P3/P6)")->envname("PARITY_IMAGE");
  auto* mask_opt = ita_cmd->add_option("--mask", mask_file, "PGM mask (P2/P5), nonzero = skin")
                       ->envname("PARITY_MASK");
  auto* pixels_opt =
      ita_cmd->add_option("--pixels", pixels_file, "CSV of r,g,b skin pixels")->envname("PARITY_PIXELS");
  image_opt->needs(mask_opt);
  mask_opt->needs(image_opt);
  pixels_opt->excludes(image_opt);
  ita_cmd->add_option("--out", ita_out, "JSON output path (default: stdout)")->envname("PARITY_OUT");
  ita_cmd->callback([&] {
    action = [&] {
      std::vector<parity::ita::Rgb> pixels;
      if (!pixels_file.empty()) {
        pixels = ReadFile<std::vector<parity::ita::Rgb>>(
            pixels_file, [](std::istream& in) { return parity::io::ReadPixelsCsv(in); });
      } else if (!image_file.empty()) {
        const auto image = ReadFile<parity::io::RgbImage>(
            image_file, [](std::istream& in) { return parity::io::ReadPpm(in); }, true);
        const auto mask = ReadFile<parity::io::GrayImage>(
            mask_file, [](std::istream& in) { return parity::io::ReadPgm(in); }, true);
        pixels = parity::io::MaskedPixels(image, mask);
      } else {
        throw parity::ParityError(parity::ErrorCode::kInvalidArgument,
                                  "give --image with --mask, or --pixels");
      }
      const auto record = parity::ita::ImageIta(pixels);
      Emit(ita_out, parity::io::ItaRecordToJson(record).dump(2) + "\n");
      return kExitOk;
    };
  });

  // knn
  auto* knn = app.add_subcommand("knn", "Exact k-NN recommendation log from embeddings");
  std::string embeddings_file;
  std::uint32_t knn_k = 6;
  double minkowski_p = 2.0;
  std::string exclude = "self";
  std::string knn_out;
  std::string catalog_out;
  unsigned knn_threads = 0;
  knn->add_option("--embeddings", embeddings_file, "id,label,group_id,v0.. CSV")
      ->required()
      ->envname("PARITY_EMBEDDINGS");
  knn->add_option("--k", knn_k, "Neighbors per query")->envname("PARITY_K");
  knn->add_option("--p", minkowski_p, "Minkowski order (>= 1)")->envname("PARITY_P");
  knn->add_option("--exclude", exclude, "none | self | group")->envname("PARITY_EXCLUDE");
  knn->add_option("--out", knn_out, "Log CSV path (default: stdout)")->envname("PARITY_OUT");
  knn->add_option("--catalog-out", catalog_out, "Also write the catalog label,count CSV")
      ->envname("PARITY_CATALOG_OUT");
  knn->add_option("--threads", knn_threads, "Worker threads (0 = all cores)")->envname("PARITY_THREADS");
  knn->callback([&] {
    action = [&] {
      const auto catalog = ReadFile<parity::retrieval::EmbeddingCatalog>(
          embeddings_file, [](std::istream& in) { return parity::io::ReadEmbeddingsCsv(in); });
      const auto exclusion = parity::retrieval::ParseExclusion(exclude);
      if (!exclusion) {
        throw parity::ParityError(parity::ErrorCode::kInvalidArgument,
                                  "--exclude must be none, self or group");
      }
      parity::retrieval::BuildLogOptions options;
      options.k = knn_k;
      options.p = minkowski_p;
      options.exclusion = *exclusion;
      options.threads = knn_threads;
      const auto result = parity::retrieval::BuildLog(catalog, options);
      if (!result.skipped_queries.empty()) {
        std::cerr << "skipped " << result.skipped_queries.size()
                  << " queries with fewer than k eligible neighbors\n";
      }
      std::ostringstream body;
      parity::io::WriteLogCsv(body, result.log);
      Emit(knn_out, body.str());
      if (!catalog_out.empty()) {
        std::ostringstream cat;
        parity::io::WriteCatalogCsv(cat, catalog.label_distribution());
        Emit(catalog_out, cat.str());
      }
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    return action();
  } catch (const parity::ParityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
