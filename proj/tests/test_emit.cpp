// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "monoqt/emit.hpp"

using namespace monoqt;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "monoqt_emit_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("emit_csv", "[emit]") {
  const fs::path dir = temp_dir();

  SECTION("one record gives exactly two lines") {
    const McRun run = run_monte_carlo(1, SamplerKind::haar, 1);
    const fs::path path = dir / "one.csv";
    emit_csv(run.records, path);
    const std::string text = slurp(path);
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 2);
    REQUIRE(text.rfind("sample_id,n_ab,n_ac,n_a_bc,lhs,residual,sampler,seed\n", 0) == 0);
  }

  SECTION("round-trips through parse_csv") {
    const McRun run = run_monte_carlo(25, SamplerKind::canonical, 11);
    const fs::path path = dir / "roundtrip.csv";
    emit_csv(run.records, path);
    const auto parsed = parse_csv(path);
    REQUIRE(parsed.size() == run.records.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      REQUIRE(parsed[i].sample_id == run.records[i].sample_id);
      REQUIRE(parsed[i].seed == run.records[i].seed);
      REQUIRE(parsed[i].sampler == run.records[i].sampler);
      REQUIRE(parsed[i].n_ab == Approx(run.records[i].n_ab).margin(1e-12));
      REQUIRE(parsed[i].n_ac == Approx(run.records[i].n_ac).margin(1e-12));
      REQUIRE(parsed[i].n_a_bc == Approx(run.records[i].n_a_bc).margin(1e-12));
      REQUIRE(parsed[i].lhs == Approx(run.records[i].lhs).margin(1e-12));
      REQUIRE(parsed[i].residual == Approx(run.records[i].residual).margin(1e-12));
    }
  }

  SECTION("empty record lists are rejected") {
    REQUIRE_THROWS_AS(emit_csv({}, dir / "empty.csv"), std::invalid_argument);
  }

  SECTION("unwritable paths are rejected") {
    const McRun run = run_monte_carlo(1, SamplerKind::haar, 2);
    REQUIRE_THROWS_AS(emit_csv(run.records, "/no-such-directory/out.csv"),
                      std::runtime_error);
  }

  SECTION("identical runs emit identical bytes") {
    const fs::path pa = dir / "det_a.csv";
    const fs::path pb = dir / "det_b.csv";
    emit_csv(run_monte_carlo(40, SamplerKind::haar, 3).records, pa);
    emit_csv(run_monte_carlo(40, SamplerKind::haar, 3).records, pb);
    REQUIRE(slurp(pa) == slurp(pb));
  }
}

TEST_CASE("emit_svg_scatter", "[emit]") {
  const fs::path dir = temp_dir();
  const McRun run = run_monte_carlo(150, SamplerKind::haar, 21);
  const fs::path path = dir / "scatter.svg";
  emit_svg_scatter(run.records, path);
  const std::string svg = slurp(path);

  SECTION("every point lies on or above the diagonal in screen space") {
    // diagonal runs from (x1,y1) to (x2,y2); smaller y is higher on screen
    const std::regex line_re(
        "<line x1=\"([0-9.]+)\" y1=\"([0-9.]+)\" x2=\"([0-9.]+)\" y2=\"([0-9.]+)\" "
        "stroke=\"blue\"");
    std::smatch lm;
    REQUIRE(std::regex_search(svg, lm, line_re));
    const double x1 = std::stod(lm[1]), y1 = std::stod(lm[2]);
    const double x2 = std::stod(lm[3]), y2 = std::stod(lm[4]);

    const std::regex circle_re("<circle cx=\"([0-9.]+)\" cy=\"([0-9.]+)\"");
    auto it = std::sregex_iterator(svg.begin(), svg.end(), circle_re);
    std::size_t count = 0;
    for (; it != std::sregex_iterator(); ++it, ++count) {
      const double cx = std::stod((*it)[1]);
      const double cy = std::stod((*it)[2]);
      const double diag_y = y1 + (cx - x1) * (y2 - y1) / (x2 - x1);
      REQUIRE(cy <= diag_y + 1e-9);
    }
    REQUIRE(count == run.records.size());
  }

  SECTION("fixed viewport and deterministic bytes") {
    REQUIRE(svg.find("width=\"800\" height=\"800\"") != std::string::npos);
    const fs::path again = dir / "scatter2.svg";
    emit_svg_scatter(run.records, again);
    REQUIRE(slurp(again) == svg);
  }
}

TEST_CASE("sweep emitters", "[emit]") {
  const fs::path dir = temp_dir();
  std::vector<SweepRecord> sweep;
  for (int i = 0; i <= 10; ++i) sweep.push_back(analytic_ksp_residual(i / 10.0));

  SECTION("CSV header and row count") {
    const fs::path path = dir / "sweep.csv";
    emit_sweep_csv(sweep, path);
    const std::string text = slurp(path);
    REQUIRE(text.rfind("p,analytic_residual,numeric_residual,branch\n", 0) == 0);
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 12);
    REQUIRE(text.find("not_applicable") != std::string::npos);
  }

  SECTION("SVG has the analytic polyline and one circle per point") {
    const fs::path path = dir / "sweep.svg";
    emit_sweep_svg(sweep, path);
    const std::string svg = slurp(path);
    REQUIRE(svg.find("<polyline") != std::string::npos);
    const std::regex circle_re("<circle");
    REQUIRE(static_cast<std::size_t>(std::distance(
                std::sregex_iterator(svg.begin(), svg.end(), circle_re),
                std::sregex_iterator())) == sweep.size());
  }
}

TEST_CASE("summary_json", "[emit]") {
  const McRun run = run_monte_carlo(30, SamplerKind::canonical, 5);
  const std::string json = summary_json(run.summary);
  const nlohmann::json parsed = nlohmann::json::parse(json);
  REQUIRE(parsed["n"] == 30);
  REQUIRE(parsed["violations"] == 0);
  REQUIRE(parsed["sampler"] == "canonical");
  REQUIRE(parsed["base_seed"] == 5);
  REQUIRE(parsed["min_residual"].get<double>() ==
          Approx(run.summary.min_residual).margin(1e-12));
  REQUIRE(json == summary_json(run_monte_carlo(30, SamplerKind::canonical, 5).summary));
}
