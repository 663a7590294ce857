// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqt/monogamy.hpp"

namespace monoqt {

/// 12-significant-digit decimal formatting used for every numeric field in
/// emitted files and CLI output.
inline std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Round to the 12-significant-digit representation (stabilizes JSON
/// serialization of doubles).
inline double round_sig12(double v) { return std::strtod(format_sig12(v).c_str(), nullptr); }

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

// Fixed 800x800 viewport with 12px margins; unit-square data coordinates.
constexpr double kSvgSize = 800.0;
constexpr double kSvgMargin = 12.0;

inline double svg_x(double x) { return kSvgMargin + x * (kSvgSize - 2.0 * kSvgMargin); }
inline double svg_y(double y) { return kSvgSize - kSvgMargin - y * (kSvgSize - 2.0 * kSvgMargin); }

inline std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline void svg_header(std::ofstream& out, const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n"
      << "  <title>" << title << "</title>\n"
      << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n"
      << "  <line x1=\"" << svg_coord(svg_x(0.0)) << "\" y1=\"" << svg_coord(svg_y(0.0))
      << "\" x2=\"" << svg_coord(svg_x(1.0)) << "\" y2=\"" << svg_coord(svg_y(0.0))
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
      << "  <line x1=\"" << svg_coord(svg_x(0.0)) << "\" y1=\"" << svg_coord(svg_y(0.0))
      << "\" x2=\"" << svg_coord(svg_x(0.0)) << "\" y2=\"" << svg_coord(svg_y(1.0))
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

}  // namespace detail

/// CSV with one line per record:
/// sample_id,n_ab,n_ac,n_a_bc,lhs,residual,sampler,seed
inline void emit_csv(const std::vector<MonogamyRecord>& records,
                     const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("emit_csv: no records");
  std::ofstream out = detail::open_out(path);
  out << "sample_id,n_ab,n_ac,n_a_bc,lhs,residual,sampler,seed\n";
  for (const MonogamyRecord& r : records)
    out << r.sample_id << ',' << format_sig12(r.n_ab) << ',' << format_sig12(r.n_ac) << ','
        << format_sig12(r.n_a_bc) << ',' << format_sig12(r.lhs) << ','
        << format_sig12(r.residual) << ',' << sampler_name(r.sampler) << ',' << r.seed << '\n';
}

inline std::vector<MonogamyRecord> parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "sample_id,n_ab,n_ac,n_a_bc,lhs,residual,sampler,seed")
    throw std::runtime_error("parse_csv: bad header in '" + path.string() + "'");
  std::vector<MonogamyRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    MonogamyRecord r;
    std::getline(ss, field, ',');
    r.sample_id = std::stol(field);
    std::getline(ss, field, ',');
    r.n_ab = std::stod(field);
    std::getline(ss, field, ',');
    r.n_ac = std::stod(field);
    std::getline(ss, field, ',');
    r.n_a_bc = std::stod(field);
    std::getline(ss, field, ',');
    r.lhs = std::stod(field);
    std::getline(ss, field, ',');
    r.residual = std::stod(field);
    std::getline(ss, field, ',');
    r.sampler = sampler_from_name(field);
    std::getline(ss, field, ',');
    r.seed = std::stoull(field);
    records.push_back(r);
  }
  return records;
}

/// Scatter of (lhs, n_a_bc) on the unit square with the diagonal reference
/// line. Points whose gap to the diagonal is pure float noise (residual
/// within the violation threshold) are flattened onto the line; genuine
/// violations stay visible below it.
inline void emit_svg_scatter(const std::vector<MonogamyRecord>& records,
                             const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("emit_svg_scatter: no records");
  std::ofstream out = detail::open_out(path);
  detail::svg_header(out, "one-vs-rest negativity against the pairwise bound");
  out << "  <line x1=\"" << detail::svg_coord(detail::svg_x(0.0)) << "\" y1=\""
      << detail::svg_coord(detail::svg_y(0.0)) << "\" x2=\""
      << detail::svg_coord(detail::svg_x(1.0)) << "\" y2=\""
      << detail::svg_coord(detail::svg_y(1.0))
      << "\" stroke=\"blue\" stroke-width=\"1.5\"/>\n";
  for (const MonogamyRecord& r : records) {
    double y = r.n_a_bc;
    if (y < r.lhs && r.residual >= tols().violation_threshold) y = r.lhs;
    out << "  <circle cx=\"" << detail::svg_coord(detail::svg_x(r.lhs)) << "\" cy=\""
        << detail::svg_coord(detail::svg_y(y)) << "\" r=\"2\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
}

/// CSV with one line per sweep point: p,analytic_residual,numeric_residual,branch
inline void emit_sweep_csv(const std::vector<SweepRecord>& records,
                           const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("emit_sweep_csv: no records");
  std::ofstream out = detail::open_out(path);
  out << "p,analytic_residual,numeric_residual,branch\n";
  for (const SweepRecord& r : records)
    out << format_sig12(r.p) << ',' << format_sig12(r.analytic_residual) << ','
        << format_sig12(r.numeric_residual) << ',' << branch_name(r.branch) << '\n';
}

/// Residual-vs-p curve: analytic values as a polyline, numeric values as
/// circles on top of it.
inline void emit_sweep_svg(const std::vector<SweepRecord>& records,
                           const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("emit_sweep_svg: no records");
  std::ofstream out = detail::open_out(path);
  detail::svg_header(out, "monogamy residual across the superposition family");
  out << "  <polyline fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i) out << ' ';
    out << detail::svg_coord(detail::svg_x(records[i].p)) << ','
        << detail::svg_coord(detail::svg_y(records[i].analytic_residual));
  }
  out << "\"/>\n";
  for (const SweepRecord& r : records)
    out << "  <circle cx=\"" << detail::svg_coord(detail::svg_x(r.p)) << "\" cy=\""
        << detail::svg_coord(detail::svg_y(r.numeric_residual))
        << "\" r=\"2\" fill=\"black\"/>\n";
  out << "</svg>\n";
}

/// Summary of a Monte-Carlo run as a small JSON document.
inline std::string summary_json(const McSummary& s) {
  std::ostringstream out;
  out << "{\n"
      << "  \"n\": " << s.n << ",\n"
      << "  \"min_residual\": " << format_sig12(s.min_residual) << ",\n"
      << "  \"violations\": " << s.violations << ",\n"
      << "  \"sampler\": \"" << sampler_name(s.sampler) << "\",\n"
      << "  \"base_seed\": " << s.base_seed << "\n"
      << "}\n";
  return out.str();
}

inline void emit_summary_json(const McSummary& s, const std::filesystem::path& path) {
  detail::open_out(path) << summary_json(s);
}

}  // namespace monoqt
