// Copyright 2026 The hessian-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * \file report.hpp
 * \brief CSV and JSON report writers. Files are written to a temporary
 * sibling and renamed into place, so readers never see partial output.
 */

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hessian_lab/error.hpp"
#include "hessian_lab/iteration.hpp"
#include "hessian_lab/verification.hpp"

namespace hessian_lab {

/// 17 significant digits; nan and inf spelled out.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

/// Comma-separated table with a header row and LF line endings.
class CsvTable {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw Error("CsvTable: row width does not match the header");
    rows_.push_back(std::move(row));
  }

  [[nodiscard]] std::size_t rows() const { return rows_.size(); }

  [[nodiscard]] std::string str() const {
    std::string s;
    append_line(s, header_);
    for (const auto& row : rows_) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const auto& c : row) {
        if (auto* d = std::get_if<double>(&c)) cells.push_back(format_double(*d));
        else if (auto* i = std::get_if<long long>(&c)) cells.push_back(std::to_string(*i));
        else cells.push_back(std::get<std::string>(c));
      }
      append_line(s, cells);
    }
    return s;
  }

  void write(const std::filesystem::path& path) const { write_atomic(path, str()); }

 private:
  static void append_line(std::string& s, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    s += '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

/// JSON number, or a string for non-finite values.
inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

/// nlohmann::json keeps object keys in a std::map, so dumps are sorted.
inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_atomic(path, j.dump(2) + "\n");
}

inline nlohmann::json to_json(const VerificationRecord& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["margin"] = json_number(r.margin);
  j["scale"] = json_number(r.scale);
  j["tolerance"] = json_number(r.tolerance);
  nlohmann::json d = nlohmann::json::object();
  for (const auto& [k, v] : r.details) d[k] = json_number(v);
  j["details"] = d;
  return j;
}

inline nlohmann::json to_json(const IterationReport& r) {
  nlohmann::json j;
  j["premise_ok"] = r.premise_ok;
  j["premise_margin"] = json_number(r.premise_margin);
  j["s0"] = json_number(r.s0);
  j["S_infinity"] = json_number(r.S_infinity);
  j["measured_sup"] = json_number(r.measured_sup);
  j["bound_rhs"] = json_number(r.bound_rhs);
  j["vanishes_beyond"] = r.vanishes_beyond;
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [k, v] : r.constants) c[k] = json_number(v);
  j["constants"] = c;
  return j;
}

}  // namespace hessian_lab
