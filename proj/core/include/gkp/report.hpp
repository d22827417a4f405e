// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gkp {

// %.17g
std::string format17(double v);

struct CheckRow {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Pass/fail rows plus free-form numeric values, serialized to JSON (17
// significant digits) or to CSV (name,value,expected,tolerance,pass).
class Report {
 public:
  // |value - expected| <= tolerance
  const CheckRow& check_abs(std::string name, double value, double expected, double tolerance);
  // |value - expected| <= tolerance * |expected|
  const CheckRow& check_rel(std::string name, double value, double expected, double tolerance);
  // value < bound
  const CheckRow& check_below(std::string name, double value, double bound);
  void add_row(CheckRow row) { rows_.push_back(std::move(row)); }
  void set(std::string key, double value) { values_.emplace_back(std::move(key), value); }
  void note(std::string key, std::string text) { notes_.emplace_back(std::move(key), std::move(text)); }

  const std::vector<CheckRow>& rows() const { return rows_; }
  bool all_pass() const;

  std::string to_json() const;
  std::string to_csv() const;
  void write(const std::filesystem::path& json_path, const std::filesystem::path& csv_path) const;

 private:
  std::vector<CheckRow> rows_;
  std::vector<std::pair<std::string, double>> values_;
  std::vector<std::pair<std::string, std::string>> notes_;
};

// Writes rows to a CSV file; every double printed with format17.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace gkp
