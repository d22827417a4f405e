// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gkp/errors.hpp"
#include "json.hpp"

namespace gkp {

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_number(double v) {
  if (std::isfinite(v)) return format17(v);
  return "null";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw IoError("cannot write " + p.string());
  os << text;
}

}  // namespace

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const CheckRow& Report::check_abs(std::string name, double value, double expected, double tolerance) {
  rows_.push_back({std::move(name), value, expected, tolerance, std::fabs(value - expected) <= tolerance});
  return rows_.back();
}

const CheckRow& Report::check_rel(std::string name, double value, double expected, double tolerance) {
  bool ok = std::fabs(value - expected) <= tolerance * std::fabs(expected);
  rows_.push_back({std::move(name), value, expected, tolerance, ok});
  return rows_.back();
}

const CheckRow& Report::check_below(std::string name, double value, double bound) {
  rows_.push_back({std::move(name), value, 0.0, bound, value < bound});
  return rows_.back();
}

bool Report::all_pass() const {
  for (const auto& r : rows_) {
    if (!r.pass) return false;
  }
  return true;
}

std::string Report::to_json() const {
  std::ostringstream os;
  os << "{\n  \"checks\": [";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    os << (i ? ",\n" : "\n") << "    {\"name\": " << quoted(r.name) << ", \"value\": " << json_number(r.value)
       << ", \"expected\": " << json_number(r.expected) << ", \"tolerance\": " << json_number(r.tolerance)
       << ", \"pass\": " << (r.pass ? "true" : "false") << "}";
  }
  os << (rows_.empty() ? "]" : "\n  ]") << ",\n  \"values\": {";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    os << (i ? ",\n" : "\n") << "    " << quoted(values_[i].first) << ": " << json_number(values_[i].second);
  }
  os << (values_.empty() ? "}" : "\n  }") << ",\n  \"notes\": {";
  for (std::size_t i = 0; i < notes_.size(); ++i) {
    os << (i ? ",\n" : "\n") << "    " << quoted(notes_[i].first) << ": " << quoted(notes_[i].second);
  }
  os << (notes_.empty() ? "}" : "\n  }") << ",\n  \"all_pass\": " << (all_pass() ? "true" : "false") << "\n}\n";
  return os.str();
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "name,value,expected,tolerance,pass\n";
  for (const auto& r : rows_) {
    os << csv_field(r.name) << ',' << format17(r.value) << ',' << format17(r.expected) << ','
       << format17(r.tolerance) << ',' << (r.pass ? "pass" : "fail") << '\n';
  }
  return os.str();
}

void Report::write(const std::filesystem::path& json_path, const std::filesystem::path& csv_path) const {
  write_file(json_path, to_json());
  write_file(csv_path, to_csv());
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_field(header[i]);
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format17(r[i]);
    os << '\n';
  }
  write_file(path, os.str());
}

}  // namespace gkp
