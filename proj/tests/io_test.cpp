// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gkp/errors.hpp"
#include "gkp/field_io.hpp"
#include "gkp/report.hpp"

namespace gkp {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("gkp_io_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

WaveState sample_state() {
  const Grid g({6.0, 3.0}, {16, 8});
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  Field f(g);
  for (auto& v : f.values()) v = n(rng) * 1e-3;
  f[5] = 1.0 / 3.0;
  f[6] = -4.9406564584124654e-324;
  WaveState w(f, Rational(2, 3), 1.5);
  w.metadata["seed"] = "random";
  return w;
}

TEST(FieldIo, RoundTripIsBitIdentical) {
  const fs::path dir = scratch("roundtrip");
  WaveState w = sample_state();
  SavedPaths p = save_wave(w, dir / "wave", 1.25e-9);
  EXPECT_TRUE(fs::exists(p.json));
  EXPECT_TRUE(fs::exists(p.payload));
  EXPECT_EQ(fs::file_size(p.payload), w.field.size() * sizeof(double));

  for (const fs::path& src : {dir / "wave", p.json, p.payload}) {
    WaveState r = load_wave(src);
    ASSERT_EQ(r.field.size(), w.field.size());
    EXPECT_EQ(std::memcmp(r.field.values().data(), w.field.values().data(), w.field.size() * sizeof(double)), 0);
    EXPECT_TRUE(r.field.grid() == w.field.grid());
    EXPECT_EQ(r.p, w.p);
    EXPECT_EQ(r.c, w.c);
    EXPECT_EQ(r.boundary, w.boundary);
  }
}

TEST(FieldIo, SidecarKeys) {
  const fs::path dir = scratch("sidecar");
  SavedPaths p = save_wave(sample_state(), dir / "wave", 0.5);
  const std::string j = slurp(p.json);
  for (const char* key : {"\"dim\"", "\"half_lengths\"", "\"sizes\"", "\"p_num\"", "\"p_den\"", "\"speed\"",
                          "\"created\"", "\"residual\""}) {
    EXPECT_NE(j.find(key), std::string::npos) << key;
  }
}

TEST(FieldIo, TruncatedPayloadIsParseError) {
  const fs::path dir = scratch("truncated");
  SavedPaths p = save_wave(sample_state(), dir / "wave");
  fs::resize_file(p.payload, fs::file_size(p.payload) - 8);
  EXPECT_THROW(load_wave(dir / "wave"), ParseError);
}

TEST(FieldIo, CorruptSidecarIsParseError) {
  const fs::path dir = scratch("corrupt");
  SavedPaths p = save_wave(sample_state(), dir / "wave");
  std::ofstream(p.json) << "{\"dim\": 2, \"sizes\": [16";
  EXPECT_THROW(load_wave(dir / "wave"), ParseError);
  std::ofstream(p.json) << "{\"dim\": 3, \"half_lengths\": [1, 1], \"sizes\": [16, 8], \"p_num\": 1, \"p_den\": 1}";
  EXPECT_THROW(load_wave(dir / "wave"), ParseError);
}

TEST(FieldIo, NonFinitePayloadIsParseError) {
  const fs::path dir = scratch("nan");
  SavedPaths p = save_wave(sample_state(), dir / "wave");
  std::fstream f(p.payload, std::ios::in | std::ios::out | std::ios::binary);
  const double bad = std::numeric_limits<double>::quiet_NaN();
  f.seekp(16);
  f.write(reinterpret_cast<const char*>(&bad), sizeof bad);
  f.close();
  EXPECT_THROW(load_wave(dir / "wave"), ParseError);
}

TEST(FieldIo, MissingFileIsIoError) {
  EXPECT_THROW(load_wave(scratch("missing") / "nothing"), IoError);
}

TEST(Report, RowsAndSerialization) {
  Report r;
  EXPECT_TRUE(r.check_abs("a", 1.0, 1.0005, 1e-3).pass);
  EXPECT_FALSE(r.check_rel("b", 1.1, 1.0, 0.05).pass);
  EXPECT_TRUE(r.check_below("c", 1e-9, 1e-8).pass);
  EXPECT_FALSE(r.check_below("d", 1e-8, 1e-8).pass);
  r.set("extra", 0.1);
  r.note("why", "text");
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.rows().size(), 4u);

  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.rfind("name,value,expected,tolerance,pass\n", 0), 0u);
  EXPECT_NE(csv.find("a,1," + format17(1.0005) + "," + format17(1e-3) + ",pass"), std::string::npos) << csv;

  const std::string json = r.to_json();
  EXPECT_NE(json.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(json.find("\"why\""), std::string::npos);
}

TEST(Report, WriteCsvUsesSeventeenDigits) {
  const fs::path dir = scratch("csv");
  write_csv(dir / "t.csv", {"x", "y"}, {{1.0 / 3.0, 2.0}});
  EXPECT_EQ(slurp(dir / "t.csv"), "x,y\n0.33333333333333331,2\n");
  EXPECT_EQ(format17(0.1), "0.10000000000000001");
}

}  // namespace
}  // namespace gkp
