// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/field_io.hpp"

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gkp {

namespace {

using json = nlohmann::ordered_json;

std::filesystem::path strip(const std::filesystem::path& p) {
  auto ext = p.extension();
  if (ext == ".json" || ext == ".f64") return p.parent_path() / p.stem();
  return p;
}

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

}  // namespace

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SavedPaths save_wave(const WaveState& w, const std::filesystem::path& base, std::optional<double> residual) {
  const auto stem = strip(base);
  SavedPaths out{stem, stem};
  out.json += ".json";
  out.payload += ".f64";
  if (!stem.parent_path().empty()) std::filesystem::create_directories(stem.parent_path());

  double res;
  if (residual) {
    res = *residual;
  } else if (auto it = w.metadata.find("residual"); it != w.metadata.end()) {
    res = std::stod(it->second);
  } else {
    res = residual_conv(w);
  }
  const Grid& g = w.field.grid();
  json j;
  j["dim"] = g.dim();
  j["half_lengths"] = g.half_lengths();
  j["sizes"] = g.sizes();
  j["p_num"] = w.p.num;
  j["p_den"] = w.p.den;
  j["speed"] = w.c;
  j["created"] = utc_timestamp();
  j["residual"] = res;
  j["boundary"] = to_string(w.boundary);
  {
    std::ofstream os(out.json);
    if (!os) throw IoError("cannot write " + out.json.string());
    os << j.dump(2) << "\n";
  }
  std::ofstream os(out.payload, std::ios::binary);
  if (!os) throw IoError("cannot write " + out.payload.string());
  for (double v : w.field.values()) {
    std::uint64_t bits = to_le(std::bit_cast<std::uint64_t>(v));
    os.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!os) throw IoError("short write on " + out.payload.string());
  return out;
}

WaveState load_wave(const std::filesystem::path& path) {
  const auto stem = strip(path);
  auto jpath = stem;
  jpath += ".json";
  auto bpath = stem;
  bpath += ".f64";
  std::ifstream js(jpath);
  if (!js) throw IoError("cannot read " + jpath.string());
  json j;
  try {
    j = json::parse(js);
  } catch (const json::exception& e) {
    throw ParseError(jpath.string() + ": " + e.what());
  }
  try {
    const int dim = j.at("dim").get<int>();
    auto L = j.at("half_lengths").get<std::vector<double>>();
    auto n = j.at("sizes").get<std::vector<std::size_t>>();
    if (static_cast<int>(L.size()) != dim || static_cast<int>(n.size()) != dim) {
      throw ParseError(jpath.string() + ": dim does not match half_lengths/sizes");
    }
    Grid g(L, n);
    Rational p(j.at("p_num").get<long>(), j.at("p_den").get<long>());
    double c = j.at("speed").get<double>();
    Boundary b = j.contains("boundary") ? boundary_from_string(j["boundary"].get<std::string>()) : Boundary::periodic;

    std::ifstream bs(bpath, std::ios::binary);
    if (!bs) throw IoError("cannot read " + bpath.string());
    std::vector<double> vals(g.size());
    for (auto& v : vals) {
      std::uint64_t bits;
      if (!bs.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
        throw ParseError(bpath.string() + ": payload shorter than " + std::to_string(g.size()) + " values");
      }
      v = std::bit_cast<double>(to_le(bits));
    }
    if (bs.peek() != std::char_traits<char>::eof()) throw ParseError(bpath.string() + ": trailing bytes in payload");
    WaveState w(Field(g, std::move(vals)), p, c, b);
    w.metadata["created"] = j.value("created", "");
    if (j.contains("residual")) {
      std::ostringstream os;
      os.precision(17);
      os << j["residual"].get<double>();
      w.metadata["residual"] = os.str();
    }
    return w;
  } catch (const json::exception& e) {
    throw ParseError(jpath.string() + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(jpath.string() + ": " + e.what());
  }
}

}  // namespace gkp
