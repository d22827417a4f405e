// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <algorithm>
#include <fstream>

#include "CLI11.hpp"
#include "gkp/errors.hpp"

namespace gkp::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool on_command_line(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes" || v == "on"; }

}  // namespace

KeyValues read_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read config file " + path.string());
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": empty key");
    std::replace(key.begin(), key.end(), '_', '-');
    out.emplace_back(key, val);
  }
  return out;
}

std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app) {
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
  }
  if (config.empty()) return args;
  KeyValues kv = read_config(config);

  std::vector<std::string> out(args);
  CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (auto* s = app.get_subcommand_no_throw(a)) {
      sub = s;
      break;
    }
  }
  if (!sub) {
    auto it = std::find_if(kv.begin(), kv.end(), [](const auto& p) { return p.first == "task"; });
    if (it == kv.end()) return out;
    sub = app.get_subcommand_no_throw(it->second);
    if (!sub) throw ParseError("config: unknown task '" + it->second + "'");
    out.push_back(it->second);
  }
  std::vector<std::string> extra;
  for (const auto& [key, val] : kv) {
    if (key == "task" || on_command_line(args, key)) continue;
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) throw ParseError("config: unknown key '" + key + "'");
    if (opt->get_expected_max() == 0) {
      if (truthy(val)) extra.push_back("--" + key);
    } else {
      extra.push_back("--" + key);
      extra.push_back(val);
    }
  }
  // Subcommand options must follow the subcommand name.
  auto pos = std::find(out.begin(), out.end(), sub->get_name());
  out.insert(pos == out.end() ? out.end() : pos + 1, extra.begin(), extra.end());
  return out;
}

}  // namespace gkp::cli
