// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace CLI {
class App;
}

namespace gkp::cli {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat "key = value" lines; '#' starts a comment. Throws ParseError/IoError.
KeyValues read_config(const std::filesystem::path& path);

// Returns argv with config-file entries inserted for every option that the
// command line does not set itself. A "task" key selects the subcommand when
// none is given.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app);

}  // namespace gkp::cli
