// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "gkp/solver.hpp"

namespace gkp {

// A wave is stored as <base>.json (grid, exponent, speed, provenance) and
// <base>.f64 (little-endian IEEE-754 doubles, row-major).
struct SavedPaths {
  std::filesystem::path json;
  std::filesystem::path payload;
};

SavedPaths save_wave(const WaveState& w, const std::filesystem::path& base,
                     std::optional<double> residual = std::nullopt);

// Accepts the basename or either of the two files. Throws IoError when a file
// cannot be read and ParseError when its content is inconsistent.
WaveState load_wave(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace gkp
