#ifndef ATDC_DATASET_IO_HPP
#define ATDC_DATASET_IO_HPP

#include "atdc/trajectory.hpp"

#include <filesystem>
#include <iosfwd>

namespace atdc {

// Canonical dataset format (JSON Lines, UTF-8):
//   line 1:  {"grid_w": int, "grid_h": int, "name": str}
//   line 2+: {"id": int, "cells": [int, ...], "label": int|null}
// Unknown keys are rejected. An empty file is an empty dataset.

dataset read_dataset(std::istream& in);
void write_dataset(const dataset& ds, std::ostream& out);

/// Throws io_error if the file cannot be opened and data_error (with the
/// 1-based line number) on malformed content or invariant violations.
dataset load_dataset(const std::filesystem::path& path);

void save_dataset(const dataset& ds, const std::filesystem::path& path);

} // namespace atdc

#endif // ATDC_DATASET_IO_HPP
