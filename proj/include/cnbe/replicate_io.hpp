#pragma once

#include <string>

#include "cnbe/process.hpp"

namespace cnbe {

// Binary ReplicateSet format (all integers little-endian):
//   bytes 0-7    magic "CNBEREPL"
//   bytes 8-11   u32 version (1)
//   bytes 12-15  u32 reserved (0)
//   u32 x 5      m, d, G, family id, margin tag
//   f64 x 10     lambda, kappa, delta, A, omega, has_aniso,
//                x_min, x_max, y_min, y_max
//   f32 x m*d    field values, replicate-major (row-major)
void save_replicates(const ReplicateSet& set, const std::string& path);
ReplicateSet load_replicates(const std::string& path);

// Debug CSV: one row per replicate, one column per site.
void export_replicates_csv(const ReplicateSet& set, const std::string& path);

}  // namespace cnbe
