#pragma once

#include <string>

#include "affinity/featurize.hpp"

namespace affinity {

// CSV export: header "id,affinity,<column names...>", one row per complex,
// values at full round-trip precision.
void write_matrix_csv(const FeatureMatrix& matrix, const std::string& path);
FeatureMatrix read_matrix_csv(const std::string& path);

// Compact binary cache: magic "AFMX", format version, dims, column names /
// row ids / labels / row-major values as little-endian 8-byte reals.
void write_matrix_binary(const FeatureMatrix& matrix, const std::string& path);
FeatureMatrix read_matrix_binary(const std::string& path);

}  // namespace affinity
