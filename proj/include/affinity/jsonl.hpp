#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "affinity/dataset.hpp"

namespace affinity {

// Canonical dataset format: one JSON object per line,
//   {"id": str, "affinity": num, "atoms": [{"role": "protein"|"ligand",
//    "element": str, "x": num, "y": num, "z": num,
//    "features": {name: num|str, ...}}, ...]}
// UTF-8, LF line endings. Feature order inside an atom object is preserved.

// Parses a whole file. Complexes are validated and the feature-name set is
// enforced across all of them. Errors carry the 1-based line number.
std::vector<ComplexRecord> parse_dataset(const std::string& path);

std::vector<ComplexRecord> parse_dataset_stream(std::istream& in,
                                                const std::string& origin);

// Parses a single JSONL line (validation included).
ComplexRecord parse_complex_line(const std::string& line);

std::string serialize_complex(const ComplexRecord& complex);

void write_dataset(const std::vector<ComplexRecord>& complexes, const std::string& path);

}  // namespace affinity
