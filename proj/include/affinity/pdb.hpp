#pragma once

#include <string>
#include <vector>

#include "affinity/dataset.hpp"

namespace affinity {

// Minimal fixed-column PDB subset: only "ATOM  " and "HETATM" records are
// consumed (ATOM -> protein, HETATM -> ligand); everything else is skipped.
// 1-indexed columns: atom name 13-16, x 31-38, y 39-46, z 47-54, element
// 77-78. When the element field is blank the first alphabetic characters of
// the atom-name field are used instead. Returned records carry only role,
// element and coordinates (empty feature map).
std::vector<AtomRecord> parse_pdb_lines(const std::string& text);

}  // namespace affinity
