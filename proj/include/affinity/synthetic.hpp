#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "affinity/dataset.hpp"
#include "affinity/featurize.hpp"

namespace affinity {

enum class SyntheticTarget { kLinear, kFriedman1, kPairwiseContact };

SyntheticTarget synthetic_target_from_string(const std::string& name);
const char* to_string(SyntheticTarget t);

// Seeded synthetic complexes for tests and benchmarks. Atoms carry numeric
// "charge" (uniform in [-1,1]) and "radius" (uniform in [1,2.5]), categorical
// "hyb" (sp/sp2/sp3) and "type" (the element symbol). Protein atoms draw
// elements from {C,N,O,S}, ligand atoms from {C,N,O,F,P,S,Cl,Br,I};
// coordinates are uniform in a 24 A box. Each complex has at least one atom
// of each role.
//
// The affinity label is a closed form of the chosen target plus
// noise_sigma * N(0,1):
//   linear:           1.0*sum(charge) + 0.25*sum(radius) + 0.5*#(type=F)
//                     + 0.3*#(type=Cl) - 0.4*#(hyb=sp2)
//   friedman1:        10*sin(pi*u1*u2) + 20*(u3-0.5)^2 + 10*u4 + 5*u5 with
//                     per-complex latents u1..u5 ~ U(0,1) that are also
//                     attached to every atom as numeric features "u1".."u5"
//   pairwise_contact: 0.02*n(C,C) + 0.15*n(N,O) + 0.15*n(O,N) + 0.8*n(S,F)
//                     where n(p,l) are contact counts at the default
//                     interaction settings (cutoff 12, inclusive)
//
// Generation is deterministic: each complex derives its own stream from
// (rng_seed, index), so equal arguments give bit-identical output regardless
// of call order or thread count.
std::vector<ComplexRecord> gen_synthetic(std::size_t n_complexes,
                                         std::size_t atoms_min, std::size_t atoms_max,
                                         std::uint64_t rng_seed, SyntheticTarget target,
                                         double noise_sigma = 0.3);

// Tabular friedman1 benchmark data: n_cols >= 5 columns uniform in [0,1),
// label = 10*sin(pi*x0*x1) + 20*(x2-0.5)^2 + 10*x3 + 5*x4 + noise_sigma*N(0,1).
// Only the first five columns are informative. Column names "f000", "f001", ...
FeatureMatrix friedman1_matrix(std::size_t n_rows, std::size_t n_cols,
                               double noise_sigma, std::uint64_t seed);

}  // namespace affinity
