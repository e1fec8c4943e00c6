#include "affinity/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "affinity/errors.hpp"
#include "affinity/rng.hpp"

namespace affinity {

namespace {

const std::vector<std::string> kProteinElements = {"C", "N", "O", "S"};
const std::vector<std::string> kLigandElements = {"C", "N", "O", "F", "P", "S", "Cl", "Br", "I"};
const char* kHybridizations[] = {"sp", "sp2", "sp3"};
constexpr double kBoxEdge = 24.0;

std::string padded_id(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%06zu", prefix, i);
    return buf;
}

double count_feature(const ComplexRecord& c, const std::string& name,
                     const std::string& category) {
    double n = 0.0;
    for (const auto& atom : c.atoms) {
        const FeatureValue* v = atom.find_feature(name);
        if (v != nullptr && !is_numeric(*v) && std::get<std::string>(*v) == category)
            n += 1.0;
    }
    return n;
}

double sum_feature(const ComplexRecord& c, const std::string& name) {
    double s = 0.0;
    for (const auto& atom : c.atoms) {
        const FeatureValue* v = atom.find_feature(name);
        if (v != nullptr && is_numeric(*v)) s += std::get<double>(*v);
    }
    return s;
}

double contact_count(const ComplexRecord& c, const std::string& p_elem,
                     const std::string& l_elem, double cutoff) {
    const double cutoff_sq = cutoff * cutoff;
    double n = 0.0;
    for (const auto& a : c.atoms) {
        if (a.role != AtomRole::kProtein || a.element != p_elem) continue;
        for (const auto& b : c.atoms) {
            if (b.role != AtomRole::kLigand || b.element != l_elem) continue;
            const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
            if (dx * dx + dy * dy + dz * dz <= cutoff_sq) n += 1.0;
        }
    }
    return n;
}

double friedman1_value(const double* u) {
    return 10.0 * std::sin(std::numbers::pi * u[0] * u[1]) +
           20.0 * (u[2] - 0.5) * (u[2] - 0.5) + 10.0 * u[3] + 5.0 * u[4];
}

}  // namespace

SyntheticTarget synthetic_target_from_string(const std::string& name) {
    if (name == "linear") return SyntheticTarget::kLinear;
    if (name == "friedman1") return SyntheticTarget::kFriedman1;
    if (name == "pairwise_contact") return SyntheticTarget::kPairwiseContact;
    throw ConfigError("unknown synthetic target '" + name + "'");
}

const char* to_string(SyntheticTarget t) {
    switch (t) {
        case SyntheticTarget::kLinear: return "linear";
        case SyntheticTarget::kFriedman1: return "friedman1";
        case SyntheticTarget::kPairwiseContact: return "pairwise_contact";
    }
    return "?";
}

std::vector<ComplexRecord> gen_synthetic(std::size_t n_complexes,
                                         std::size_t atoms_min, std::size_t atoms_max,
                                         std::uint64_t rng_seed, SyntheticTarget target,
                                         double noise_sigma) {
    if (atoms_min < 2 || atoms_max < atoms_min)
        throw ConfigError("invalid atom count range [" + std::to_string(atoms_min) + ", " +
                          std::to_string(atoms_max) + "]: need min >= 2 and max >= min");

    std::vector<ComplexRecord> complexes(n_complexes);
    for (std::size_t i = 0; i < n_complexes; ++i) {
        Rng rng(mix_seed(rng_seed, i));
        ComplexRecord& complex = complexes[i];
        complex.id = padded_id("synth-", i);

        double latents[5] = {0, 0, 0, 0, 0};
        if (target == SyntheticTarget::kFriedman1)
            for (double& u : latents) u = rng.uniform();

        const auto n_atoms =
            static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(atoms_min),
                                               static_cast<std::int64_t>(atoms_max)));
        complex.atoms.reserve(n_atoms);
        for (std::size_t a = 0; a < n_atoms; ++a) {
            AtomRecord atom;
            // First two atoms pin one protein and one ligand so every
            // complex satisfies the role invariant.
            if (a == 0)
                atom.role = AtomRole::kProtein;
            else if (a == 1)
                atom.role = AtomRole::kLigand;
            else
                atom.role = rng.bounded(2) == 0 ? AtomRole::kProtein : AtomRole::kLigand;
            const auto& elements =
                atom.role == AtomRole::kProtein ? kProteinElements : kLigandElements;
            atom.element = elements[rng.bounded(elements.size())];
            atom.x = rng.uniform(0.0, kBoxEdge);
            atom.y = rng.uniform(0.0, kBoxEdge);
            atom.z = rng.uniform(0.0, kBoxEdge);
            atom.features.emplace_back("charge", rng.uniform(-1.0, 1.0));
            atom.features.emplace_back("radius", rng.uniform(1.0, 2.5));
            atom.features.emplace_back("hyb", std::string(kHybridizations[rng.bounded(3)]));
            atom.features.emplace_back("type", atom.element);
            if (target == SyntheticTarget::kFriedman1)
                for (int k = 0; k < 5; ++k)
                    atom.features.emplace_back("u" + std::to_string(k + 1), latents[k]);
            complex.atoms.push_back(std::move(atom));
        }

        double y = 0.0;
        switch (target) {
            case SyntheticTarget::kLinear:
                y = 1.0 * sum_feature(complex, "charge") +
                    0.25 * sum_feature(complex, "radius") +
                    0.5 * count_feature(complex, "type", "F") +
                    0.3 * count_feature(complex, "type", "Cl") -
                    0.4 * count_feature(complex, "hyb", "sp2");
                break;
            case SyntheticTarget::kFriedman1:
                y = friedman1_value(latents);
                break;
            case SyntheticTarget::kPairwiseContact:
                y = 0.02 * contact_count(complex, "C", "C", 12.0) +
                    0.15 * contact_count(complex, "N", "O", 12.0) +
                    0.15 * contact_count(complex, "O", "N", 12.0) +
                    0.8 * contact_count(complex, "S", "F", 12.0);
                break;
        }
        if (noise_sigma > 0.0) y += noise_sigma * rng.normal();
        complex.affinity = y;
    }
    return complexes;
}

FeatureMatrix friedman1_matrix(std::size_t n_rows, std::size_t n_cols,
                               double noise_sigma, std::uint64_t seed) {
    if (n_cols < 5)
        throw ConfigError("friedman1 needs at least 5 columns");
    std::vector<std::string> names(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "f%03zu", c);
        names[c] = buf;
    }
    FeatureMatrix matrix(std::move(names), n_rows);
    std::vector<double> row(n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        Rng rng(mix_seed(seed, r));
        for (std::size_t c = 0; c < n_cols; ++c) row[c] = rng.uniform();
        const double y = friedman1_value(row.data()) + noise_sigma * rng.normal();
        matrix.set_row(r, padded_id("row-", r), y, row);
    }
    matrix.check_finite();
    return matrix;
}

}  // namespace affinity
