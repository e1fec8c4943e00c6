#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "affinity/dataset.hpp"

namespace affinity {

// Parameters of the contact-count features: counts of (protein element,
// ligand element) atom pairs within d_cutoff Angstrom. A pair at exactly
// d_cutoff counts iff boundary_inclusive. All distance comparisons are done
// on squared distances.
struct InteractionConfig {
    std::vector<std::string> protein_elements = {"C", "N", "O", "S"};
    std::vector<std::string> ligand_elements = {"C", "N", "O", "F", "P", "S", "Cl", "Br", "I"};
    double d_cutoff = 12.0;
    bool boundary_inclusive = true;

    std::size_t pair_count() const {
        return protein_elements.size() * ligand_elements.size();
    }

    // Column names "inter.<P>.<L>" in row-major (protein-major) order.
    std::vector<std::string> pair_names() const;

    void validate() const;  // throws ConfigError
};

// Dense row-major matrix of per-complex feature vectors. All entries are
// checked finite at construction.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::vector<std::string> column_names, std::size_t n_rows);

    std::size_t n_rows() const { return row_ids_.size(); }
    std::size_t n_cols() const { return column_names_.size(); }

    const std::vector<std::string>& column_names() const { return column_names_; }
    const std::vector<double>& labels() const { return labels_; }
    const std::vector<std::string>& row_ids() const { return row_ids_; }

    double at(std::size_t r, std::size_t c) const { return data_[r * n_cols() + c]; }
    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * n_cols(), n_cols()};
    }
    std::span<double> mutable_row(std::size_t r) {
        return {data_.data() + r * n_cols(), n_cols()};
    }
    const std::vector<double>& data() const { return data_; }

    std::span<const double> column_copy_into(std::size_t c, std::vector<double>& out) const;

    void set_row(std::size_t r, const std::string& id, double label,
                 std::span<const double> values);

    // Throws SchemaError if any entry, label or id slot was left unset or is
    // non-finite.
    void check_finite() const;

private:
    std::vector<std::string> column_names_;
    std::vector<double> data_;
    std::vector<double> labels_;
    std::vector<std::string> row_ids_;
};

// Contact counts, plain O(n_protein * n_ligand) double loop. Entry
// j * |L| + i counts pairs of protein element P[j] and ligand element L[i].
// This is the reference path; the grid variant must agree exactly.
std::vector<double> interaction_features(const ComplexRecord& complex,
                                         const InteractionConfig& cfg);

// Same counts via a uniform spatial grid with cell size d_cutoff. Pure
// optimization for large complexes.
std::vector<double> interaction_features_grid(const ComplexRecord& complex,
                                              const InteractionConfig& cfg);

// Per-atom encoding: numerics pass through in schema order, categoricals
// expand to one-hot blocks over the frozen vocab. Unseen categories encode
// as an all-zeros block; their "name=category" strings are added to *unseen
// when given.
std::vector<double> encode_atom(const AtomRecord& atom, const DatasetSchema& schema,
                                std::set<std::string>* unseen = nullptr);

// Elementwise sum of encode_atom over all atoms of the complex.
std::vector<double> pool_sum(const ComplexRecord& complex, const DatasetSchema& schema,
                             std::set<std::string>* unseen = nullptr);

// Elementwise population standard deviation (divide by n) of encode_atom
// over all atoms; computed in two passes. A single-atom complex yields all
// zeros.
std::vector<double> pool_std(const ComplexRecord& complex, const DatasetSchema& schema,
                             std::set<std::string>* unseen = nullptr);

// One full feature row: [interaction | sum | std].
std::vector<double> featurize_complex(const ComplexRecord& complex,
                                      const InteractionConfig& cfg,
                                      const DatasetSchema& schema,
                                      std::set<std::string>* unseen = nullptr);

// Column names of featurize_dataset, in order.
std::vector<std::string> feature_column_names(const InteractionConfig& cfg,
                                              const DatasetSchema& schema);

// Featurizes every complex (rows in input order). Parallel across complexes;
// results are independent of the thread count. Unseen one-hot categories are
// reported once each via *warnings when given.
FeatureMatrix featurize_dataset(const std::vector<ComplexRecord>& complexes,
                                const InteractionConfig& cfg,
                                const DatasetSchema& schema,
                                std::vector<std::string>* warnings = nullptr);

}  // namespace affinity
