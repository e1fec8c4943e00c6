#include "affinity/featurize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "affinity/errors.hpp"

namespace affinity {

namespace {

// element -> index in an ordered element list, or -1
std::map<std::string, int> index_elements(const std::vector<std::string>& elements) {
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < elements.size(); ++i)
        idx[elements[i]] = static_cast<int>(i);
    return idx;
}

struct TypedPoint {
    double x, y, z;
    int type;  // index into P or L
};

// Splits atoms into typed protein/ligand point lists; atoms whose element is
// not in the respective set (hydrogens, unknowns) drop out here.
void split_atoms(const ComplexRecord& complex, const InteractionConfig& cfg,
                 std::vector<TypedPoint>& protein, std::vector<TypedPoint>& ligand) {
    const auto pidx = index_elements(cfg.protein_elements);
    const auto lidx = index_elements(cfg.ligand_elements);
    for (const auto& atom : complex.atoms) {
        if (atom.role == AtomRole::kProtein) {
            auto it = pidx.find(atom.element);
            if (it != pidx.end())
                protein.push_back({atom.x, atom.y, atom.z, it->second});
        } else {
            auto it = lidx.find(atom.element);
            if (it != lidx.end())
                ligand.push_back({atom.x, atom.y, atom.z, it->second});
        }
    }
}

inline bool within_cutoff(const TypedPoint& a, const TypedPoint& b, double cutoff_sq,
                          bool inclusive) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    const double dsq = dx * dx + dy * dy + dz * dz;
    return inclusive ? dsq <= cutoff_sq : dsq < cutoff_sq;
}

}  // namespace

std::vector<std::string> InteractionConfig::pair_names() const {
    std::vector<std::string> names;
    names.reserve(pair_count());
    for (const auto& p : protein_elements)
        for (const auto& l : ligand_elements)
            names.push_back("inter." + p + "." + l);
    return names;
}

void InteractionConfig::validate() const {
    if (!(d_cutoff > 0.0) || !std::isfinite(d_cutoff))
        throw ConfigError("d_cutoff must be positive and finite");
    if (protein_elements.empty() || ligand_elements.empty())
        throw ConfigError("protein/ligand element sets must be nonempty");
    auto has_dup = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    if (has_dup(protein_elements))
        throw ConfigError("duplicate element in protein set");
    if (has_dup(ligand_elements))
        throw ConfigError("duplicate element in ligand set");
}

FeatureMatrix::FeatureMatrix(std::vector<std::string> column_names, std::size_t n_rows)
    : column_names_(std::move(column_names)),
      data_(n_rows * column_names_.size(), std::numeric_limits<double>::quiet_NaN()),
      labels_(n_rows, std::numeric_limits<double>::quiet_NaN()),
      row_ids_(n_rows) {}

std::span<const double> FeatureMatrix::column_copy_into(std::size_t c,
                                                        std::vector<double>& out) const {
    out.resize(n_rows());
    for (std::size_t r = 0; r < n_rows(); ++r) out[r] = at(r, c);
    return out;
}

void FeatureMatrix::set_row(std::size_t r, const std::string& id, double label,
                            std::span<const double> values) {
    if (values.size() != n_cols())
        throw SchemaError("row '" + id + "': expected " + std::to_string(n_cols()) +
                          " values, got " + std::to_string(values.size()));
    row_ids_[r] = id;
    labels_[r] = label;
    std::copy(values.begin(), values.end(), data_.begin() + r * n_cols());
}

void FeatureMatrix::check_finite() const {
    for (std::size_t r = 0; r < n_rows(); ++r) {
        if (!std::isfinite(labels_[r]))
            throw SchemaError("row " + std::to_string(r) + " ('" + row_ids_[r] +
                              "'): non-finite label");
        for (std::size_t c = 0; c < n_cols(); ++c)
            if (!std::isfinite(at(r, c)))
                throw SchemaError("row " + std::to_string(r) + " ('" + row_ids_[r] +
                                  "'), column '" + column_names_[c] + "': non-finite value");
    }
}

std::vector<double> interaction_features(const ComplexRecord& complex,
                                         const InteractionConfig& cfg) {
    std::vector<TypedPoint> protein, ligand;
    split_atoms(complex, cfg, protein, ligand);
    const std::size_t n_l = cfg.ligand_elements.size();
    std::vector<double> counts(cfg.pair_count(), 0.0);
    const double cutoff_sq = cfg.d_cutoff * cfg.d_cutoff;
    for (const auto& p : protein)
        for (const auto& l : ligand)
            if (within_cutoff(p, l, cutoff_sq, cfg.boundary_inclusive))
                counts[static_cast<std::size_t>(p.type) * n_l +
                       static_cast<std::size_t>(l.type)] += 1.0;
    return counts;
}

std::vector<double> interaction_features_grid(const ComplexRecord& complex,
                                              const InteractionConfig& cfg) {
    std::vector<TypedPoint> protein, ligand;
    split_atoms(complex, cfg, protein, ligand);
    const std::size_t n_l = cfg.ligand_elements.size();
    std::vector<double> counts(cfg.pair_count(), 0.0);
    if (protein.empty() || ligand.empty()) return counts;

    // Uniform grid over the ligand atoms with cell edge d_cutoff: any pair
    // within the cutoff lies in the same or an adjacent cell.
    const double cell = cfg.d_cutoff;
    double min_x = ligand[0].x, min_y = ligand[0].y, min_z = ligand[0].z;
    for (const auto& l : ligand) {
        min_x = std::min(min_x, l.x);
        min_y = std::min(min_y, l.y);
        min_z = std::min(min_z, l.z);
    }
    auto cell_of = [&](double v, double lo) {
        return static_cast<long>(std::floor((v - lo) / cell));
    };
    std::map<std::tuple<long, long, long>, std::vector<const TypedPoint*>> grid;
    for (const auto& l : ligand)
        grid[{cell_of(l.x, min_x), cell_of(l.y, min_y), cell_of(l.z, min_z)}].push_back(&l);

    const double cutoff_sq = cfg.d_cutoff * cfg.d_cutoff;
    for (const auto& p : protein) {
        const long cx = cell_of(p.x, min_x);
        const long cy = cell_of(p.y, min_y);
        const long cz = cell_of(p.z, min_z);
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy)
                for (long dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find({cx + dx, cy + dy, cz + dz});
                    if (it == grid.end()) continue;
                    for (const TypedPoint* l : it->second)
                        if (within_cutoff(p, *l, cutoff_sq, cfg.boundary_inclusive))
                            counts[static_cast<std::size_t>(p.type) * n_l +
                                   static_cast<std::size_t>(l->type)] += 1.0;
                }
    }
    return counts;
}

namespace {

void encode_atom_into(const AtomRecord& atom, const DatasetSchema& schema, double* out,
                      std::set<std::string>* unseen) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const std::string& name = schema.feature_names[i];
        const FeatureValue* value = atom.find_feature(name);
        if (value == nullptr)
            throw SchemaError("atom is missing feature '" + name + "'");
        if (schema.feature_kinds[i] == FeatureKind::kNumeric) {
            if (!is_numeric(*value))
                throw SchemaError("feature '" + name + "' expected numeric");
            const double v = std::get<double>(*value);
            if (!std::isfinite(v))
                throw SchemaError("feature '" + name + "' is non-finite");
            out[pos++] = v;
        } else {
            if (is_numeric(*value))
                throw SchemaError("feature '" + name + "' expected categorical");
            const std::string& cat = std::get<std::string>(*value);
            const auto& vocab = schema.vocab[i];
            bool found = false;
            for (std::size_t k = 0; k < vocab.size(); ++k) {
                const bool hit = vocab[k] == cat;
                out[pos + k] = hit ? 1.0 : 0.0;
                found = found || hit;
            }
            if (!found && unseen != nullptr)
                unseen->insert(name + "=" + cat);
            pos += vocab.size();
        }
    }
}

}  // namespace

std::vector<double> encode_atom(const AtomRecord& atom, const DatasetSchema& schema,
                                std::set<std::string>* unseen) {
    std::vector<double> out(schema.encoded_width(), 0.0);
    encode_atom_into(atom, schema, out.data(), unseen);
    return out;
}

std::vector<double> pool_sum(const ComplexRecord& complex, const DatasetSchema& schema,
                             std::set<std::string>* unseen) {
    const std::size_t width = schema.encoded_width();
    std::vector<double> sum(width, 0.0);
    std::vector<double> enc(width, 0.0);
    for (const auto& atom : complex.atoms) {
        encode_atom_into(atom, schema, enc.data(), unseen);
        for (std::size_t k = 0; k < width; ++k) sum[k] += enc[k];
    }
    return sum;
}

std::vector<double> pool_std(const ComplexRecord& complex, const DatasetSchema& schema,
                             std::set<std::string>* unseen) {
    const std::size_t width = schema.encoded_width();
    const std::size_t n = complex.atoms.size();
    std::vector<double> out(width, 0.0);
    if (n == 0) return out;

    // Two passes: mean, then centered second moment. Numerically safe when
    // the spread is tiny relative to the mean.
    std::vector<std::vector<double>> encoded(n, std::vector<double>(width, 0.0));
    for (std::size_t a = 0; a < n; ++a)
        encode_atom_into(complex.atoms[a], schema, encoded[a].data(), unseen);

    std::vector<double> mean(width, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t k = 0; k < width; ++k) mean[k] += encoded[a][k];
    for (std::size_t k = 0; k < width; ++k) mean[k] /= static_cast<double>(n);

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t k = 0; k < width; ++k) {
            const double d = encoded[a][k] - mean[k];
            out[k] += d * d;
        }
    for (std::size_t k = 0; k < width; ++k)
        out[k] = std::sqrt(std::max(out[k] / static_cast<double>(n), 0.0));
    return out;
}

std::vector<double> featurize_complex(const ComplexRecord& complex,
                                      const InteractionConfig& cfg,
                                      const DatasetSchema& schema,
                                      std::set<std::string>* unseen) {
    std::vector<double> row = interaction_features(complex, cfg);
    const std::vector<double> sums = pool_sum(complex, schema, unseen);
    const std::vector<double> stds = pool_std(complex, schema, unseen);
    row.insert(row.end(), sums.begin(), sums.end());
    row.insert(row.end(), stds.begin(), stds.end());
    return row;
}

std::vector<std::string> feature_column_names(const InteractionConfig& cfg,
                                              const DatasetSchema& schema) {
    std::vector<std::string> names = cfg.pair_names();
    for (const auto& n : schema.encoded_names()) names.push_back("sum." + n);
    for (const auto& n : schema.encoded_names()) names.push_back("std." + n);
    return names;
}

FeatureMatrix featurize_dataset(const std::vector<ComplexRecord>& complexes,
                                const InteractionConfig& cfg,
                                const DatasetSchema& schema,
                                std::vector<std::string>* warnings) {
    cfg.validate();
    FeatureMatrix matrix(feature_column_names(cfg, schema), complexes.size());
    const auto n = static_cast<std::ptrdiff_t>(complexes.size());

    std::vector<std::set<std::string>> unseen_per_complex(complexes.size());
    std::vector<std::string> errors(complexes.size());

    // Each complex fills exactly its own row, so values and row order are
    // independent of the thread count.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            const std::vector<double> row =
                featurize_complex(complexes[idx], cfg, schema, &unseen_per_complex[idx]);
            matrix.set_row(idx, complexes[idx].id, complexes[idx].affinity, row);
        } catch (const std::exception& e) {
            errors[idx] = "complex '" + complexes[idx].id + "': " + e.what();
        }
    }
    std::string joined;
    for (const auto& e : errors)
        if (!e.empty()) joined += (joined.empty() ? "" : "; ") + e;
    if (!joined.empty())
        throw SchemaError(joined);

    if (warnings != nullptr) {
        std::set<std::string> merged;
        for (const auto& s : unseen_per_complex) merged.insert(s.begin(), s.end());
        for (const auto& u : merged)
            warnings->push_back("category not in training vocabulary, encoded as zeros: " + u);
    }
    matrix.check_finite();
    return matrix;
}

}  // namespace affinity
