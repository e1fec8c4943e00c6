#include "affinity/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "affinity/errors.hpp"

namespace affinity {

const char* to_string(AtomRole role) {
    return role == AtomRole::kProtein ? "protein" : "ligand";
}

const FeatureValue* AtomRecord::find_feature(const std::string& name) const {
    for (const auto& [n, v] : features)
        if (n == name) return &v;
    return nullptr;
}

std::size_t ComplexRecord::count_role(AtomRole role) const {
    std::size_t n = 0;
    for (const auto& a : atoms)
        if (a.role == role) ++n;
    return n;
}

std::size_t DatasetSchema::encoded_width() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        w += feature_kinds[i] == FeatureKind::kNumeric ? 1 : vocab[i].size();
    return w;
}

std::vector<std::string> DatasetSchema::encoded_names() const {
    std::vector<std::string> names;
    names.reserve(encoded_width());
    for (std::size_t i = 0; i < feature_names.size(); ++i) {
        if (feature_kinds[i] == FeatureKind::kNumeric) {
            names.push_back(feature_names[i]);
        } else {
            for (const auto& cat : vocab[i])
                names.push_back(feature_names[i] + "=" + cat);
        }
    }
    return names;
}

int DatasetSchema::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        if (feature_names[i] == name) return static_cast<int>(i);
    return -1;
}

DatasetSchema DatasetSchema::infer(const std::vector<ComplexRecord>& complexes) {
    DatasetSchema schema;
    bool seeded = false;
    std::vector<std::set<std::string>> seen_categories;

    for (const auto& complex : complexes) {
        for (const auto& atom : complex.atoms) {
            if (!seeded) {
                for (const auto& [name, value] : atom.features) {
                    if (schema.index_of(name) >= 0)
                        throw SchemaError("duplicate feature name '" + name +
                                          "' in complex '" + complex.id + "'");
                    schema.feature_names.push_back(name);
                    schema.feature_kinds.push_back(is_numeric(value)
                                                       ? FeatureKind::kNumeric
                                                       : FeatureKind::kCategorical);
                }
                seen_categories.resize(schema.feature_names.size());
                seeded = true;
            }
            if (atom.features.size() != schema.feature_names.size())
                throw SchemaError("schema mismatch in complex '" + complex.id +
                                  "': expected " + std::to_string(schema.feature_names.size()) +
                                  " features, got " + std::to_string(atom.features.size()));
            for (const auto& [name, value] : atom.features) {
                const int idx = schema.index_of(name);
                if (idx < 0)
                    throw SchemaError("schema mismatch in complex '" + complex.id +
                                      "': unexpected feature '" + name + "'");
                const FeatureKind kind = is_numeric(value) ? FeatureKind::kNumeric
                                                           : FeatureKind::kCategorical;
                if (kind != schema.feature_kinds[static_cast<std::size_t>(idx)])
                    throw SchemaError("schema mismatch in complex '" + complex.id +
                                      "': feature '" + name + "' changes kind");
                if (kind == FeatureKind::kCategorical)
                    seen_categories[static_cast<std::size_t>(idx)].insert(
                        std::get<std::string>(value));
            }
        }
    }

    schema.vocab.resize(schema.feature_names.size());
    for (std::size_t i = 0; i < schema.feature_names.size(); ++i)
        schema.vocab[i].assign(seen_categories[i].begin(), seen_categories[i].end());
    return schema;
}

std::string canonical_element(const std::string& raw) {
    std::string trimmed;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    if (trimmed.empty())
        throw ParseError("empty element symbol");
    for (char c : trimmed)
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw ParseError("element symbol '" + raw + "' is not alphabetic");
    std::string out = trimmed;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    for (std::size_t i = 1; i < out.size(); ++i)
        out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
    return out;
}

void validate_complex(const ComplexRecord& complex) {
    if (!std::isfinite(complex.affinity))
        throw ParseError("complex '" + complex.id + "': non-finite affinity");
    std::size_t n_protein = 0, n_ligand = 0;
    for (const auto& atom : complex.atoms) {
        if (!std::isfinite(atom.x) || !std::isfinite(atom.y) || !std::isfinite(atom.z))
            throw ParseError("complex '" + complex.id + "': non-finite coordinate");
        if (atom.element.empty() ||
            !std::isupper(static_cast<unsigned char>(atom.element[0])))
            throw ParseError("complex '" + complex.id + "': invalid element symbol '" +
                             atom.element + "'");
        for (const auto& [name, value] : atom.features)
            if (is_numeric(value) && !std::isfinite(std::get<double>(value)))
                throw ParseError("complex '" + complex.id + "': non-finite feature '" +
                                 name + "'");
        (atom.role == AtomRole::kProtein ? n_protein : n_ligand)++;
    }
    if (n_protein == 0 || n_ligand == 0)
        throw ParseError("complex '" + complex.id + "': needs at least one protein and one ligand atom (got " +
                         std::to_string(n_protein) + " protein, " +
                         std::to_string(n_ligand) + " ligand)");
}

void check_schema(const ComplexRecord& complex, const DatasetSchema& schema) {
    for (const auto& atom : complex.atoms) {
        if (atom.features.size() != schema.size())
            throw SchemaError("complex '" + complex.id + "': expected " +
                              std::to_string(schema.size()) + " features per atom, got " +
                              std::to_string(atom.features.size()));
        for (const auto& [name, value] : atom.features) {
            const int idx = schema.index_of(name);
            if (idx < 0)
                throw SchemaError("complex '" + complex.id + "': unexpected feature '" +
                                  name + "'");
            const FeatureKind kind =
                is_numeric(value) ? FeatureKind::kNumeric : FeatureKind::kCategorical;
            if (kind != schema.feature_kinds[static_cast<std::size_t>(idx)])
                throw SchemaError("complex '" + complex.id + "': feature '" + name +
                                  "' has wrong kind");
        }
    }
}

}  // namespace affinity
