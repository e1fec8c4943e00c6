#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace affinity {

enum class AtomRole : std::uint8_t { kProtein, kLigand };

const char* to_string(AtomRole role);

// A per-atom input value: numeric or categorical.
using FeatureValue = std::variant<double, std::string>;

inline bool is_numeric(const FeatureValue& v) { return v.index() == 0; }

// One atom of a complex. `features` preserves the order the values appeared
// in; within one dataset every atom must expose the same feature-name set.
struct AtomRecord {
    AtomRole role = AtomRole::kProtein;
    std::string element;  // canonical form: leading uppercase, rest lowercase
    double x = 0.0, y = 0.0, z = 0.0;
    std::vector<std::pair<std::string, FeatureValue>> features;

    const FeatureValue* find_feature(const std::string& name) const;

    bool operator==(const AtomRecord&) const = default;
};

// A labeled protein-ligand complex. Affinity is on the usual log scale
// (pK units).
struct ComplexRecord {
    std::string id;
    double affinity = 0.0;
    std::vector<AtomRecord> atoms;

    std::size_t count_role(AtomRole role) const;

    bool operator==(const ComplexRecord&) const = default;
};

enum class FeatureKind : std::uint8_t { kNumeric, kCategorical };

// Frozen description of the per-atom feature set of a dataset. Categorical
// vocabularies are fixed here (sorted, duplicate-free); categories unseen at
// encode time map to an all-zeros one-hot block.
struct DatasetSchema {
    std::vector<std::string> feature_names;             // stable order
    std::vector<FeatureKind> feature_kinds;             // parallel to names
    std::vector<std::vector<std::string>> vocab;        // per name; empty for numeric

    std::size_t size() const { return feature_names.size(); }

    // Width of the encoded per-atom vector: numerics contribute 1 column,
    // categoricals one column per vocab entry.
    std::size_t encoded_width() const;

    // Names of the encoded columns in encoding order: "charge" for numerics,
    // "type=N" for one-hot entries.
    std::vector<std::string> encoded_names() const;

    int index_of(const std::string& name) const;  // -1 when absent

    // Builds a schema from every atom of every complex: names and kinds from
    // the first atom seen, vocabularies from all observed category strings
    // (sorted, deduplicated). Throws SchemaError on any name-set or kind
    // disagreement, naming the offending complex.
    static DatasetSchema infer(const std::vector<ComplexRecord>& complexes);
};

// Canonicalizes an element symbol: first letter uppercase, rest lowercase
// ("CL" -> "Cl"). Throws ParseError for empty or non-alphabetic symbols.
std::string canonical_element(const std::string& raw);

// Enforces the AtomRecord/ComplexRecord invariants: finite coordinates and
// label, valid element symbols, at least one atom of each role. Throws
// ParseError with the complex id in the message.
void validate_complex(const ComplexRecord& complex);

// Checks that every atom of `complex` exposes exactly the schema's
// feature-name set with matching kinds. Throws SchemaError.
void check_schema(const ComplexRecord& complex, const DatasetSchema& schema);

}  // namespace affinity
