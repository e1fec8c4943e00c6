#include "affinity/jsonl.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

// ordered_json keeps object keys in insertion order; feature order is part
// of the record.
using Json = nlohmann::ordered_json;

double require_finite(double v, const std::string& what, const std::string& id) {
    if (!std::isfinite(v))
        throw ParseError("complex '" + id + "': non-finite " + what);
    return v;
}

AtomRecord atom_from_json(const Json& j, const std::string& id) {
    AtomRecord atom;
    const std::string role = j.at("role").get<std::string>();
    if (role == "protein")
        atom.role = AtomRole::kProtein;
    else if (role == "ligand")
        atom.role = AtomRole::kLigand;
    else
        throw ParseError("complex '" + id + "': unknown atom role '" + role + "'");
    atom.element = canonical_element(j.at("element").get<std::string>());
    atom.x = require_finite(j.at("x").get<double>(), "x coordinate", id);
    atom.y = require_finite(j.at("y").get<double>(), "y coordinate", id);
    atom.z = require_finite(j.at("z").get<double>(), "z coordinate", id);
    if (j.contains("features")) {
        const Json& feats = j.at("features");
        if (!feats.is_object())
            throw ParseError("complex '" + id + "': \"features\" must be an object");
        for (auto it = feats.begin(); it != feats.end(); ++it) {
            if (it.value().is_number()) {
                atom.features.emplace_back(
                    it.key(), require_finite(it.value().get<double>(),
                                             "feature '" + it.key() + "'", id));
            } else if (it.value().is_string()) {
                atom.features.emplace_back(it.key(), it.value().get<std::string>());
            } else {
                throw ParseError("complex '" + id + "': feature '" + it.key() +
                                 "' must be a number or a string");
            }
        }
    }
    return atom;
}

}  // namespace

ComplexRecord parse_complex_line(const std::string& line) {
    Json j;
    try {
        j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    ComplexRecord complex;
    try {
        complex.id = j.at("id").get<std::string>();
        complex.affinity = j.at("affinity").get<double>();
        for (const Json& ja : j.at("atoms"))
            complex.atoms.push_back(atom_from_json(ja, complex.id));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("complex '" + complex.id + "': " + e.what());
    }
    validate_complex(complex);
    return complex;
}

std::vector<ComplexRecord> parse_dataset_stream(std::istream& in,
                                                const std::string& origin) {
    std::vector<ComplexRecord> complexes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            complexes.push_back(parse_complex_line(line));
        } catch (const ParseError& e) {
            throw ParseError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    // Schema consistency across the whole file; infer() names the offender.
    DatasetSchema::infer(complexes);
    return complexes;
}

std::vector<ComplexRecord> parse_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open dataset file '" + path + "'");
    return parse_dataset_stream(in, path);
}

std::string serialize_complex(const ComplexRecord& complex) {
    Json j;
    j["id"] = complex.id;
    j["affinity"] = complex.affinity;
    Json atoms = Json::array();
    for (const auto& atom : complex.atoms) {
        Json ja;
        ja["role"] = to_string(atom.role);
        ja["element"] = atom.element;
        ja["x"] = atom.x;
        ja["y"] = atom.y;
        ja["z"] = atom.z;
        Json feats = Json::object();
        for (const auto& [name, value] : atom.features) {
            if (is_numeric(value))
                feats[name] = std::get<double>(value);
            else
                feats[name] = std::get<std::string>(value);
        }
        ja["features"] = std::move(feats);
        atoms.push_back(std::move(ja));
    }
    j["atoms"] = std::move(atoms);
    return j.dump();
}

void write_dataset(const std::vector<ComplexRecord>& complexes, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out)
        throw ParseError("cannot open '" + path + "' for writing");
    for (const auto& complex : complexes)
        out << serialize_complex(complex) << '\n';
    if (!out)
        throw ParseError("write to '" + path + "' failed");
}

}  // namespace affinity
