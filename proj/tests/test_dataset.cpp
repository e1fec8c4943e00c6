#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "affinity/dataset.hpp"
#include "affinity/errors.hpp"
#include "affinity/jsonl.hpp"
#include "affinity/pdb.hpp"
#include "affinity/rng.hpp"
#include "affinity/synthetic.hpp"

using namespace affinity;

namespace {

std::string write_temp(const std::string& content) {
    static int counter = 0;
    const auto path = std::filesystem::temp_directory_path() /
                      ("affinity_dataset_test_" + std::to_string(counter++) + ".jsonl");
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
}

const char* kTwoAtomComplex =
    R"({"id":"c1","affinity":6.2,"atoms":[)"
    R"({"role":"protein","element":"C","x":0,"y":0,"z":0,"features":{"charge":-0.1,"type":"C"}},)"
    R"({"role":"ligand","element":"N","x":3,"y":0,"z":0,"features":{"charge":0.4,"type":"N"}}]})";

std::string serialize_all(const std::vector<ComplexRecord>& cs) {
    std::string out;
    for (const auto& c : cs) out += serialize_complex(c) + "\n";
    return out;
}

}  // namespace

TEST(ParseDataset, SingleComplexEchoesInput) {
    const auto path = write_temp(std::string(kTwoAtomComplex) + "\n");
    const auto complexes = parse_dataset(path);
    ASSERT_EQ(complexes.size(), 1u);
    EXPECT_EQ(complexes[0].id, "c1");
    EXPECT_DOUBLE_EQ(complexes[0].affinity, 6.2);
    ASSERT_EQ(complexes[0].atoms.size(), 2u);
    EXPECT_EQ(complexes[0].atoms[0].role, AtomRole::kProtein);
    EXPECT_EQ(complexes[0].atoms[1].element, "N");
}

TEST(ParseDataset, EmptyFileGivesEmptyList) {
    const auto path = write_temp("");
    EXPECT_TRUE(parse_dataset(path).empty());
}

TEST(ParseDataset, SchemaMismatchNamesOffendingComplex) {
    const std::string other =
        R"({"id":"c2","affinity":5.0,"atoms":[)"
        R"({"role":"protein","element":"C","x":0,"y":0,"z":0,"features":{"charge":0.2}},)"
        R"({"role":"ligand","element":"O","x":1,"y":0,"z":0,"features":{"charge":0.1}}]})";
    const auto path = write_temp(std::string(kTwoAtomComplex) + "\n" + other + "\n");
    try {
        parse_dataset(path);
        FAIL() << "expected SchemaError";
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("c2"), std::string::npos) << e.what();
    }
}

TEST(ParseDataset, MalformedLineReportsLineNumber) {
    const auto path = write_temp(std::string(kTwoAtomComplex) + "\n{not json\n");
    try {
        parse_dataset(path);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
    }
}

TEST(ParseDataset, NonFiniteCoordinateRejected) {
    const std::string bad =
        R"({"id":"c1","affinity":1.0,"atoms":[)"
        R"({"role":"protein","element":"C","x":1e999,"y":0,"z":0},)"
        R"({"role":"ligand","element":"O","x":1,"y":0,"z":0}]})";
    const auto path = write_temp(bad + "\n");
    EXPECT_THROW(parse_dataset(path), ParseError);
}

TEST(ParseDataset, MissingRoleRejected) {
    const std::string protein_only =
        R"({"id":"p","affinity":1.0,"atoms":[)"
        R"({"role":"protein","element":"C","x":0,"y":0,"z":0}]})";
    const auto path = write_temp(protein_only + "\n");
    try {
        parse_dataset(path);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("ligand"), std::string::npos);
    }
}

TEST(ParseDataset, RoundTripIsStructurallyEqual) {
    const auto complexes = gen_synthetic(20, 2, 12, 99, SyntheticTarget::kLinear);
    const auto path = write_temp(serialize_all(complexes));
    const auto reparsed = parse_dataset(path);
    ASSERT_EQ(reparsed.size(), complexes.size());
    for (std::size_t i = 0; i < complexes.size(); ++i)
        EXPECT_EQ(reparsed[i], complexes[i]) << "complex " << i;
}

TEST(ParseDataset, MissingFileFails) {
    EXPECT_THROW(parse_dataset("/nonexistent/path/data.jsonl"), ParseError);
}

// --- element symbols ---

TEST(CanonicalElement, Capitalization) {
    EXPECT_EQ(canonical_element("CL"), "Cl");
    EXPECT_EQ(canonical_element("c"), "C");
    EXPECT_EQ(canonical_element(" N "), "N");
    EXPECT_THROW(canonical_element(""), ParseError);
    EXPECT_THROW(canonical_element("C1"), ParseError);
}

// --- schema inference ---

TEST(DatasetSchema, VocabSortedAndDeduped) {
    const auto complexes = gen_synthetic(30, 3, 10, 7, SyntheticTarget::kLinear);
    const auto schema = DatasetSchema::infer(complexes);
    const int type_idx = schema.index_of("type");
    ASSERT_GE(type_idx, 0);
    const auto& vocab = schema.vocab[static_cast<std::size_t>(type_idx)];
    EXPECT_TRUE(std::is_sorted(vocab.begin(), vocab.end()));
    EXPECT_EQ(std::adjacent_find(vocab.begin(), vocab.end()), vocab.end());
}

TEST(DatasetSchema, KindConflictRejected) {
    auto complexes = gen_synthetic(2, 2, 2, 1, SyntheticTarget::kLinear);
    // Same name, numeric in one complex and categorical in the other.
    for (auto& atom : complexes[1].atoms)
        for (auto& [name, value] : atom.features)
            if (name == "charge") value = std::string("high");
    EXPECT_THROW(DatasetSchema::infer(complexes), SchemaError);
}

TEST(DatasetSchema, EncodedWidthCountsVocab) {
    DatasetSchema schema;
    schema.feature_names = {"charge", "type"};
    schema.feature_kinds = {FeatureKind::kNumeric, FeatureKind::kCategorical};
    schema.vocab = {{}, {"C", "N", "O"}};
    EXPECT_EQ(schema.encoded_width(), 4u);
    const auto names = schema.encoded_names();
    ASSERT_EQ(names.size(), 4u);
    EXPECT_EQ(names[0], "charge");
    EXPECT_EQ(names[1], "type=C");
    EXPECT_EQ(names[3], "type=O");
}

// --- PDB subset ---

TEST(ParsePdb, AtomLineFixedColumns) {
    const std::string line =
        "ATOM      1  N   ALA A   1      11.104  13.207   9.453  1.00 20.00           N";
    ASSERT_EQ(line.size(), 78u);
    const auto atoms = parse_pdb_lines(line + "\n");
    ASSERT_EQ(atoms.size(), 1u);
    EXPECT_EQ(atoms[0].role, AtomRole::kProtein);
    EXPECT_EQ(atoms[0].element, "N");
    EXPECT_DOUBLE_EQ(atoms[0].x, 11.104);
    EXPECT_DOUBLE_EQ(atoms[0].y, 13.207);
    EXPECT_DOUBLE_EQ(atoms[0].z, 9.453);
    EXPECT_TRUE(atoms[0].features.empty());
}

TEST(ParsePdb, NonAtomLinesSkipped) {
    EXPECT_TRUE(parse_pdb_lines("REMARK something\nTER\nEND\n").empty());
}

TEST(ParsePdb, HetatmElementFallsBackToAtomName) {
    const std::string line =
        "HETATM    2  C1  LIG A   2      10.000  10.000  10.000  1.00  0.00";
    const auto atoms = parse_pdb_lines(line + "\n");
    ASSERT_EQ(atoms.size(), 1u);
    EXPECT_EQ(atoms[0].role, AtomRole::kLigand);
    EXPECT_EQ(atoms[0].element, "C");
}

TEST(ParsePdb, BadCoordinateFieldFails) {
    const std::string line =
        "ATOM      1  N   ALA A   1      xx.xxx  13.207   9.453  1.00 20.00           N";
    EXPECT_THROW(parse_pdb_lines(line + "\n"), ParseError);
}

TEST(ParsePdb, LineLocal) {
    const std::string a =
        "ATOM      1  N   ALA A   1      11.104  13.207   9.453  1.00 20.00           N";
    const std::string b =
        "HETATM    2  C1  LIG A   2      10.000  10.000  10.000  1.00  0.00";
    const auto v1 = parse_pdb_lines("REMARK x\n" + a + "\nTER\n" + b + "\nEND\n");
    const auto v2 = parse_pdb_lines(a + "\nEND\nREMARK x\n" + b + "\nTER\n");
    EXPECT_EQ(v1, v2);
}

// --- synthetic generation ---

TEST(GenSynthetic, DeterministicAcrossCalls) {
    const auto a = gen_synthetic(5, 2, 4, 7, SyntheticTarget::kLinear);
    const auto b = gen_synthetic(5, 2, 4, 7, SyntheticTarget::kLinear);
    EXPECT_EQ(serialize_all(a), serialize_all(b));
}

TEST(GenSynthetic, ZeroComplexes) {
    EXPECT_TRUE(gen_synthetic(0, 2, 4, 1, SyntheticTarget::kLinear).empty());
}

TEST(GenSynthetic, InvalidRangeRejected) {
    EXPECT_THROW(gen_synthetic(1, 1, 4, 1, SyntheticTarget::kLinear), ConfigError);
    EXPECT_THROW(gen_synthetic(1, 5, 4, 1, SyntheticTarget::kLinear), ConfigError);
}

TEST(GenSynthetic, EveryComplexHasBothRoles) {
    for (const auto& c : gen_synthetic(50, 2, 6, 3, SyntheticTarget::kPairwiseContact)) {
        EXPECT_GE(c.count_role(AtomRole::kProtein), 1u);
        EXPECT_GE(c.count_role(AtomRole::kLigand), 1u);
    }
}

TEST(GenSynthetic, LinearTargetRecomputableFromAtoms) {
    const auto complexes = gen_synthetic(40, 2, 15, 11, SyntheticTarget::kLinear,
                                         /*noise_sigma=*/0.0);
    for (const auto& c : complexes) {
        double sum_charge = 0.0, sum_radius = 0.0, n_f = 0.0, n_cl = 0.0, n_sp2 = 0.0;
        for (const auto& atom : c.atoms) {
            sum_charge += std::get<double>(*atom.find_feature("charge"));
            sum_radius += std::get<double>(*atom.find_feature("radius"));
            if (std::get<std::string>(*atom.find_feature("type")) == "F") n_f += 1.0;
            if (std::get<std::string>(*atom.find_feature("type")) == "Cl") n_cl += 1.0;
            if (std::get<std::string>(*atom.find_feature("hyb")) == "sp2") n_sp2 += 1.0;
        }
        const double expected =
            1.0 * sum_charge + 0.25 * sum_radius + 0.5 * n_f + 0.3 * n_cl - 0.4 * n_sp2;
        EXPECT_EQ(c.affinity, expected) << c.id;
    }
}

TEST(GenSynthetic, Friedman1MatrixShapeAndDeterminism) {
    const auto m1 = friedman1_matrix(100, 10, 1.0, 42);
    const auto m2 = friedman1_matrix(100, 10, 1.0, 42);
    EXPECT_EQ(m1.n_rows(), 100u);
    EXPECT_EQ(m1.n_cols(), 10u);
    EXPECT_EQ(m1.data(), m2.data());
    EXPECT_EQ(m1.labels(), m2.labels());
    EXPECT_THROW(friedman1_matrix(10, 4, 0.0, 1), ConfigError);
}

TEST(Rng, MixSeedSeparatesStreams) {
    EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
    EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
    EXPECT_EQ(mix_seed(7, 3), mix_seed(7, 3));
}
