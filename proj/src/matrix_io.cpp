#include "affinity/matrix_io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "affinity/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "matrix cache assumes a little-endian host");

namespace affinity {

namespace {

constexpr char kMagic[4] = {'A', 'F', 'M', 'X'};
constexpr std::uint32_t kFormatVersion = 1;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_csv_token(const std::string& s, const char* what) {
    if (s.find_first_of(",\"\n\r") != std::string::npos)
        throw ParseError(std::string(what) + " '" + s + "' contains CSV delimiter characters");
}

double parse_double_token(const std::string& tok, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("csv line " + std::to_string(line_no) + ": bad number '" + tok + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

template <typename T>
void write_raw(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in, const char* what) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in)
        throw ModelIoError(std::string("matrix cache truncated while reading ") + what);
    return v;
}

void write_string(std::ostream& out, const std::string& s) {
    write_raw(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in, const char* what) {
    const auto len = read_raw<std::uint32_t>(in, what);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in)
        throw ModelIoError(std::string("matrix cache truncated while reading ") + what);
    return s;
}

}  // namespace

void write_matrix_csv(const FeatureMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot open '" + path + "' for writing");
    out << "id,affinity";
    for (const auto& name : matrix.column_names()) {
        check_csv_token(name, "column name");
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t r = 0; r < matrix.n_rows(); ++r) {
        check_csv_token(matrix.row_ids()[r], "row id");
        out << matrix.row_ids()[r] << ',' << format_double(matrix.labels()[r]);
        const auto row = matrix.row(r);
        for (const double v : row) out << ',' << format_double(v);
        out << '\n';
    }
    if (!out)
        throw ParseError("write to '" + path + "' failed");
}

FeatureMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open csv file '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("csv file '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "id" || header[1] != "affinity")
        throw ParseError("csv file '" + path + "' must start with 'id,affinity,...'");
    std::vector<std::string> names(header.begin() + 2, header.end());

    std::vector<std::string> ids;
    std::vector<double> labels;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tokens = split_csv_line(line);
        if (tokens.size() != names.size() + 2)
            throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                             std::to_string(names.size() + 2) + " fields, got " +
                             std::to_string(tokens.size()));
        ids.push_back(tokens[0]);
        labels.push_back(parse_double_token(tokens[1], line_no));
        std::vector<double> row(names.size());
        for (std::size_t c = 0; c < names.size(); ++c)
            row[c] = parse_double_token(tokens[c + 2], line_no);
        rows.push_back(std::move(row));
    }

    FeatureMatrix matrix(std::move(names), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        matrix.set_row(r, ids[r], labels[r], rows[r]);
    matrix.check_finite();
    return matrix;
}

void write_matrix_binary(const FeatureMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ModelIoError("cannot open '" + path + "' for writing");
    out.write(kMagic, sizeof(kMagic));
    write_raw(out, kFormatVersion);
    write_raw(out, static_cast<std::uint64_t>(matrix.n_rows()));
    write_raw(out, static_cast<std::uint64_t>(matrix.n_cols()));
    for (const auto& name : matrix.column_names()) write_string(out, name);
    for (const auto& id : matrix.row_ids()) write_string(out, id);
    out.write(reinterpret_cast<const char*>(matrix.labels().data()),
              static_cast<std::streamsize>(matrix.n_rows() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(matrix.data().data()),
              static_cast<std::streamsize>(matrix.data().size() * sizeof(double)));
    if (!out)
        throw ModelIoError("write to '" + path + "' failed");
}

FeatureMatrix read_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ModelIoError("cannot open matrix cache '" + path + "'");
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ModelIoError("'" + path + "' is not a matrix cache (bad magic)");
    const auto version = read_raw<std::uint32_t>(in, "version");
    if (version != kFormatVersion)
        throw ModelIoError("matrix cache version mismatch: file has " +
                           std::to_string(version) + ", expected " +
                           std::to_string(kFormatVersion));
    const auto n_rows = read_raw<std::uint64_t>(in, "row count");
    const auto n_cols = read_raw<std::uint64_t>(in, "column count");

    std::vector<std::string> names(n_cols);
    for (auto& name : names) name = read_string(in, "column name");
    FeatureMatrix matrix(std::move(names), n_rows);

    std::vector<std::string> ids(n_rows);
    for (auto& id : ids) id = read_string(in, "row id");
    std::vector<double> labels(n_rows);
    in.read(reinterpret_cast<char*>(labels.data()),
            static_cast<std::streamsize>(n_rows * sizeof(double)));
    std::vector<double> row(n_cols);
    for (std::uint64_t r = 0; r < n_rows; ++r) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(n_cols * sizeof(double)));
        if (!in)
            throw ModelIoError("matrix cache truncated while reading values");
        matrix.set_row(r, ids[r], labels[r], row);
    }
    if (!in)
        throw ModelIoError("matrix cache truncated");
    matrix.check_finite();
    return matrix;
}

}  // namespace affinity
