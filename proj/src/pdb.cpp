#include "affinity/pdb.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

std::string field(const std::string& line, std::size_t col1, std::size_t col2) {
    // 1-indexed inclusive columns; missing columns read as blank.
    if (line.size() < col1) return {};
    const std::size_t begin = col1 - 1;
    const std::size_t end = std::min(line.size(), col2);
    return line.substr(begin, end - begin);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_coord(const std::string& line, std::size_t col1, std::size_t col2,
                   const char* what, std::size_t line_no) {
    const std::string raw = trim(field(line, col1, col2));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc() || ptr != raw.data() + raw.size())
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse " + what +
                         " field '" + raw + "'");
    return value;
}

// First run of alphabetic characters of the atom-name field (columns 13-16).
std::string element_from_atom_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (std::isalpha(static_cast<unsigned char>(c)))
            out.push_back(c);
        else if (!out.empty())
            break;
    }
    return out;
}

}  // namespace

std::vector<AtomRecord> parse_pdb_lines(const std::string& text) {
    std::vector<AtomRecord> atoms;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const bool is_atom = line.rfind("ATOM  ", 0) == 0;
        const bool is_hetatm = line.rfind("HETATM", 0) == 0;
        if (!is_atom && !is_hetatm) continue;

        AtomRecord atom;
        atom.role = is_atom ? AtomRole::kProtein : AtomRole::kLigand;
        atom.x = parse_coord(line, 31, 38, "x", line_no);
        atom.y = parse_coord(line, 39, 46, "y", line_no);
        atom.z = parse_coord(line, 47, 54, "z", line_no);

        std::string symbol = trim(field(line, 77, 78));
        if (symbol.empty())
            symbol = element_from_atom_name(field(line, 13, 16));
        if (symbol.empty())
            throw ParseError("line " + std::to_string(line_no) +
                             ": cannot resolve element (blank element and atom-name fields)");
        atom.element = canonical_element(symbol);
        atoms.push_back(std::move(atom));
    }
    return atoms;
}

}  // namespace affinity
