// JSON interchange: PolyhedronFile parsing with source positions, complex and
// polyhedron dumps, and exact scalar encodings.

#pragma once

#include "ratvol/polyhedron.hpp"
#include "ratvol/simplicial.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratvol::io {

using Json = nlohmann::ordered_json;

/// Malformed input. line and column are 1-based and point at the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    const std::string& message() const { return message_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

/// Integer from "p" with an optional sign. Throws GeometryError on anything else.
Int parse_integer(std::string_view text);

struct PolyhedronFile {
    std::size_t dim = 0;
    std::vector<Simplex> simplexes;
};

/// {"dim": n, "simplexes": [[["p/q", ...], ...], ...]}. Coordinates are strings
/// or JSON integers; floats are rejected. Unknown keys are ignored.
PolyhedronFile parse_polyhedron_file(std::string_view text);
Polyhedron parse_polyhedron(std::string_view text);
/// The complex generated by the listed simplexes.
Complex parse_complex(std::string_view text);

Json point_to_json(const RatPoint& p);
Json simplex_to_json(const Simplex& s);
Json polyhedron_to_json(const Polyhedron& p);
/// PolyhedronFile of the maximal simplexes, plus per-simplex "denominators"
/// (den(T) for regular members, null otherwise) and "regular" flags.
Json complex_to_json(const Complex& c);

}  // namespace ratvol::io
