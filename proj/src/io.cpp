#include "ratvol/io.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <optional>

namespace ratvol::io {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

Int parse_integer(std::string_view text) {
    if (text.find('/') != std::string_view::npos) throw GeometryError("not an integer: \"" + std::string(text) + "\"");
    const Rat r = parse_rat(text);
    return r.get_num();
}

namespace {

// Source positions ----------------------------------------------------------------

/// Character iterator that counts how far the parser has read.
class CountingIterator {
public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    CountingIterator() = default;
    CountingIterator(const char* p, std::size_t* consumed) : p_(p), consumed_(consumed) {}

    reference operator*() const { return *p_; }
    CountingIterator& operator++() {
        ++p_;
        if (consumed_) ++*consumed_;
        return *this;
    }
    CountingIterator operator++(int) {
        CountingIterator old = *this;
        ++*this;
        return old;
    }
    bool operator==(const CountingIterator& o) const { return p_ == o.p_; }

private:
    const char* p_ = nullptr;
    std::size_t* consumed_ = nullptr;
};

struct Location {
    std::size_t line;
    std::size_t column;
};

/// 1-based line and column (in code points) of a byte offset.
Location locate(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    Location loc{1, 1};
    for (std::size_t i = 0; i < offset; ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c == '\n') {
            ++loc.line;
            loc.column = 1;
        } else if ((c & 0xC0) != 0x80) {
            ++loc.column;
        }
    }
    return loc;
}

[[noreturn]] void fail(std::string_view text, std::size_t offset, const std::string& message) {
    const Location loc = locate(text, offset);
    throw ParseError(message, loc.line, loc.column);
}

bool is_number_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.' || c == 'e' || c == 'E';
}

// Located JSON tree ---------------------------------------------------------------

struct Node {
    enum class Kind { Null, Boolean, Number, String, Array, Object };
    Kind kind = Kind::Null;
    std::string text;  ///< string contents, or the raw number literal
    std::size_t offset = 0;
    std::vector<Node> items;
    std::vector<std::pair<std::string, Node>> members;
    std::vector<std::size_t> key_offsets;
};

/// SAX handler building Nodes with the byte offset at which each value starts.
class Builder {
public:
    using number_integer_t = Json::number_integer_t;
    using number_unsigned_t = Json::number_unsigned_t;
    using number_float_t = Json::number_float_t;
    using string_t = Json::string_t;
    using binary_t = Json::binary_t;

    Builder(std::string_view text, const std::size_t* consumed) : text_(text), consumed_(consumed) {}

    bool null() { return leaf(Node::Kind::Null, literal_start(), ""); }
    bool boolean(bool) { return leaf(Node::Kind::Boolean, literal_start(), ""); }
    bool number_integer(number_integer_t) { return number(); }
    bool number_unsigned(number_unsigned_t) { return number(); }
    bool number_float(number_float_t, const string_t&) { return number(); }
    bool string(string_t& s) { return leaf(Node::Kind::String, string_start(), s); }
    bool binary(binary_t&) { return false; }

    bool start_object(std::size_t) { return open(Node::Kind::Object); }
    bool key(string_t& k) {
        stack_.back().members.emplace_back(k, Node{});
        stack_.back().key_offsets.push_back(string_start());
        return true;
    }
    bool end_object() { return close(); }
    bool start_array(std::size_t) { return open(Node::Kind::Array); }
    bool end_array() { return close(); }

    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        std::string what = ex.what();
        // Keep the parser's description, drop its own "[json.exception...] ... column N: " prefix.
        const auto colon = what.find(": ", what.find("column"));
        if (colon != std::string::npos) what = what.substr(colon + 2);
        fail(text_, position == 0 ? 0 : position - 1, what);
    }

    Node take_root() { return std::move(*root_); }

private:
    std::size_t end() const { return *consumed_; }

    std::size_t string_start() const {
        // The closing quote is the last consumed character; find its unescaped partner.
        std::size_t j = end() - 1;
        while (j > 0) {
            --j;
            if (text_[j] != '"') continue;
            std::size_t slashes = 0;
            while (j >= slashes + 1 && text_[j - slashes - 1] == '\\') ++slashes;
            if (slashes % 2 == 0) return j;
        }
        return 0;
    }

    std::size_t literal_start() const {
        std::size_t j = end();
        while (j > 0 && std::isalpha(static_cast<unsigned char>(text_[j - 1]))) --j;
        return j;
    }

    bool number() {
        // Numbers are read one character past their end.
        std::size_t last = end();
        while (last > 0 && !is_number_char(text_[last - 1])) --last;
        std::size_t first = last;
        while (first > 0 && is_number_char(text_[first - 1])) --first;
        return leaf(Node::Kind::Number, first, std::string(text_.substr(first, last - first)));
    }

    bool leaf(Node::Kind kind, std::size_t offset, std::string text) {
        Node n;
        n.kind = kind;
        n.offset = offset;
        n.text = std::move(text);
        attach(std::move(n));
        return true;
    }

    bool open(Node::Kind kind) {
        Node n;
        n.kind = kind;
        n.offset = end() - 1;
        stack_.push_back(std::move(n));
        return true;
    }

    bool close() {
        Node n = std::move(stack_.back());
        stack_.pop_back();
        attach(std::move(n));
        return true;
    }

    void attach(Node n) {
        if (stack_.empty()) {
            root_ = std::move(n);
        } else if (stack_.back().kind == Node::Kind::Array) {
            stack_.back().items.push_back(std::move(n));
        } else {
            stack_.back().members.back().second = std::move(n);
        }
    }

    std::string_view text_;
    const std::size_t* consumed_;
    std::vector<Node> stack_;
    std::optional<Node> root_;
};

Node parse_located(std::string_view text) {
    std::size_t consumed = 0;
    Builder builder(text, &consumed);
    CountingIterator first(text.data(), &consumed), last(text.data() + text.size(), nullptr);
    Json::sax_parse(first, last, &builder);
    return builder.take_root();
}

// PolyhedronFile schema -------------------------------------------------------------

const char* kind_name(Node::Kind k) {
    switch (k) {
        case Node::Kind::Null: return "null";
        case Node::Kind::Boolean: return "a boolean";
        case Node::Kind::Number: return "a number";
        case Node::Kind::String: return "a string";
        case Node::Kind::Array: return "an array";
        case Node::Kind::Object: return "an object";
    }
    return "a value";
}

bool is_integer_text(const std::string& s) {
    std::size_t i = s.size() > 0 && s[0] == '-' ? 1 : 0;
    return i < s.size() && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

class Schema {
public:
    explicit Schema(std::string_view text) : text_(text) {}

    PolyhedronFile read(const Node& root) const {
        expect(root, Node::Kind::Object, "the document");
        const Node* dim = nullptr;
        const Node* simplexes = nullptr;
        for (std::size_t i = 0; i < root.members.size(); ++i) {
            const auto& [key, value] = root.members[i];
            const Node** slot = key == "dim" ? &dim : key == "simplexes" ? &simplexes : nullptr;
            if (!slot) continue;
            if (*slot) fail(text_, root.key_offsets[i], "duplicate key \"" + key + "\"");
            *slot = &value;
        }
        if (!dim) fail(text_, root.offset, "missing key \"dim\"");
        if (!simplexes) fail(text_, root.offset, "missing key \"simplexes\"");

        PolyhedronFile out;
        if (dim->kind != Node::Kind::Number || !is_integer_text(dim->text))
            fail(text_, dim->offset, "\"dim\" must be a positive integer");
        const Int n(dim->text, 10);
        if (n < 1) fail(text_, dim->offset, "\"dim\" must be a positive integer");
        out.dim = n.get_ui();

        expect(*simplexes, Node::Kind::Array, "\"simplexes\"");
        for (std::size_t s = 0; s < simplexes->items.size(); ++s) {
            const Node& sn = simplexes->items[s];
            const std::string where = "simplex " + std::to_string(s);
            expect(sn, Node::Kind::Array, where);
            if (sn.items.empty()) fail(text_, sn.offset, where + " has no vertices");
            std::vector<RatPoint> vs;
            for (std::size_t v = 0; v < sn.items.size(); ++v) vs.push_back(point(sn.items[v], out.dim, where));
            try {
                out.simplexes.emplace_back(std::move(vs));
            } catch (const GeometryError&) {
                fail(text_, sn.offset, "the vertices of " + where + " are affinely dependent");
            }
        }
        return out;
    }

private:
    void expect(const Node& n, Node::Kind kind, const std::string& what) const {
        if (n.kind != kind)
            fail(text_, n.offset, what + " must be " + kind_name(kind) + ", found " + kind_name(n.kind));
    }

    RatPoint point(const Node& v, std::size_t n, const std::string& where) const {
        expect(v, Node::Kind::Array, "a vertex of " + where);
        if (v.items.size() != n)
            fail(text_, v.offset,
                 "a vertex of " + where + " has " + std::to_string(v.items.size()) + " coordinates, expected " +
                     std::to_string(n));
        RatPoint p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = coordinate(v.items[i]);
        return p;
    }

    Rat coordinate(const Node& c) const {
        if (c.kind == Node::Kind::Number) {
            if (!is_integer_text(c.text))
                fail(text_, c.offset, "floating-point number " + c.text + " is not accepted; write \"p/q\"");
            return Rat(Int(c.text, 10));
        }
        if (c.kind != Node::Kind::String)
            fail(text_, c.offset, std::string("a coordinate must be a \"p/q\" string, found ") + kind_name(c.kind));
        try {
            return parse_rat(c.text);
        } catch (const GeometryError&) {
            fail(text_, c.offset, "not an exact rational: \"" + c.text + "\"");
        } catch (const std::exception&) {
            fail(text_, c.offset, "zero denominator in \"" + c.text + "\"");
        }
    }

    std::string_view text_;
};

}  // namespace

PolyhedronFile parse_polyhedron_file(std::string_view text) {
    return Schema(text).read(parse_located(text));
}

Polyhedron parse_polyhedron(std::string_view text) {
    PolyhedronFile f = parse_polyhedron_file(text);
    return Polyhedron(f.dim, std::move(f.simplexes));
}

Complex parse_complex(std::string_view text) {
    const PolyhedronFile f = parse_polyhedron_file(text);
    return Complex::from_simplexes(f.dim, f.simplexes);
}

// Dumps ---------------------------------------------------------------------------

Json point_to_json(const RatPoint& p) {
    Json out = Json::array();
    for (const auto& c : p.coords()) out.push_back(to_string(c));
    return out;
}

Json simplex_to_json(const Simplex& s) {
    Json out = Json::array();
    for (const auto& v : s.vertices()) out.push_back(point_to_json(v));
    return out;
}

Json polyhedron_to_json(const Polyhedron& p) {
    Json ss = Json::array();
    for (const auto& s : p.input_simplexes()) ss.push_back(simplex_to_json(s));
    return Json{{"dim", p.ambient_dim()}, {"simplexes", ss}};
}

Json complex_to_json(const Complex& c) {
    Json ss = Json::array(), dens = Json::array(), regular = Json::array();
    for (const auto& s : c.maximal()) {
        ss.push_back(simplex_to_json(s));
        const bool r = is_regular(s);
        regular.push_back(r);
        dens.push_back(r ? Json(to_string(den(s))) : Json());
    }
    return Json{{"dim", c.ambient_dim()}, {"simplexes", ss}, {"denominators", dens}, {"regular", regular}};
}

}  // namespace ratvol::io
