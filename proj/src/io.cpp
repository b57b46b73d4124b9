#include "boxtdi/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace boxtdi {

using nlohmann::json;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what), line_(line), column_(column)
{
}

namespace {

struct Token {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    bool at_end()
    {
        skip();
        return pos_ >= text_.size();
    }

    Token next(const char* expected)
    {
        skip();
        if (pos_ >= text_.size())
            throw ParseError(std::string("unexpected end of input, expected ") + expected, line_, col_);
        Token t{{}, line_, col_};
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))
               && text_[pos_] != '#')
            advance_char(t.text);
        return t;
    }

    /// Tokens on the rest of the current line (after skipping blank lines).
    std::vector<Token> line_tokens()
    {
        std::vector<Token> out;
        skip();
        if (pos_ >= text_.size())
            return out;
        const std::size_t line = line_;
        while (true) {
            skip_inline();
            if (pos_ >= text_.size() || line_ != line || text_[pos_] == '\n')
                break;
            Token t{{}, line_, col_};
            while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))
                   && text_[pos_] != '#')
                advance_char(t.text);
            out.push_back(std::move(t));
        }
        return out;
    }

private:
    void advance_char(std::string& into)
    {
        into.push_back(text_[pos_++]);
        ++col_;
    }

    void skip_inline()
    {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    ++pos_;
                    ++col_;
                }
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
                ++col_;
            } else {
                return;
            }
        }
    }

    void skip()
    {
        while (pos_ < text_.size()) {
            skip_inline();
            if (pos_ < text_.size() && text_[pos_] == '\n') {
                ++pos_;
                ++line_;
                col_ = 1;
            } else {
                return;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

Rational to_rational(const Token& t)
{
    try {
        return parse_rational(t.text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), t.line, t.column);
    }
}

long to_count(const Token& t, const char* what)
{
    Rational q = to_rational(t);
    if (!is_integral(q) || q < 0 || q > 1000000)
        throw ParseError(std::string("expected a nonnegative integer ") + what + ", got '" + t.text + "'",
                         t.line, t.column);
    return numerator(q).convert_to<long>();
}

void expect_end(Lexer& lx)
{
    if (!lx.at_end()) {
        Token t = lx.next("end of input");
        throw ParseError("unexpected trailing token '" + t.text + "'", t.line, t.column);
    }
}

RatMatrix read_matrix(Lexer& lx)
{
    const long rows = to_count(lx.next("row count"), "row count");
    const long cols = to_count(lx.next("column count"), "column count");
    RatMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            m(i, j) = to_rational(lx.next("matrix entry"));
    return m;
}

void expect_keyword(Lexer& lx, const std::string& word)
{
    Token t = lx.next(word.c_str());
    if (t.text != word)
        throw ParseError("expected '" + word + "', got '" + t.text + "'", t.line, t.column);
}

std::vector<RatVector> read_block(Lexer& lx, const std::string& word, Index n)
{
    expect_keyword(lx, word);
    const long k = to_count(lx.next("block size"), "block size");
    std::vector<RatVector> out;
    for (long i = 0; i < k; ++i) {
        RatVector v(n);
        for (Index j = 0; j < n; ++j)
            v(j) = to_rational(lx.next("coordinate"));
        out.push_back(std::move(v));
    }
    return out;
}

// Byte offset to 1-based line and column.
std::pair<std::size_t, std::size_t> position_of(const std::string& text, std::size_t offset)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_json(const std::string& text, const std::string& kind)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed JSON", line, col);
    }
    if (!j.is_object())
        throw ParseError("expected a JSON object", 1, 1);
    if (!j.contains("schema") || j["schema"] != 1)
        throw ParseError("missing or unsupported \"schema\" (expected 1)", 0, 0);
    if (!j.contains("kind") || j["kind"] != kind)
        throw ParseError("expected \"kind\": \"" + kind + "\"", 0, 0);
    return j;
}

Rational json_rational(const json& j, const std::string& where)
{
    try {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return Rational(j.get<long long>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what(), 0, 0);
    }
    throw ParseError(where + ": expected an integer or a \"p/q\" string", 0, 0);
}

RatVector json_vector(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(where + ": expected an array", 0, 0);
    RatVector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Index>(i)) = json_rational(j[i], where + "/" + std::to_string(i));
    return v;
}

RatMatrix json_matrix(const json& j, long cols, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(where + ": expected an array of rows", 0, 0);
    RatMatrix m(static_cast<Index>(j.size()), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        RatVector row = json_vector(j[i], where + "/" + std::to_string(i));
        if (row.size() != cols)
            throw ParseError(where + "/" + std::to_string(i) + ": row has the wrong length", 0, 0);
        m.row(static_cast<Index>(i)) = row.transpose();
    }
    return m;
}

long json_count(const json& j, const std::string& key)
{
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
        throw ParseError("\"" + key + "\" must be a nonnegative integer", 0, 0);
    return static_cast<long>(j[key].get<long long>());
}

std::vector<RatVector> json_vectors(const json& j, const std::string& key, Index n)
{
    std::vector<RatVector> out;
    if (!j.contains(key))
        return out;
    RatMatrix m = json_matrix(j[key], n, "/" + key);
    for (Index i = 0; i < m.rows(); ++i)
        out.push_back(m.row(i).transpose());
    return out;
}

Index checked_index(const Token& t, Index limit, const char* what)
{
    long v = to_count(t, what);
    if (v >= limit)
        throw ParseError(std::string(what) + " " + t.text + " out of range", t.line, t.column);
    return v;
}

}  // namespace

std::string rational_string(const Rational& q)
{
    return q.str();
}

bool looks_like_json(const std::string& text)
{
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        return c == '{';
    }
    return false;
}

bool looks_like_v_file(const std::string& text)
{
    if (looks_like_json(text)) {
        try {
            json j = json::parse(text);
            return j.is_object() && j.value("kind", "") == "v-polyhedron";
        } catch (const json::parse_error&) {
            return false;
        }
    }
    Lexer lx(text);
    return !lx.at_end() && lx.next("").text == "V";
}

RatMatrix parse_matrix(const std::string& text)
{
    if (looks_like_json(text)) try {
        json j = parse_json(text, "matrix");
        return json_matrix(j.at("entries"), json_count(j, "cols"), "/entries");
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 0, 0);
    }
    Lexer lx(text);
    RatMatrix m = read_matrix(lx);
    expect_end(lx);
    return m;
}

HPolyhedron parse_h_polyhedron(const std::string& text)
{
    if (looks_like_json(text)) try {
        json j = parse_json(text, "h-polyhedron");
        const long n = json_count(j, "dim");
        RatMatrix a = json_matrix(j.at("a"), n, "/a");
        RatVector b = json_vector(j.at("b"), "/b");
        if (b.size() != a.rows())
            throw ParseError("/b: length differs from the number of rows of /a", 0, 0);
        return HPolyhedron(a, b);
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 0, 0);
    }
    Lexer lx(text);
    RatMatrix a = read_matrix(lx);
    RatVector b(a.rows());
    for (Index i = 0; i < a.rows(); ++i)
        b(i) = to_rational(lx.next("right-hand side entry"));
    expect_end(lx);
    return HPolyhedron(a, b);
}

VPolyhedron parse_v_polyhedron(const std::string& text)
{
    VPolyhedron v;
    if (looks_like_json(text)) try {
        json j = parse_json(text, "v-polyhedron");
        v.ambient = json_count(j, "dim");
        v.vertices = json_vectors(j, "vertices", v.ambient);
        v.rays = json_vectors(j, "rays", v.ambient);
        v.lineality = json_vectors(j, "lineality", v.ambient);
        return v;
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 0, 0);
    }
    Lexer lx(text);
    expect_keyword(lx, "V");
    v.ambient = to_count(lx.next("dimension"), "dimension");
    v.vertices = read_block(lx, "vertices", v.ambient);
    v.rays = read_block(lx, "rays", v.ambient);
    v.lineality = read_block(lx, "lineality", v.ambient);
    expect_end(lx);
    if (v.vertices.empty() && (!v.rays.empty() || !v.lineality.empty()))
        throw ParseError("a V-polyhedron with rays needs at least one vertex", 0, 0);
    return v;
}

HPolyhedron parse_polyhedron(const std::string& text)
{
    if (looks_like_v_file(text))
        return v_to_h(parse_v_polyhedron(text));
    return parse_h_polyhedron(text);
}

Graph parse_graph(const std::string& text)
{
    try {
        if (looks_like_json(text)) {
            json j = parse_json(text, "graph");
            const long n = json_count(j, "vertices");
            std::vector<Edge> edges;
            for (const auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 2)
                    throw ParseError("/edges: each edge is a pair of vertices", 0, 0);
                edges.emplace_back(e[0].get<long>(), e[1].get<long>());
            }
            return make_graph(n, std::move(edges));
        }
        Lexer lx(text);
        const long n = to_count(lx.next("vertex count"), "vertex count");
        std::vector<Edge> edges;
        while (!lx.at_end()) {
            Token u = lx.next("edge endpoint");
            Token w = lx.next("edge endpoint");
            edges.emplace_back(checked_index(u, n, "vertex"), checked_index(w, n, "vertex"));
        }
        return make_graph(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0, 0);
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 0, 0);
    }
}

Clutter parse_clutter(const std::string& text)
{
    try {
        if (looks_like_json(text)) {
            json j = parse_json(text, "clutter");
            const long n = json_count(j, "ground");
            std::vector<IndexSet> members;
            for (const auto& m : j.at("members"))
                members.push_back(m.get<IndexSet>());
            return make_clutter(n, std::move(members));
        }
        Lexer lx(text);
        auto first = lx.line_tokens();
        if (first.size() != 1)
            throw ParseError("first line must hold the ground set size", first.empty() ? 1 : first[0].line,
                             first.empty() ? 1 : first[0].column);
        const long n = to_count(first[0], "ground set size");
        std::vector<IndexSet> members;
        for (auto line = lx.line_tokens(); !line.empty(); line = lx.line_tokens()) {
            IndexSet m;
            for (const auto& t : line)
                m.push_back(checked_index(t, n, "element"));
            std::sort(m.begin(), m.end());
            for (const auto& prev : members)
                if (std::includes(m.begin(), m.end(), prev.begin(), prev.end())
                    || std::includes(prev.begin(), prev.end(), m.begin(), m.end()))
                    throw ParseError("member contains or is contained in an earlier member",
                                     line[0].line, line[0].column);
            members.push_back(std::move(m));
        }
        return make_clutter(n, std::move(members));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0, 0);
    } catch (const json::exception& e) {
        throw ParseError(e.what(), 0, 0);
    }
}

std::string format_matrix(const RatMatrix& m)
{
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j)
            out << (j ? " " : "") << rational_string(m(i, j));
        out << '\n';
    }
    return out.str();
}

std::string format_h_polyhedron(const HPolyhedron& p)
{
    std::ostringstream out;
    out << format_matrix(p.a);
    for (Index i = 0; i < p.b.size(); ++i)
        out << (i ? " " : "") << rational_string(p.b(i));
    out << '\n';
    return out.str();
}

std::string format_v_polyhedron(const VPolyhedron& v)
{
    std::ostringstream out;
    out << "V " << v.ambient << '\n';
    auto block = [&](const char* name, const std::vector<RatVector>& vs) {
        out << name << ' ' << vs.size() << '\n';
        for (const auto& x : vs) {
            for (Index j = 0; j < x.size(); ++j)
                out << (j ? " " : "") << rational_string(x(j));
            out << '\n';
        }
    };
    block("vertices", v.vertices);
    block("rays", v.rays);
    block("lineality", v.lineality);
    return out.str();
}

std::string format_graph(const Graph& g)
{
    std::ostringstream out;
    out << g.vertices << '\n';
    for (const auto& [u, v] : g.edges)
        out << u << ' ' << v << '\n';
    return out.str();
}

std::string format_clutter(const Clutter& c)
{
    std::ostringstream out;
    out << c.ground << '\n';
    for (const auto& m : c.members) {
        for (std::size_t i = 0; i < m.size(); ++i)
            out << (i ? " " : "") << m[i];
        out << '\n';
    }
    return out.str();
}

json vector_json(const RatVector& v)
{
    json j = json::array();
    for (Index i = 0; i < v.size(); ++i)
        j.push_back(rational_string(v(i)));
    return j;
}

json matrix_json(const RatMatrix& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i)
        rows.push_back(vector_json(m.row(i).transpose()));
    return {{"schema", 1}, {"kind", "matrix"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

json h_polyhedron_json(const HPolyhedron& p)
{
    return {{"schema", 1},
            {"kind", "h-polyhedron"},
            {"dim", p.ambient_dim()},
            {"a", matrix_json(p.a)["entries"]},
            {"b", vector_json(p.b)}};
}

json v_polyhedron_json(const VPolyhedron& v)
{
    auto list = [](const std::vector<RatVector>& vs) {
        json j = json::array();
        for (const auto& x : vs)
            j.push_back(vector_json(x));
        return j;
    };
    return {{"schema", 1},
            {"kind", "v-polyhedron"},
            {"dim", v.ambient},
            {"vertices", list(v.vertices)},
            {"rays", list(v.rays)},
            {"lineality", list(v.lineality)}};
}

json graph_json(const Graph& g)
{
    json edges = json::array();
    for (const auto& [u, v] : g.edges)
        edges.push_back({u, v});
    return {{"schema", 1}, {"kind", "graph"}, {"vertices", g.vertices}, {"edges", edges}};
}

json clutter_json(const Clutter& c)
{
    return {{"schema", 1}, {"kind", "clutter"}, {"ground", c.ground}, {"members", c.members}};
}

}  // namespace boxtdi
