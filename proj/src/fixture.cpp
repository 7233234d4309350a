#include "ainf/fixture.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "ainf/path_algebra.hpp"

namespace ainf {

std::string code_name(DiagnosticCode c)
{
    switch (c) {
    case DiagnosticCode::syntax: return "E001 syntax";
    case DiagnosticCode::unknown_keyword: return "E002 unknown-keyword";
    case DiagnosticCode::unknown_vertex: return "E003 unknown-vertex";
    case DiagnosticCode::unknown_arrow: return "E004 unknown-arrow";
    case DiagnosticCode::non_composable_path: return "E005 non-composable-path";
    case DiagnosticCode::path_outside_bound: return "E006 path-outside-bound";
    case DiagnosticCode::non_composable_tuple: return "E007 non-composable-tuple";
    case DiagnosticCode::block_mismatch: return "E008 block-mismatch";
    case DiagnosticCode::degree_rule: return "E009 degree-rule";
    case DiagnosticCode::duplicate: return "E010 duplicate";
    case DiagnosticCode::no_vertices: return "E011 no-vertices";
    case DiagnosticCode::bad_scalar: return "E012 bad-scalar";
    case DiagnosticCode::unit_argument: return "E013 unit-argument";
    case DiagnosticCode::non_positive_degree: return "E014 non-positive-degree";
    case DiagnosticCode::cyclic_without_bound: return "E015 cyclic-without-bound";
    }
    return "E000 unknown";
}

std::string Diagnostic::str() const
{
    return std::to_string(line) + ":" + std::to_string(column) + ": error " + code_name(code) + ": " + message;
}

namespace {

std::string join_diags(const std::vector<Diagnostic>& d)
{
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? "\n" : "") + d[i].str();
    return s;
}

struct Token {
    std::string text;
    std::size_t col = 0;
};

struct Line {
    std::size_t no = 0;
    std::vector<Token> toks;
};

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    std::size_t no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++no;
        if (auto h = raw.find('#'); h != std::string_view::npos)
            raw = raw.substr(0, h);
        Line l{no, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r'))
                ++i;
            if (i >= raw.size())
                break;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r')
                ++j;
            l.toks.push_back({std::string(raw.substr(i, j - i)), i + 1});
            i = j;
        }
        if (!l.toks.empty())
            out.push_back(std::move(l));
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return out;
}

std::optional<long> to_int(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return std::nullopt;
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            return std::nullopt;
    try {
        return std::stol(s);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts) : lines_(tokenize(text)), opts_(opts) {}

    FixtureDocument run()
    {
        std::vector<const Line*> vertices, arrows, ms, fields, bounds, rings, unitals, modules;
        for (const Line& l : lines_) {
            const std::string& k = l.toks[0].text;
            if (k == "vertices")
                vertices.push_back(&l);
            else if (k == "arrow")
                arrows.push_back(&l);
            else if (k == "m" || (k.size() > 1 && k[0] == 'm' && to_int(k.substr(1))))
                ms.push_back(&l);
            else if (k == "field")
                fields.push_back(&l);
            else if (k == "bound")
                bounds.push_back(&l);
            else if (k == "ring")
                rings.push_back(&l);
            else if (k == "unital")
                unitals.push_back(&l);
            else if (k == "module")
                modules.push_back(&l);
            else
                error(DiagnosticCode::unknown_keyword, l, l.toks[0], "unknown keyword '" + k + "'");
        }

        single(fields, "field");
        single(bounds, "bound");
        single(rings, "ring");
        single(unitals, "unital");
        single(vertices, "vertices");

        doc_.field = Field::rationals();
        if (!fields.empty())
            parse_field(*fields[0]);
        if (opts_.field)
            doc_.field = *opts_.field;
        if (!rings.empty())
            parse_choice(*rings[0], {"vertices", "field"},
                         [&](const std::string& v) { doc_.ring = v == "field" ? GroundRing::field : GroundRing::vertices; });
        if (!unitals.empty())
            parse_choice(*unitals[0], {"strict", "none"}, [&](const std::string& v) { doc_.strict_unital = v == "strict"; });
        if (!bounds.empty())
            parse_bound(*bounds[0]);
        for (const Line* l : modules)
            parse_module(*l);

        if (vertices.empty() || vertices[0]->toks.size() == 1) {
            Diagnostic d{DiagnosticCode::no_vertices, vertices.empty() ? 1 : vertices[0]->no, 1, "no vertices"};
            diags_.push_back(d);
            fail();
        }
        parse_vertices(*vertices[0]);
        for (const Line* l : arrows)
            parse_arrow(*l);
        fail_if_any();
        doc_.quiver = GradedQuiver(names_, arrows_);
        if (!doc_.quiver.is_acyclic() && !doc_.bound) {
            diags_.push_back({DiagnosticCode::cyclic_without_bound, arrows.back()->no, 1,
                              "the quiver has a directed cycle; a bound line is required"});
            fail();
        }
        try {
            doc_.algebra = path_algebra(doc_.quiver, doc_.bound, doc_.field);
        } catch (const InputError& e) {
            diags_.push_back({DiagnosticCode::syntax, bounds.empty() ? 1 : bounds[0]->no, 1, e.what()});
            fail();
        }
        doc_.algebra.ring = doc_.ring;
        std::set<Tuple> seen;
        for (const Line* l : ms)
            parse_m(*l, seen);
        fail_if_any();
        return std::move(doc_);
    }

private:
    std::vector<Line> lines_;
    ParseOptions opts_;
    std::vector<Diagnostic> diags_;
    FixtureDocument doc_;
    std::vector<std::string> names_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> vindex_;
    std::map<std::string, int> aindex_;

    [[noreturn]] void fail() { throw FixtureError(diags_); }
    void fail_if_any()
    {
        if (!diags_.empty())
            fail();
    }
    void error(DiagnosticCode c, const Line& l, const Token& t, std::string msg)
    {
        diags_.push_back({c, l.no, t.col, std::move(msg)});
    }
    Token end_of(const Line& l) const
    {
        const Token& t = l.toks.back();
        return {"", t.col + t.text.size()};
    }

    void single(const std::vector<const Line*>& ls, const std::string& what)
    {
        for (std::size_t i = 1; i < ls.size(); ++i)
            error(DiagnosticCode::duplicate, *ls[i], ls[i]->toks[0],
                  "duplicate '" + what + "' line (first on line " + std::to_string(ls[0]->no) + ")");
    }

    void parse_field(const Line& l)
    {
        try {
            if (l.toks.size() == 2)
                doc_.field = Field::parse(l.toks[1].text);
            else if (l.toks.size() == 3 && l.toks[1].text == "fp")
                doc_.field = Field::parse("fp:" + l.toks[2].text);
            else
                error(DiagnosticCode::syntax, l, l.toks[0], "expected 'field q' or 'field fp <prime>'");
        } catch (const InputError& e) {
            error(DiagnosticCode::syntax, l, l.toks[1], e.what());
        }
    }

    template <typename F>
    void parse_choice(const Line& l, std::vector<std::string> allowed, F set)
    {
        if (l.toks.size() != 2 || std::find(allowed.begin(), allowed.end(), l.toks[1].text) == allowed.end()) {
            error(DiagnosticCode::syntax, l, l.toks.size() > 1 ? l.toks[1] : end_of(l),
                  "expected '" + l.toks[0].text + " " + allowed[0] + "' or '" + l.toks[0].text + " " + allowed[1] + "'");
            return;
        }
        set(l.toks[1].text);
    }

    void parse_bound(const Line& l)
    {
        PathBound b{std::numeric_limits<std::size_t>::max(), 0, INT_MAX / 2};
        bool any = false;
        std::size_t i = 1;
        while (i < l.toks.size()) {
            const std::string& k = l.toks[i].text;
            if (k == "length" && i + 1 < l.toks.size()) {
                auto n = to_int(l.toks[i + 1].text);
                if (!n || *n < 0) {
                    error(DiagnosticCode::syntax, l, l.toks[i + 1], "length must be a nonnegative integer");
                    return;
                }
                b.max_length = static_cast<std::size_t>(*n);
                i += 2;
            } else if (k == "degree" && i + 2 < l.toks.size()) {
                auto lo = to_int(l.toks[i + 1].text), hi = to_int(l.toks[i + 2].text);
                if (!lo || !hi || *lo > *hi) {
                    error(DiagnosticCode::syntax, l, l.toks[i + 1], "degree window must be two integers lo <= hi");
                    return;
                }
                b.min_degree = static_cast<int>(*lo);
                b.max_degree = static_cast<int>(*hi);
                i += 3;
            } else {
                error(DiagnosticCode::syntax, l, l.toks[i], "expected 'length <n>' or 'degree <lo> <hi>'");
                return;
            }
            any = true;
        }
        if (!any) {
            error(DiagnosticCode::syntax, l, end_of(l), "empty bound");
            return;
        }
        doc_.bound = b;
    }

    void parse_module(const Line& l)
    {
        if (l.toks.size() != 3 || (l.toks[2].text != "regular" && l.toks[2].text != "augmentation")) {
            error(DiagnosticCode::syntax, l, l.toks.size() > 2 ? l.toks[2] : end_of(l),
                  "expected 'module <name> regular|augmentation'");
            return;
        }
        for (const auto& m : doc_.modules)
            if (m.name == l.toks[1].text) {
                error(DiagnosticCode::duplicate, l, l.toks[1], "duplicate module '" + m.name + "'");
                return;
            }
        doc_.modules.push_back({l.toks[1].text, l.toks[2].text});
    }

    void parse_vertices(const Line& l)
    {
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
            const std::string& v = l.toks[i].text;
            if (v.find_first_of("*+=") != std::string::npos) {
                error(DiagnosticCode::syntax, l, l.toks[i], "invalid vertex name '" + v + "'");
                continue;
            }
            if (vindex_.count(v)) {
                error(DiagnosticCode::duplicate, l, l.toks[i], "duplicate vertex '" + v + "'");
                continue;
            }
            vindex_[v] = static_cast<int>(names_.size());
            names_.push_back(v);
        }
    }

    void parse_arrow(const Line& l)
    {
        // arrow NAME S -> T [deg D]
        const auto& t = l.toks;
        if (t.size() != 5 && t.size() != 7) {
            error(DiagnosticCode::syntax, l, t.size() > 1 ? t[1] : end_of(l), "expected 'arrow <name> <s> -> <t> deg <d>'");
            return;
        }
        if (t[3].text != "->") {
            error(DiagnosticCode::syntax, l, t[3], "expected '->'");
            return;
        }
        const std::string& name = t[1].text;
        bool bad_name = name.find_first_of("*+=") != std::string::npos || to_int(name).has_value();
        if (!bad_name && name.size() > 1 && name[0] == 'e' && vindex_.count(name.substr(1)))
            bad_name = true;
        if (bad_name) {
            error(DiagnosticCode::syntax, l, t[1], "invalid arrow name '" + name + "'");
            return;
        }
        if (aindex_.count(name)) {
            error(DiagnosticCode::duplicate, l, t[1], "duplicate arrow '" + name + "'");
            return;
        }
        Arrow a;
        a.name = name;
        bool ok = true;
        for (std::size_t k : {std::size_t(2), std::size_t(4)}) {
            auto it = vindex_.find(t[k].text);
            if (it == vindex_.end()) {
                error(DiagnosticCode::unknown_vertex, l, t[k], "unknown vertex '" + t[k].text + "'");
                ok = false;
            } else {
                (k == 2 ? a.source : a.target) = it->second;
            }
        }
        if (t.size() == 7) {
            if (t[5].text != "deg") {
                error(DiagnosticCode::syntax, l, t[5], "expected 'deg'");
                return;
            }
            auto d = to_int(t[6].text);
            if (!d) {
                error(DiagnosticCode::syntax, l, t[6], "degree must be an integer");
                return;
            }
            if (*d < 1) {
                error(DiagnosticCode::non_positive_degree, l, t[6], "arrow '" + name + "' has degree " + t[6].text + " < 1");
                return;
            }
            a.degree = static_cast<int>(*d);
        }
        if (!ok)
            return;
        aindex_[name] = static_cast<int>(arrows_.size());
        arrows_.push_back(a);
    }

    // Path token -> basis index of the algebra.
    std::optional<std::size_t> path(const Line& l, const Token& tok)
    {
        const std::string& s = tok.text;
        const GradedBimodule& sp = doc_.algebra.space;
        if (s.size() > 1 && s[0] == 'e' && s.find('*') == std::string::npos && !aindex_.count(s)) {
            if (!vindex_.count(s.substr(1))) {
                error(DiagnosticCode::unknown_vertex, l, tok, "unknown vertex in trivial path '" + s + "'");
                return std::nullopt;
            }
            auto i = sp.find(s);
            if (!i)
                error(DiagnosticCode::path_outside_bound, l, tok, "path '" + s + "' lies outside the bound");
            return i;
        }
        std::vector<int> word;
        std::size_t start = 0;
        while (true) {
            std::size_t star = s.find('*', start);
            std::string part = s.substr(start, star == std::string::npos ? std::string::npos : star - start);
            auto it = aindex_.find(part);
            if (it == aindex_.end()) {
                error(DiagnosticCode::unknown_arrow, l, {part, tok.col + start},
                      part.empty() ? "empty arrow name in '" + s + "'" : "unknown arrow '" + part + "'");
                return std::nullopt;
            }
            word.push_back(it->second);
            if (star == std::string::npos)
                break;
            start = star + 1;
        }
        for (std::size_t i = 0; i + 1 < word.size(); ++i)
            if (arrows_[static_cast<std::size_t>(word[i])].source != arrows_[static_cast<std::size_t>(word[i + 1])].target) {
                error(DiagnosticCode::non_composable_path, l, tok,
                      "'" + s + "' is not a path: source of " + arrows_[static_cast<std::size_t>(word[i])].name +
                          " is not the target of " + arrows_[static_cast<std::size_t>(word[i + 1])].name);
                return std::nullopt;
            }
        auto i = sp.find(s);
        if (!i)
            error(DiagnosticCode::path_outside_bound, l, tok, "path '" + s + "' lies outside the bound");
        return i;
    }

    void parse_m(const Line& l, std::set<Tuple>& seen)
    {
        const auto& t = l.toks;
        std::size_t i = 1;
        std::optional<long> n;
        if (t[0].text == "m") {
            if (t.size() < 2 || !(n = to_int(t[1].text))) {
                error(DiagnosticCode::syntax, l, t.size() > 1 ? t[1] : end_of(l), "expected arity after 'm'");
                return;
            }
            i = 2;
        } else {
            n = to_int(t[0].text.substr(1));
        }
        if (*n < 1) {
            error(DiagnosticCode::syntax, l, t[i - 1], "arity must be at least 1");
            return;
        }
        std::size_t eq = i;
        while (eq < t.size() && t[eq].text != "=")
            ++eq;
        if (eq == t.size()) {
            error(DiagnosticCode::syntax, l, end_of(l), "expected '='");
            return;
        }
        if (eq - i != static_cast<std::size_t>(*n)) {
            error(DiagnosticCode::syntax, l, eq < t.size() ? t[eq] : end_of(l),
                  "m " + std::to_string(*n) + " takes " + std::to_string(*n) + " arguments, got " + std::to_string(eq - i));
            return;
        }
        const AInfinityStructure& a = doc_.algebra;
        const GradedBimodule& sp = a.space;
        Tuple tuple;
        std::vector<const Token*> arg_tok;
        for (std::size_t k = i; k < eq; ++k) {
            auto p = path(l, t[k]);
            if (!p)
                return;
            tuple.push_back(*p);
            arg_tok.push_back(&t[k]);
        }

        if (doc_.strict_unital && *n != 2)
            for (std::size_t j = 0; j < tuple.size(); ++j)
                if (a.unit && a.unit->is_unit(tuple[j])) {
                    error(DiagnosticCode::unit_argument, l, *arg_tok[j],
                          "unit argument '" + arg_tok[j]->text + "' in m " + std::to_string(*n) +
                              " under strict unitality");
                    return;
                }
        if (doc_.ring == GroundRing::vertices)
            for (std::size_t j = 0; j + 1 < tuple.size(); ++j)
                if (!sp.composable(tuple[j], tuple[j + 1])) {
                    error(DiagnosticCode::non_composable_tuple, l, *arg_tok[j + 1],
                          "'" + arg_tok[j]->text + "' and '" + arg_tok[j + 1]->text + "' are not composable");
                    return;
                }

        // Right-hand side: [coeff] path { (+|-) [coeff] path }.
        Vec out;
        std::size_t k = eq + 1;
        if (k == t.size()) {
            error(DiagnosticCode::syntax, l, end_of(l), "missing right-hand side");
            return;
        }
        if (k + 1 == t.size() && t[k].text == "0") {
            k = t.size();
        }
        bool first = true;
        while (k < t.size()) {
            Scalar sign = a.field.one();
            if (!first) {
                if (t[k].text == "-")
                    sign = -sign;
                else if (t[k].text != "+") {
                    error(DiagnosticCode::syntax, l, t[k], "expected '+' between terms");
                    return;
                }
                if (++k == t.size()) {
                    error(DiagnosticCode::syntax, l, end_of(l), "missing term");
                    return;
                }
            }
            first = false;
            Scalar c = a.field.one();
            bool has_coeff = k + 1 < t.size() && t[k + 1].text != "+" && t[k + 1].text != "-";
            if (has_coeff) {
                try {
                    c = a.field.parse_scalar(t[k].text);
                } catch (const InputError& e) {
                    error(DiagnosticCode::bad_scalar, l, t[k], e.what());
                    return;
                }
                ++k;
            } else if (!t[k].text.empty() && (std::isdigit(static_cast<unsigned char>(t[k].text[0])) || t[k].text[0] == '-')) {
                error(DiagnosticCode::syntax, l, t[k], "coefficient without a path");
                return;
            }
            auto p = path(l, t[k]);
            if (!p)
                return;
            int want = -static_cast<int>(*n) + 2;
            for (std::size_t x : tuple)
                want += sp.degree(x);
            if (sp.degree(*p) != want) {
                error(DiagnosticCode::degree_rule, l, t[k],
                      "output degree " + std::to_string(sp.degree(*p)) + " but inputs give " + std::to_string(want));
                return;
            }
            if (doc_.ring == GroundRing::vertices) {
                const BasisTag& o = sp.tag(*p);
                if (o.source != sp.tag(tuple.back()).source || o.target != sp.tag(tuple.front()).target) {
                    error(DiagnosticCode::block_mismatch, l, t[k],
                          "'" + t[k].text + "' is not in the block (" + sp.vertex_name(sp.tag(tuple.back()).source) +
                              ", " + sp.vertex_name(sp.tag(tuple.front()).target) + ") of the inputs");
                    return;
                }
            }
            out.add(*p, sign * c);
            ++k;
        }

        if (!seen.insert(tuple).second) {
            error(DiagnosticCode::duplicate, l, t[0], "duplicate definition of m " + std::to_string(*n) + tuple_str(sp, tuple));
            return;
        }
        doc_.algebra.set_op(tuple, std::move(out));
    }
};

}  // namespace

FixtureError::FixtureError(std::vector<Diagnostic> d) : InputError(join_diags(d)), diags_(std::move(d)) {}

FixtureDocument parse_fixture(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).run(); }

}  // namespace ainf
