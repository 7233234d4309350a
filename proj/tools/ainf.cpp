#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ainf/bar_cobar.hpp"
#include "ainf/fixture.hpp"
#include "ainf/path_algebra.hpp"
#include "ainf/pipeline.hpp"
#include "ainf/report.hpp"
#include "ainf/transfer.hpp"

using namespace ainf;

namespace {

struct Flags {
    std::string file;
    std::string field;
    std::optional<std::size_t> max_word_len;
    std::string degree_window;
    std::string format = "text";
    std::optional<std::uint64_t> seed;
    int max_arity = 8;
    std::string of = "envelope";
};

struct Output {
    std::ostringstream text;
    json data = json::object();
    bool ok = true;

    void line(const std::string& k, const std::string& v) { text << k << ": " << v << '\n'; }
    void check(const std::string& k, bool pass)
    {
        line(k, pass ? "pass" : "fail");
        data["checks"][k] = pass;
        ok &= pass;
    }
};

struct Context {
    Flags flags;
    FixtureDocument doc;
    std::shared_ptr<const AInfinityStructure> a;
    std::optional<WordBound> bound;
    std::string name;

    const std::vector<std::string>& vertices() const { return doc.quiver.vertices(); }
    std::string table(const DimTable& t) const { return table_str(t, vertices()); }
    json table_j(const DimTable& t) const { return table_json(t, vertices()); }
    MinimalModelOptions mmo() const { return {flags.seed, flags.max_arity}; }
};

Context load(const Flags& f)
{
    Context c;
    c.flags = f;
    std::ifstream in(f.file, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + f.file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    ParseOptions po;
    if (!f.field.empty())
        po.field = Field::parse(f.field);
    c.doc = parse_fixture(ss.str(), po);
    c.a = std::make_shared<const AInfinityStructure>(c.doc.algebra);
    if (f.max_word_len || !f.degree_window.empty()) {
        WordBound b;
        b.max_length = f.max_word_len;
        if (!f.degree_window.empty()) {
            auto colon = f.degree_window.find(':');
            if (colon == std::string::npos)
                throw InputError("--degree-window expects <lo>:<hi>");
            try {
                std::size_t p1 = 0, p2 = 0;
                std::string los = f.degree_window.substr(0, colon), his = f.degree_window.substr(colon + 1);
                int lo = std::stoi(los, &p1), hi = std::stoi(his, &p2);
                if (p1 != los.size() || p2 != his.size() || lo > hi)
                    throw std::invalid_argument("window");
                b.degrees = DegreeWindow{lo, hi};
            } catch (const std::exception&) {
                throw InputError("--degree-window expects integers <lo>:<hi> with lo <= hi");
            }
        }
        c.bound = b;
    }
    auto slash = f.file.find_last_of('/');
    c.name = slash == std::string::npos ? f.file : f.file.substr(slash + 1);
    return c;
}

void header(const Context& c, Output& o, const std::string& command)
{
    o.line("fixture", c.name);
    o.line("field", c.a->field.name());
    if (c.doc.bound)
        o.line("path bound", c.doc.bound->str());
    if (c.bound)
        o.line("word bound", c.bound->str());
    o.data["command"] = command;
    o.data["fixture"] = c.name;
    o.data["field"] = c.a->field.name();
    o.data["path_bound"] = c.doc.bound ? c.doc.bound->str() : "none";
    o.data["word_bound"] = c.bound ? c.bound->str() : "none";
}

void space_info(const Context& c, Output& o, const std::string& key, const GradedBimodule& s)
{
    DimTable t = s.dim_table();
    o.line(key + " dim", std::to_string(s.size()));
    o.line(key + " degrees", degree_dims_str(t));
    o.line(key + " table", c.table(t));
    o.data[key] = {{"dim", s.size()}, {"table", c.table_j(t)}};
}

void verdict(Output& o, const std::string& key, const Verdict& v, const GradedBimodule& s)
{
    o.line(key, verdict_line(v));
    if (!v.note.empty())
        o.text << "  note: " << v.note << '\n';
    o.text << failure_lines(v, s);
    o.data["verdicts"][key] = verdict_json(v, s);
    o.ok &= v.pass;
}

void cmd_check(const Context& c, Output& o)
{
    header(c, o, "check");
    o.line("dim", std::to_string(c.a->dim()));
    o.line("arity max", std::to_string(c.a->arity_max()));
    o.data["dim"] = c.a->dim();
    o.data["arity_max"] = c.a->arity_max();
    verdict(o, "Stasheff", stasheff_check(*c.a), c.a->space);
    verdict(o, "strict unitality", unitality_check(*c.a), c.a->space);
    verdict(o, "augmentation", augmentation_check(*c.a), c.a->space);
    for (const auto& m : c.doc.modules) {
        AInfinityModule mod = m.kind == "regular" ? regular_module(c.a) : augmentation_module(c.a);
        verdict(o, "module " + m.name, module_stasheff_check(mod), c.a->space);
    }
}

void cmd_bar(const Context& c, Output& o)
{
    header(c, o, "bar");
    DgCoalgebra ba = bar_construct_raw(*c.a, c.bound);
    space_info(c, o, "BA", ba.space);
    o.line("truncated", ba.truncated ? "yes" : "no");
    o.data["truncated"] = ba.truncated;
    o.check("d^2 = 0", squares_to_zero(ba));
    verdict(o, "coderivation", check_coderivation(ba), ba.space);
    verdict(o, "coassociativity", check_coassociativity(ba), ba.space);
}

std::shared_ptr<const AInfinityStructure> envelope(const Context& c, Output& o)
{
    DgCoalgebra ba = bar_construct_raw(*c.a, c.bound);
    bool sq = squares_to_zero(ba);
    o.check("bar d^2 = 0", sq);
    if (!sq)
        return nullptr;
    return std::make_shared<const AInfinityStructure>(cobar_construct(ba, c.bound));
}

void cmd_cobar(const Context& c, Output& o)
{
    header(c, o, "cobar");
    auto u = envelope(c, o);
    if (!u)
        return;
    space_info(c, o, "U", u->space);
    verdict(o, "dg algebra", stasheff_check(*u, false), u->space);
    verdict(o, "strict unitality", unitality_check(*u), u->space);
}

void compare(const Context& c, Output& o, const std::string& key, const DimTable& got, const DimTable& want)
{
    auto cmp = compare_graded_dims(got, want);
    o.check(key, cmp.pass);
    for (const auto& d : cmp.diff) {
        const auto& [s, t, deg] = d.key;
        o.text << "  (" << c.vertices()[static_cast<std::size_t>(s)] << ',' << c.vertices()[static_cast<std::size_t>(t)]
               << ',' << deg << "): " << d.left << " vs " << d.right << '\n';
    }
}

void cmd_envelope(const Context& c, Output& o)
{
    header(c, o, "envelope");
    auto u = envelope(c, o);
    if (!u)
        return;
    space_info(c, o, "U", u->space);
    auto h = homology(underlying_complex(*u));
    o.line("H(U) degrees", degree_dims_str(h.table));
    o.line("H(U) table", c.table(h.table));
    o.data["H(U)"] = c.table_j(h.table);
    compare(c, o, "H(U) vs kQ", h.table, c.a->space.dim_table());
    auto m = check_multiplicative_match(homology_algebra(u, c.mmo()), *c.a);
    o.check("multiplicative match", m.pass);
    if (!m.pass)
        o.line("  obstruction", m.obstruction);
    json corr = json::array();
    for (const auto& [x, y] : m.correspondence) {
        o.text << "  " << x << " -> " << y << '\n';
        corr.push_back({x, y});
    }
    o.data["correspondence"] = corr;
}

std::shared_ptr<const AInfinityStructure> koszul_dual(const Context& c, Output& o)
{
    auto u = envelope(c, o);
    if (!u)
        return nullptr;
    DgCoalgebra bu = bar_construct_raw(*u, c.bound);
    o.line("BU dim", std::to_string(bu.dim()));
    o.data["BU"] = {{"dim", bu.dim()}};
    bool sq = squares_to_zero(bu);
    o.check("BU d^2 = 0", sq);
    if (!sq)
        return nullptr;
    return std::make_shared<const AInfinityStructure>(graded_dual_algebra(bu));
}

void cmd_koszul_dual(const Context& c, Output& o)
{
    header(c, o, "koszul-dual");
    auto d = koszul_dual(c, o);
    if (!d)
        return;
    space_info(c, o, "U*", d->space);
    verdict(o, "dg algebra", stasheff_check(*d, false), d->space);
    verdict(o, "strict unitality", unitality_check(*d), d->space);
    auto h = homology(underlying_complex(*d));
    o.line("H(U*) total", std::to_string(h.total()));
    o.line("H(U*) table", c.table(h.table));
    o.data["H(U*)"] = c.table_j(h.table);
    compare(c, o, "H(U*) vs R + D(V)[-1]", h.table, koszul_dual_shape(c.doc.quiver));
}

std::shared_ptr<const AInfinityStructure> target(const Context& c, Output& o, const std::string& of)
{
    if (of == "algebra")
        return c.a;
    if (of == "envelope")
        return envelope(c, o);
    if (of == "koszul-dual")
        return koszul_dual(c, o);
    throw InputError("--of expects algebra, envelope, koszul-dual, bar or twisted; got '" + of + "'");
}

void cmd_homology(const Context& c, Output& o)
{
    header(c, o, "homology");
    o.line("of", c.flags.of);
    o.data["of"] = c.flags.of;
    std::optional<ChainComplexView> cx;
    if (c.flags.of == "bar") {
        DgCoalgebra ba = bar_construct_raw(*c.a, c.bound);
        bool sq = squares_to_zero(ba);
        o.check("d^2 = 0", sq);
        if (sq)
            cx = ba.complex();
    } else if (c.flags.of == "twisted") {
        auto u = envelope(c, o);
        if (u) {
            auto tw = twisted_tensor(*u, c.bound);
            bool sq = tw.square_zero();
            o.check("d^2 = 0", sq);
            if (sq)
                cx = tw.complex;
        }
    } else {
        auto s = target(c, o, c.flags.of);
        if (s) {
            bool dg = stasheff_check(*s, false).pass;
            o.check("d^2 = 0", dg);
            if (dg)
                cx = underlying_complex(*s);
        }
    }
    if (!cx)
        return;
    auto h = homology(*cx);
    o.line("complex dim", std::to_string(cx->size()));
    o.line("total", std::to_string(h.total()));
    o.line("degrees", degree_dims_str(h.table));
    o.line("table", c.table(h.table));
    o.data["complex_dim"] = cx->size();
    o.data["total"] = h.total();
    o.data["table"] = c.table_j(h.table);
}

void cmd_minimal_model(const Context& c, Output& o)
{
    header(c, o, "minimal-model");
    o.line("of", c.flags.of);
    o.data["of"] = c.flags.of;
    auto s = target(c, o, c.flags.of);
    if (!s)
        return;
    auto mm = minimal_model(s, c.mmo());
    const auto& m = *mm.model;
    space_info(c, o, "A'", m.space);
    o.line("arity cutoff", std::to_string(mm.arity_cutoff) + " (" + mm.cutoff_reason + ")");
    o.line("truncated", mm.truncated ? "yes" : "no");
    o.data["arity_cutoff"] = mm.arity_cutoff;
    o.data["cutoff_reason"] = mm.cutoff_reason;
    o.data["truncated"] = mm.truncated;
    verdict(o, "contraction", mm.contraction.verify(), mm.contraction.complex.space);
    verdict(o, "Stasheff", stasheff_check(m), m.space);
    verdict(o, "strict unitality", unitality_check(m), m.space);
    verdict(o, "morphism", morphism_check(mm.morphism), m.space);
    o.check("f1 quasi-isomorphism", first_component_is_quasi_iso(mm));
    json higher = json::array();
    for (const auto& [n, tab] : m.ops) {
        if (n < 3)
            continue;
        for (const auto& [t, v] : tab) {
            std::string lhs = "m" + std::to_string(n) + tuple_str(m.space, t);
            std::string rhs = v.str(&m.space.labels());
            o.text << "  " << lhs << " = " << rhs << '\n';
            higher.push_back({lhs, rhs});
        }
    }
    o.data["higher_operations"] = higher;
}

void cmd_resolution(const Context& c, Output& o)
{
    header(c, o, "resolution");
    auto res = canonical_resolution(c.doc.quiver, c.doc.bound, c.a->field);
    auto ex = check_resolution(res);
    o.line("V (x) kQ dim", std::to_string(res.vkq.size()));
    o.line("kQ dim", std::to_string(res.kq.size()));
    o.line("R dim", std::to_string(res.r.size()));
    o.data["dims"] = {res.vkq.size(), res.kq.size(), res.r.size()};
    auto slot_tables = [&](const std::map<int, DimTable>& m, const std::string& key) {
        json j = json::object();
        for (const auto& [slot, t] : m) {
            o.line(key + " slot " + std::to_string(slot), c.table(t));
            j[std::to_string(slot)] = c.table_j(t);
        }
        o.data[key] = j;
    };
    slot_tables(ex.augmented, "H augmented");
    slot_tables(ex.unaugmented, "H unaugmented");
    o.check("exact", ex.exact);
    o.check("resolves R", ex.resolves_r);
}

int cmd_verify(const Context& c, std::ostream& out)
{
    PipelineOptions po;
    po.fixture_name = c.name;
    po.bound = c.bound;
    po.path_bound = c.doc.bound;
    po.seed = c.flags.seed;
    po.max_arity = c.flags.max_arity;
    auto r = verify_theorem(*c.a, c.doc.quiver, po);
    if (c.flags.format == "structured")
        out << report_json(r).dump(2) << '\n';
    else
        out << report_text(r);
    return (r.verdict == "pass" || r.verdict == "consistent up to truncation") ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"A-infinity structures over path algebras: verifiers, bar/cobar, Koszul duality"};
    app.require_subcommand(1);
    Flags f;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"check", "Stasheff identities, strict unitality and augmentation"},
        {"bar", "bar construction BA"},
        {"cobar", "cobar construction of BA"},
        {"envelope", "enveloping algebra U and its homology against kQ"},
        {"koszul-dual", "D(BU) and its homology"},
        {"homology", "homology of a derived complex"},
        {"minimal-model", "homotopy transfer to a minimal model"},
        {"resolution", "canonical resolution of R over kQ"},
        {"verify-theorem", "the full verification pipeline"},
    };
    for (const auto& [name, desc] : commands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("fixture", f.file, "fixture file")->required();
        sub->add_option("--field", f.field, "q or fp:<prime>");
        sub->add_option("--max-word-len", f.max_word_len, "bar/cobar word length bound");
        sub->add_option("--degree-window", f.degree_window, "bar/cobar word degree window <lo>:<hi>");
        sub->add_option("--format", f.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
        sub->add_option("--seed", f.seed, "contraction randomization seed");
        sub->add_option("--max-arity", f.max_arity, "largest transferred arity");
        if (name == "homology" || name == "minimal-model")
            sub->add_option("--of", f.of, "algebra | envelope | koszul-dual (homology also: bar | twisted)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    std::string command = app.get_subcommands().front()->get_name();
    try {
        Context c = load(f);
        if (command == "verify-theorem")
            return cmd_verify(c, std::cout);
        Output o;
        if (command == "check")
            cmd_check(c, o);
        else if (command == "bar")
            cmd_bar(c, o);
        else if (command == "cobar")
            cmd_cobar(c, o);
        else if (command == "envelope")
            cmd_envelope(c, o);
        else if (command == "koszul-dual")
            cmd_koszul_dual(c, o);
        else if (command == "homology")
            cmd_homology(c, o);
        else if (command == "minimal-model")
            cmd_minimal_model(c, o);
        else if (command == "resolution")
            cmd_resolution(c, o);
        o.data["pass"] = o.ok;
        if (f.format == "structured")
            std::cout << o.data.dump(2) << '\n';
        else
            std::cout << o.text.str() << "result: " << (o.ok ? "pass" : "fail") << '\n';
        return o.ok ? 0 : 1;
    } catch (const FixtureError& e) {
        for (const auto& d : e.diagnostics())
            std::cerr << f.file << ':' << d.str() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const StructureError& e) {
        std::cerr << "structure error: " << e.what() << '\n';
        return 1;
    }
}
