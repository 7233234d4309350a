#include "ainf/pipeline.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

#include "ainf/path_algebra.hpp"
#include "ainf/transfer.hpp"

namespace ainf {

namespace {

Vec product(const AInfinityStructure& a, const Vec& x, const Vec& y)
{
    Vec out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) {
            if (!a.composable({i, j}))
                continue;
            if (const Vec* p = a.op({i, j}))
                out.axpy(ci * cj, *p);
        }
    return out;
}

struct Generators {
    std::vector<Vec> idempotent;  // per vertex
    std::vector<std::size_t> ideal;
    std::map<BlockKey, std::vector<std::size_t>> by_block;
};

// Empty optional plus a message when the degree-0 diagonal blocks are not
// spanned by idempotents up to scalars.
std::optional<Generators> generators(const AInfinityStructure& a, const char* side, std::string& why)
{
    Generators g;
    const GradedBimodule& s = a.space;
    std::vector<std::vector<std::size_t>> diag(s.vertex_count());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const BasisTag& t = s.tag(i);
        if (t.degree == 0 && t.source == t.target)
            diag[static_cast<std::size_t>(t.source)].push_back(i);
        else
            g.ideal.push_back(i);
    }
    for (std::size_t v = 0; v < diag.size(); ++v) {
        if (diag[v].size() != 1) {
            why = std::string(side) + ": degree-0 block at vertex " + s.vertex_name(static_cast<int>(v)) + " has dimension " +
                  std::to_string(diag[v].size());
            return std::nullopt;
        }
        std::size_t e = diag[v][0];
        Vec sq = product(a, Vec::unit(e, a.field.one()), Vec::unit(e, a.field.one()));
        Scalar lam = sq.coeff(e);
        if (lam.is_zero() || sq.size() != 1) {
            why = std::string(side) + ": no idempotent at vertex " + s.vertex_name(static_cast<int>(v));
            return std::nullopt;
        }
        g.idempotent.push_back(Vec::unit(e, lam.inverse()));
    }
    std::sort(g.ideal.begin(), g.ideal.end());
    Echelon dec;
    for (std::size_t x : g.ideal)
        for (std::size_t y : g.ideal)
            if (s.composable(x, y))
                if (const Vec* p = a.op({x, y}))
                    dec.insert(*p);
    for (std::size_t x : g.ideal)
        if (dec.insert(Vec::unit(x, a.field.one())))
            g.by_block[block_key(s.tag(x))].push_back(x);
    return g;
}

std::string key_str(const BlockKey& k, const GradedBimodule& s)
{
    return "(" + s.vertex_name(std::get<0>(k)) + ", " + s.vertex_name(std::get<1>(k)) + ", " +
           std::to_string(std::get<2>(k)) + ")";
}

}  // namespace

DimComparison compare_graded_dims(const DimTable& x, const DimTable& y)
{
    DimComparison c;
    c.diff = diff_tables(x, y);
    c.pass = c.diff.empty();
    return c;
}

DimComparison compare_graded_dims(const HomologyReport& x, const DimTable& y) { return compare_graded_dims(x.table, y); }

MultiplicativeMatch check_multiplicative_match(const AInfinityStructure& h, const AInfinityStructure& b)
{
    MultiplicativeMatch r;
    if (h.space.vertices() != b.space.vertices()) {
        r.obstruction = "vertex sets differ";
        return r;
    }
    if (h.dim() != b.dim()) {
        r.obstruction = "dimensions differ: " + std::to_string(h.dim()) + " vs " + std::to_string(b.dim());
        return r;
    }
    std::string why;
    auto gh = generators(h, "homology", why);
    if (!gh) {
        r.obstruction = why;
        return r;
    }
    auto gb = generators(b, "algebra", why);
    if (!gb) {
        r.obstruction = why;
        return r;
    }
    std::set<BlockKey> keys;
    for (const auto& [k, v] : gh->by_block)
        keys.insert(k);
    for (const auto& [k, v] : gb->by_block)
        keys.insert(k);
    for (const BlockKey& k : keys) {
        std::size_t nh = gh->by_block.count(k) ? gh->by_block.at(k).size() : 0;
        std::size_t nb = gb->by_block.count(k) ? gb->by_block.at(k).size() : 0;
        if (nh != nb) {
            r.obstruction = "no block-preserving generator matching: block " + key_str(k, b.space) + " has " +
                            std::to_string(nh) + " generators in homology and " + std::to_string(nb) + " in the algebra";
            return r;
        }
    }

    const GradedBimodule& bs = b.space;
    const auto& hl = h.space.labels();
    std::vector<std::optional<Vec>> phi(b.dim());
    for (std::size_t v = 0; v < bs.vertex_count(); ++v) {
        std::size_t e = gb->idempotent[v].leading_index();
        // b-side idempotent is e / lambda; its image is the h-side idempotent.
        phi[e] = gh->idempotent[v].scaled(gb->idempotent[v].coeff(e).inverse());
        r.correspondence.emplace_back(bs.label(e), gh->idempotent[v].str(&hl));
    }
    for (const auto& [k, xs] : gb->by_block) {
        const auto& ys = gh->by_block.at(k);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            phi[xs[i]] = Vec::unit(ys[i], h.field.one());
            r.correspondence.emplace_back(bs.label(xs[i]), phi[xs[i]]->str(&hl));
        }
    }

    // Extend multiplicatively through single-term products.
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t x = 0; x < b.dim(); ++x) {
            if (!phi[x])
                continue;
            for (std::size_t y = 0; y < b.dim(); ++y) {
                if (!phi[y] || !bs.composable(x, y))
                    continue;
                const Vec* p = b.op({x, y});
                if (!p || p->size() != 1 || phi[p->leading_index()])
                    continue;
                std::size_t z = p->leading_index();
                phi[z] = product(h, *phi[x], *phi[y]).scaled(p->coeff(z).inverse());
                grew = true;
            }
        }
    }
    for (std::size_t x = 0; x < b.dim(); ++x)
        if (!phi[x]) {
            r.obstruction = "basis element " + bs.label(x) + " is not reached from the generators";
            return r;
        }
    auto image = [&](const Vec& v) { return v.apply([&](std::size_t i) { return *phi[i]; }); };
    for (std::size_t x = 0; x < b.dim(); ++x)
        for (std::size_t y = 0; y < b.dim(); ++y) {
            if (!bs.composable(x, y))
                continue;
            const Vec* p = b.op({x, y});
            Vec lhs = p ? image(*p) : Vec();
            Vec rhs = product(h, *phi[x], *phi[y]);
            if (!(lhs == rhs)) {
                r.obstruction = "product of " + bs.label(x) + " and " + bs.label(y) + " is not preserved";
                return r;
            }
        }
    Echelon span;
    for (std::size_t x = 0; x < b.dim(); ++x) {
        const BasisTag& t = bs.tag(x);
        for (const auto& [i, c] : *phi[x])
            if (!(h.space.tag(i) == t)) {
                r.obstruction = "image of " + bs.label(x) + " leaves its block";
                return r;
            }
        span.insert(*phi[x]);
    }
    if (span.rank() != b.dim()) {
        r.obstruction = "the generator correspondence is not bijective (rank " + std::to_string(span.rank()) + ")";
        return r;
    }
    r.pass = true;
    return r;
}

DimTable koszul_dual_shape(const GradedQuiver& q)
{
    DimTable t = ground_ring_table(q.vertex_count());
    for (const Arrow& a : q.arrows())
        ++t[{a.target, a.source, 1 - a.degree}];
    return t;
}

const StageCertificate* TheoremReport::stage(int index) const
{
    for (const auto& s : stages)
        if (s.index == index)
            return &s;
    return nullptr;
}

std::string table_str(const DimTable& t, const std::vector<std::string>& vertices)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, n] : t) {
        if (!first)
            os << ' ';
        first = false;
        os << '(' << vertices.at(static_cast<std::size_t>(std::get<0>(k))) << ','
           << vertices.at(static_cast<std::size_t>(std::get<1>(k))) << ',' << std::get<2>(k) << ")=" << n;
    }
    return first ? "empty" : os.str();
}

std::string degree_dims_str(const DimTable& t)
{
    auto d = degree_totals(t);
    if (d.empty())
        return "none";
    std::ostringstream os;
    bool first = true;
    for (const auto& [deg, n] : d) {
        if (!first)
            os << ' ';
        first = false;
        os << deg << ':' << n;
    }
    return os.str();
}

namespace {

const char* yes_no(bool b) { return b ? "pass" : "fail"; }

std::string diff_str(const std::vector<DimDiff>& d, const std::vector<std::string>& vertices)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& [s, t, deg] = d[i].key;
        if (i)
            os << ' ';
        os << '(' << vertices.at(static_cast<std::size_t>(s)) << ',' << vertices.at(static_cast<std::size_t>(t)) << ','
           << deg << "): " << d[i].left << " vs " << d[i].right;
    }
    return os.str();
}

struct Stage {
    TheoremReport& rep;
    StageCertificate cert;
    bool ok = true;
    bool soft = false;  // mismatch attributable to truncation

    Stage(TheoremReport& r, int index, std::string name) : rep(r)
    {
        cert.index = index;
        cert.name = std::move(name);
    }
    void fact(std::string k, std::string v) { cert.facts.emplace_back(std::move(k), std::move(v)); }
    void require(bool pass, const std::string& what)
    {
        fact(what, yes_no(pass));
        if (!pass) {
            ok = false;
            if (cert.detail.empty())
                cert.detail = what + " failed";
        }
    }
    // Comparisons that a truncation may legitimately break.
    void compare(const DimTable& got, const DimTable& want, const std::string& what)
    {
        auto c = compare_graded_dims(got, want);
        fact(what, yes_no(c.pass));
        if (!c.pass) {
            std::string d = what + " differs: " + diff_str(c.diff, rep.vertices);
            if (rep.truncated)
                soft = true;
            else
                ok = false;
            if (cert.detail.empty())
                cert.detail = d;
        }
    }
    void table(std::string k, DimTable t) { cert.tables.emplace_back(std::move(k), std::move(t)); }
    bool finish()
    {
        cert.status = !ok ? "fail" : soft ? "truncated" : "pass";
        rep.stages.push_back(cert);
        return ok;
    }
};

std::string verdict_str(const Verdict& v)
{
    std::string s = v.pass ? "pass" : "fail";
    if (v.checked_up_to > 0)
        s += " (n <= " + std::to_string(v.checked_up_to) + ")";
    return s;
}

}  // namespace

TheoremReport verify_theorem(const AInfinityStructure& a_in, const GradedQuiver& q, const PipelineOptions& opts)
{
    TheoremReport rep;
    rep.fixture = opts.fixture_name;
    rep.field = a_in.field.name();
    rep.vertices = q.vertices();
    std::vector<std::string> stamps;
    if (opts.path_bound)
        stamps.push_back("paths " + opts.path_bound->str());
    if (opts.bound)
        stamps.push_back("words " + opts.bound->str());
    rep.bound = stamps.empty() ? "none" : [&] {
        std::string s;
        for (std::size_t i = 0; i < stamps.size(); ++i)
            s += (i ? ", " : "") + stamps[i];
        return s;
    }();
    rep.truncated = !q.is_acyclic() || opts.path_bound.has_value() || opts.bound.has_value();

    const std::vector<std::string> names = {"input", "enveloping algebra", "canonical resolution", "twisted tensor product",
                                            "koszul dual", "minimal model", "double dual"};
    auto skip_rest = [&](int from) {
        for (int i = from; i < 7; ++i) {
            StageCertificate c;
            c.index = i;
            c.name = names[static_cast<std::size_t>(i)];
            c.status = "skipped";
            rep.stages.push_back(c);
        }
    };
    auto conclude = [&] {
        bool fail = false, soft = false;
        for (const auto& s : rep.stages) {
            fail |= s.status == "fail" || s.status == "skipped";
            soft |= s.status == "truncated";
        }
        if (fail)
            rep.verdict = "fail";
        else if (rep.truncated)
            rep.verdict = soft ? "inconclusive" : "consistent up to truncation";
        else
            rep.verdict = "pass";
    };

    auto a = std::make_shared<const AInfinityStructure>(a_in);
    const DimTable kq = a->space.dim_table();
    const std::optional<WordBound>& wb = opts.bound;
    MinimalModelOptions mmo{opts.seed, opts.max_arity};

    // 0
    {
        Stage st(rep, 0, names[0]);
        if (!q.is_acyclic() && !opts.bound && !opts.path_bound)
            st.require(false, "acyclic quiver or bound");
        auto sv = stasheff_check(*a, false);
        st.fact("stasheff", verdict_str(sv));
        if (!sv.pass) {
            st.ok = false;
            st.cert.detail = "stasheff identities fail" +
                             (sv.failures.empty() ? std::string() : " at " + tuple_str(a->space, sv.failures.front().tuple));
        }
        auto uv = unitality_check(*a);
        st.fact("strict unitality", yes_no(uv.pass));
        if (!uv.pass) {
            st.ok = false;
            if (st.cert.detail.empty())
                st.cert.detail = "strict unitality fails" + (uv.failures.empty() ? std::string() : ": " + uv.failures.front().message);
        }
        st.require(augmentation_check(*a).pass, "augmentation");
        st.fact("dim", std::to_string(a->dim()));
        st.table("kQ", kq);
        if (!st.finish()) {
            skip_rest(1);
            conclude();
            return rep;
        }
    }

    // 1
    std::shared_ptr<const AInfinityStructure> u;
    DimTable hu_table;
    {
        Stage st(rep, 1, names[1]);
        DgCoalgebra ba = bar_construct_raw(*a, wb);
        st.require(squares_to_zero(ba), "bar differential squares to zero");
        st.fact("dim BA", std::to_string(ba.dim()));
        if (st.ok) {
            u = std::make_shared<const AInfinityStructure>(cobar_construct(ba, wb));
            st.fact("dim U", std::to_string(u->dim()));
            st.require(stasheff_check(*u, false).pass, "U is a dg algebra");
            auto hu = homology(underlying_complex(*u));
            hu_table = hu.table;
            st.table("H(U)", hu_table);
            st.compare(hu_table, kq, "H(U) vs kQ");
            if (st.ok) {
                auto hal = homology_algebra(u, mmo);
                auto mm = check_multiplicative_match(hal, *a);
                st.fact("H(U) multiplicative match", yes_no(mm.pass));
                if (!mm.pass) {
                    if (rep.truncated)
                        st.soft = true;
                    else
                        st.ok = false;
                    if (st.cert.detail.empty())
                        st.cert.detail = "multiplicative match: " + mm.obstruction;
                }
            }
        }
        if (!st.finish()) {
            skip_rest(2);
            conclude();
            return rep;
        }
    }

    // 2
    {
        Stage st(rep, 2, names[2]);
        auto res = canonical_resolution(q, opts.path_bound, a->field);
        auto ex = check_resolution(res);
        st.fact("dim V (x) kQ", std::to_string(res.vkq.size()));
        st.fact("dim kQ", std::to_string(res.kq.size()));
        if (rep.truncated && !(ex.exact && ex.resolves_r)) {
            st.fact("exact", "fail");
            st.soft = true;
            st.cert.detail = "resolution is not exact under the truncation";
        } else {
            st.require(ex.exact, "exact");
            st.require(ex.resolves_r, "homology is R in the kQ slot");
        }
        if (!st.finish()) {
            skip_rest(3);
            conclude();
            return rep;
        }
    }

    // 3
    {
        Stage st(rep, 3, names[3]);
        auto tw = twisted_tensor(*u, wb);
        st.fact("dim", std::to_string(tw.complex.size()));
        st.require(tw.square_zero(), "differential squares to zero");
        st.require(tw.check_module_map().pass, "right U-module");
        if (st.ok) {
            auto h = homology(tw.complex);
            st.table("H", h.table);
            st.compare(h.table, ground_ring_table(q.vertex_count()), "H vs R");
            bool qi = tw.augmentation_is_quasi_iso();
            if (!qi && rep.truncated) {
                st.fact("augmentation is a quasi-isomorphism", "fail");
                st.soft = true;
            } else {
                st.require(qi, "augmentation is a quasi-isomorphism");
            }
        }
        if (!st.finish()) {
            skip_rest(4);
            conclude();
            return rep;
        }
    }

    // 4
    std::shared_ptr<const AInfinityStructure> ustar;
    {
        Stage st(rep, 4, names[4]);
        DgCoalgebra bu = bar_construct_raw(*u, wb);
        st.fact("dim BU", std::to_string(bu.dim()));
        st.require(squares_to_zero(bu), "bar differential squares to zero");
        if (st.ok) {
            ustar = std::make_shared<const AInfinityStructure>(graded_dual_algebra(bu));
            st.require(stasheff_check(*ustar, false).pass, "U* is a dg algebra");
            st.require(unitality_check(*ustar).pass, "U* is strictly unital");
            auto h = homology(underlying_complex(*ustar));
            st.table("H(U*)", h.table);
            std::size_t want = q.vertex_count() + q.arrows().size();
            st.fact("total", std::to_string(h.total()) + " (dim R + dim V = " + std::to_string(want) + ")");
            st.compare(h.table, koszul_dual_shape(q), "H(U*) vs R + D(V)[-1]");
        }
        if (!st.finish()) {
            skip_rest(5);
            conclude();
            return rep;
        }
    }

    // 5
    std::shared_ptr<const AInfinityStructure> aprime;
    {
        Stage st(rep, 5, names[5]);
        auto mm = minimal_model(ustar, mmo);
        aprime = mm.model;
        st.fact("dim A'", std::to_string(aprime->dim()));
        st.fact("arity cutoff", std::to_string(mm.arity_cutoff) + " (" + mm.cutoff_reason + ")");
        st.require(mm.contraction.verify().pass, "contraction");
        st.require(aprime->is_minimal(), "minimal");
        st.require(stasheff_check(*aprime, false).pass, "stasheff");
        st.require(unitality_check(*aprime).pass, "strict unitality");
        st.require(morphism_check(mm.morphism).pass, "morphism");
        st.require(first_component_is_quasi_iso(mm), "f1 is a quasi-isomorphism");
        st.table("A'", aprime->space.dim_table());
        st.compare(aprime->space.dim_table(), koszul_dual_shape(q), "A' vs R + D(V)[-1]");
        if (mm.truncated) {
            st.fact("higher operations", "cut: " + mm.cutoff_reason);
            st.soft = true;
        }
        if (!st.finish()) {
            skip_rest(6);
            conclude();
            return rep;
        }
    }

    // 6
    {
        Stage st(rep, 6, names[6]);
        DgCoalgebra bap = bar_construct_raw(*aprime, wb);
        st.fact("dim BA'", std::to_string(bap.dim()));
        st.require(squares_to_zero(bap), "bar differential squares to zero");
        if (st.ok) {
            auto dd = graded_dual_algebra(bap);
            if (rep.truncated && !dd.is_minimal()) {
                st.fact("differential vanishes", "fail");
                st.soft = true;
                st.cert.detail = "differential of D(BA') is nonzero under the truncation";
            } else {
                st.require(dd.is_minimal(), "differential vanishes");
            }
            DimTable t = dd.space.dim_table();
            st.table("D(BA')", t);
            st.compare(t, kq, "D(BA') vs kQ");
            st.compare(t, hu_table, "D(BA') vs H(U)");
            if (st.ok) {
                auto mm = check_multiplicative_match(dd, *a);
                st.fact("multiplicative match", yes_no(mm.pass));
                if (!mm.pass) {
                    if (rep.truncated)
                        st.soft = true;
                    else
                        st.ok = false;
                    if (st.cert.detail.empty())
                        st.cert.detail = "multiplicative match: " + mm.obstruction;
                }
            }
        }
        st.finish();
    }
    conclude();
    return rep;
}

}  // namespace ainf
