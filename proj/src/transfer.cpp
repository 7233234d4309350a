#include "ainf/transfer.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <random>

#include "ainf/bar_cobar.hpp"
#include "ainf/quiver.hpp"

namespace ainf {

namespace {

Scalar sign_of(long x)
{
    return (((x % 2) + 2) % 2) ? Scalar(-1) : Scalar(1);
}

Vec map_through(const std::vector<Vec>& table, const Vec& v)
{
    return v.apply([&](std::size_t i) -> const Vec& { return table.at(i); });
}

std::string class_label(const Vec& rep, const GradedBimodule& space)
{
    std::string s = "{";
    bool first = true;
    for (const auto& [i, c] : rep) {
        if (!first)
            s += " + ";
        first = false;
        if (!c.is_one())
            s += c.str() + " ";
        s += space.label(i);
    }
    return s + "}";
}

}  // namespace

Vec Contraction::apply_iota(const Vec& v) const
{
    return map_through(iota, v);
}

Vec Contraction::apply_projection(const Vec& v) const
{
    return map_through(projection, v);
}

Vec Contraction::apply_homotopy(const Vec& v) const
{
    return map_through(homotopy, v);
}

Verdict Contraction::verify() const
{
    Verdict v;
    v.check = "contraction";
    for (std::size_t h = 0; h < iota.size(); ++h) {
        if (apply_projection(iota[h]) != Vec::unit(h))
            v.fail({0, {h}, {}, "pi iota != id on a homology class"});
        if (!apply_homotopy(iota[h]).empty())
            v.fail({0, {h}, {}, "h iota != 0"});
        if (!complex.apply(iota[h]).empty())
            v.fail({0, {h}, {}, "iota does not land in cycles"});
    }
    for (std::size_t c = 0; c < complex.size(); ++c) {
        Vec x = Vec::unit(c);
        Vec lhs = x - apply_iota(projection[c]);
        Vec rhs = complex.apply(homotopy[c]) + apply_homotopy(complex.differential[c]);
        if (lhs != rhs)
            v.fail({0, {c}, lhs - rhs, "id - iota pi != dh + hd on " + complex.space.label(c)});
        if (!apply_homotopy(homotopy[c]).empty())
            v.fail({0, {c}, {}, "h h != 0"});
        if (!apply_projection(homotopy[c]).empty())
            v.fail({0, {c}, {}, "pi h != 0"});
        if (!apply_projection(complex.differential[c]).empty())
            v.fail({0, {c}, {}, "pi is not a chain map"});
    }
    return v;
}

Contraction build_contraction(const ChainComplexView& c, ContractionOptions opts)
{
    check_complex(c);
    Contraction K;
    K.complex = c;
    K.homology = GradedBimodule(c.space.vertices());
    K.projection.resize(c.size());
    K.homotopy.resize(c.size());
    std::mt19937_64 rng(opts.seed.value_or(0));
    auto draw = [&]() { return Scalar(static_cast<int>(rng() % 4) - 1); };

    std::map<BlockKey, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < c.size(); ++i)
        blocks[block_key(c.space.tag(i))].push_back(i);
    std::map<BlockKey, std::vector<Vec>> complements;  // global vectors spanning L

    for (const auto& [key, cols] : blocks) {
        auto [s, t, deg] = key;
        const std::size_t n = cols.size();
        std::map<std::size_t, std::size_t> local;
        for (std::size_t k = 0; k < n; ++k)
            local[cols[k]] = k;
        std::vector<std::size_t> next;
        if (auto it = blocks.find({s, t, deg + 1}); it != blocks.end())
            next = it->second;
        std::map<std::size_t, std::size_t> next_local;
        for (std::size_t k = 0; k < next.size(); ++k)
            next_local[next[k]] = k;

        std::vector<Vec> dcols;
        for (std::size_t g : cols) {
            Vec v;
            for (const auto& [j, x] : c.differential[g])
                v.add(next_local.at(j), x);
            dcols.push_back(std::move(v));
        }
        auto ker = kernel_basis(SparseMatrix::from_columns(next.size(), dcols));

        // Rows of d with columns reversed; their echelon pivots give the
        // complement columns, scanning from the right.
        std::vector<Vec> rev_rows(next.size());
        for (std::size_t k = 0; k < n; ++k)
            for (const auto& [r, x] : dcols[k])
                rev_rows[r].add(n - 1 - k, x);
        Echelon rev;
        for (auto& r : rev_rows)
            rev.insert(std::move(r));
        std::vector<Vec> L;
        for (const auto& row : rev.rows())
            L.push_back(Vec::unit(n - 1 - row.leading_index()));

        std::vector<Vec> prevL;
        if (auto it = complements.find({s, t, deg - 1}); it != complements.end())
            prevL = it->second;
        std::vector<Vec> B;
        for (const auto& lv : prevL) {
            Vec img;
            for (const auto& [j, x] : c.apply(lv))
                img.add(local.at(j), x);
            B.push_back(std::move(img));
        }
        Echelon bspan;
        for (const auto& b : B)
            bspan.insert(b);
        Echelon hspan;
        for (auto& v : ker)
            hspan.insert(bspan.reduce(v));
        std::vector<Vec> H = hspan.rows();

        if (opts.seed) {
            auto perturb = [&](std::vector<Vec>& vs, const std::vector<Vec>& adds) {
                for (auto& v : vs)
                    for (const auto& a : adds)
                        v.axpy(draw(), a);
            };
            perturb(H, B);
            perturb(L, ker);
        }
        if (B.size() + H.size() + L.size() != n)
            throw StructureError("contraction: block decomposition has the wrong size");
        std::vector<Vec> M;
        M.insert(M.end(), B.begin(), B.end());
        M.insert(M.end(), H.begin(), H.end());
        M.insert(M.end(), L.begin(), L.end());
        auto Minv = invert_columns(M);

        const std::size_t h0 = K.homology.size();
        for (const auto& v : H) {
            Vec g;
            for (const auto& [k, x] : v)
                g.add(cols[k], x);
            K.homology.add({s, t, deg}, class_label(g, c.space));
            K.iota.push_back(std::move(g));
        }
        for (std::size_t k = 0; k < n; ++k) {
            const Vec& co = Minv[k];  // coordinates of basis vector k in [B | H | L]
            Vec proj, hv;
            for (const auto& [j, x] : co) {
                if (j < B.size())
                    hv.axpy(x, prevL[j]);
                else if (j < B.size() + H.size())
                    proj.add(h0 + (j - B.size()), x);
            }
            K.projection[cols[k]] = std::move(proj);
            K.homotopy[cols[k]] = std::move(hv);
        }
        std::vector<Vec> Lg;
        for (const auto& v : L) {
            Vec g;
            for (const auto& [k, x] : v)
                g.add(cols[k], x);
            Lg.push_back(std::move(g));
        }
        complements[key] = std::move(Lg);
    }
    return K;
}

namespace {

struct Transfer {
    const AInfinityStructure& A;
    const Contraction& K;
    const std::vector<std::size_t>& ids;
    std::map<std::size_t, std::size_t> local;
    std::map<Tuple, Vec> memo;

    Transfer(const AInfinityStructure& a, const Contraction& k, const std::vector<std::size_t>& i)
        : A(a), K(k), ids(i)
    {
        for (std::size_t j = 0; j < ids.size(); ++j)
            local[ids[j]] = j;
    }

    // b2(sx, sy) = -(-1)^{|x|-1} s m2(x, y), in local coordinates of A-bar.
    Vec b2(const Vec& X, const Vec& Y) const
    {
        Vec out;
        for (const auto& [x, cx] : X)
            for (const auto& [y, cy] : Y) {
                const Vec* m = A.op({ids[x], ids[y]});
                if (!m)
                    continue;
                Scalar sg = -sign_of(K.complex.space.degree(x) - 1) * cx * cy;
                for (const auto& [z, cz] : *m) {
                    auto it = local.find(z);
                    if (it == local.end())
                        throw StructureError("m_2 does not preserve the augmentation ideal");
                    out.add(it->second, sg * cz);
                }
            }
        return out;
    }

    Vec lambda(const Tuple& t)
    {
        Vec out;
        for (std::size_t i = 1; i < t.size(); ++i) {
            Tuple l(t.begin(), t.begin() + static_cast<long>(i));
            Tuple r(t.begin() + static_cast<long>(i), t.end());
            out += b2(p(l), p(r));
        }
        return out;
    }

    const Vec& p(const Tuple& t)
    {
        if (auto it = memo.find(t); it != memo.end())
            return it->second;
        Vec v = t.size() == 1 ? K.iota[t[0]] : K.apply_homotopy(lambda(t));
        return memo.emplace(t, std::move(v)).first->second;
    }

    long shift_exponent(const Tuple& t) const
    {
        long e = 0;
        const long n = static_cast<long>(t.size());
        for (long i = 0; i < n; ++i)
            e += (n - 1 - i) * (K.homology.degree(t[static_cast<std::size_t>(i)]) - 1);
        return e;
    }
};

std::vector<std::pair<int, int>> homology_edges(const GradedBimodule& h)
{
    std::vector<std::pair<int, int>> e;
    for (const auto& t : h.tags())
        e.emplace_back(t.source, t.target);
    return e;
}

// Number of composable n-tuples over the basis of h.
double tuple_count(const GradedBimodule& h, int n)
{
    // by_source[v]: tuples whose last entry has source v
    std::vector<double> by_source(h.vertex_count(), 0.0);
    for (const auto& t : h.tags())
        by_source[static_cast<std::size_t>(t.source)] += 1;
    for (int k = 1; k < n; ++k) {
        std::vector<double> next(h.vertex_count(), 0.0);
        for (const auto& t : h.tags())
            next[static_cast<std::size_t>(t.source)] += by_source[static_cast<std::size_t>(t.target)];
        by_source = std::move(next);
    }
    double total = 0;
    for (double c : by_source)
        total += c;
    return total;
}

MinimalModel transfer_impl(std::shared_ptr<const AInfinityStructure> a, MinimalModelOptions opts, int arity_limit)
{
    if (!a->unit || !a->unit->is_normalized())
        throw InputError("minimal model needs an augmented structure with normalized augmentation");
    auto problems = a->validate();
    if (!problems.empty())
        throw StructureError("invalid structure: " + problems.front());
    MinimalModel mm;
    mm.source = a;
    ChainComplexView abar = augmentation_ideal_complex(*a, &mm.ideal_ids);
    if (a->is_minimal()) {
        // h = 0: the input is its own minimal model.
        mm.contraction = build_contraction(abar);
        auto model = std::make_shared<AInfinityStructure>(*a);
        if (arity_limit > 0)
            for (auto it = model->ops.begin(); it != model->ops.end();)
                it = it->first > arity_limit ? model->ops.erase(it) : std::next(it);
        mm.model = model;
        mm.morphism = identity_morphism(model);
        mm.morphism.codomain = a;
        mm.arity_cutoff = model->arity_max();
        mm.cutoff_reason = "input is minimal";
        return mm;
    }
    if (a->arity_max() > 2)
        throw InputError("transfer is implemented for dg algebras (no m_n for n >= 3)");
    mm.contraction = build_contraction(abar, {opts.seed});
    const Contraction& K = mm.contraction;
    const GradedBimodule& H = K.homology;

    // Arity cutoff from composable chains and degrees.
    auto chain = longest_chain(H.vertex_count(), homology_edges(H));
    int cutoff = std::max(2, opts.max_arity);
    std::string reason = "configured maximum " + std::to_string(opts.max_arity);
    bool forced = false;
    if (chain) {
        int c = std::max(2, static_cast<int>(*chain));
        if (c <= cutoff) {
            cutoff = c;
            reason = "longest composable chain in H has " + std::to_string(*chain) + " letters";
            forced = true;
        }
    }
    if (!H.empty()) {
        auto dd = H.degree_dims();
        int dmin = dd.begin()->first, dmax = dd.rbegin()->first;
        if (dmin >= 2) {
            int c = std::max(2, (dmax - 2) / (dmin - 1));
            if (c < cutoff) {
                cutoff = c;
                reason = "degree count: 2 - n + n*" + std::to_string(dmin) + " exceeds top degree " + std::to_string(dmax);
                forced = true;
            }
        }
    } else {
        cutoff = 2;
        reason = "homology of the augmentation ideal is zero";
        forced = true;
    }
    if (arity_limit > 0 && arity_limit < cutoff) {
        cutoff = arity_limit;
        reason = "arity limited to " + std::to_string(arity_limit);
        forced = true;
    }
    double work = 0;
    for (int n = 2; n <= cutoff; ++n) {
        work += tuple_count(H, n);
        if (work > static_cast<double>(opts.max_tuples)) {
            cutoff = std::max(2, n - 1);
            reason = "tuple budget " + std::to_string(opts.max_tuples) + " reached at arity " + std::to_string(n);
            forced = false;
            break;
        }
    }
    mm.arity_cutoff = cutoff;
    mm.truncated = !forced;
    mm.cutoff_reason = reason;

    auto model = std::make_shared<AInfinityStructure>();
    model->field = a->field;
    model->space = GradedBimodule(a->space.vertices());
    std::vector<std::size_t> units;
    for (std::size_t v = 0; v < a->space.vertex_count(); ++v)
        units.push_back(
            model->space.add({static_cast<int>(v), static_cast<int>(v), 0}, "e" + a->space.vertex_name(static_cast<int>(v))));
    const std::size_t off = units.size();
    for (std::size_t h = 0; h < H.size(); ++h)
        model->space.add(H.tag(h), H.label(h));
    model->unit = UnitAugmentation::standard(units);
    for (std::size_t x = 0; x < model->dim(); ++x) {
        const BasisTag& t = model->space.tag(x);
        std::size_t el = units[static_cast<std::size_t>(t.target)], er = units[static_cast<std::size_t>(t.source)];
        model->set_op({el, x}, Vec::unit(x, a->field.one()));
        model->set_op({x, er}, Vec::unit(x, a->field.one()));
    }

    AInfinityMorphism f;
    f.codomain = a;
    auto to_source = [&](const Vec& v) {
        Vec g;
        for (const auto& [i, c] : v)
            g.add(mm.ideal_ids[i], c);
        return g;
    };
    for (std::size_t v = 0; v < units.size(); ++v)
        f.set_component({units[v]}, Vec::unit(a->unit->unit[v], a->field.one()));
    for (std::size_t h = 0; h < H.size(); ++h)
        f.set_component({off + h}, to_source(K.iota[h]));

    Transfer tr(*a, K, mm.ideal_ids);
    for (int n = 2; n <= cutoff; ++n)
        for (const auto& t : composable_tuples(H, static_cast<std::size_t>(n))) {
            Scalar sg = sign_of(tr.shift_exponent(t));
            Vec lam = tr.lambda(t);
            Vec m = K.apply_projection(lam);
            Tuple mt;
            for (std::size_t x : t)
                mt.push_back(off + x);
            if (!m.empty()) {
                Vec out;
                for (const auto& [j, c] : m)
                    out.add(off + j, -sg * c);
                model->set_op(mt, std::move(out));
            }
            Vec pn = K.apply_homotopy(lam);
            if (!pn.empty())
                f.set_component(mt, to_source(pn).scaled(sg));
        }
    f.domain = model;
    mm.model = model;
    mm.morphism = std::move(f);
    return mm;
}

}  // namespace

MinimalModel minimal_model(std::shared_ptr<const AInfinityStructure> a, MinimalModelOptions opts)
{
    return transfer_impl(std::move(a), opts, 0);
}

AInfinityStructure homology_algebra(std::shared_ptr<const AInfinityStructure> a, MinimalModelOptions opts)
{
    auto mm = transfer_impl(std::move(a), opts, 2);
    return *mm.model;
}

bool first_component_is_quasi_iso(const MinimalModel& m)
{
    ChainComplexView from = underlying_complex(*m.model);
    ChainComplexView to = underlying_complex(*m.source);
    std::vector<Vec> f1(m.model->dim());
    for (std::size_t i = 0; i < f1.size(); ++i)
        if (const Vec* v = m.morphism.component({i}))
            f1[i] = *v;
    return homology(mapping_cone(from, to, f1)).total() == 0;
}

}  // namespace ainf
