#include "ainf/path_algebra.hpp"

#include <set>

namespace ainf {

AInfinityStructure path_algebra(const GradedQuiver& q, std::optional<PathBound> bound, Field field)
{
    if (bound && (bound->min_degree > 0 || bound->max_degree < 0))
        throw InputError("path bound must contain degree 0");
    auto paths = enumerate_paths(q, bound);
    AInfinityStructure a;
    a.field = field;
    a.space = GradedBimodule(q.vertices());
    std::map<std::vector<int>, std::size_t> by_word;
    std::vector<std::size_t> units(q.vertex_count());
    for (const auto& p : paths) {
        std::size_t i = a.space.add({p.source, p.target, p.degree}, p.label(q));
        if (p.is_trivial())
            units[static_cast<std::size_t>(p.source)] = i;
        else
            by_word[p.arrows] = i;
    }
    for (std::size_t x = 0; x < paths.size(); ++x)
        for (std::size_t y = 0; y < paths.size(); ++y) {
            if (paths[x].source != paths[y].target)
                continue;
            std::size_t out;
            if (paths[x].is_trivial())
                out = y;
            else if (paths[y].is_trivial())
                out = x;
            else {
                std::vector<int> w = paths[x].arrows;
                w.insert(w.end(), paths[y].arrows.begin(), paths[y].arrows.end());
                auto it = by_word.find(w);
                if (it == by_word.end())
                    continue;
                out = it->second;
            }
            a.set_op({x, y}, Vec::unit(out, field.one()));
        }
    a.unit = UnitAugmentation::standard(units);
    return a;
}

GradedBimodule arrow_space(const GradedQuiver& q)
{
    GradedBimodule v(q.vertices());
    for (const auto& ar : q.arrows())
        v.add({ar.source, ar.target, ar.degree}, ar.name);
    return v;
}

CanonicalResolution canonical_resolution(const GradedQuiver& q, std::optional<PathBound> bound, Field field)
{
    CanonicalResolution res;
    res.bound = bound;
    auto paths = enumerate_paths(q, bound);
    res.kq = GradedBimodule(q.vertices());
    std::map<std::vector<int>, std::size_t> by_word;
    for (const auto& p : paths) {
        std::size_t i = res.kq.add({p.source, p.target, p.degree}, p.label(q));
        by_word[p.arrows] = i;
    }
    res.r = GradedBimodule(q.vertices());
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
        res.r.add({static_cast<int>(v), static_cast<int>(v), 0}, "e" + q.vertices()[v]);
    res.vkq = GradedBimodule(q.vertices());
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const Arrow& ar = q.arrows()[a];
        for (std::size_t j = 0; j < paths.size(); ++j) {
            const auto& p = paths[j];
            if (ar.source != p.target)
                continue;
            res.vkq.add({p.source, ar.target, ar.degree + p.degree}, ar.name + "|" + p.label(q));
            std::vector<int> w{static_cast<int>(a)};
            w.insert(w.end(), p.arrows.begin(), p.arrows.end());
            auto it = by_word.find(w);
            res.mu.push_back(it == by_word.end() ? Vec() : Vec::unit(it->second, field.one()));
        }
    }
    for (std::size_t j = 0; j < paths.size(); ++j)
        res.epsilon.push_back(paths[j].is_trivial() ? Vec::unit(static_cast<std::size_t>(paths[j].source), field.one())
                                                    : Vec());
    return res;
}

namespace {

// Homology of the strands of one internal degree, graded by slot.
std::map<int, DimTable> strand_homology(const CanonicalResolution& res, bool with_r)
{
    std::set<int> degrees;
    for (const auto* m : {&res.vkq, &res.kq, &res.r})
        for (const auto& t : m->tags())
            degrees.insert(t.degree);
    std::map<int, DimTable> out;
    for (int d : degrees) {
        ChainComplexView c;
        c.space = GradedBimodule(res.kq.vertices());
        std::map<std::size_t, std::size_t> kq_local, r_local;
        std::vector<std::size_t> vkq_ids;
        for (std::size_t i = 0; i < res.vkq.size(); ++i)
            if (res.vkq.degree(i) == d)
                vkq_ids.push_back(i);
        std::vector<std::size_t> vkq_local;
        for (std::size_t i : vkq_ids) {
            BasisTag t = res.vkq.tag(i);
            t.degree = 0;
            vkq_local.push_back(c.space.add(t, res.vkq.label(i)));
        }
        for (std::size_t i = 0; i < res.kq.size(); ++i)
            if (res.kq.degree(i) == d) {
                BasisTag t = res.kq.tag(i);
                t.degree = 1;
                kq_local[i] = c.space.add(t, res.kq.label(i));
            }
        if (with_r)
            for (std::size_t i = 0; i < res.r.size(); ++i)
                if (res.r.degree(i) == d) {
                    BasisTag t = res.r.tag(i);
                    t.degree = 2;
                    r_local[i] = c.space.add(t, res.r.label(i));
                }
        c.differential.resize(c.space.size());
        for (std::size_t k = 0; k < vkq_ids.size(); ++k)
            for (const auto& [j, x] : res.mu[vkq_ids[k]])
                c.differential[vkq_local[k]].add(kq_local.at(j), x);
        if (with_r)
            for (const auto& [i, li] : kq_local)
                for (const auto& [j, x] : res.epsilon[i])
                    c.differential[li].add(r_local.at(j), x);
        auto h = homology(c, DegreeWindow{0, 2});
        for (const auto& [key, n] : h.table) {
            auto [s, t, slot] = key;
            out[slot][{s, t, d}] = n;
        }
    }
    return out;
}

}  // namespace

ResolutionExactness check_resolution(const CanonicalResolution& res)
{
    ResolutionExactness e;
    e.augmented = strand_homology(res, true);
    e.unaugmented = strand_homology(res, false);
    e.exact = e.augmented.empty();
    DimTable want = ground_ring_table(res.r.vertex_count());
    e.resolves_r = e.unaugmented.size() == (want.empty() ? 0u : 1u) &&
                   (want.empty() || (e.unaugmented.count(1) && e.unaugmented.at(1) == want));
    return e;
}

}  // namespace ainf
