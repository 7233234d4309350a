#include "ainf/homology.hpp"

#include <algorithm>

#include "ainf/parallel.hpp"

namespace ainf {

Vec ChainComplexView::apply(const Vec& v) const
{
    return v.apply([this](std::size_t i) -> const Vec& { return differential.at(i); });
}

std::size_t HomologyReport::total() const
{
    std::size_t n = 0;
    for (const auto& [d, k] : dims)
        n += k;
    return n;
}

DegreeWindow support(const GradedBimodule& m)
{
    if (m.empty())
        return {0, 0};
    auto dd = m.degree_dims();
    return {dd.begin()->first, dd.rbegin()->first};
}

void check_complex(const ChainComplexView& c, std::optional<DegreeWindow> window)
{
    if (c.differential.size() != c.space.size())
        throw StructureError("differential size does not match the basis");
    for (std::size_t i = 0; i < c.size(); ++i) {
        const BasisTag& t = c.space.tag(i);
        for (const auto& [j, v] : c.differential[i]) {
            if (j >= c.size())
                throw StructureError("differential leaves the basis");
            const BasisTag& u = c.space.tag(j);
            if (u.degree != t.degree + 1)
                throw StructureError("differential of '" + c.space.label(i) + "' does not have degree +1");
            if (u.source != t.source || u.target != t.target)
                throw StructureError("differential of '" + c.space.label(i) + "' mixes blocks");
        }
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        int d = c.space.degree(i);
        if (window && (d < window->lo - 1 || d > window->hi))
            continue;
        if (!c.apply(c.differential[i]).empty())
            throw StructureError("d^2 != 0 on '" + c.space.label(i) + "'");
    }
}

namespace {

struct BlockResult {
    BlockKey key;
    std::vector<Vec> reps;  // global indices
};

}  // namespace

HomologyReport homology(const ChainComplexView& c, std::optional<DegreeWindow> window)
{
    DegreeWindow w = window ? *window : support(c.space);
    if (w.lo > w.hi)
        throw InputError("empty degree window " + w.str());
    if (c.trusted) {
        auto present = c.space.degree_dims();
        auto occupied = [&](int d) { return present.count(d) && present[d] > 0; };
        if ((w.lo - 1 < c.trusted->lo && occupied(w.lo - 1)) || (w.hi + 1 > c.trusted->hi && occupied(w.hi + 1)))
            throw InputError("degree window " + w.str() + " clips the truncated complex (trusted " +
                             c.trusted->str() + ")");
        if (w.lo < c.trusted->lo || w.hi > c.trusted->hi)
            throw InputError("degree window " + w.str() + " leaves the trusted range " + c.trusted->str());
    }
    check_complex(c, w);

    // Local index lists per (source, target, degree).
    std::map<BlockKey, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < c.size(); ++i)
        blocks[block_key(c.space.tag(i))].push_back(i);

    std::vector<BlockKey> keys;
    for (const auto& [k, v] : blocks)
        if (w.contains(std::get<2>(k)))
            keys.push_back(k);

    auto results = parallel_map<BlockResult>(keys.size(), [&](std::size_t bi) {
        const BlockKey& key = keys[bi];
        auto [s, t, deg] = key;
        const auto& cols = blocks.at(key);
        std::map<std::size_t, std::size_t> local;
        for (std::size_t k = 0; k < cols.size(); ++k)
            local[cols[k]] = k;
        auto to_local = [&](const Vec& v) {
            Vec out;
            for (const auto& [i, x] : v)
                out.add(local.at(i), x);
            return out;
        };
        // d^n restricted to this block.
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
        auto ker = kernel_basis(SparseMatrix::from_columns(next.size(), std::move(dcols)));
        Echelon image;
        if (auto it = blocks.find({s, t, deg - 1}); it != blocks.end())
            for (std::size_t g : it->second)
                image.insert(to_local(c.differential[g]));
        Echelon reps;
        for (auto& v : ker)
            reps.insert(image.reduce(std::move(v)));
        BlockResult r{key, {}};
        for (const auto& v : reps.rows()) {
            Vec g;
            for (const auto& [k, x] : v)
                g.add(cols[k], x);
            r.reps.push_back(std::move(g));
        }
        return r;
    });

    HomologyReport rep;
    rep.window = w;
    for (int d = w.lo; d <= w.hi; ++d)
        rep.dims[d] = 0;
    for (auto& r : results) {
        if (r.reps.empty())
            continue;
        int d = std::get<2>(r.key);
        rep.dims[d] += r.reps.size();
        rep.table[r.key] = r.reps.size();
        auto& dst = rep.representatives[d];
        for (auto& v : r.reps)
            dst.push_back(std::move(v));
    }
    return rep;
}

long euler_characteristic(const GradedBimodule& m)
{
    return euler_characteristic(m.dim_table());
}

long euler_characteristic(const DimTable& t)
{
    long chi = 0;
    for (const auto& [k, v] : t)
        chi += (std::get<2>(k) % 2 == 0 ? 1 : -1) * static_cast<long>(v);
    return chi;
}

ChainComplexView mapping_cone(const ChainComplexView& from, const ChainComplexView& to, const std::vector<Vec>& f)
{
    if (f.size() != from.size())
        throw StructureError("chain map size does not match its domain");
    if (from.space.vertices() != to.space.vertices())
        throw StructureError("chain map between different vertex sets");
    ChainComplexView cone;
    cone.space = GradedBimodule::direct_sum(from.space.shifted(1), to.space);
    const std::size_t off = from.size();
    cone.differential.resize(cone.space.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
        Vec v;
        for (const auto& [j, x] : from.differential[i])
            v.add(j, -x);
        for (const auto& [j, x] : f[i])
            v.add(off + j, x);
        cone.differential[i] = std::move(v);
    }
    for (std::size_t i = 0; i < to.size(); ++i) {
        Vec v;
        for (const auto& [j, x] : to.differential[i])
            v.add(off + j, x);
        cone.differential[off + i] = std::move(v);
    }
    return cone;
}

ChainComplexView ground_ring_complex(const std::vector<std::string>& vertices)
{
    ChainComplexView r;
    r.space = GradedBimodule(vertices);
    for (std::size_t v = 0; v < vertices.size(); ++v)
        r.space.add({static_cast<int>(v), static_cast<int>(v), 0}, "e" + vertices[v]);
    r.differential.resize(vertices.size());
    return r;
}

DimTable ground_ring_table(std::size_t vertex_count)
{
    DimTable t;
    for (std::size_t v = 0; v < vertex_count; ++v)
        t[{static_cast<int>(v), static_cast<int>(v), 0}] = 1;
    return t;
}

}  // namespace ainf
