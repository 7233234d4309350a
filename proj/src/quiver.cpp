#include "ainf/quiver.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "ainf/scalar.hpp"

namespace ainf {

GradedQuiver::GradedQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows))
{
    std::set<std::string> seen;
    for (const auto& v : vertices_)
        if (!seen.insert(v).second)
            throw InputError("duplicate vertex '" + v + "'");
    std::set<std::string> names;
    const int n = static_cast<int>(vertices_.size());
    std::vector<std::pair<int, int>> edges;
    for (const auto& a : arrows_) {
        if (!names.insert(a.name).second)
            throw InputError("duplicate arrow '" + a.name + "'");
        if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n)
            throw InputError("arrow '" + a.name + "' has an undeclared endpoint");
        if (a.degree < 1)
            throw InputError("arrow '" + a.name + "' has non-positive degree");
        edges.emplace_back(a.source, a.target);
    }
    acyclic_ = !has_directed_cycle(vertices_.size(), edges);
}

std::optional<int> GradedQuiver::vertex_index(const std::string& name) const
{
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end())
        return std::nullopt;
    return static_cast<int>(it - vertices_.begin());
}

std::optional<int> GradedQuiver::arrow_index(const std::string& name) const
{
    for (std::size_t i = 0; i < arrows_.size(); ++i)
        if (arrows_[i].name == name)
            return static_cast<int>(i);
    return std::nullopt;
}

std::string PathBasisElement::label(const GradedQuiver& q) const
{
    if (arrows.empty())
        return "e" + q.vertices().at(static_cast<std::size_t>(source));
    std::string s;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        if (i)
            s += '*';
        s += q.arrows().at(static_cast<std::size_t>(arrows[i])).name;
    }
    return s;
}

std::string PathBound::str() const
{
    std::string s;
    if (max_length != std::numeric_limits<std::size_t>::max())
        s = "length<=" + std::to_string(max_length);
    if (min_degree != 0 || max_degree < std::numeric_limits<int>::max() / 2) {
        if (!s.empty())
            s += ' ';
        s += "degree " + std::to_string(min_degree) + ":" + std::to_string(max_degree);
    }
    return s.empty() ? "unbounded" : s;
}

std::vector<PathBasisElement> enumerate_paths(const GradedQuiver& q, std::optional<PathBound> bound)
{
    if (!q.is_acyclic() && !bound)
        throw InputError("quiver has a directed cycle; a (length, degree) bound is required");
    std::vector<PathBasisElement> out;
    auto keep = [&](const PathBasisElement& p) {
        return !bound || (p.degree >= bound->min_degree && p.degree <= bound->max_degree);
    };
    // Degrees only grow, so the degree cap also prunes the search.
    std::function<void(PathBasisElement&)> extend = [&](PathBasisElement& p) {
        if (bound && p.length() >= bound->max_length)
            return;
        for (std::size_t a = 0; a < q.arrows().size(); ++a) {
            const Arrow& ar = q.arrows()[a];
            if (ar.target != p.source)
                continue;
            if (bound && p.degree + ar.degree > bound->max_degree)
                continue;
            PathBasisElement np = p;
            np.arrows.push_back(static_cast<int>(a));
            np.source = ar.source;
            np.degree += ar.degree;
            if (keep(np))
                out.push_back(np);
            extend(np);
        }
    };
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        PathBasisElement e{static_cast<int>(v), static_cast<int>(v), 0, {}};
        if (keep(e))
            out.push_back(e);
        extend(e);
    }
    auto names = [&](const PathBasisElement& p) {
        std::vector<std::string> n;
        for (int a : p.arrows)
            n.push_back(q.arrows()[static_cast<std::size_t>(a)].name);
        return n;
    };
    std::sort(out.begin(), out.end(), [&](const PathBasisElement& x, const PathBasisElement& y) {
        if (x.degree != y.degree)
            return x.degree < y.degree;
        if (x.source != y.source)
            return x.source < y.source;
        if (x.target != y.target)
            return x.target < y.target;
        return names(x) < names(y);
    });
    return out;
}

bool has_directed_cycle(std::size_t n, const std::vector<std::pair<int, int>>& edges)
{
    return !longest_chain(n, edges).has_value();
}

std::optional<std::size_t> longest_chain(std::size_t n, const std::vector<std::pair<int, int>>& edges)
{
    // Kahn's algorithm; longest[v] = most edges on a path ending at v.
    std::vector<std::vector<int>> out(n);
    std::vector<std::size_t> indeg(n, 0), longest(n, 0);
    for (auto [s, t] : edges) {
        out[static_cast<std::size_t>(s)].push_back(t);
        ++indeg[static_cast<std::size_t>(t)];
    }
    std::vector<int> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0)
            queue.push_back(static_cast<int>(v));
    std::size_t visited = 0, best = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++visited;
        for (int t : out[static_cast<std::size_t>(v)]) {
            auto ut = static_cast<std::size_t>(t);
            longest[ut] = std::max(longest[ut], longest[static_cast<std::size_t>(v)] + 1);
            best = std::max(best, longest[ut]);
            if (--indeg[ut] == 0)
                queue.push_back(t);
        }
    }
    if (visited != n)
        return std::nullopt;
    return best;
}

}  // namespace ainf
