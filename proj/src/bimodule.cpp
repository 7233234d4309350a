#include "ainf/bimodule.hpp"

#include "ainf/scalar.hpp"

namespace ainf {

std::size_t GradedBimodule::add(BasisTag tag, std::string label)
{
    if (tag.source < 0 || tag.target < 0 || static_cast<std::size_t>(tag.source) >= vertices_.size() ||
        static_cast<std::size_t>(tag.target) >= vertices_.size())
        throw StructureError("basis element '" + label + "' refers to an unknown vertex");
    std::size_t i = tags_.size();
    tags_.push_back(tag);
    by_label_.emplace(label, i);
    labels_.push_back(std::move(label));
    return i;
}

std::optional<std::size_t> GradedBimodule::find(const std::string& label) const
{
    auto it = by_label_.find(label);
    if (it == by_label_.end())
        return std::nullopt;
    return it->second;
}

DimTable GradedBimodule::dim_table() const
{
    DimTable t;
    for (const auto& tag : tags_)
        ++t[block_key(tag)];
    return t;
}

std::map<int, std::size_t> GradedBimodule::degree_dims() const
{
    std::map<int, std::size_t> d;
    for (const auto& tag : tags_)
        ++d[tag.degree];
    return d;
}

GradedBimodule GradedBimodule::direct_sum(const GradedBimodule& a, const GradedBimodule& b)
{
    if (a.vertices_ != b.vertices_)
        throw StructureError("direct sum over different vertex sets");
    GradedBimodule out(a.vertices_);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.add(a.tag(i), a.label(i));
    for (std::size_t i = 0; i < b.size(); ++i)
        out.add(b.tag(i), b.label(i));
    return out;
}

GradedBimodule GradedBimodule::tensor(const GradedBimodule& a, const GradedBimodule& b,
                                      std::vector<std::pair<std::size_t, std::size_t>>* pairs)
{
    if (a.vertices_ != b.vertices_)
        throw StructureError("tensor product over different vertex sets");
    GradedBimodule out(a.vertices_);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (a.tag(i).source != b.tag(j).target)
                continue;
            out.add({b.tag(j).source, a.tag(i).target, a.tag(i).degree + b.tag(j).degree},
                    a.label(i) + "|" + b.label(j));
            if (pairs)
                pairs->emplace_back(i, j);
        }
    return out;
}

GradedBimodule GradedBimodule::shifted(int n) const
{
    GradedBimodule out(vertices_);
    std::string prefix = "[" + std::to_string(n) + "]";
    for (std::size_t i = 0; i < size(); ++i) {
        BasisTag t = tags_[i];
        t.degree -= n;
        out.add(t, prefix + labels_[i]);
    }
    return out;
}

GradedBimodule GradedBimodule::dual() const
{
    GradedBimodule out(vertices_);
    for (std::size_t i = 0; i < size(); ++i)
        out.add({tags_[i].target, tags_[i].source, -tags_[i].degree}, labels_[i] + "*");
    return out;
}

std::vector<DimDiff> diff_tables(const DimTable& a, const DimTable& b)
{
    std::vector<DimDiff> out;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            out.push_back({ia->first, ia->second, 0});
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            out.push_back({ib->first, 0, ib->second});
            ++ib;
        } else {
            if (ia->second != ib->second)
                out.push_back({ia->first, ia->second, ib->second});
            ++ia;
            ++ib;
        }
    }
    return out;
}

std::map<int, std::size_t> degree_totals(const DimTable& t)
{
    std::map<int, std::size_t> out;
    for (const auto& [k, v] : t)
        out[std::get<2>(k)] += v;
    return out;
}

std::size_t total_dim(const DimTable& t)
{
    std::size_t n = 0;
    for (const auto& [k, v] : t)
        n += v;
    return n;
}

}  // namespace ainf
