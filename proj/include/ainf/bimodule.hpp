#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ainf {

// Vertex indices refer to the ordered vertex list of the owning bimodule.
struct BasisTag {
    int source = 0;
    int target = 0;
    int degree = 0;

    friend auto operator<=>(const BasisTag&, const BasisTag&) = default;
};

// (source, target, degree) -> dimension; zero cells are never stored.
using BlockKey = std::tuple<int, int, int>;
using DimTable = std::map<BlockKey, std::size_t>;

inline BlockKey block_key(const BasisTag& t) { return {t.source, t.target, t.degree}; }

// Finite graded R-bimodule with an ordered, tagged basis. R is the
// semisimple ring spanned by the vertex idempotents.
class GradedBimodule {
public:
    GradedBimodule() = default;
    explicit GradedBimodule(std::vector<std::string> vertices) : vertices_(std::move(vertices)) {}

    std::size_t add(BasisTag tag, std::string label);

    std::size_t size() const { return tags_.size(); }
    bool empty() const { return tags_.empty(); }
    const BasisTag& tag(std::size_t i) const { return tags_.at(i); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<BasisTag>& tags() const { return tags_; }
    const std::vector<std::string>& labels() const { return labels_; }
    int degree(std::size_t i) const { return tags_.at(i).degree; }
    std::optional<std::size_t> find(const std::string& label) const;

    const std::vector<std::string>& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    const std::string& vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }

    // x (x) y exists iff source(x) == target(y).
    bool composable(std::size_t x, std::size_t y) const { return tags_[x].source == tags_[y].target; }

    DimTable dim_table() const;
    std::map<int, std::size_t> degree_dims() const;

    // Basis of a followed by basis of b.
    static GradedBimodule direct_sum(const GradedBimodule& a, const GradedBimodule& b);
    // Composable pairs (i, j) in lexicographic order; pairs[k] is the k-th basis element.
    static GradedBimodule tensor(const GradedBimodule& a, const GradedBimodule& b,
                                 std::vector<std::pair<std::size_t, std::size_t>>* pairs = nullptr);
    // M[n]: degree d becomes d - n.
    GradedBimodule shifted(int n) const;
    // D(M): degree -d, source and target swapped.
    GradedBimodule dual() const;

private:
    std::vector<std::string> vertices_;
    std::vector<BasisTag> tags_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> by_label_;
};

// Structural equality of dimension tables plus a readable diff.
struct DimDiff {
    BlockKey key;
    std::size_t left = 0;
    std::size_t right = 0;
};

std::vector<DimDiff> diff_tables(const DimTable& a, const DimTable& b);
std::map<int, std::size_t> degree_totals(const DimTable& t);
std::size_t total_dim(const DimTable& t);

}  // namespace ainf
