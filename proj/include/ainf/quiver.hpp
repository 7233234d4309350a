#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ainf/bimodule.hpp"

namespace ainf {

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
    int degree = 1;
};

class GradedQuiver {
public:
    GradedQuiver() = default;
    // Throws InputError on duplicate names, unknown endpoints or degree < 1.
    GradedQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::optional<int> vertex_index(const std::string& name) const;
    std::optional<int> arrow_index(const std::string& name) const;
    bool is_acyclic() const { return acyclic_; }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    bool acyclic_ = true;
};

// Trivial path e_v (empty word) or a composable arrow word read left to
// right: source(x_i) == target(x_{i+1}).
struct PathBasisElement {
    int source = 0;
    int target = 0;
    int degree = 0;
    std::vector<int> arrows;

    std::size_t length() const { return arrows.size(); }
    bool is_trivial() const { return arrows.empty(); }
    std::string label(const GradedQuiver& q) const;
};

struct PathBound {
    std::size_t max_length = 0;
    int min_degree = 0;
    int max_degree = 0;

    std::string str() const;
    friend bool operator==(const PathBound&, const PathBound&) = default;
};

// Sorted by (degree, source, target, arrow-name word). Cyclic quivers need a bound.
std::vector<PathBasisElement> enumerate_paths(const GradedQuiver& q,
                                              std::optional<PathBound> bound = std::nullopt);

// Whether a directed graph on n vertices with the given (source, target)
// edges has a directed cycle (loops count).
bool has_directed_cycle(std::size_t n, const std::vector<std::pair<int, int>>& edges);

// Number of letters in the longest composable word of the given edges, or
// nullopt if the edge graph has a cycle.
std::optional<std::size_t> longest_chain(std::size_t n, const std::vector<std::pair<int, int>>& edges);

}  // namespace ainf
