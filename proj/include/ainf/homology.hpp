#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ainf/bimodule.hpp"
#include "ainf/sparse.hpp"

namespace ainf {

struct DegreeWindow {
    int lo = 0;
    int hi = 0;

    bool contains(int d) const { return lo <= d && d <= hi; }
    std::string str() const { return std::to_string(lo) + ":" + std::to_string(hi); }
    friend bool operator==(const DegreeWindow&, const DegreeWindow&) = default;
};

// Graded space with a degree +1 differential, given by the image of every
// basis element. `trusted` marks the degrees where a truncated complex is
// known to be exact (unset: the complex is complete).
struct ChainComplexView {
    GradedBimodule space;
    std::vector<Vec> differential;
    std::optional<DegreeWindow> trusted;

    std::size_t size() const { return space.size(); }
    Vec apply(const Vec& v) const;
};

struct HomologyReport {
    DegreeWindow window;
    std::map<int, std::size_t> dims;                // every degree of the window
    std::map<int, std::vector<Vec>> representatives;  // canonical echelon form per block
    DimTable table;                                 // nonzero (source, target, degree) cells

    std::size_t total() const;
};

// Throws StructureError unless d has degree +1, stays in its block and
// squares to zero on degrees [window.lo - 1, window.hi].
void check_complex(const ChainComplexView& c, std::optional<DegreeWindow> window = std::nullopt);

// Full support of the space, or [0, 0] when empty.
DegreeWindow support(const GradedBimodule& m);

HomologyReport homology(const ChainComplexView& c, std::optional<DegreeWindow> window = std::nullopt);

// Sum over degrees of (-1)^n dim C^n.
long euler_characteristic(const GradedBimodule& m);
long euler_characteristic(const DimTable& t);

// Columns f[i] give the image of basis i of `from` in `to`. The cone is
// from[1] (+) to with d(c) = -d c + f(c).
ChainComplexView mapping_cone(const ChainComplexView& from, const ChainComplexView& to, const std::vector<Vec>& f);

// Complex with zero differential on the vertex ring R, one degree-0 element per vertex.
ChainComplexView ground_ring_complex(const std::vector<std::string>& vertices);
DimTable ground_ring_table(std::size_t vertex_count);

}  // namespace ainf
