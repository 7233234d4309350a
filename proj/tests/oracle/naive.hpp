#pragma once

// Brute-force reference computations with dense rational matrices. Nothing
// here includes or links the library.

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include <gmpxx.h>

namespace naive {

using Q = mpq_class;
using Key = std::tuple<int, int, int>;  // (source, target, degree)
using Table = std::map<Key, long>;
using Col = std::map<int, Q>;

struct Arrow {
    int src, tgt, deg;
};

struct Quiver {
    int n = 0;
    std::vector<Arrow> arrows;
};

struct Elem {
    int src = 0, tgt = 0, deg = 0;
    std::vector<int> word;
};

// Augmented algebra: unit[v] is the basis index of e_v; ops keyed by the
// full input tuple (arity = tuple length).
struct Algebra {
    int nv = 0;
    std::vector<Elem> basis;
    std::vector<int> unit;
    std::map<std::vector<int>, Col> ops;

    bool is_unit(int i) const;
    int find(const std::vector<int>& word, int src, int tgt) const;
};

struct Complex {
    std::vector<Elem> cells;
    std::vector<Col> d;
};

long rank(std::vector<std::vector<Q>> m);
long rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p);

Table homology(const Complex& c);
bool square_zero(const Complex& c);
Table cells_table(const std::vector<Elem>& cells);
Table dual_table(const Table& t);
long total(const Table& t);
std::map<int, long> by_degree(const Table& t);

// Paths of the quiver, words read left to right (src(w_i) = tgt(w_{i+1})).
std::vector<Elem> paths(const Quiver& q);
Table path_table(const Quiver& q);
// kQ with concatenation; extra[...] are added higher products given by
// input and output arrow words.
Algebra path_algebra(const Quiver& q);
void add_op(Algebra& a, const std::vector<std::vector<int>>& inputs, const std::vector<std::pair<Q, std::vector<int>>>& out);

struct Bar {
    Complex cx;                         // includes one empty word per vertex
    std::vector<std::vector<int>> words;  // letters as algebra basis indices
};

// Bar construction on the non-unit basis, words of length <= max_len.
Bar bar(const Algebra& a, std::optional<int> max_len = std::nullopt);

// Cobar of a bar coalgebra as a dg algebra (m1, m2).
Algebra cobar(const Bar& b);

// BA (x)_pi A for a dg algebra A.
Complex twisted(const Algebra& a);

// 0 -> V (x) kQ -> kQ -> R -> 0: returns (rank mu, rank eps, dims).
struct Resolution {
    long dim_vkq = 0, dim_kq = 0, dim_r = 0, rank_mu = 0, rank_eps = 0;
    bool exact() const { return rank_mu == dim_vkq && rank_eps == dim_r && dim_kq == rank_mu + rank_eps; }
};
Resolution resolution(const Quiver& q);

}  // namespace naive
