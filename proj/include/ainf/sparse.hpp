#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ainf/scalar.hpp"

namespace ainf {

// Finitely supported linear combination of basis indices. Never stores zeros.
class Vec {
public:
    using Map = std::map<std::size_t, Scalar>;

    Vec() = default;
    static Vec unit(std::size_t index, Scalar coeff = Scalar(1));

    void add(std::size_t index, const Scalar& coeff);
    void axpy(const Scalar& a, const Vec& x);  // this += a * x
    Vec scaled(const Scalar& a) const;
    Scalar coeff(std::size_t index) const;
    void erase(std::size_t index) { terms_.erase(index); }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Map::const_iterator begin() const { return terms_.begin(); }
    Map::const_iterator end() const { return terms_.end(); }
    std::size_t leading_index() const { return terms_.begin()->first; }
    const Map& terms() const { return terms_; }

    Vec operator-() const { return scaled(Scalar(-1)); }
    Vec& operator+=(const Vec& o)
    {
        axpy(Scalar(1), o);
        return *this;
    }
    Vec& operator-=(const Vec& o)
    {
        axpy(Scalar(-1), o);
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend bool operator==(const Vec& a, const Vec& b) { return a.terms_ == b.terms_; }

    // Applies a linear map given by the images of basis vectors.
    template <typename F>
    Vec apply(F&& image) const
    {
        Vec out;
        for (const auto& [i, c] : terms_)
            out.axpy(c, image(i));
        return out;
    }

    std::string str(const std::vector<std::string>* labels = nullptr) const;

private:
    Map terms_;
};

// rows x cols, entries stored per column.
class SparseMatrix {
public:
    SparseMatrix(std::size_t rows, std::size_t cols);
    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_columns(std::size_t rows, std::vector<Vec> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    void set(std::size_t r, std::size_t c, const Scalar& v);
    Scalar at(std::size_t r, std::size_t c) const { return cols_.at(c).coeff(r); }
    const Vec& column(std::size_t c) const { return cols_.at(c); }
    const std::vector<Vec>& columns() const { return cols_; }
    Vec apply(const Vec& x) const;
    std::size_t nonzeros() const;

private:
    std::size_t rows_;
    std::vector<Vec> cols_;
};

// Exact rank. Over Q the pivot is the entry of smallest magnitude
// (|numerator|, then denominator) with lowest (row, col) tie-break.
std::size_t rank(const SparseMatrix& m);

// Basis of the null space, one vector per free column of the reduced
// row echelon form (free coordinate 1). Size is cols - rank.
std::vector<Vec> kernel_basis(const SparseMatrix& m);

// Incrementally maintained reduced row echelon form of a set of vectors.
// Pivots are leading (smallest) indices.
class Echelon {
public:
    // Reduces v against the current rows (all pivot coordinates cleared).
    Vec reduce(Vec v) const;
    // Adds v if independent; returns true when the span grew.
    bool insert(Vec v);
    std::size_t rank() const { return rows_.size(); }
    bool contains(const Vec& v) const { return reduce(v).empty(); }
    // Rows in increasing pivot order, fully reduced and monic.
    std::vector<Vec> rows() const;

private:
    std::map<std::size_t, Vec> rows_;  // pivot -> monic row
};

// Dense exact inverse of a square matrix given by columns over 0..n-1.
// Throws StructureError if singular.
std::vector<Vec> invert_columns(const std::vector<Vec>& columns);

}  // namespace ainf
