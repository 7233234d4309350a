#include "ainf/sparse.hpp"

#include <optional>
#include <sstream>

namespace ainf {

Vec Vec::unit(std::size_t index, Scalar coeff)
{
    Vec v;
    v.add(index, coeff);
    return v;
}

void Vec::add(std::size_t index, const Scalar& coeff)
{
    if (coeff.is_zero())
        return;
    auto it = terms_.find(index);
    if (it == terms_.end()) {
        terms_.emplace(index, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero())
        terms_.erase(it);
}

void Vec::axpy(const Scalar& a, const Vec& x)
{
    if (a.is_zero())
        return;
    bool one = a.is_one();
    for (const auto& [i, c] : x.terms_)
        add(i, one ? c : a * c);
}

Vec Vec::scaled(const Scalar& a) const
{
    Vec out;
    if (a.is_zero())
        return out;
    for (const auto& [i, c] : terms_)
        out.terms_.emplace(i, a * c);
    return out;
}

Scalar Vec::coeff(std::size_t index) const
{
    auto it = terms_.find(index);
    return it == terms_.end() ? Scalar(0) : it->second;
}

std::string Vec::str(const std::vector<std::string>* labels) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << c << ' ';
        if (labels && i < labels->size())
            os << (*labels)[i];
        else
            os << '#' << i;
    }
    return os.str();
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.cols_[i] = Vec::unit(i);
    return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<Vec> columns)
{
    SparseMatrix m(rows, 0);
    for (const auto& c : columns)
        if (!c.empty() && std::prev(c.end())->first >= rows)
            throw StructureError("column entry outside the row range");
    m.cols_ = std::move(columns);
    return m;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v)
{
    if (r >= rows_ || c >= cols_.size())
        throw StructureError("matrix index out of range");
    cols_[c].erase(r);
    cols_[c].add(r, v);
}

Vec SparseMatrix::apply(const Vec& x) const
{
    return x.apply([this](std::size_t j) -> const Vec& { return cols_.at(j); });
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& c : cols_)
        n += c.size();
    return n;
}

std::size_t rank(const SparseMatrix& m)
{
    // Row-oriented copy so eliminations touch whole rows.
    std::vector<Vec> rowv(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            rowv[r].add(c, v);
    std::vector<bool> row_done(m.rows(), false);
    std::size_t rk = 0;
    while (true) {
        std::optional<std::size_t> pr, pc;
        const Scalar* best = nullptr;
        for (std::size_t r = 0; r < rowv.size(); ++r) {
            if (row_done[r])
                continue;
            for (const auto& [c, v] : rowv[r]) {
                if (!best || v.smaller_magnitude_than(*best)) {
                    best = &v;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (!best)
            break;
        std::size_t r0 = *pr, c0 = *pc;
        Scalar inv = best->inverse();
        row_done[r0] = true;
        ++rk;
        const Vec pivot_row = rowv[r0];
        for (std::size_t r = 0; r < rowv.size(); ++r) {
            if (row_done[r])
                continue;
            Scalar f = rowv[r].coeff(c0);
            if (!f.is_zero())
                rowv[r].axpy(-(f * inv), pivot_row);
        }
    }
    return rk;
}

std::vector<Vec> kernel_basis(const SparseMatrix& m)
{
    // Rows of the matrix, reduced to RREF over column indices.
    std::vector<Vec> rowv(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            rowv[r].add(c, v);
    Echelon ech;
    for (auto& r : rowv)
        ech.insert(std::move(r));
    std::vector<Vec> rref = ech.rows();
    std::vector<bool> is_pivot(m.cols(), false);
    for (const auto& r : rref)
        is_pivot[r.leading_index()] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vec v = Vec::unit(f);
        for (const auto& r : rref) {
            Scalar c = r.coeff(f);
            if (!c.is_zero())
                v.add(r.leading_index(), -c);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Vec Echelon::reduce(Vec v) const
{
    // Clearing pivots in increasing order suffices: rows are fully reduced,
    // so eliminating one pivot never reintroduces an earlier one.
    for (const auto& [p, row] : rows_) {
        Scalar c = v.coeff(p);
        if (!c.is_zero())
            v.axpy(-c, row);
    }
    return v;
}

bool Echelon::insert(Vec v)
{
    v = reduce(std::move(v));
    if (v.empty())
        return false;
    std::size_t p = v.leading_index();
    v = v.scaled(v.coeff(p).inverse());
    for (auto& [q, row] : rows_) {
        Scalar c = row.coeff(p);
        if (!c.is_zero())
            row.axpy(-c, v);
    }
    rows_.emplace(p, std::move(v));
    return true;
}

std::vector<Vec> Echelon::rows() const
{
    std::vector<Vec> out;
    out.reserve(rows_.size());
    for (const auto& [p, r] : rows_)
        out.push_back(r);
    return out;
}

std::vector<Vec> invert_columns(const std::vector<Vec>& columns)
{
    const std::size_t n = columns.size();
    // Gauss-Jordan on rows of [M | I].
    std::vector<Vec> rows(n);
    for (std::size_t c = 0; c < n; ++c)
        for (const auto& [r, v] : columns[c]) {
            if (r >= n)
                throw StructureError("non-square matrix in inversion");
            rows[r].add(c, v);
        }
    for (std::size_t r = 0; r < n; ++r)
        rows[r].add(n + r, Scalar(1));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && rows[p].coeff(c).is_zero())
            ++p;
        if (p == n)
            throw StructureError("singular change-of-basis matrix");
        std::swap(rows[p], rows[c]);
        rows[c] = rows[c].scaled(rows[c].coeff(c).inverse());
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c)
                continue;
            Scalar f = rows[r].coeff(c);
            if (!f.is_zero())
                rows[r].axpy(-f, rows[c]);
        }
    }
    std::vector<Vec> inv(n);
    for (std::size_t r = 0; r < n; ++r)
        for (const auto& [c, v] : rows[r])
            if (c >= n)
                inv[c - n].add(r, v);
    return inv;
}

}  // namespace ainf
