#include "naive.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace naive {

bool Algebra::is_unit(int i) const
{
    for (int u : unit)
        if (u == i)
            return true;
    return false;
}

int Algebra::find(const std::vector<int>& word, int src, int tgt) const
{
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].word == word && basis[i].src == src && basis[i].tgt == tgt)
            return static_cast<int>(i);
    return -1;
}

long rank(std::vector<std::vector<Q>> m)
{
    long r = 0;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < static_cast<long>(rows); ++c) {
        std::size_t p = static_cast<std::size_t>(r);
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[static_cast<std::size_t>(r)]);
        auto& piv = m[static_cast<std::size_t>(r)];
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == static_cast<std::size_t>(r) || m[i][c] == 0)
                continue;
            Q f = m[i][c] / piv[c];
            for (std::size_t k = c; k < cols; ++k)
                m[i][k] -= f * piv[k];
        }
        ++r;
    }
    return r;
}

long rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p)
{
    auto inv = [&](std::int64_t a) {
        std::int64_t r = 1, e = p - 2;
        a %= p;
        while (e) {
            if (e & 1)
                r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    for (auto& row : m)
        for (auto& x : row)
            x = ((x % p) + p) % p;
    long r = 0;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < static_cast<long>(rows); ++c) {
        std::size_t pr = static_cast<std::size_t>(r);
        while (pr < rows && m[pr][c] == 0)
            ++pr;
        if (pr == rows)
            continue;
        std::swap(m[pr], m[static_cast<std::size_t>(r)]);
        auto& piv = m[static_cast<std::size_t>(r)];
        std::int64_t iv = inv(piv[c]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == static_cast<std::size_t>(r) || m[i][c] == 0)
                continue;
            std::int64_t f = m[i][c] * iv % p;
            for (std::size_t k = c; k < cols; ++k)
                m[i][k] = ((m[i][k] - f * piv[k]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

Table cells_table(const std::vector<Elem>& cells)
{
    Table t;
    for (const auto& e : cells)
        ++t[{e.src, e.tgt, e.deg}];
    return t;
}

Table homology(const Complex& c)
{
    // block (src, tgt) -> degree -> indices
    std::map<std::pair<int, int>, std::map<int, std::vector<int>>> blocks;
    for (std::size_t i = 0; i < c.cells.size(); ++i)
        blocks[{c.cells[i].src, c.cells[i].tgt}][c.cells[i].deg].push_back(static_cast<int>(i));
    Table out;
    for (const auto& [st, degs] : blocks) {
        std::map<int, long> rk;  // rank of d leaving degree k
        for (const auto& [k, from] : degs) {
            auto it = degs.find(k + 1);
            if (it == degs.end()) {
                for (int j : from)
                    if (!c.d[static_cast<std::size_t>(j)].empty())
                        throw std::logic_error("differential leaves its block or degree");
                rk[k] = 0;
                continue;
            }
            const auto& to = it->second;
            std::map<int, int> row;
            for (std::size_t r = 0; r < to.size(); ++r)
                row[to[r]] = static_cast<int>(r);
            std::vector<std::vector<Q>> m(to.size(), std::vector<Q>(from.size()));
            for (std::size_t j = 0; j < from.size(); ++j)
                for (const auto& [i, v] : c.d[static_cast<std::size_t>(from[j])]) {
                    auto ri = row.find(i);
                    if (ri == row.end())
                        throw std::logic_error("differential leaves its block or degree");
                    m[static_cast<std::size_t>(ri->second)][j] = v;
                }
            rk[k] = rank(m);
        }
        for (const auto& [k, from] : degs) {
            long h = static_cast<long>(from.size()) - rk[k] - (rk.count(k - 1) ? rk[k - 1] : 0);
            if (h)
                out[{st.first, st.second, k}] = h;
        }
    }
    return out;
}

bool square_zero(const Complex& c)
{
    for (const auto& col : c.d) {
        Col dd;
        for (const auto& [i, v] : col)
            for (const auto& [k, w] : c.d[static_cast<std::size_t>(i)])
                dd[k] += v * w;
        for (const auto& [k, v] : dd)
            if (v != 0)
                return false;
    }
    return true;
}

Table dual_table(const Table& t)
{
    Table o;
    for (const auto& [k, n] : t)
        o[{std::get<1>(k), std::get<0>(k), -std::get<2>(k)}] = n;
    return o;
}

long total(const Table& t)
{
    long s = 0;
    for (const auto& [k, n] : t)
        s += n;
    return s;
}

std::map<int, long> by_degree(const Table& t)
{
    std::map<int, long> o;
    for (const auto& [k, n] : t)
        o[std::get<2>(k)] += n;
    return o;
}

std::vector<Elem> paths(const Quiver& q)
{
    std::vector<Elem> out;
    std::function<void(Elem)> grow = [&](Elem p) {
        out.push_back(p);
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
            if (q.arrows[a].tgt == p.src) {
                Elem n = p;
                n.word.push_back(static_cast<int>(a));
                n.src = q.arrows[a].src;
                n.deg += q.arrows[a].deg;
                grow(n);
            }
    };
    for (int v = 0; v < q.n; ++v)
        grow(Elem{v, v, 0, {}});
    return out;
}

Table path_table(const Quiver& q) { return cells_table(paths(q)); }

Algebra path_algebra(const Quiver& q)
{
    Algebra a;
    a.nv = q.n;
    a.basis = paths(q);
    a.unit.assign(static_cast<std::size_t>(q.n), -1);
    for (std::size_t i = 0; i < a.basis.size(); ++i)
        if (a.basis[i].word.empty())
            a.unit[static_cast<std::size_t>(a.basis[i].src)] = static_cast<int>(i);
    for (std::size_t x = 0; x < a.basis.size(); ++x)
        for (std::size_t y = 0; y < a.basis.size(); ++y) {
            if (a.basis[x].src != a.basis[y].tgt)
                continue;
            std::vector<int> w = a.basis[x].word;
            w.insert(w.end(), a.basis[y].word.begin(), a.basis[y].word.end());
            int z = a.find(w, a.basis[y].src, a.basis[x].tgt);
            a.ops[{static_cast<int>(x), static_cast<int>(y)}][z] = 1;
        }
    return a;
}

void add_op(Algebra& a, const std::vector<std::vector<int>>& inputs, const std::vector<std::pair<Q, std::vector<int>>>& out)
{
    auto locate = [&](const std::vector<int>& w) {
        for (std::size_t i = 0; i < a.basis.size(); ++i)
            if (a.basis[i].word == w && !w.empty())
                return static_cast<int>(i);
        throw std::logic_error("unknown path");
    };
    std::vector<int> key;
    for (const auto& w : inputs)
        key.push_back(locate(w));
    Col c;
    for (const auto& [q, w] : out)
        c[locate(w)] += q;
    a.ops[key] = c;
}

namespace {

int sgn(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

Bar bar(const Algebra& a, std::optional<int> max_len)
{
    Bar b;
    std::vector<int> letters;
    for (std::size_t i = 0; i < a.basis.size(); ++i)
        if (!a.is_unit(static_cast<int>(i)))
            letters.push_back(static_cast<int>(i));
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& w) {
        if (max_len && static_cast<int>(w.size()) >= *max_len)
            return;
        for (int l : letters) {
            if (!w.empty() && a.basis[static_cast<std::size_t>(w.back())].src != a.basis[static_cast<std::size_t>(l)].tgt)
                continue;
            w.push_back(l);
            if (w.size() > 64)
                throw std::logic_error("infinite bar construction");
            b.words.push_back(w);
            grow(w);
            w.pop_back();
        }
    };
    std::vector<int> w;
    grow(w);
    std::map<std::vector<int>, int> index;
    // Empty words first, one per vertex.
    for (int v = 0; v < a.nv; ++v)
        b.cx.cells.push_back({v, v, 0, {}});
    for (const auto& word : b.words) {
        Elem e;
        e.word = word;
        e.tgt = a.basis[static_cast<std::size_t>(word.front())].tgt;
        e.src = a.basis[static_cast<std::size_t>(word.back())].src;
        for (int l : word)
            e.deg += a.basis[static_cast<std::size_t>(l)].deg - 1;
        index[word] = static_cast<int>(b.cx.cells.size());
        b.cx.cells.push_back(e);
    }
    b.words.insert(b.words.begin(), static_cast<std::size_t>(a.nv), std::vector<int>{});
    b.cx.d.assign(b.cx.cells.size(), {});
    for (std::size_t c = static_cast<std::size_t>(a.nv); c < b.cx.cells.size(); ++c) {
        const auto& word = b.words[c];
        long prefix = 0;
        for (std::size_t i = 0; i < word.size(); ++i) {
            for (std::size_t n = 1; i + n <= word.size(); ++n) {
                std::vector<int> in(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i + n));
                auto it = a.ops.find(in);
                if (it == a.ops.end())
                    continue;
                long e = 0;
                for (std::size_t j = 0; j < n; ++j)
                    e += static_cast<long>(n - 1 - j) * (a.basis[static_cast<std::size_t>(in[j])].deg - 1);
                int s = -sgn(e) * sgn(prefix);
                for (const auto& [o, v] : it->second) {
                    if (v == 0)
                        continue;
                    if (a.is_unit(o))
                        throw std::logic_error("product lands on a unit");
                    std::vector<int> nw(word.begin(), word.begin() + static_cast<long>(i));
                    nw.push_back(o);
                    nw.insert(nw.end(), word.begin() + static_cast<long>(i + n), word.end());
                    auto t = index.find(nw);
                    if (t == index.end()) {
                        if (max_len)
                            continue;
                        throw std::logic_error("bar word missing");
                    }
                    b.cx.d[c][t->second] += v * s;
                }
            }
            prefix += a.basis[static_cast<std::size_t>(word[i])].deg - 1;
        }
        for (auto it = b.cx.d[c].begin(); it != b.cx.d[c].end();)
            it = it->second == 0 ? b.cx.d[c].erase(it) : std::next(it);
    }
    return b;
}

Algebra cobar(const Bar& b)
{
    // Letters: the reduced (non-empty) bar words.
    const auto& cells = b.cx.cells;
    std::vector<int> letters;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!b.words[i].empty())
            letters.push_back(static_cast<int>(i));
    std::map<std::vector<int>, int> word_index;
    for (std::size_t i = 0; i < b.words.size(); ++i)
        if (!b.words[i].empty())
            word_index[b.words[i]] = static_cast<int>(i);
    int nv = 0;
    for (const auto& w : b.words)
        nv += w.empty();

    Algebra u;
    u.nv = nv;
    std::map<std::vector<int>, int> index;
    for (int v = 0; v < nv; ++v) {
        u.unit.push_back(static_cast<int>(u.basis.size()));
        u.basis.push_back({v, v, 0, {}});
    }
    auto ldeg = [&](int l) { return cells[static_cast<std::size_t>(l)].deg + 1; };
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& w) {
        for (int l : letters) {
            if (!w.empty() && cells[static_cast<std::size_t>(w.back())].src != cells[static_cast<std::size_t>(l)].tgt)
                continue;
            w.push_back(l);
            if (w.size() > 64)
                throw std::logic_error("infinite cobar construction");
            Elem e;
            e.word = w;
            e.tgt = cells[static_cast<std::size_t>(w.front())].tgt;
            e.src = cells[static_cast<std::size_t>(w.back())].src;
            for (int x : w)
                e.deg += ldeg(x);
            index[w] = static_cast<int>(u.basis.size());
            u.basis.push_back(e);
            grow(w);
            w.pop_back();
        }
    };
    std::vector<int> w;
    grow(w);

    // d on one letter, as a combination of cobar words (length 1 or 2).
    auto dletter = [&](int l) {
        std::map<std::vector<int>, Q> out;
        for (const auto& [i, v] : b.cx.d[static_cast<std::size_t>(l)])
            out[{i}] -= v;
        const auto& word = b.words[static_cast<std::size_t>(l)];
        for (std::size_t k = 1; k < word.size(); ++k) {
            std::vector<int> c1(word.begin(), word.begin() + static_cast<long>(k)), c2(word.begin() + static_cast<long>(k), word.end());
            int i1 = word_index.at(c1), i2 = word_index.at(c2);
            out[{i1, i2}] += sgn(cells[static_cast<std::size_t>(i1)].deg);
        }
        return out;
    };
    for (std::size_t x = static_cast<std::size_t>(nv); x < u.basis.size(); ++x) {
        const auto& cw = u.basis[x].word;
        Col col;
        long prefix = 0;
        for (std::size_t i = 0; i < cw.size(); ++i) {
            for (const auto& [mid, v] : dletter(cw[i])) {
                std::vector<int> nw(cw.begin(), cw.begin() + static_cast<long>(i));
                nw.insert(nw.end(), mid.begin(), mid.end());
                nw.insert(nw.end(), cw.begin() + static_cast<long>(i + 1), cw.end());
                col[index.at(nw)] += v * sgn(prefix);
            }
            prefix += ldeg(cw[i]);
        }
        Col clean;
        for (const auto& [k, v] : col)
            if (v != 0)
                clean[k] = v;
        if (!clean.empty())
            u.ops[{static_cast<int>(x)}] = clean;
    }
    for (std::size_t x = 0; x < u.basis.size(); ++x)
        for (std::size_t y = 0; y < u.basis.size(); ++y) {
            if (u.basis[x].src != u.basis[y].tgt)
                continue;
            std::vector<int> cw = u.basis[x].word;
            cw.insert(cw.end(), u.basis[y].word.begin(), u.basis[y].word.end());
            int z = cw.empty() ? u.unit[static_cast<std::size_t>(u.basis[x].src)] : index.at(cw);
            u.ops[{static_cast<int>(x), static_cast<int>(y)}][z] = 1;
        }
    return u;
}

Complex twisted(const Algebra& a)
{
    Bar b = bar(a);
    Complex c;
    std::map<std::pair<int, int>, int> index;
    for (std::size_t w = 0; w < b.cx.cells.size(); ++w)
        for (std::size_t x = 0; x < a.basis.size(); ++x) {
            if (b.cx.cells[w].src != a.basis[x].tgt)
                continue;
            index[{static_cast<int>(w), static_cast<int>(x)}] = static_cast<int>(c.cells.size());
            c.cells.push_back({a.basis[x].src, b.cx.cells[w].tgt, b.cx.cells[w].deg + a.basis[x].deg, {}});
        }
    std::map<std::vector<int>, int> word_index;
    for (std::size_t i = 0; i < b.words.size(); ++i)
        if (!b.words[i].empty())
            word_index[b.words[i]] = static_cast<int>(i);
    c.d.assign(c.cells.size(), {});
    for (const auto& [wx, j] : index) {
        auto [w, x] = wx;
        Col& col = c.d[static_cast<std::size_t>(j)];
        const Elem& we = b.cx.cells[static_cast<std::size_t>(w)];
        for (const auto& [w2, v] : b.cx.d[static_cast<std::size_t>(w)])
            col[index.at({w2, x})] += v;
        auto m1 = a.ops.find({x});
        if (m1 != a.ops.end())
            for (const auto& [x2, v] : m1->second)
                col[index.at({w, x2})] += v * sgn(we.deg);
        const auto& word = b.words[static_cast<std::size_t>(w)];
        if (!word.empty()) {
            int last = word.back();
            std::vector<int> pre(word.begin(), word.end() - 1);
            int wp;
            long pdeg = 0;
            if (pre.empty()) {
                wp = a.basis[static_cast<std::size_t>(last)].tgt;  // empty word at the target of the letter
            } else {
                wp = word_index.at(pre);
                pdeg = b.cx.cells[static_cast<std::size_t>(wp)].deg;
            }
            auto m2 = a.ops.find({last, x});
            if (m2 != a.ops.end())
                for (const auto& [x2, v] : m2->second)
                    col[index.at({wp, x2})] += v * sgn(pdeg);
        }
        for (auto it = col.begin(); it != col.end();)
            it = it->second == 0 ? col.erase(it) : std::next(it);
    }
    return c;
}

Resolution resolution(const Quiver& q)
{
    auto ps = paths(q);
    Resolution r;
    r.dim_kq = static_cast<long>(ps.size());
    r.dim_r = q.n;
    // mu: a (x) p -> ap, one column per composable pair.
    std::vector<std::vector<Q>> mu;
    std::vector<std::vector<Q>> cols;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        for (const auto& p : ps) {
            if (q.arrows[a].src != p.tgt)
                continue;
            ++r.dim_vkq;
            std::vector<int> w{static_cast<int>(a)};
            w.insert(w.end(), p.word.begin(), p.word.end());
            std::vector<Q> col(ps.size());
            for (std::size_t i = 0; i < ps.size(); ++i)
                if (ps[i].word == w && ps[i].src == p.src)
                    col[i] = 1;
            cols.push_back(col);
        }
    if (!cols.empty()) {
        mu.assign(ps.size(), std::vector<Q>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < ps.size(); ++i)
                mu[i][j] = cols[j][i];
        r.rank_mu = rank(mu);
    }
    std::vector<std::vector<Q>> eps(static_cast<std::size_t>(q.n), std::vector<Q>(ps.size()));
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (ps[i].word.empty())
            eps[static_cast<std::size_t>(ps[i].src)][i] = 1;
    r.rank_eps = rank(eps);
    // Composite must vanish: eps(mu) = 0 since ap is never trivial.
    return r;
}

}  // namespace naive
