#include "ainf/bar_cobar.hpp"

#include <algorithm>
#include <functional>

#include "ainf/parallel.hpp"
#include "ainf/quiver.hpp"

namespace ainf {

namespace {

Scalar sign_of(long x)
{
    return (((x % 2) + 2) % 2) ? Scalar(-1) : Scalar(1);
}

struct WordSpace {
    GradedBimodule space;
    std::vector<std::vector<std::size_t>> words;
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::size_t> empty_word;
};

// All composable words over `letters` admitted by the bound, sorted by
// (degree, source, target, letter sequence); one empty word per vertex.
WordSpace enumerate_words(const GradedBimodule& letters, std::optional<WordBound> bound,
                          const std::function<std::string(const std::vector<std::size_t>&, int)>& label)
{
    std::vector<std::pair<int, int>> edges;
    for (const auto& t : letters.tags())
        edges.emplace_back(t.source, t.target);
    bool finite = !has_directed_cycle(letters.vertex_count(), edges);
    if (!finite && !(bound && bound->max_length))
        throw InputError("word space is infinite (letter graph has a cycle); a length bound is required");

    struct Item {
        BasisTag tag;
        std::vector<std::size_t> word;
    };
    std::vector<Item> items;
    for (std::size_t v = 0; v < letters.vertex_count(); ++v)
        if (!bound || bound->admits(0, 0))
            items.push_back({{static_cast<int>(v), static_cast<int>(v), 0}, {}});
    std::vector<std::size_t> cur;
    std::function<void(int, int, int)> rec = [&](int src, int tgt, int deg) {
        if (bound && bound->max_length && cur.size() >= *bound->max_length)
            return;
        for (std::size_t j = 0; j < letters.size(); ++j) {
            const BasisTag& t = letters.tag(j);
            if (!cur.empty() && src != t.target)
                continue;
            cur.push_back(j);
            int ntgt = cur.size() == 1 ? t.target : tgt;
            int ndeg = deg + t.degree;
            if (!bound || bound->admits(cur.size(), ndeg))
                items.push_back({{t.source, ntgt, ndeg}, cur});
            rec(t.source, ntgt, ndeg);
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.tag.degree != b.tag.degree)
            return a.tag.degree < b.tag.degree;
        if (a.tag.source != b.tag.source)
            return a.tag.source < b.tag.source;
        if (a.tag.target != b.tag.target)
            return a.tag.target < b.tag.target;
        return a.word < b.word;
    });
    WordSpace ws;
    ws.space = GradedBimodule(letters.vertices());
    ws.empty_word.assign(letters.vertex_count(), static_cast<std::size_t>(-1));
    for (auto& it : items) {
        std::size_t i = ws.space.add(it.tag, label(it.word, it.tag.source));
        if (it.word.empty())
            ws.empty_word[static_cast<std::size_t>(it.tag.source)] = i;
        else
            ws.index.emplace(it.word, i);
        ws.words.push_back(std::move(it.word));
    }
    return ws;
}

std::string join_labels(const GradedBimodule& letters, const std::vector<std::size_t>& w, const char* open,
                        const char* close)
{
    std::string s = open;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += '|';
        s += letters.label(w[i]);
    }
    return s + close;
}

std::vector<std::size_t> non_units(const AInfinityStructure& a)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!a.unit->is_unit(i))
            out.push_back(i);
    return out;
}

void require_augmented(const AInfinityStructure& a, const char* what)
{
    if (!a.unit)
        throw InputError(std::string(what) + " needs an augmented structure");
    if (!a.unit->is_normalized())
        throw InputError(std::string(what) + " needs the augmentation to be the projection onto the units");
    if (a.ring != GroundRing::vertices)
        throw InputError(std::string(what) + " needs tensor products over the vertex ring");
}

using Tensor2 = std::map<std::pair<std::size_t, std::size_t>, Scalar>;

void add_to(Tensor2& t, std::size_t a, std::size_t b, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, fresh] = t.emplace(std::make_pair(a, b), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            t.erase(it);
    }
}

}  // namespace

bool WordBound::admits(std::size_t length, int degree) const
{
    if (max_length && length > *max_length)
        return false;
    if (degrees && !degrees->contains(degree))
        return false;
    return true;
}

std::string WordBound::str() const
{
    std::string s;
    if (max_length)
        s += "length<=" + std::to_string(*max_length);
    if (degrees)
        s += (s.empty() ? "" : " ") + std::string("degree ") + degrees->str();
    return s.empty() ? "none" : s;
}

std::vector<CoproductTerm> DgCoalgebra::coproduct(std::size_t c) const
{
    std::vector<CoproductTerm> out;
    const BasisTag& t = space.tag(c);
    if (is_empty_word(c)) {
        out.push_back({c, c, Scalar(1)});
        return out;
    }
    out.push_back({empty_word.at(static_cast<std::size_t>(t.target)), c, Scalar(1)});
    for (const auto& term : reduced_coproduct.at(c))
        out.push_back(term);
    out.push_back({c, empty_word.at(static_cast<std::size_t>(t.source)), Scalar(1)});
    return out;
}

ChainComplexView DgCoalgebra::complex() const
{
    ChainComplexView c;
    c.space = space;
    c.differential = differential;
    return c;
}

DgCoalgebra bar_construct_raw(const AInfinityStructure& a, std::optional<WordBound> bound)
{
    require_augmented(a, "bar construction");
    auto problems = a.validate();
    if (!problems.empty())
        throw StructureError("invalid structure: " + problems.front());
    DgCoalgebra c;
    c.field = a.field;
    c.bound = bound;
    std::vector<std::size_t> bar_ids = non_units(a);
    std::map<std::size_t, std::size_t> letter_of;
    c.letters = GradedBimodule(a.space.vertices());
    for (std::size_t i : bar_ids) {
        BasisTag t = a.space.tag(i);
        t.degree -= 1;
        letter_of[i] = c.letters.add(t, a.space.label(i));
    }
    auto ws = enumerate_words(c.letters, bound, [&](const std::vector<std::size_t>& w, int v) {
        return w.empty() ? "[]" + a.space.vertex_name(v) : join_labels(c.letters, w, "[", "]");
    });
    c.space = std::move(ws.space);
    c.words = std::move(ws.words);
    c.index = std::move(ws.index);
    c.empty_word = std::move(ws.empty_word);

    // b_n(sa_1..sa_n) = -(-1)^{sum_i (n-1-i)|sa_i|} s m_n(a_1..a_n)
    auto b = [&](const std::vector<std::size_t>& sub) {
        Vec out;
        Tuple t;
        long e = 0;
        const long n = static_cast<long>(sub.size());
        for (long i = 0; i < n; ++i) {
            t.push_back(bar_ids[sub[static_cast<std::size_t>(i)]]);
            e += (n - 1 - i) * c.letters.degree(sub[static_cast<std::size_t>(i)]);
        }
        const Vec* m = a.op(t);
        if (!m)
            return out;
        Scalar sg = -sign_of(e);
        for (const auto& [y, co] : *m) {
            auto it = letter_of.find(y);
            if (it == letter_of.end())
                throw StructureError("m_" + std::to_string(n) + tuple_str(a.space, t) +
                                     " leaves the augmentation ideal");
            out.add(it->second, sg * co);
        }
        return out;
    };

    c.differential.resize(c.dim());
    c.reduced_coproduct.resize(c.dim());
    const int N = a.arity_max();
    bool truncated = false;
    for (std::size_t k = 0; k < c.dim(); ++k) {
        const auto& w = c.words[k];
        Vec d;
        long pre = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            for (std::size_t n = 1; n <= w.size() - j && n <= static_cast<std::size_t>(N); ++n) {
                std::vector<std::size_t> subw(w.begin() + static_cast<long>(j), w.begin() + static_cast<long>(j + n));
                Vec img = b(subw);
                if (img.empty())
                    continue;
                Scalar sg = sign_of(pre);
                for (const auto& [y, co] : img) {
                    std::vector<std::size_t> nw(w.begin(), w.begin() + static_cast<long>(j));
                    nw.push_back(y);
                    nw.insert(nw.end(), w.begin() + static_cast<long>(j + n), w.end());
                    auto it = c.index.find(nw);
                    if (it == c.index.end()) {
                        truncated = true;
                        continue;
                    }
                    d.add(it->second, sg * co);
                }
            }
            pre += c.letters.degree(w[j]);
        }
        c.differential[k] = std::move(d);
        for (std::size_t j = 1; j < w.size(); ++j) {
            auto l = c.index.find(std::vector<std::size_t>(w.begin(), w.begin() + static_cast<long>(j)));
            auto r = c.index.find(std::vector<std::size_t>(w.begin() + static_cast<long>(j), w.end()));
            if (l == c.index.end() || r == c.index.end()) {
                truncated = true;
                continue;
            }
            c.reduced_coproduct[k].push_back({l->second, r->second, Scalar(1)});
        }
    }
    c.truncated = truncated;
    return c;
}

bool squares_to_zero(const DgCoalgebra& c)
{
    ChainComplexView cx = c.complex();
    auto bad = parallel_map<char>(c.dim(), [&](std::size_t i) {
        return static_cast<char>(!cx.apply(c.differential[i]).empty());
    });
    return std::none_of(bad.begin(), bad.end(), [](char x) { return x != 0; });
}

DgCoalgebra bar_construct(const AInfinityStructure& a, std::optional<WordBound> bound)
{
    DgCoalgebra c = bar_construct_raw(a, bound);
    if (!c.truncated && !squares_to_zero(c))
        throw StructureError("bar differential does not square to zero (Stasheff identities fail)");
    return c;
}

Verdict check_coderivation(const DgCoalgebra& c)
{
    Verdict v;
    v.check = "coderivation";
    for (std::size_t w = 0; w < c.dim(); ++w) {
        Tensor2 lhs, rhs;
        for (const auto& [y, co] : c.differential[w])
            for (const auto& t : c.coproduct(y))
                add_to(lhs, t.left, t.right, co * t.coeff);
        for (const auto& t : c.coproduct(w)) {
            for (const auto& [y, co] : c.differential[t.left])
                add_to(rhs, y, t.right, co * t.coeff);
            Scalar sg = sign_of(c.space.degree(t.left));
            for (const auto& [y, co] : c.differential[t.right])
                add_to(rhs, t.left, y, sg * co * t.coeff);
        }
        if (lhs != rhs)
            v.fail({1, {w}, {}, "coderivation rule fails on " + c.space.label(w)});
    }
    return v;
}

Verdict check_coassociativity(const DgCoalgebra& c)
{
    Verdict v;
    v.check = "coassociativity";
    using Tensor3 = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar>;
    auto add3 = [](Tensor3& t, std::size_t a, std::size_t b, std::size_t d, const Scalar& s) {
        auto [it, fresh] = t.emplace(std::make_tuple(a, b, d), s);
        if (!fresh) {
            it->second += s;
            if (it->second.is_zero())
                t.erase(it);
        }
    };
    for (std::size_t w = 0; w < c.dim(); ++w) {
        Tensor3 l, r;
        for (const auto& t : c.coproduct(w)) {
            for (const auto& u : c.coproduct(t.left))
                add3(l, u.left, u.right, t.right, t.coeff * u.coeff);
            for (const auto& u : c.coproduct(t.right))
                add3(r, t.left, u.left, u.right, t.coeff * u.coeff);
        }
        if (l != r)
            v.fail({1, {w}, {}, "coassociativity fails on " + c.space.label(w)});
    }
    return v;
}

DgAlgebra cobar_construct(const DgCoalgebra& c, std::optional<WordBound> bound)
{
    DgAlgebra u;
    u.field = c.field;
    std::vector<std::size_t> red;
    std::map<std::size_t, std::size_t> letter_of;
    GradedBimodule letters(c.space.vertices());
    for (std::size_t i = 0; i < c.dim(); ++i) {
        if (c.is_empty_word(i))
            continue;
        BasisTag t = c.space.tag(i);
        t.degree += 1;
        letter_of[i] = letters.add(t, c.space.label(i));
        red.push_back(i);
    }
    auto ws = enumerate_words(letters, bound, [&](const std::vector<std::size_t>& w, int v) {
        return w.empty() ? "<>" + c.space.vertex_name(v) : join_labels(letters, w, "<", ">");
    });
    u.space = ws.space;

    // d(s^-1 c) = -s^-1 d c + sum (-1)^{|c'|} s^-1 c' (x) s^-1 c''
    std::vector<std::map<std::vector<std::size_t>, Scalar>> dgen(letters.size());
    for (std::size_t l = 0; l < letters.size(); ++l) {
        std::size_t ci = red[l];
        auto& out = dgen[l];
        auto put = [&out](std::vector<std::size_t> w, const Scalar& s) {
            auto [it, fresh] = out.emplace(std::move(w), s);
            if (!fresh) {
                it->second += s;
                if (it->second.is_zero())
                    out.erase(it);
            }
        };
        for (const auto& [y, co] : c.differential[ci]) {
            auto it = letter_of.find(y);
            if (it == letter_of.end())
                throw StructureError("coalgebra differential hits a counit word");
            put({it->second}, -co);
        }
        for (const auto& t : c.reduced_coproduct[ci])
            put({letter_of.at(t.left), letter_of.at(t.right)}, sign_of(c.space.degree(t.left)) * t.coeff);
    }
    bool truncated = c.truncated;
    for (std::size_t k = 0; k < ws.words.size(); ++k) {
        const auto& w = ws.words[k];
        Vec d;
        long pre = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            Scalar sg = sign_of(pre);
            for (const auto& [img, co] : dgen[w[j]]) {
                std::vector<std::size_t> nw(w.begin(), w.begin() + static_cast<long>(j));
                nw.insert(nw.end(), img.begin(), img.end());
                nw.insert(nw.end(), w.begin() + static_cast<long>(j + 1), w.end());
                auto it = ws.index.find(nw);
                if (it == ws.index.end()) {
                    truncated = true;
                    continue;
                }
                d.add(it->second, sg * co);
            }
            pre += letters.degree(w[j]);
        }
        if (!d.empty())
            u.set_op({k}, std::move(d));
    }
    for (std::size_t x = 0; x < ws.words.size(); ++x)
        for (std::size_t y = 0; y < ws.words.size(); ++y) {
            if (!u.space.composable(x, y))
                continue;
            if (ws.words[x].empty() || ws.words[y].empty()) {
                u.set_op({x, y}, Vec::unit(ws.words[x].empty() ? y : x, c.field.one()));
                continue;
            }
            std::vector<std::size_t> w = ws.words[x];
            w.insert(w.end(), ws.words[y].begin(), ws.words[y].end());
            auto it = ws.index.find(w);
            if (it == ws.index.end()) {
                truncated = true;
                continue;
            }
            u.set_op({x, y}, Vec::unit(it->second, c.field.one()));
        }
    u.unit = UnitAugmentation::standard(ws.empty_word);
    (void)truncated;
    return u;
}

DgAlgebra enveloping_algebra(const AInfinityStructure& a, std::optional<WordBound> bound)
{
    return cobar_construct(bar_construct(a, bound), bound);
}

DgAlgebra graded_dual_algebra(const DgCoalgebra& c)
{
    DgAlgebra d;
    d.field = c.field;
    d.space = c.space.dual();
    std::map<std::pair<std::size_t, std::size_t>, Vec> prod;
    for (std::size_t k = 0; k < c.dim(); ++k)
        for (const auto& t : c.coproduct(k))
            prod[{t.right, t.left}].add(k, t.coeff);
    for (auto& [key, v] : prod)
        d.set_op({key.first, key.second}, std::move(v));
    std::map<std::size_t, Vec> diff;
    for (std::size_t k = 0; k < c.dim(); ++k)
        for (const auto& [y, co] : c.differential[k])
            diff[y].add(k, -sign_of(-c.space.degree(y)) * co);
    for (auto& [y, v] : diff)
        d.set_op({y}, std::move(v));
    d.unit = UnitAugmentation::standard(c.empty_word);
    return d;
}

ChainComplexView augmentation_ideal_complex(const AInfinityStructure& a, std::vector<std::size_t>* ids)
{
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!a.unit || !a.unit->is_unit(i))
            keep.push_back(i);
    std::map<std::size_t, std::size_t> local;
    ChainComplexView c;
    c.space = GradedBimodule(a.space.vertices());
    for (std::size_t i : keep)
        local[i] = c.space.add(a.space.tag(i), a.space.label(i));
    c.differential.resize(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k)
        if (const Vec* m1 = a.op({keep[k]}))
            for (const auto& [j, x] : *m1) {
                auto it = local.find(j);
                if (it == local.end())
                    throw StructureError("m_1 does not preserve the augmentation ideal");
                c.differential[k].add(it->second, x);
            }
    if (ids)
        *ids = keep;
    return c;
}

ChainComplexView underlying_complex(const AInfinityStructure& a)
{
    ChainComplexView c;
    c.space = a.space;
    c.differential.resize(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (const Vec* m1 = a.op({i}))
            c.differential[i] = *m1;
    return c;
}

TwistedTensorComplex twisted_tensor(const AInfinityStructure& a, std::optional<WordBound> bound, bool ideal)
{
    require_augmented(a, "twisted tensor product");
    if (a.arity_max() > 2)
        throw InputError("twisted tensor product needs a dg algebra (no m_n for n >= 3)");
    TwistedTensorComplex T;
    T.ideal = ideal;
    T.bar = bar_construct(a, bound);
    T.algebra = std::make_shared<AInfinityStructure>(a);
    const DgCoalgebra& B = T.bar;
    std::vector<std::size_t> bar_ids = non_units(a);
    std::vector<std::size_t> alg_ids;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!ideal || !a.unit->is_unit(i))
            alg_ids.push_back(i);
    T.complex.space = GradedBimodule(a.space.vertices());
    for (std::size_t w = 0; w < B.dim(); ++w)
        for (std::size_t x : alg_ids) {
            if (B.space.tag(w).source != a.space.tag(x).target)
                continue;
            const BasisTag& tw = B.space.tag(w);
            const BasisTag& tx = a.space.tag(x);
            T.index[{w, x}] = T.complex.space.add({tx.source, tw.target, tw.degree + tx.degree},
                                                  B.space.label(w) + "(x)" + a.space.label(x));
            T.pairs.emplace_back(w, x);
        }
    T.complex.differential.resize(T.pairs.size());
    auto at = [&](std::size_t w, std::size_t x) -> std::size_t {
        auto it = T.index.find({w, x});
        if (it == T.index.end())
            throw StructureError("twisted differential leaves BA (x) A");
        return it->second;
    };
    for (std::size_t k = 0; k < T.pairs.size(); ++k) {
        auto [w, x] = T.pairs[k];
        Vec d;
        for (const auto& [y, co] : B.differential[w])
            d.add(at(y, x), co);
        if (const Vec* m1 = a.op({x})) {
            Scalar sg = sign_of(B.space.degree(w));
            for (const auto& [y, co] : *m1)
                d.add(at(w, y), sg * co);
        }
        const auto& word = B.words[w];
        if (!word.empty()) {
            std::size_t last = bar_ids[word.back()];
            std::vector<std::size_t> prefix(word.begin(), word.end() - 1);
            std::size_t wp = prefix.empty() ? B.empty_word.at(static_cast<std::size_t>(a.space.tag(last).target))
                                            : B.index.at(prefix);
            if (const Vec* m2 = a.op({last, x})) {
                Scalar sg = sign_of(B.space.degree(wp));
                for (const auto& [y, co] : *m2)
                    d.add(at(wp, y), sg * co);
            }
        }
        T.complex.differential[k] = std::move(d);
    }
    return T;
}

bool TwistedTensorComplex::square_zero() const
{
    for (std::size_t i = 0; i < complex.size(); ++i)
        if (!complex.apply(complex.differential[i]).empty())
            return false;
    return true;
}

Verdict TwistedTensorComplex::check_module_map() const
{
    Verdict v;
    v.check = "right-module-map";
    const auto& A = *algebra;
    auto act = [&](const Vec& u, std::size_t b) {
        Vec out;
        for (const auto& [k, co] : u) {
            auto [w, x] = pairs[k];
            if (const Vec* m2 = A.op({x, b}))
                for (const auto& [y, c2] : *m2) {
                    auto it = index.find({w, y});
                    if (it != index.end())
                        out.add(it->second, co * c2);
                }
        }
        return out;
    };
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [w, x] = pairs[k];
        for (std::size_t b = 0; b < A.dim(); ++b) {
            if (!A.space.composable(x, b))
                continue;
            Vec lhs = complex.apply(act(Vec::unit(k), b));
            Vec rhs = act(complex.differential[k], b);
            if (const Vec* m1 = A.op({b})) {
                Scalar sg = sign_of(complex.space.degree(k));
                for (const auto& [y, co] : *m1)
                    rhs.axpy(sg * co, act(Vec::unit(k), y));
            }
            if (lhs != rhs)
                v.fail({2, {k, b}, lhs - rhs, "d_pi is not a module map on " + complex.space.label(k) + " . " + A.space.label(b)});
        }
    }
    return v;
}

std::vector<Vec> TwistedTensorComplex::augmentation_map() const
{
    std::vector<Vec> f(pairs.size());
    const auto& A = *algebra;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [w, x] = pairs[k];
        if (bar.is_empty_word(w) && A.unit->is_unit(x))
            f[k] = Vec::unit(static_cast<std::size_t>(A.space.tag(x).source), A.field.one());
    }
    return f;
}

bool TwistedTensorComplex::augmentation_is_quasi_iso() const
{
    ChainComplexView r = ground_ring_complex(complex.space.vertices());
    auto cone = mapping_cone(complex, r, augmentation_map());
    return homology(cone).total() == 0;
}

}  // namespace ainf
