#include "ainf/ainfty.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ainf/parallel.hpp"

namespace ainf {

namespace {

int parity(long x)
{
    return static_cast<int>(((x % 2) + 2) % 2);
}

Scalar sign_of(long x)
{
    return parity(x) ? Scalar(-1) : Scalar(1);
}

Tuple splice(const Tuple& t, std::size_t r, std::size_t s, std::size_t y)
{
    Tuple out(t.begin(), t.begin() + static_cast<long>(r));
    out.push_back(y);
    out.insert(out.end(), t.begin() + static_cast<long>(r + s), t.end());
    return out;
}

Tuple sub(const Tuple& t, std::size_t r, std::size_t s)
{
    return Tuple(t.begin() + static_cast<long>(r), t.begin() + static_cast<long>(r + s));
}

std::vector<long> prefix_degrees(const GradedBimodule& m, const Tuple& t)
{
    std::vector<long> pre(t.size() + 1, 0);
    for (std::size_t i = 0; i < t.size(); ++i)
        pre[i + 1] = pre[i] + m.degree(t[i]);
    return pre;
}

// Checks every stored entry of a family of maps of degree (shift - n).
void validate_family(const std::map<int, OpTable>& family, int shift, const char* name,
                     const std::function<bool(const Tuple&)>& composable,
                     const std::function<int(std::size_t, std::size_t)>& input_degree,
                     const std::function<std::size_t(std::size_t)>& input_bound, const GradedBimodule& out_space,
                     const std::function<std::optional<BasisTag>(const Tuple&)>& expected_block,
                     const std::function<std::string(const Tuple&)>& show, std::vector<std::string>& problems)
{
    for (const auto& [n, table] : family) {
        if (n < 1) {
            problems.push_back(std::string(name) + ": arity must be positive");
            continue;
        }
        for (const auto& [t, v] : table) {
            std::string where = std::string(name) + "_" + std::to_string(n) + show(t);
            if (t.size() != static_cast<std::size_t>(n)) {
                problems.push_back(where + ": tuple length differs from the arity");
                continue;
            }
            bool in_range = true;
            for (std::size_t k = 0; k < t.size(); ++k)
                if (t[k] >= input_bound(k))
                    in_range = false;
            if (!in_range) {
                problems.push_back(where + ": argument index out of range");
                continue;
            }
            if (!composable(t)) {
                problems.push_back(where + ": tuple is not composable");
                continue;
            }
            long deg = shift - n;
            for (std::size_t k = 0; k < t.size(); ++k)
                deg += input_degree(k, t[k]);
            auto block = expected_block(t);
            for (const auto& [j, c] : v) {
                if (j >= out_space.size()) {
                    problems.push_back(where + ": output index out of range");
                    continue;
                }
                const BasisTag& o = out_space.tag(j);
                if (o.degree != deg)
                    problems.push_back(where + ": output '" + out_space.label(j) + "' has degree " +
                                       std::to_string(o.degree) + ", expected " + std::to_string(deg));
                if (block && (o.source != block->source || o.target != block->target))
                    problems.push_back(where + ": output '" + out_space.label(j) + "' lies in the wrong block");
            }
        }
    }
}

// All compositions (i_1, ..., i_p) of n.
void compositions(int n, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& emit)
{
    if (n == 0) {
        emit(cur);
        return;
    }
    for (int i = 1; i <= n; ++i) {
        cur.push_back(i);
        compositions(n - i, cur, emit);
        cur.pop_back();
    }
}

int max_arity(const std::map<int, OpTable>& family)
{
    int n = 1;
    for (const auto& [k, t] : family)
        if (!t.empty())
            n = std::max(n, k);
    return n;
}

void store(std::map<int, OpTable>& family, const Tuple& t, Vec v)
{
    auto& table = family[static_cast<int>(t.size())];
    if (v.empty())
        table.erase(t);
    else
        table[t] = std::move(v);
    if (table.empty())
        family.erase(static_cast<int>(t.size()));
}

const Vec* lookup(const std::map<int, OpTable>& family, const Tuple& t)
{
    auto it = family.find(static_cast<int>(t.size()));
    if (it == family.end())
        return nullptr;
    auto jt = it->second.find(t);
    return jt == it->second.end() ? nullptr : &jt->second;
}

// Evaluates residuals on candidate tuples in parallel and records failures.
void scan(Verdict& v, const std::vector<Tuple>& cands, const std::function<Vec(const Tuple&)>& residual,
          const std::function<std::string(const Tuple&)>& show, bool report_all)
{
    auto res = parallel_map<Vec>(cands.size(), [&](std::size_t i) { return residual(cands[i]); });
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (res[i].empty())
            continue;
        v.fail({static_cast<int>(cands[i].size()), cands[i], res[i], "nonzero residual on " + show(cands[i])});
        if (!report_all)
            break;
    }
    v.sort_failures();
}

}  // namespace

bool UnitAugmentation::is_unit(std::size_t i) const
{
    return std::find(unit.begin(), unit.end(), i) != unit.end();
}

bool UnitAugmentation::is_normalized() const
{
    if (augmentation.size() != unit.size())
        return false;
    for (std::size_t u : unit) {
        auto it = augmentation.find(u);
        if (it == augmentation.end() || !it->second.is_one())
            return false;
    }
    return true;
}

UnitAugmentation UnitAugmentation::standard(std::vector<std::size_t> units)
{
    UnitAugmentation u;
    u.unit = std::move(units);
    for (std::size_t i : u.unit)
        u.augmentation[i] = Scalar(1);
    return u;
}

int AInfinityStructure::arity_max() const
{
    return max_arity(ops);
}

const Vec* AInfinityStructure::op(const Tuple& t) const
{
    return lookup(ops, t);
}

void AInfinityStructure::set_op(const Tuple& t, Vec v)
{
    store(ops, t, std::move(v));
}

bool AInfinityStructure::composable(const Tuple& t) const
{
    if (ring == GroundRing::field)
        return true;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!space.composable(t[i], t[i + 1]))
            return false;
    return true;
}

bool AInfinityStructure::is_minimal() const
{
    auto it = ops.find(1);
    return it == ops.end() || it->second.empty();
}

std::vector<std::string> AInfinityStructure::validate() const
{
    std::vector<std::string> problems;
    validate_family(
        ops, 2, "m", [this](const Tuple& t) { return composable(t); },
        [this](std::size_t, std::size_t i) { return space.degree(i); }, [this](std::size_t) { return space.size(); },
        space,
        [this](const Tuple& t) -> std::optional<BasisTag> {
            if (ring == GroundRing::field)
                return std::nullopt;
            return BasisTag{space.tag(t.back()).source, space.tag(t.front()).target, 0};
        },
        [this](const Tuple& t) { return tuple_str(space, t); }, problems);
    if (unit) {
        if (unit->unit.size() != space.vertex_count())
            problems.push_back("unit: one unit element per vertex is required");
        for (std::size_t v = 0; v < unit->unit.size(); ++v) {
            std::size_t e = unit->unit[v];
            if (e >= space.size()) {
                problems.push_back("unit: index out of range");
                continue;
            }
            const BasisTag& t = space.tag(e);
            if (t.degree != 0 || t.source != static_cast<int>(v) || t.target != static_cast<int>(v))
                problems.push_back("unit: '" + space.label(e) + "' is not a degree-0 element at its vertex");
        }
        for (const auto& [i, c] : unit->augmentation) {
            if (i >= space.size()) {
                problems.push_back("augmentation: index out of range");
                continue;
            }
            const BasisTag& t = space.tag(i);
            if (t.degree != 0 || t.source != t.target)
                problems.push_back("augmentation: '" + space.label(i) + "' does not map into R");
        }
    }
    return problems;
}

void Verdict::fail(Failure f)
{
    pass = false;
    failures.push_back(std::move(f));
}

void Verdict::sort_failures()
{
    std::stable_sort(failures.begin(), failures.end(), [](const Failure& a, const Failure& b) {
        if (a.arity != b.arity)
            return a.arity < b.arity;
        return a.tuple < b.tuple;
    });
}

std::string tuple_str(const GradedBimodule& m, const Tuple& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ", ";
        s += t[i] < m.size() ? m.label(t[i]) : "#" + std::to_string(t[i]);
    }
    return s + ")";
}

Vec stasheff_residual(const AInfinityStructure& a, const Tuple& t)
{
    const std::size_t n = t.size();
    auto pre = prefix_degrees(a.space, t);
    Vec res;
    for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t r = 0; r + s <= n; ++r) {
            const Vec* inner = a.op(sub(t, r, s));
            if (!inner)
                continue;
            std::size_t tt = n - r - s;
            Scalar sg = sign_of(static_cast<long>(r * s + tt) + (2 - static_cast<long>(s)) * pre[r]);
            for (const auto& [y, c] : *inner)
                if (const Vec* outer = a.op(splice(t, r, s, y)))
                    res.axpy(sg * c, *outer);
        }
    return res;
}

Verdict stasheff_check(const AInfinityStructure& a, bool report_all)
{
    Verdict v;
    v.check = "stasheff";
    const int N = a.arity_max();
    v.checked_up_to = 2 * N - 1;
    v.note = "identities for n >= " + std::to_string(2 * N) + " vanish termwise (arity support " +
             std::to_string(N) + ")";
    auto problems = a.validate();
    if (!problems.empty()) {
        v.precondition_failed = true;
        for (auto& p : problems)
            v.fail({0, {}, {}, p});
        return v;
    }
    // Position index of outer entries: (arity, position, element) -> tuples.
    std::map<std::tuple<int, std::size_t, std::size_t>, std::vector<const Tuple*>> at;
    for (const auto& [n, table] : a.ops)
        for (const auto& [t, out] : table)
            for (std::size_t r = 0; r < t.size(); ++r)
                at[{n, r, t[r]}].push_back(&t);
    std::set<Tuple> cands;
    for (const auto& [s, table] : a.ops)
        for (const auto& [inner, out] : table)
            for (const auto& [y, c] : out)
                for (const auto& [n, outer_table] : a.ops)
                    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
                        auto it = at.find({n, r, y});
                        if (it == at.end())
                            continue;
                        for (const Tuple* o : it->second) {
                            Tuple cand(o->begin(), o->begin() + static_cast<long>(r));
                            cand.insert(cand.end(), inner.begin(), inner.end());
                            cand.insert(cand.end(), o->begin() + static_cast<long>(r + 1), o->end());
                            cands.insert(std::move(cand));
                        }
                    }
    std::vector<Tuple> list(cands.begin(), cands.end());
    scan(
        v, list, [&](const Tuple& t) { return stasheff_residual(a, t); },
        [&](const Tuple& t) { return tuple_str(a.space, t); }, report_all);
    return v;
}

Verdict unitality_check(const AInfinityStructure& a)
{
    Verdict v;
    v.check = "unitality";
    v.checked_up_to = a.arity_max();
    if (!a.unit) {
        v.precondition_failed = true;
        v.fail({0, {}, {}, "no unit designated"});
        return v;
    }
    auto problems = a.validate();
    if (!problems.empty()) {
        v.precondition_failed = true;
        for (auto& p : problems)
            v.fail({0, {}, {}, p});
        return v;
    }
    const auto& U = *a.unit;
    auto m2 = [&](std::size_t x, std::size_t y) {
        const Vec* p = a.op({x, y});
        return p ? *p : Vec();
    };
    for (std::size_t x = 0; x < a.dim(); ++x) {
        const BasisTag& t = a.space.tag(x);
        Vec left, right;
        if (a.ring == GroundRing::vertices) {
            left = m2(U.unit[static_cast<std::size_t>(t.target)], x);
            right = m2(x, U.unit[static_cast<std::size_t>(t.source)]);
        } else {
            for (std::size_t e : U.unit) {
                left += m2(e, x);
                right += m2(x, e);
            }
        }
        if (left != Vec::unit(x))
            v.fail({2, {U.unit[static_cast<std::size_t>(t.target)], x}, left - Vec::unit(x),
                    "left unit law fails on '" + a.space.label(x) + "'"});
        if (right != Vec::unit(x))
            v.fail({2, {x, U.unit[static_cast<std::size_t>(t.source)]}, right - Vec::unit(x),
                    "right unit law fails on '" + a.space.label(x) + "'"});
    }
    for (const auto& [n, table] : a.ops) {
        if (n == 2)
            continue;
        for (const auto& [t, out] : table)
            if (std::any_of(t.begin(), t.end(), [&](std::size_t i) { return U.is_unit(i); }))
                v.fail({n, t, out, "m_" + std::to_string(n) + tuple_str(a.space, t) + " has a unit argument but is nonzero"});
    }
    for (std::size_t vtx = 0; vtx < U.unit.size(); ++vtx) {
        auto it = U.augmentation.find(U.unit[vtx]);
        if (it == U.augmentation.end() || !it->second.is_one())
            v.fail({0, {U.unit[vtx]}, {}, "epsilon(eta(e_" + a.space.vertex_name(static_cast<int>(vtx)) + ")) != e"});
    }
    v.sort_failures();
    return v;
}

const Vec* AInfinityMorphism::component(const Tuple& t) const
{
    return lookup(components, t);
}

void AInfinityMorphism::set_component(const Tuple& t, Vec v)
{
    store(components, t, std::move(v));
}

int AInfinityMorphism::arity_max() const
{
    return max_arity(components);
}

bool AInfinityMorphism::is_strict() const
{
    return arity_max() == 1;
}

Vec morphism_residual(const AInfinityMorphism& f, const Tuple& t)
{
    const auto& A = *f.domain;
    const auto& B = *f.codomain;
    const std::size_t n = t.size();
    auto pre = prefix_degrees(A.space, t);
    Vec res;
    for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t r = 0; r + s <= n; ++r) {
            const Vec* inner = A.op(sub(t, r, s));
            if (!inner)
                continue;
            std::size_t tt = n - r - s;
            Scalar sg = sign_of(static_cast<long>(r * s + tt) + (2 - static_cast<long>(s)) * pre[r]);
            for (const auto& [y, c] : *inner)
                if (const Vec* outer = f.component(splice(t, r, s, y)))
                    res.axpy(sg * c, *outer);
        }
    std::vector<int> cur;
    compositions(static_cast<int>(n), cur, [&](const std::vector<int>& comp) {
        const std::size_t p = comp.size();
        long e = 0;
        for (std::size_t x = 0; x < p; ++x) {
            for (std::size_t y = x + 1; y < p; ++y)
                e += static_cast<long>(comp[x]) * comp[y];
            if (x + 1 < p)
                e += static_cast<long>(comp[x]) * static_cast<long>(p - 1 - x);
        }
        std::vector<const Vec*> parts;
        std::size_t pos = 0;
        for (int i : comp) {
            const Vec* fv = f.component(sub(t, pos, static_cast<std::size_t>(i)));
            if (!fv)
                return;
            e += static_cast<long>(1 - i) * pre[pos];
            parts.push_back(fv);
            pos += static_cast<std::size_t>(i);
        }
        Scalar sg = -sign_of(e);
        Tuple args(p);
        std::function<void(std::size_t, const Scalar&)> expand = [&](std::size_t k, const Scalar& coef) {
            if (k == p) {
                if (const Vec* m = B.op(args))
                    res.axpy(sg * coef, *m);
                return;
            }
            for (const auto& [y, c] : *parts[k]) {
                if (k > 0 && B.ring == GroundRing::vertices && !B.space.composable(args[k - 1], y))
                    continue;
                args[k] = y;
                expand(k + 1, coef * c);
            }
        };
        expand(0, Scalar(1));
    });
    return res;
}

Verdict morphism_check(const AInfinityMorphism& f)
{
    Verdict v;
    v.check = "morphism";
    const auto& A = *f.domain;
    const auto& B = *f.codomain;
    const int Na = A.arity_max(), Nb = B.arity_max(), Nf = f.arity_max();
    v.checked_up_to = std::max(Na + Nf - 1, Nb * Nf);
    v.note = "identities beyond n = " + std::to_string(v.checked_up_to) + " vanish termwise";
    std::vector<std::string> problems = A.validate();
    for (auto& p : B.validate())
        problems.push_back("codomain " + p);
    validate_family(
        f.components, 1, "f", [&](const Tuple& t) { return A.composable(t); },
        [&](std::size_t, std::size_t i) { return A.space.degree(i); }, [&](std::size_t) { return A.dim(); }, B.space,
        [&](const Tuple& t) -> std::optional<BasisTag> {
            if (A.ring == GroundRing::field || B.ring == GroundRing::field)
                return std::nullopt;
            return BasisTag{A.space.tag(t.back()).source, A.space.tag(t.front()).target, 0};
        },
        [&](const Tuple& t) { return tuple_str(A.space, t); }, problems);
    if (A.space.vertices() != B.space.vertices())
        problems.push_back("domain and codomain have different vertex sets");
    if (!problems.empty()) {
        v.precondition_failed = true;
        for (auto& p : problems)
            v.fail({0, {}, {}, p});
        return v;
    }

    std::set<Tuple> cands;
    std::map<std::tuple<int, std::size_t, std::size_t>, std::vector<const Tuple*>> at;
    std::map<std::size_t, std::vector<const Tuple*>> hits;  // codomain element -> f entries
    for (const auto& [n, table] : f.components)
        for (const auto& [t, out] : table) {
            for (std::size_t r = 0; r < t.size(); ++r)
                at[{n, r, t[r]}].push_back(&t);
            for (const auto& [y, c] : out)
                hits[y].push_back(&t);
        }
    for (const auto& [s, table] : A.ops)
        for (const auto& [inner, out] : table)
            for (const auto& [y, c] : out)
                for (const auto& [n, ft] : f.components)
                    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
                        auto it = at.find({n, r, y});
                        if (it == at.end())
                            continue;
                        for (const Tuple* o : it->second) {
                            Tuple cand(o->begin(), o->begin() + static_cast<long>(r));
                            cand.insert(cand.end(), inner.begin(), inner.end());
                            cand.insert(cand.end(), o->begin() + static_cast<long>(r + 1), o->end());
                            cands.insert(std::move(cand));
                        }
                    }
    for (const auto& [p, table] : B.ops)
        for (const auto& [ys, out] : table) {
            Tuple cur;
            std::function<void(std::size_t)> rec = [&](std::size_t k) {
                if (k == ys.size()) {
                    if (A.composable(cur) && cur.size() <= static_cast<std::size_t>(v.checked_up_to))
                        cands.insert(cur);
                    return;
                }
                auto it = hits.find(ys[k]);
                if (it == hits.end())
                    return;
                for (const Tuple* t : it->second) {
                    std::size_t old = cur.size();
                    cur.insert(cur.end(), t->begin(), t->end());
                    rec(k + 1);
                    cur.resize(old);
                }
            };
            rec(0);
        }
    std::vector<Tuple> list(cands.begin(), cands.end());
    scan(
        v, list, [&](const Tuple& t) { return morphism_residual(f, t); },
        [&](const Tuple& t) { return tuple_str(A.space, t); }, true);

    if (A.unit && B.unit) {
        for (std::size_t vtx = 0; vtx < A.unit->unit.size(); ++vtx) {
            std::size_t e = A.unit->unit[vtx];
            const Vec* img = f.component({e});
            Vec want = Vec::unit(B.unit->unit.at(vtx));
            if (!img || *img != want)
                v.fail({1, {e}, img ? *img - want : -want, "f_1 does not preserve the unit at '" + A.space.label(e) + "'"});
        }
        for (const auto& [n, table] : f.components) {
            if (n < 2)
                continue;
            for (const auto& [t, out] : table)
                if (std::any_of(t.begin(), t.end(), [&](std::size_t i) { return A.unit->is_unit(i); }))
                    v.fail({n, t, out, "f_" + std::to_string(n) + " is nonzero on a unit argument"});
        }
        auto eps = [](const UnitAugmentation& u, const Vec& x) {
            Scalar s;
            for (const auto& [i, c] : x)
                if (auto it = u.augmentation.find(i); it != u.augmentation.end())
                    s += c * it->second;
            return s;
        };
        for (const auto& [n, table] : f.components)
            for (const auto& [t, out] : table) {
                Scalar want = (n == 1) ? eps(*A.unit, Vec::unit(t[0])) : Scalar(0);
                if (eps(*B.unit, out) != want)
                    v.fail({n, t, out, "f_" + std::to_string(n) + tuple_str(A.space, t) + " does not preserve the augmentation"});
            }
        for (std::size_t x = 0; x < A.dim(); ++x) {
            auto it = A.unit->augmentation.find(x);
            if (it != A.unit->augmentation.end() && !f.component({x}))
                v.fail({1, {x}, {}, "f_1 does not preserve the augmentation on '" + A.space.label(x) + "'"});
        }
    }
    v.sort_failures();
    return v;
}

AInfinityStructure ground_ring_algebra(const std::vector<std::string>& vertices, Field field)
{
    AInfinityStructure r;
    r.field = field;
    r.space = GradedBimodule(vertices);
    std::vector<std::size_t> units;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        units.push_back(r.space.add({static_cast<int>(v), static_cast<int>(v), 0}, "e" + vertices[v]));
    for (std::size_t u : units)
        r.set_op({u, u}, Vec::unit(u, field.one()));
    r.unit = UnitAugmentation::standard(units);
    return r;
}

AInfinityMorphism augmentation_morphism(std::shared_ptr<const AInfinityStructure> a)
{
    if (!a->unit)
        throw StructureError("augmentation requested for a structure without unit");
    AInfinityMorphism f;
    f.codomain = std::make_shared<AInfinityStructure>(ground_ring_algebra(a->space.vertices(), a->field));
    for (const auto& [i, c] : a->unit->augmentation)
        f.set_component({i}, Vec::unit(static_cast<std::size_t>(a->space.tag(i).source), c));
    f.domain = std::move(a);
    return f;
}

AInfinityMorphism identity_morphism(std::shared_ptr<const AInfinityStructure> a)
{
    AInfinityMorphism f;
    for (std::size_t i = 0; i < a->dim(); ++i)
        f.set_component({i}, Vec::unit(i, a->field.one()));
    f.domain = a;
    f.codomain = std::move(a);
    return f;
}

Verdict augmentation_check(const AInfinityStructure& a)
{
    if (!a.unit) {
        Verdict v;
        v.check = "augmentation";
        v.precondition_failed = true;
        v.fail({0, {}, {}, "no augmentation designated"});
        return v;
    }
    auto f = augmentation_morphism(std::make_shared<AInfinityStructure>(a));
    Verdict v = morphism_check(f);
    v.check = "augmentation";
    return v;
}

const Vec* AInfinityModule::action(const Tuple& t) const
{
    return lookup(actions, t);
}

void AInfinityModule::set_action(const Tuple& t, Vec v)
{
    store(actions, t, std::move(v));
}

int AInfinityModule::arity_max() const
{
    return max_arity(actions);
}

bool AInfinityModule::composable(const Tuple& t) const
{
    if (algebra->ring == GroundRing::field || t.size() < 2)
        return true;
    if (space.tag(t[0]).source != algebra->space.tag(t[1]).target)
        return false;
    for (std::size_t i = 1; i + 1 < t.size(); ++i)
        if (!algebra->space.composable(t[i], t[i + 1]))
            return false;
    return true;
}

AInfinityModule regular_module(std::shared_ptr<const AInfinityStructure> a)
{
    AInfinityModule m;
    m.space = a->space;
    m.actions = a->ops;
    m.strict_unital = a->unit.has_value();
    m.algebra = std::move(a);
    return m;
}

AInfinityModule augmentation_module(std::shared_ptr<const AInfinityStructure> a)
{
    if (!a->unit)
        throw StructureError("augmentation module needs an augmented algebra");
    AInfinityModule m;
    m.space = GradedBimodule(a->space.vertices());
    for (std::size_t v = 0; v < a->space.vertex_count(); ++v)
        m.space.add({static_cast<int>(v), static_cast<int>(v), 0}, "e" + a->space.vertex_name(static_cast<int>(v)));
    for (const auto& [i, c] : a->unit->augmentation) {
        auto vtx = static_cast<std::size_t>(a->space.tag(i).target);
        m.set_action({vtx, i}, Vec::unit(vtx, c));
    }
    m.algebra = std::move(a);
    return m;
}

Vec module_residual(const AInfinityModule& m, const Tuple& t)
{
    const auto& A = *m.algebra;
    const std::size_t n = t.size();
    std::vector<long> pre(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        pre[i + 1] = pre[i] + (i == 0 ? m.space.degree(t[0]) : A.space.degree(t[i]));
    Vec res;
    for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t r = 0; r + s <= n; ++r) {
            const Vec* inner = r == 0 ? m.action(sub(t, 0, s)) : A.op(sub(t, r, s));
            if (!inner)
                continue;
            std::size_t tt = n - r - s;
            Scalar sg = sign_of(static_cast<long>(r * s + tt) + (2 - static_cast<long>(s)) * pre[r]);
            for (const auto& [y, c] : *inner)
                if (const Vec* outer = m.action(splice(t, r, s, y)))
                    res.axpy(sg * c, *outer);
        }
    return res;
}

Verdict module_stasheff_check(const AInfinityModule& m, bool report_all)
{
    Verdict v;
    v.check = "module-stasheff";
    const auto& A = *m.algebra;
    const int N = std::max(m.arity_max(), A.arity_max());
    v.checked_up_to = 2 * N - 1;
    std::vector<std::string> problems = A.validate();
    validate_family(
        m.actions, 2, "m^M", [&](const Tuple& t) { return m.composable(t); },
        [&](std::size_t k, std::size_t i) { return k == 0 ? m.space.degree(i) : A.space.degree(i); },
        [&](std::size_t k) { return k == 0 ? m.space.size() : A.dim(); }, m.space,
        [&](const Tuple& t) -> std::optional<BasisTag> {
            if (A.ring == GroundRing::field)
                return std::nullopt;
            int src = t.size() == 1 ? m.space.tag(t[0]).source : A.space.tag(t.back()).source;
            return BasisTag{src, m.space.tag(t[0]).target, 0};
        },
        [&](const Tuple& t) {
            std::string s = "(" + m.space.label(t[0]);
            for (std::size_t k = 1; k < t.size(); ++k)
                s += ", " + A.space.label(t[k]);
            return s + ")";
        },
        problems);
    if (!problems.empty()) {
        v.precondition_failed = true;
        for (auto& p : problems)
            v.fail({0, {}, {}, p});
        return v;
    }
    std::vector<Tuple> cands;
    for (int n = 1; n <= v.checked_up_to; ++n) {
        for (std::size_t x = 0; x < m.space.size(); ++x) {
            if (n == 1) {
                cands.push_back({x});
                continue;
            }
            for (auto& rest : composable_tuples(A.space, static_cast<std::size_t>(n - 1), A.ring)) {
                Tuple t{x};
                t.insert(t.end(), rest.begin(), rest.end());
                if (m.composable(t))
                    cands.push_back(std::move(t));
            }
        }
    }
    auto show = [&](const Tuple& t) {
        std::string s = "(" + m.space.label(t[0]);
        for (std::size_t k = 1; k < t.size(); ++k)
            s += ", " + A.space.label(t[k]);
        return s + ")";
    };
    scan(
        v, cands, [&](const Tuple& t) { return module_residual(m, t); }, show, report_all);
    if (m.strict_unital && A.unit) {
        for (std::size_t x = 0; x < m.space.size(); ++x) {
            std::size_t e = A.unit->unit.at(static_cast<std::size_t>(m.space.tag(x).source));
            const Vec* img = m.action({x, e});
            if (!img || *img != Vec::unit(x))
                v.fail({2, {x, e}, img ? *img - Vec::unit(x) : -Vec::unit(x), "unit acts nontrivially on " + show({x, e})});
        }
        for (const auto& [n, table] : m.actions) {
            if (n == 2)
                continue;
            for (const auto& [t, out] : table)
                if (std::any_of(t.begin() + 1, t.end(), [&](std::size_t i) { return A.unit->is_unit(i); }))
                    v.fail({n, t, out, "higher action with a unit argument on " + show(t)});
        }
        v.sort_failures();
    }
    return v;
}

std::vector<Tuple> composable_tuples(const GradedBimodule& m, std::size_t n, GroundRing ring)
{
    std::vector<Tuple> out;
    Tuple cur;
    std::function<void()> rec = [&] {
        if (cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (!cur.empty() && ring == GroundRing::vertices && !m.composable(cur.back(), j))
                continue;
            cur.push_back(j);
            rec();
            cur.pop_back();
        }
    };
    if (n > 0)
        rec();
    return out;
}

}  // namespace ainf
