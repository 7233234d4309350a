#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ainf/bimodule.hpp"
#include "ainf/scalar.hpp"
#include "ainf/sparse.hpp"

namespace ainf {

using Tuple = std::vector<std::size_t>;
using OpTable = std::map<Tuple, Vec>;

// Tensor products are taken over R = kQ_0 (vertices) or over k (field).
enum class GroundRing { vertices, field };

// eta: vertex v -> basis element unit[v]; epsilon(x) = augmentation[x] * e_v
// for x in the (v, v) degree-0 block, zero elsewhere.
struct UnitAugmentation {
    std::vector<std::size_t> unit;
    std::map<std::size_t, Scalar> augmentation;

    bool is_unit(std::size_t i) const;
    // Augmentation is the coordinate projection onto the units.
    bool is_normalized() const;
    static UnitAugmentation standard(std::vector<std::size_t> units);
};

class AInfinityStructure {
public:
    Field field;
    GradedBimodule space;
    GroundRing ring = GroundRing::vertices;
    std::map<int, OpTable> ops;
    std::optional<UnitAugmentation> unit;

    // Largest arity with a nonzero operation (at least 1).
    int arity_max() const;
    const Vec* op(const Tuple& t) const;
    // Stores t -> v (erases the entry when v is zero).
    void set_op(const Tuple& t, Vec v);
    bool composable(const Tuple& t) const;
    bool is_minimal() const;
    std::size_t dim() const { return space.size(); }

    // Degree 2 - n, composability and block checks on every stored entry.
    std::vector<std::string> validate() const;
};

struct Failure {
    int arity = 0;
    Tuple tuple;
    Vec residual;
    std::string message;
};

struct Verdict {
    std::string check;
    bool pass = true;
    bool precondition_failed = false;
    int checked_up_to = 0;  // identities evaluated for n <= this
    std::string note;
    std::vector<Failure> failures;

    void fail(Failure f);
    void sort_failures();
};

// Labels a tuple as "(a, b, c)" using the given basis.
std::string tuple_str(const GradedBimodule& m, const Tuple& t);

// Residual of the n-th identity on one tuple.
Vec stasheff_residual(const AInfinityStructure& a, const Tuple& t);

// Evaluates the identities for n <= 2N - 1. Tuples on which every term
// vanishes are skipped, which does not change the verdict. With
// report_all = false the scan stops at the first failure.
Verdict stasheff_check(const AInfinityStructure& a, bool report_all = true);

Verdict unitality_check(const AInfinityStructure& a);

struct AInfinityMorphism {
    std::shared_ptr<const AInfinityStructure> domain;
    std::shared_ptr<const AInfinityStructure> codomain;
    std::map<int, OpTable> components;  // f_n of degree 1 - n

    const Vec* component(const Tuple& t) const;
    void set_component(const Tuple& t, Vec v);
    int arity_max() const;
    bool is_strict() const;
};

// n-th morphism identity residual on one domain tuple.
Vec morphism_residual(const AInfinityMorphism& f, const Tuple& t);

// Identities for n <= max(N_dom + N_f - 1, N_cod * N_f); unit and
// augmentation preservation when both sides carry them.
Verdict morphism_check(const AInfinityMorphism& f);

// The semisimple algebra R on the given vertex names.
AInfinityStructure ground_ring_algebra(const std::vector<std::string>& vertices, Field field);

// epsilon: A -> R as a strict morphism.
AInfinityMorphism augmentation_morphism(std::shared_ptr<const AInfinityStructure> a);
AInfinityMorphism identity_morphism(std::shared_ptr<const AInfinityStructure> a);

// Stasheff identities plus strictness of the unit and augmentation.
Verdict augmentation_check(const AInfinityStructure& a);

struct AInfinityModule {
    std::shared_ptr<const AInfinityStructure> algebra;
    GradedBimodule space;
    std::map<int, OpTable> actions;  // first tuple entry indexes `space`, the rest the algebra
    bool strict_unital = true;

    const Vec* action(const Tuple& t) const;
    void set_action(const Tuple& t, Vec v);
    int arity_max() const;
    bool composable(const Tuple& t) const;
};

AInfinityModule regular_module(std::shared_ptr<const AInfinityStructure> a);
// R as a right module through epsilon.
AInfinityModule augmentation_module(std::shared_ptr<const AInfinityStructure> a);

Vec module_residual(const AInfinityModule& m, const Tuple& t);
Verdict module_stasheff_check(const AInfinityModule& m, bool report_all = true);

// Lists all composable tuples of length n over the basis (every tuple
// under GroundRing::field).
std::vector<Tuple> composable_tuples(const GradedBimodule& m, std::size_t n, GroundRing ring = GroundRing::vertices);

}  // namespace ainf
