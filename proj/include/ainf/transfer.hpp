#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ainf/ainfty.hpp"
#include "ainf/homology.hpp"

namespace ainf {

struct ContractionOptions {
    // Perturbs the chosen homology representatives and cycle complement.
    std::optional<std::uint64_t> seed;
};

// Deformation retract of `complex` onto `homology`:
// pi iota = id, id - iota pi = d h + h d, h h = 0, h iota = 0, pi h = 0.
struct Contraction {
    ChainComplexView complex;
    GradedBimodule homology;
    std::vector<Vec> iota;        // homology basis -> complex
    std::vector<Vec> projection;  // complex basis -> homology
    std::vector<Vec> homotopy;    // complex basis -> complex, degree -1

    Vec apply_iota(const Vec& v) const;
    Vec apply_projection(const Vec& v) const;
    Vec apply_homotopy(const Vec& v) const;
    Verdict verify() const;
};

// Block-wise: cycles Z = B (+) H with B = d(L) of the previous degree; the
// complement L of Z is spanned by basis vectors at pivot columns taken
// from the highest basis index down; H is the kernel reduced modulo B.
Contraction build_contraction(const ChainComplexView& c, ContractionOptions opts = {});

struct MinimalModelOptions {
    std::optional<std::uint64_t> seed;
    int max_arity = 8;
    // Caps the number of evaluated tuples; lowering the cutoff marks the model truncated.
    std::size_t max_tuples = 200000;
};

struct MinimalModel {
    std::shared_ptr<const AInfinityStructure> source;
    std::shared_ptr<const AInfinityStructure> model;  // R (+) H(A-bar)
    AInfinityMorphism morphism;                       // model -> source, f_1 = iota
    Contraction contraction;                          // of A-bar
    std::vector<std::size_t> ideal_ids;               // contraction index -> source basis
    int arity_cutoff = 0;
    bool truncated = false;  // cutoff imposed by max_arity, higher operations unknown
    std::string cutoff_reason;
};

// Homotopy transfer of an augmented dg algebra along a contraction of its
// augmentation ideal; the units are adjoined afterwards.
MinimalModel minimal_model(std::shared_ptr<const AInfinityStructure> a, MinimalModelOptions opts = {});

// The associative algebra H(A) with the induced product (arity 2 only).
AInfinityStructure homology_algebra(std::shared_ptr<const AInfinityStructure> a, MinimalModelOptions opts = {});

// f_1 of the morphism is a quasi-isomorphism: its mapping cone is acyclic.
bool first_component_is_quasi_iso(const MinimalModel& m);

}  // namespace ainf
