#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ainf/ainfty.hpp"
#include "ainf/homology.hpp"
#include "ainf/quiver.hpp"

namespace ainf {

// kQ on the path basis with concatenation, zero differential, units e_v
// and the augmentation onto kQ_0. Under a bound the result is the quotient
// by the paths outside it (still associative, since the paths outside any
// length/degree cap span an ideal).
AInfinityStructure path_algebra(const GradedQuiver& q, std::optional<PathBound> bound = std::nullopt,
                                Field field = Field::rationals());

// Degree-d part of the arrow space V.
GradedBimodule arrow_space(const GradedQuiver& q);

// 0 -> V (x)_R kQ -> kQ -> R -> 0 with mu(a (x) p) = ap and epsilon.
struct CanonicalResolution {
    GradedBimodule vkq;  // slot 0
    GradedBimodule kq;   // slot 1
    GradedBimodule r;    // slot 2
    std::vector<Vec> mu;       // vkq basis -> kq
    std::vector<Vec> epsilon;  // kq basis -> r
    std::optional<PathBound> bound;
};

CanonicalResolution canonical_resolution(const GradedQuiver& q, std::optional<PathBound> bound = std::nullopt,
                                         Field field = Field::rationals());

struct ResolutionExactness {
    // slot -> (source, target, internal degree) -> dim, for the augmented complex.
    std::map<int, DimTable> augmented;
    // Same without the R slot: H should be R, concentrated in the kQ slot.
    std::map<int, DimTable> unaugmented;
    bool exact = false;       // augmented complex acyclic
    bool resolves_r = false;  // unaugmented homology == R at slot 1, zero at slot 0
};

ResolutionExactness check_resolution(const CanonicalResolution& res);

}  // namespace ainf
