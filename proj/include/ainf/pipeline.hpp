#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ainf/ainfty.hpp"
#include "ainf/bar_cobar.hpp"
#include "ainf/homology.hpp"
#include "ainf/quiver.hpp"

namespace ainf {

struct DimComparison {
    bool pass = true;
    std::vector<DimDiff> diff;
};

DimComparison compare_graded_dims(const HomologyReport& x, const DimTable& y);
DimComparison compare_graded_dims(const DimTable& x, const DimTable& y);

struct MultiplicativeMatch {
    bool pass = false;
    std::string obstruction;
    // basis label of the graded algebra -> image in the homology algebra
    std::vector<std::pair<std::string, std::string>> correspondence;
};

// Builds phi: b -> h from idempotents (vertex by vertex) and generators
// (indecomposables, block by block), extends it multiplicatively and checks
// that it is a bijective, block-preserving algebra map.
MultiplicativeMatch check_multiplicative_match(const AInfinityStructure& h, const AInfinityStructure& b);

// R (+) D(V)[-1]: R at (v, v, 0), arrow a: s -> t of degree d at (t, s, 1 - d).
DimTable koszul_dual_shape(const GradedQuiver& q);

struct StageCertificate {
    int index = 0;
    std::string name;
    std::string status;  // pass | fail | truncated | skipped
    std::vector<std::pair<std::string, std::string>> facts;
    std::vector<std::pair<std::string, DimTable>> tables;
    std::string detail;
};

struct TheoremReport {
    std::string fixture;
    std::string field;
    std::string bound;
    std::vector<std::string> vertices;
    bool truncated = false;
    std::vector<StageCertificate> stages;
    std::string verdict;  // pass | fail | consistent up to truncation | inconclusive

    bool passed() const { return verdict == "pass"; }
    const StageCertificate* stage(int index) const;
};

struct PipelineOptions {
    std::string fixture_name;
    std::optional<WordBound> bound;
    std::optional<PathBound> path_bound;
    std::optional<std::uint64_t> seed;
    int max_arity = 8;
};

// Stages: 0 input checks, 1 U = Omega B A vs kQ, 2 canonical resolution,
// 3 BU (x)_pi U acyclic, 4 U* = D(BU) vs R (+) D(V)[-1], 5 minimal model
// A' of U*, 6 D(BA') has zero differential and matches kQ.
TheoremReport verify_theorem(const AInfinityStructure& a, const GradedQuiver& q, const PipelineOptions& opts = {});

std::string table_str(const DimTable& t, const std::vector<std::string>& vertices);
std::string degree_dims_str(const DimTable& t);

}  // namespace ainf
