#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ainf/ainfty.hpp"
#include "ainf/quiver.hpp"
#include "ainf/scalar.hpp"

namespace ainf {

enum class DiagnosticCode {
    syntax,
    unknown_keyword,
    unknown_vertex,
    unknown_arrow,
    non_composable_path,
    path_outside_bound,
    non_composable_tuple,
    block_mismatch,
    degree_rule,
    duplicate,
    no_vertices,
    bad_scalar,
    unit_argument,
    non_positive_degree,
    cyclic_without_bound,
};

// Stable identifier such as "E006 non-composable-tuple".
std::string code_name(DiagnosticCode c);

struct Diagnostic {
    DiagnosticCode code;
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;

    std::string str() const;  // "<line>:<col>: error E00x name: message"
};

class FixtureError : public InputError {
public:
    explicit FixtureError(std::vector<Diagnostic> d);
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

struct ModuleDecl {
    std::string name;
    std::string kind;  // regular | augmentation
};

struct FixtureDocument {
    Field field;
    GradedQuiver quiver;
    std::optional<PathBound> bound;
    GroundRing ring = GroundRing::vertices;
    bool strict_unital = true;
    std::vector<ModuleDecl> modules;
    AInfinityStructure algebra;  // path algebra with the declared operations
};

struct ParseOptions {
    std::optional<Field> field;  // overrides the `field` line
};

// Line-oriented, order-insensitive; `#` starts a comment. All problems are
// collected and thrown together as a FixtureError.
//   field q | field fp 32003
//   vertices 1 2 3 4
//   arrow alpha 2 -> 1 deg 1
//   m 3 alpha beta gamma = 1 tau + -1/2 alpha*beta      (also m3 ...)
//   bound length 6 degree -4 8
//   ring vertices | ring field
//   unital strict | unital none
//   module M regular | module M augmentation
FixtureDocument parse_fixture(std::string_view text, const ParseOptions& opts = {});

}  // namespace ainf
