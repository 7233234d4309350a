#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ainf/ainfty.hpp"
#include "ainf/homology.hpp"

namespace ainf {

// One bound record for bar and cobar words: maximal word length and a
// window for word degrees.
struct WordBound {
    std::optional<std::size_t> max_length;
    std::optional<DegreeWindow> degrees;

    bool admits(std::size_t length, int degree) const;
    std::string str() const;
    friend bool operator==(const WordBound&, const WordBound&) = default;
};

struct CoproductTerm {
    std::size_t left = 0;
    std::size_t right = 0;
    Scalar coeff;
};

// Tensor coalgebra on a letter space with deconcatenation coproduct, a
// coderivation differential and one empty word (counit) per vertex.
struct DgCoalgebra {
    Field field;
    GradedBimodule letters;
    GradedBimodule space;
    std::vector<std::vector<std::size_t>> words;  // letters of each basis word
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::size_t> empty_word;  // vertex -> basis index
    std::vector<Vec> differential;
    std::vector<std::vector<CoproductTerm>> reduced_coproduct;
    std::optional<WordBound> bound;
    bool truncated = false;  // some differential or coproduct term left the bound

    std::size_t dim() const { return space.size(); }
    bool is_empty_word(std::size_t i) const { return words.at(i).empty(); }
    // Reduced part plus e (x) c + c (x) e (or e (x) e on an empty word).
    std::vector<CoproductTerm> coproduct(std::size_t c) const;
    ChainComplexView complex() const;
};

// Letters are the non-unit basis elements of A (the augmentation must be
// normalized), shifted down by one. Words must be finite in number: the
// letter graph is acyclic or the bound caps the length.
DgCoalgebra bar_construct_raw(const AInfinityStructure& a, std::optional<WordBound> bound = std::nullopt);
bool squares_to_zero(const DgCoalgebra& c);
// As above but throws StructureError when d^2 != 0 (the structure fails
// the Stasheff identities).
DgCoalgebra bar_construct(const AInfinityStructure& a, std::optional<WordBound> bound = std::nullopt);

// Delta d = (d (x) id + id (x) d) Delta with Koszul signs, on every word.
Verdict check_coderivation(const DgCoalgebra& c);
Verdict check_coassociativity(const DgCoalgebra& c);

// Tensor algebra on s^-1 of the reduced words; a dg algebra (m1, m2).
using DgAlgebra = AInfinityStructure;
DgAlgebra cobar_construct(const DgCoalgebra& c, std::optional<WordBound> bound = std::nullopt);
DgAlgebra enveloping_algebra(const AInfinityStructure& a, std::optional<WordBound> bound = std::nullopt);

// Graded dual with the convolution product of the co-opposite coalgebra
// (so that the product is an R-bimodule map) and the dual differential.
DgAlgebra graded_dual_algebra(const DgCoalgebra& c);

// BA (x)_pi A (or BA (x)_pi Abar) for an augmented dg algebra A.
struct TwistedTensorComplex {
    DgCoalgebra bar;
    std::shared_ptr<const AInfinityStructure> algebra;
    bool ideal = false;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (word, algebra element)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    ChainComplexView complex;

    bool square_zero() const;
    // d_pi((w (x) a) b) = d_pi(w (x) a) b + (-1)^{|w|+|a|} (w (x) a) m1(b).
    Verdict check_module_map() const;
    // epsilon_BA (x) epsilon_A onto R (zero for the ideal version).
    std::vector<Vec> augmentation_map() const;
    // The mapping cone of the augmentation map is acyclic.
    bool augmentation_is_quasi_iso() const;
};

TwistedTensorComplex twisted_tensor(const AInfinityStructure& a, std::optional<WordBound> bound = std::nullopt,
                                    bool ideal = false);

// Non-unit basis elements as a chain complex under m1 (A-bar).
ChainComplexView augmentation_ideal_complex(const AInfinityStructure& a, std::vector<std::size_t>* ids = nullptr);
ChainComplexView underlying_complex(const AInfinityStructure& a);

}  // namespace ainf
