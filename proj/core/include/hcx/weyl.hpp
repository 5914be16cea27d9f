#pragma once

#include "hcx/linalg.hpp"
#include "hcx/scalar.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hcx {

struct BasisVector {
    std::string name;
    Parity parity = Parity::Even;
};

class WeylAlgebra;
using WeylAlgebraPtr = std::shared_ptr<const WeylAlgebra>;

// PBW word: nondecreasing generator indices, odd generators at most once.
using Word = std::vector<uint16_t>;

// Element of the super Weyl algebra in PBW normal form: a finite sum of
// normal-ordered words with Scalar coefficients written on the left.
class WeylElement {
  public:
    WeylElement() = default;
    explicit WeylElement(WeylAlgebraPtr alg) : alg_(std::move(alg)) {}

    const WeylAlgebraPtr& algebra() const { return alg_; }
    const std::map<Word, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int filtration_degree() const;
    // Parity of a homogeneous element (coefficient parity + word weight);
    // nullopt when terms disagree.
    std::optional<Parity> parity() const;

    WeylElement operator-() const;
    WeylElement operator+(const WeylElement& o) const;
    WeylElement operator-(const WeylElement& o) const;
    WeylElement operator*(const WeylElement& o) const;
    WeylElement& operator+=(const WeylElement& o) { return *this = *this + o; }
    bool operator==(const WeylElement& o) const { return terms_ == o.terms_; }

    WeylElement scaled(const Scalar& s) const; // s placed on the left
    WeylElement supercommutator(const WeylElement& o) const;

    Scalar scalar_part() const; // coefficient of the empty word
    void set_term(const Word& w, const Scalar& c);
    Scalar term(const Word& w) const;

    std::string str() const;

  private:
    friend class WeylAlgebra;
    WeylAlgebraPtr alg_;
    std::map<Word, Scalar> terms_;
};

// The super Weyl algebra W(V) of a coefficient-level symplectic module,
// presented by generators with a Gram matrix of brackets. The Gram matrix
// may be degenerate (then this is a presymplectic Weyl algebra).
class WeylAlgebra : public std::enable_shared_from_this<WeylAlgebra> {
  public:
    static WeylAlgebraPtr create(BaseRingPtr ring, std::vector<BasisVector> basis,
                                 std::vector<std::vector<Scalar>> gram);

    const BaseRingPtr& ring() const { return ring_; }
    size_t dim() const { return basis_.size(); }
    const BasisVector& basis(size_t i) const { return basis_[i]; }
    const std::vector<BasisVector>& basis() const { return basis_; }
    Parity parity(size_t i) const { return basis_[i].parity; }
    const Scalar& gram(size_t i, size_t j) const { return gram_[i][j]; }
    // Super dimensions p|q.
    std::pair<int, int> super_dims() const;
    // Nondegeneracy of the flattened Gram matrix in the given mode.
    bool form_nondegenerate(const Mode& mode) const;

    WeylElement zero() const;
    WeylElement one() const;
    WeylElement constant(const Scalar& s) const;
    WeylElement generator(size_t i) const;
    WeylElement monomial(const Word& w, const Scalar& c) const;
    // Degree-1 element c0 * 1 + sum_j coords[j] * gen_j; coords has dim()+1
    // entries with the constant first.
    WeylElement affine_element(const std::vector<Scalar>& coords) const;

    WeylElement mul(const WeylElement& a, const WeylElement& b) const;
    // Image of a under a linear substitution sending generator i to the
    // degree-<=1 element images[i] of the target algebra.
    WeylElement substitute(const WeylElement& a, const WeylAlgebraPtr& target,
                           const std::vector<WeylElement>& images) const;

    // Word parity (sum of generator parities).
    Parity word_parity(const Word& w) const;

  private:
    WeylAlgebra(BaseRingPtr ring, std::vector<BasisVector> basis,
                std::vector<std::vector<Scalar>> gram);
    // Normal-order (the element a) * gen.
    WeylElement insert_right(const Word& w, uint16_t gen) const;
    WeylElement word_mul(const Word& a, const Word& b) const;

    BaseRingPtr ring_;
    std::vector<BasisVector> basis_;
    std::vector<std::vector<Scalar>> gram_;
    mutable std::map<std::pair<Word, uint16_t>, WeylElement> insert_memo_;
};

// Validate super-antisymmetry and entry parities of a Gram matrix.
void validate_gram(const BaseRingPtr& ring, const std::vector<BasisVector>& basis,
                   const std::vector<std::vector<Scalar>>& gram);

} // namespace hcx
