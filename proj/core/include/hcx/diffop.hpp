#pragma once

#include "hcx/chart.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hcx {

// Vector field on the base ring: a derivation sum coeff * d/dvar with the
// coefficient on the left.
struct VectorField {
    struct Term {
        Scalar coeff;
        bool odd = false;
        size_t var = 0;
    };
    BaseRingPtr ring;
    std::vector<Term> terms;

    static VectorField zero(BaseRingPtr r) { return VectorField{std::move(r), {}}; }
    static VectorField d_even(const BaseRingPtr& r, size_t var, const Scalar& coeff);
    static VectorField d_odd(const BaseRingPtr& r, size_t var, const Scalar& coeff);
    VectorField operator+(const VectorField& o) const;
    VectorField scaled(const Scalar& c) const;

    Scalar apply(const Scalar& s) const;
    std::optional<Parity> parity() const;
    // Super bracket [v, w], computed through the action on coordinates.
    static VectorField bracket(const VectorField& v, const VectorField& w);
    bool is_zero() const;
};

// Key of a normal-form operator term: left-multiplication word, grading
// flag, right-derivation exponents over the I0 positions, base-derivation
// exponents (even vars) and mask (odd vars).
struct OpKey {
    Word lword;
    bool jflag = false;
    std::vector<int> rder;
    std::vector<int> bder_even;
    uint64_t bder_odd = 0;
    auto operator<=>(const OpKey&) const = default;
};

// First-order (in the base directions) symbolic operator on the right Fock
// model of a chart, in normal form
//   coeff . l_word . J^eps . d^r_{I0 letters} . d_{base coords}.
// Equality of operators is equality of normal forms.
class DiffOp {
  public:
    DiffOp() = default;
    explicit DiffOp(ChartPtr chart) : chart_(std::move(chart)) {}

    static DiffOp zero(ChartPtr c) { return DiffOp(std::move(c)); }
    static DiffOp identity(const ChartPtr& c);
    static DiffOp mult(const ChartPtr& c, const Scalar& s);
    // Left multiplication by a model-supported element (coefficients ride
    // along as mult factors).
    static DiffOp lmul(const ChartPtr& c, const WeylElement& model_elt);
    static DiffOp grading(const ChartPtr& c);
    static DiffOp rder(const ChartPtr& c, size_t i0_pos);
    static DiffOp from_field(const ChartPtr& c, const VectorField& v);

    const ChartPtr& chart() const { return chart_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<OpKey, Scalar>& terms() const { return terms_; }

    DiffOp operator+(const DiffOp& o) const;
    DiffOp operator-(const DiffOp& o) const;
    DiffOp operator-() const;
    DiffOp operator*(const DiffOp& o) const; // composition, this after o
    bool operator==(const DiffOp& o) const { return terms_ == o.terms_; }

    DiffOp scaled(const Scalar& s) const; // mult_s composed on the left
    std::optional<Parity> parity() const;
    DiffOp supercommutator(const DiffOp& o) const;

    WeylElement apply(const WeylElement& v) const;
    // The zeroth-order part (no base derivations) and the pure-multiplier
    // part of the normal form.
    DiffOp zeroth_order() const;
    std::optional<Scalar> as_multiplier() const;
    // Symbol: the base-derivation part as a vector field (first order only).
    VectorField symbol() const;

    std::string str() const;

  private:
    void add_term(const OpKey& key, const Scalar& coeff);
    // Composition helpers: append a primitive on the right of a term.
    void append_mult(const OpKey& key, const Scalar& coeff, const Scalar& a);
    void append_lword(const OpKey& key, const Scalar& coeff, const Word& w);
    void append_lletter(const OpKey& key, const Scalar& coeff, uint16_t g);
    void append_j(const OpKey& key, const Scalar& coeff);
    void append_rder(const OpKey& key, const Scalar& coeff, size_t pos);
    void append_bder_even(const OpKey& key, const Scalar& coeff, size_t var);
    void append_bder_odd(const OpKey& key, const Scalar& coeff, size_t var);

    Parity i0_parity(size_t pos) const;
    int rder_odd_count(const std::vector<int>& rder) const;

    ChartPtr chart_;
    std::map<OpKey, Scalar> terms_;
};

} // namespace hcx
