#pragma once

#include "hcx/ratfun.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hcx {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}
inline int sign_of(Parity p) { return p == Parity::Odd ? -1 : 1; }

// The coefficient ring is K tensor Lambda: K the field of rational functions
// in the even names, Lambda the Grassmann algebra on the odd names.
struct BaseRing {
    std::vector<std::string> even_names;
    std::vector<std::string> odd_names;

    BaseRing() = default;
    BaseRing(std::vector<std::string> even, std::vector<std::string> odd);

    size_t num_even() const { return even_names.size(); }
    size_t num_odd() const { return odd_names.size(); }
    std::optional<size_t> even_index(const std::string& name) const;
    std::optional<size_t> odd_index(const std::string& name) const;
    bool operator==(const BaseRing& o) const {
        return even_names == o.even_names && odd_names == o.odd_names;
    }
};

using BaseRingPtr = std::shared_ptr<const BaseRing>;

// Sign picked up when multiplying theta_A * theta_B (disjoint index sets):
// (-1)^{#{(a,b) in A x B : a > b}}. Returns 0 when the sets overlap.
int grassmann_merge_sign(uint64_t a, uint64_t b);

// Element of K tensor Lambda. Terms are indexed by subsets of the odd names
// encoded as bitmasks; coefficients live in K.
class Scalar {
  public:
    Scalar() = default;
    explicit Scalar(BaseRingPtr ring) : ring_(std::move(ring)) {}
    Scalar(BaseRingPtr ring, const RatFun& body);
    static Scalar constant(BaseRingPtr ring, const Rational& c) { return Scalar(ring, RatFun(c)); }
    static Scalar even_variable(BaseRingPtr ring, size_t var);
    static Scalar odd_variable(BaseRingPtr ring, size_t var);

    const BaseRingPtr& ring() const { return ring_; }
    const std::map<uint64_t, RatFun>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    // Parity is defined only when all terms have the same subset size mod 2.
    std::optional<Parity> parity() const;
    bool is_even() const { return parity() == Parity::Even || is_zero(); }
    bool is_odd() const { return parity() == Parity::Odd || is_zero(); }

    RatFun body() const; // coefficient of the empty subset
    Scalar body_part() const;
    Scalar soul_part() const; // the nilpotent rest
    // Largest k with this element in N^k (N the odd-generated ideal);
    // returns a large sentinel for zero.
    int nilpotent_order() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& s) const;
    Scalar operator-(const Scalar& s) const;
    Scalar operator*(const Scalar& s) const;
    Scalar& operator+=(const Scalar& s) { return *this = *this + s; }
    Scalar& operator-=(const Scalar& s) { return *this = *this - s; }
    Scalar& operator*=(const Scalar& s) { return *this = *this * s; }
    bool operator==(const Scalar& s) const { return terms_ == s.terms_; }

    Scalar scaled(const RatFun& c) const;
    // Grading automorphism: negate the odd part.
    Scalar involution() const;
    // Exact inverse of an even element with invertible body; the nilpotent
    // part is handled by a terminating geometric series.
    Scalar inverse() const;

    Scalar derivative_even(size_t var) const;
    // Left derivative with respect to the odd variable.
    Scalar derivative_odd(size_t var) const;
    // Specialize even variables to rationals; odd variables stay symbolic.
    Scalar evaluate_even(const std::vector<std::pair<size_t, Rational>>& assignment) const;
    // Substitute even variables by polynomials (full list, one per even var).
    Scalar substitute_even(const std::vector<Polynomial>& values) const;
    // Drop all terms containing odd variables (reduction mod N).
    Scalar reduce_mod_odd() const;
    bool depends_on_even(size_t var) const;
    bool has_odd_part() const; // any term with a nonempty subset

    void set_term(uint64_t mask, const RatFun& c);
    RatFun term(uint64_t mask) const;

    std::string str() const;

  private:
    void check_ring(const Scalar& other) const;

    BaseRingPtr ring_;
    std::map<uint64_t, RatFun> terms_; // nonzero coefficients only
};

// Deterministic order of subsets used for canonical printing: by size, then
// by the ascending list of member indices.
bool subset_less(uint64_t a, uint64_t b);

} // namespace hcx
