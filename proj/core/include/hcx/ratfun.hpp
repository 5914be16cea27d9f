#pragma once

#include "hcx/polynomial.hpp"

#include <string>
#include <vector>

namespace hcx {

// Element of the fraction field of Q[x_1..x_p], kept in canonical form:
// gcd(num, den) = 1 and den monic with respect to grlex.
class RatFun {
  public:
    RatFun() = default;
    RatFun(const Rational& c) : num_(c) {} // NOLINT: implicit constants
    RatFun(int c) : num_(Rational(c)) {}
    RatFun(Polynomial num, Polynomial den);
    explicit RatFun(Polynomial num) : num_(std::move(num)) {}
    static RatFun variable(size_t var) { return RatFun(Polynomial::variable(var)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    Rational constant_value() const;

    RatFun operator-() const;
    RatFun operator+(const RatFun& r) const;
    RatFun operator-(const RatFun& r) const;
    RatFun operator*(const RatFun& r) const;
    RatFun operator/(const RatFun& r) const;
    RatFun& operator+=(const RatFun& r) { return *this = *this + r; }
    RatFun& operator-=(const RatFun& r) { return *this = *this - r; }
    RatFun& operator*=(const RatFun& r) { return *this = *this * r; }
    bool operator==(const RatFun& r) const { return num_ == r.num_ && den_ == r.den_; }

    RatFun inverse() const;
    RatFun derivative(size_t var) const; // quotient rule
    Rational evaluate(const std::vector<Rational>& point) const;
    RatFun evaluate_partial(const std::vector<std::pair<size_t, Rational>>& assignment) const;
    RatFun substitute(const std::vector<Polynomial>& values) const; // full substitution of all vars

    std::string str(const std::vector<std::string>& names) const;

  private:
    void normalize();

    Polynomial num_ = Polynomial(Rational(0));
    Polynomial den_ = Polynomial(Rational(1));
};

} // namespace hcx
