#pragma once

#include "hcx/error.hpp"
#include "hcx/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace hcx {

// Exponent vector with trailing zeros trimmed, so x0^2 means the same thing
// regardless of how many variables the ambient ring declares.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) { trim(); }

    void trim() {
        while (!e.empty() && e.back() == 0)
            e.pop_back();
    }
    int degree() const {
        int d = 0;
        for (int k : e)
            d += k;
        return d;
    }
    int exponent(size_t var) const { return var < e.size() ? e[var] : 0; }
    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    Monomial operator/(const Monomial& m) const; // exact, requires divides()
    auto operator<=>(const Monomial&) const = default;
};

// Graded-lex order used for canonical printing and for choosing the leading
// term in normalization.
bool grlex_less(const Monomial& a, const Monomial& b);

// Sparse multivariate polynomial with rational coefficients.
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(const Rational& c); // NOLINT: implicit constant embedding
    Polynomial(int c) : Polynomial(Rational(c)) {}
    static Polynomial variable(size_t var);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    const Rational& constant_term() const;
    size_t num_terms() const { return terms_.size(); }
    int total_degree() const;
    int degree_in(size_t var) const;
    size_t max_var_index() const; // 0 when constant, else 1 + highest var used

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coefficient(const Monomial& m) const;
    void set(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& p) const;
    Polynomial operator-(const Polynomial& p) const;
    Polynomial operator*(const Polynomial& p) const;
    Polynomial& operator+=(const Polynomial& p);
    Polynomial& operator-=(const Polynomial& p);
    Polynomial& operator*=(const Polynomial& p);
    bool operator==(const Polynomial& p) const { return terms_ == p.terms_; }

    Polynomial scaled(const Rational& c) const;

    // Leading data with respect to grlex.
    Monomial leading_monomial() const;
    Rational leading_coefficient() const;

    // Exact division; throws if the division leaves a remainder.
    Polynomial divided_by(const Polynomial& d) const;
    bool try_divide(const Polynomial& d, Polynomial& quotient) const;

    Polynomial derivative(size_t var) const;
    Polynomial substitute(size_t var, const Polynomial& value) const;
    Rational evaluate(const std::vector<Rational>& point) const;
    Polynomial evaluate_partial(const std::vector<std::pair<size_t, Rational>>& assignment) const;

    std::string str(const std::vector<std::string>& names) const;

  private:
    std::map<Monomial, Rational> terms_; // nonzero coefficients only
};

// Monic gcd (leading coefficient 1); gcd(0,0) = 0.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

} // namespace hcx
