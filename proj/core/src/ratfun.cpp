#include "hcx/ratfun.hpp"

namespace hcx {

RatFun::RatFun(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    require(!den_.is_zero(), "rational function with zero denominator");
    normalize();
}

void RatFun::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    Polynomial g = poly_gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_.divided_by(g);
        den_ = den_.divided_by(g);
    }
    Rational lc = den_.leading_coefficient();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Rational RatFun::constant_value() const {
    require(is_constant(), "rational function is not constant");
    return num_.constant_term();
}

RatFun RatFun::operator-() const {
    RatFun r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFun RatFun::operator+(const RatFun& r) const {
    return RatFun(num_ * r.den_ + r.num_ * den_, den_ * r.den_);
}

RatFun RatFun::operator-(const RatFun& r) const {
    return RatFun(num_ * r.den_ - r.num_ * den_, den_ * r.den_);
}

RatFun RatFun::operator*(const RatFun& r) const { return RatFun(num_ * r.num_, den_ * r.den_); }

RatFun RatFun::operator/(const RatFun& r) const {
    require(!r.is_zero(), "division by zero rational function");
    return RatFun(num_ * r.den_, den_ * r.num_);
}

RatFun RatFun::inverse() const {
    require(!is_zero(), "inverse of zero rational function");
    return RatFun(den_, num_);
}

RatFun RatFun::derivative(size_t var) const {
    // (n/d)' = (n'd - nd')/d^2
    return RatFun(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

Rational RatFun::evaluate(const std::vector<Rational>& point) const {
    Rational d = den_.evaluate(point);
    require(d != 0, "denominator vanishes at the evaluation point");
    return num_.evaluate(point) / d;
}

RatFun RatFun::evaluate_partial(const std::vector<std::pair<size_t, Rational>>& assignment) const {
    return RatFun(num_.evaluate_partial(assignment), den_.evaluate_partial(assignment));
}

RatFun RatFun::substitute(const std::vector<Polynomial>& values) const {
    Polynomial n = num_, d = den_;
    // Substitute from the highest variable down so indices stay valid.
    for (size_t i = values.size(); i-- > 0;) {
        n = n.substitute(i, values[i]);
        d = d.substitute(i, values[i]);
    }
    return RatFun(n, d);
}

std::string RatFun::str(const std::vector<std::string>& names) const {
    if (is_polynomial())
        return num_.str(names);
    std::string n = num_.str(names);
    std::string d = den_.str(names);
    if (num_.num_terms() > 1)
        n = "(" + n + ")";
    if (den_.num_terms() > 1)
        d = "(" + d + ")";
    return n + "/" + d;
}

} // namespace hcx
