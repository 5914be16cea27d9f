#include "hcx/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace hcx {

bool Monomial::divides(const Monomial& m) const {
    if (e.size() > m.e.size())
        return false;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > m.e[i])
            return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    std::vector<int> r(std::max(e.size(), m.e.size()), 0);
    for (size_t i = 0; i < e.size(); ++i)
        r[i] += e[i];
    for (size_t i = 0; i < m.e.size(); ++i)
        r[i] += m.e[i];
    return Monomial(std::move(r));
}

Monomial Monomial::operator/(const Monomial& m) const {
    require(m.divides(*this), "monomial division is not exact");
    std::vector<int> r(e);
    for (size_t i = 0; i < m.e.size(); ++i)
        r[i] -= m.e[i];
    return Monomial(std::move(r));
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    // Same degree: lexicographic on exponents, higher first variable wins.
    size_t n = std::max(a.e.size(), b.e.size());
    for (size_t i = 0; i < n; ++i) {
        int ea = a.exponent(i), eb = b.exponent(i);
        if (ea != eb)
            return ea < eb;
    }
    return false;
}

Polynomial::Polynomial(const Rational& c) {
    if (c != 0)
        terms_[Monomial()] = c;
}

Polynomial Polynomial::variable(size_t var) {
    Polynomial p;
    std::vector<int> e(var + 1, 0);
    e[var] = 1;
    p.terms_[Monomial(std::move(e))] = 1;
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.e.empty());
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.e.empty() && terms_.begin()->second == 1;
}

const Rational& Polynomial::constant_term() const {
    static const Rational zero(0);
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? zero : it->second;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.degree());
    return d;
}

int Polynomial::degree_in(size_t var) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.exponent(var));
    return d;
}

size_t Polynomial::max_var_index() const {
    size_t n = 0;
    for (const auto& [m, c] : terms_)
        n = std::max(n, m.e.size());
    return n;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::set(const Monomial& m, const Rational& c) {
    if (c == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_)
        r.terms_[m] = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& p) {
    for (const auto& [m, c] : p.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& p) { return *this += -p; }

Polynomial Polynomial::operator+(const Polynomial& p) const {
    Polynomial r(*this);
    r += p;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& p) const {
    Polynomial r(*this);
    r -= p;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& p) const {
    Polynomial r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : p.terms_) {
            Monomial m = ma * mb;
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                Rational c = ca * cb;
                if (c != 0)
                    r.terms_[m] = std::move(c);
            } else {
                it->second += ca * cb;
                if (it->second == 0)
                    r.terms_.erase(it);
            }
        }
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& p) {
    *this = *this * p;
    return *this;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r;
    if (c == 0)
        return r;
    for (const auto& [m, co] : terms_)
        r.terms_[m] = co * c;
    return r;
}

Monomial Polynomial::leading_monomial() const {
    require(!is_zero(), "leading monomial of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (grlex_less(best->first, it->first))
            best = it;
    return best->first;
}

Rational Polynomial::leading_coefficient() const { return coefficient(leading_monomial()); }

bool Polynomial::try_divide(const Polynomial& d, Polynomial& quotient) const {
    require(!d.is_zero(), "division by zero polynomial");
    Polynomial rem(*this), q;
    while (!rem.is_zero()) {
        Monomial lm = rem.leading_monomial();
        Monomial dm = d.leading_monomial();
        if (!dm.divides(lm))
            return false;
        Rational c = rem.coefficient(lm) / d.coefficient(dm);
        Polynomial t;
        t.terms_[lm / dm] = c;
        q += t;
        rem -= t * d;
    }
    quotient = std::move(q);
    return true;
}

Polynomial Polynomial::divided_by(const Polynomial& d) const {
    Polynomial q;
    require(try_divide(d, q), "polynomial division is not exact");
    return q;
}

Polynomial Polynomial::derivative(size_t var) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        int k = m.exponent(var);
        if (k == 0)
            continue;
        std::vector<int> e(m.e);
        e[var] -= 1;
        r.terms_[Monomial(std::move(e))] = c * k;
    }
    return r;
}

Polynomial Polynomial::substitute(size_t var, const Polynomial& value) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        std::vector<int> e(m.e);
        int k = m.exponent(var);
        if (var < e.size())
            e[var] = 0;
        Polynomial t;
        t.terms_[Monomial(std::move(e))] = c;
        for (int i = 0; i < k; ++i)
            t *= value;
        r += t;
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    Rational r(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < m.e.size(); ++i) {
            require(m.e[i] == 0 || i < point.size(), "evaluation point does not cover all variables");
            for (int k = 0; k < m.e[i]; ++k)
                t *= point[i];
        }
        r += t;
    }
    return r;
}

Polynomial Polynomial::evaluate_partial(const std::vector<std::pair<size_t, Rational>>& assignment) const {
    Polynomial r = *this;
    for (const auto& [var, val] : assignment)
        r = r.substitute(var, Polynomial(val));
    return r;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (is_zero())
        return "0";
    // Canonical print order: grlex descending.
    std::vector<const std::pair<const Monomial, Rational>*> ts;
    for (const auto& t : terms_)
        ts.push_back(&t);
    std::sort(ts.begin(), ts.end(),
              [](const auto* a, const auto* b) { return grlex_less(b->first, a->first); });
    std::ostringstream out;
    bool first = true;
    for (const auto* t : ts) {
        const Rational& c = t->second;
        Rational abs = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0)
                out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool has_vars = !t->first.e.empty();
        if (abs != 1 || !has_vars) {
            out << to_string(abs);
            if (has_vars)
                out << "*";
        }
        bool firstv = true;
        for (size_t i = 0; i < t->first.e.size(); ++i) {
            int k = t->first.e[i];
            if (k == 0)
                continue;
            if (!firstv)
                out << "*";
            firstv = false;
            require(i < names.size(), "polynomial uses a variable without a name");
            out << names[i];
            if (k > 1)
                out << "^" << k;
        }
    }
    return out.str();
}

namespace {

// View p as a univariate polynomial in `var` with Polynomial coefficients.
std::vector<Polynomial> coefficients_in(const Polynomial& p, size_t var) {
    std::vector<Polynomial> cs(static_cast<size_t>(p.degree_in(var)) + 1);
    for (const auto& [m, c] : p.terms()) {
        int k = m.exponent(var);
        std::vector<int> e(m.e);
        if (var < e.size())
            e[var] = 0;
        Polynomial t;
        t.set(Monomial(std::move(e)), c);
        cs[static_cast<size_t>(k)] += t;
    }
    return cs;
}

Polynomial from_coefficients(const std::vector<Polynomial>& cs, size_t var) {
    Polynomial x = Polynomial::variable(var), xk(1), r;
    for (const auto& c : cs) {
        r += c * xk;
        xk *= x;
    }
    return r;
}

Polynomial content_in(const Polynomial& p, size_t var) {
    Polynomial g;
    for (const auto& c : coefficients_in(p, var))
        if (!c.is_zero())
            g = poly_gcd(g, c);
    return g;
}

// Pseudo-remainder of a by b in the main variable `var`.
Polynomial pseudo_rem(Polynomial a, const Polynomial& b, size_t var) {
    int db = b.degree_in(var);
    auto bc = coefficients_in(b, var);
    const Polynomial& lb = bc[static_cast<size_t>(db)];
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int da = a.degree_in(var);
        auto ac = coefficients_in(a, var);
        const Polynomial& la = ac[static_cast<size_t>(da)];
        Polynomial shift;
        std::vector<int> e(var + 1, 0);
        e[var] = da - db;
        shift.set(Monomial(std::move(e)), 1);
        a = a * lb - b * la * shift;
        if (!a.is_zero() && a.degree_in(var) >= da)
            fail("pseudo-division failed to reduce degree");
    }
    return a;
}

Polynomial make_monic(const Polynomial& p) {
    if (p.is_zero())
        return p;
    return p.scaled(Rational(1) / p.leading_coefficient());
}

} // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero())
        return make_monic(b);
    if (b.is_zero())
        return make_monic(a);
    if (a.is_constant() || b.is_constant())
        return Polynomial(1);
    size_t nv = std::max(a.max_var_index(), b.max_var_index());
    size_t var = nv - 1; // main variable: the highest one in use
    if (a.degree_in(var) == 0 && b.degree_in(var) == 0) {
        // Neither actually uses it; fall back to contents, which recurse on
        // strictly smaller variable sets.
        return poly_gcd(content_in(a, var), content_in(b, var));
    }
    Polynomial ca = content_in(a, var), cb = content_in(b, var);
    Polynomial cg = poly_gcd(ca, cb);
    Polynomial pa = a.divided_by(ca), pb = b.divided_by(cb);
    // Primitive PRS.
    if (pa.degree_in(var) < pb.degree_in(var))
        std::swap(pa, pb);
    while (!pb.is_zero()) {
        Polynomial r = pseudo_rem(pa, pb, var);
        pa = std::move(pb);
        if (r.is_zero()) {
            pb = Polynomial();
        } else {
            pb = r.divided_by(content_in(r, var));
        }
    }
    if (pa.degree_in(var) == 0)
        return make_monic(cg);
    return make_monic(cg * pa.divided_by(content_in(pa, var)));
}

} // namespace hcx
