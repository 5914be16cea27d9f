#include "hcx/weyl.hpp"

#include "hcx/error.hpp"

#include <sstream>

namespace hcx {

int WeylElement::filtration_degree() const {
    int d = 0;
    for (const auto& [w, c] : terms_)
        d = std::max<int>(d, static_cast<int>(w.size()));
    return d;
}

std::optional<Parity> WeylElement::parity() const {
    std::optional<Parity> p;
    for (const auto& [w, c] : terms_) {
        auto cp = c.parity();
        if (!cp)
            return std::nullopt;
        Parity q = *cp + alg_->word_parity(w);
        if (!p)
            p = q;
        else if (*p != q)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::Even);
}

WeylElement WeylElement::operator-() const {
    WeylElement r(alg_);
    for (const auto& [w, c] : terms_)
        r.terms_[w] = -c;
    return r;
}

WeylElement WeylElement::operator+(const WeylElement& o) const {
    require(!alg_ || !o.alg_ || alg_ == o.alg_, "Weyl elements from different algebras");
    WeylElement r(alg_ ? alg_ : o.alg_);
    r.terms_ = terms_;
    for (const auto& [w, c] : o.terms_) {
        auto it = r.terms_.find(w);
        if (it == r.terms_.end()) {
            r.terms_[w] = c;
        } else {
            Scalar s = it->second + c;
            if (s.is_zero())
                r.terms_.erase(it);
            else
                it->second = s;
        }
    }
    return r;
}

WeylElement WeylElement::operator-(const WeylElement& o) const { return *this + (-o); }

WeylElement WeylElement::operator*(const WeylElement& o) const {
    require(alg_ && alg_ == o.alg_, "Weyl multiplication across algebras");
    return alg_->mul(*this, o);
}

WeylElement WeylElement::scaled(const Scalar& s) const {
    WeylElement r(alg_);
    if (s.is_zero())
        return r;
    for (const auto& [w, c] : terms_) {
        Scalar sc = s * c;
        if (!sc.is_zero())
            r.terms_[w] = sc;
    }
    return r;
}

WeylElement WeylElement::supercommutator(const WeylElement& o) const {
    auto pa = parity(), pb = o.parity();
    require(pa && pb, "supercommutator of non-homogeneous elements");
    WeylElement ab = *this * o;
    WeylElement ba = o * *this;
    return (*pa == Parity::Odd && *pb == Parity::Odd) ? ab + ba : ab - ba;
}

Scalar WeylElement::scalar_part() const {
    auto it = terms_.find(Word{});
    return it == terms_.end() ? Scalar(alg_ ? alg_->ring() : nullptr) : it->second;
}

void WeylElement::set_term(const Word& w, const Scalar& c) {
    if (c.is_zero())
        terms_.erase(w);
    else
        terms_[w] = c;
}

Scalar WeylElement::term(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(alg_ ? alg_->ring() : nullptr) : it->second;
}

std::string WeylElement::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first)
            out << " + ";
        first = false;
        std::string cs = c.str();
        bool composite = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (w.empty()) {
            out << (composite ? "(" + cs + ")" : cs);
            continue;
        }
        if (cs != "1")
            out << (composite ? "(" + cs + ")" : cs) << "*";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i)
                out << "*";
            out << alg_->basis(w[i]).name;
        }
    }
    return out.str();
}

void validate_gram(const BaseRingPtr& ring, const std::vector<BasisVector>& basis,
                   const std::vector<std::vector<Scalar>>& gram) {
    size_t n = basis.size();
    require(gram.size() == n, "Gram matrix has wrong shape");
    for (const auto& row : gram)
        require(row.size() == n, "Gram matrix has wrong shape");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Scalar& g = gram[i][j];
            if (!g.is_zero()) {
                auto p = g.parity();
                require(p && *p == basis[i].parity + basis[j].parity,
                        "Gram entry (" + basis[i].name + "," + basis[j].name +
                            ") violates evenness of the form");
            }
            // (a,b) = -(-1)^{|a||b|} (b,a)
            Scalar other = gram[j][i];
            if (basis[i].parity == Parity::Odd && basis[j].parity == Parity::Odd) {
                require(g == other, "form is not symmetric on odd pair (" + basis[i].name + "," +
                                        basis[j].name + ")");
            } else {
                require(g == -other, "form is not antisymmetric on pair (" + basis[i].name + "," +
                                         basis[j].name + ")");
            }
        }
}

WeylAlgebra::WeylAlgebra(BaseRingPtr ring, std::vector<BasisVector> basis,
                         std::vector<std::vector<Scalar>> gram)
    : ring_(std::move(ring)), basis_(std::move(basis)), gram_(std::move(gram)) {}

WeylAlgebraPtr WeylAlgebra::create(BaseRingPtr ring, std::vector<BasisVector> basis,
                                   std::vector<std::vector<Scalar>> gram) {
    validate_gram(ring, basis, gram);
    return WeylAlgebraPtr(new WeylAlgebra(std::move(ring), std::move(basis), std::move(gram)));
}

std::pair<int, int> WeylAlgebra::super_dims() const {
    int p = 0, q = 0;
    for (const auto& b : basis_)
        (b.parity == Parity::Even ? p : q)++;
    return {p, q};
}

bool WeylAlgebra::form_nondegenerate(const Mode& mode) const {
    std::vector<std::vector<Scalar>> rows = gram_;
    return flat_rank(rows, dim(), ring_, mode) ==
           dim() * (size_t(1) << (ring_ ? ring_->num_odd() : 0));
}

WeylElement WeylAlgebra::zero() const { return WeylElement(shared_from_this()); }

WeylElement WeylAlgebra::one() const { return constant(Scalar::constant(ring_, 1)); }

WeylElement WeylAlgebra::constant(const Scalar& s) const {
    WeylElement e(shared_from_this());
    if (!s.is_zero())
        e.terms_[Word{}] = s;
    return e;
}

WeylElement WeylAlgebra::generator(size_t i) const {
    require(i < dim(), "generator index out of range");
    WeylElement e(shared_from_this());
    e.terms_[Word{static_cast<uint16_t>(i)}] = Scalar::constant(ring_, 1);
    return e;
}

WeylElement WeylAlgebra::monomial(const Word& w, const Scalar& c) const {
    WeylElement e(shared_from_this());
    if (!c.is_zero())
        e.terms_[w] = c;
    return e;
}

WeylElement WeylAlgebra::affine_element(const std::vector<Scalar>& coords) const {
    require(coords.size() == dim() + 1, "affine element needs dim+1 coordinates");
    WeylElement e = constant(coords[0]);
    for (size_t j = 0; j < dim(); ++j)
        if (!coords[j + 1].is_zero())
            e += generator(j).scaled(coords[j + 1]);
    return e;
}

Parity WeylAlgebra::word_parity(const Word& w) const {
    int p = 0;
    for (uint16_t g : w)
        if (basis_[g].parity == Parity::Odd)
            ++p;
    return p % 2 ? Parity::Odd : Parity::Even;
}

WeylElement WeylAlgebra::insert_right(const Word& w, uint16_t gen) const {
    auto key = std::make_pair(w, gen);
    auto memo = insert_memo_.find(key);
    if (memo != insert_memo_.end())
        return memo->second;

    WeylElement result(shared_from_this());
    if (w.empty() || w.back() < gen) {
        Word nw = w;
        nw.push_back(gen);
        result.terms_[nw] = Scalar::constant(ring_, 1);
    } else if (w.back() == gen) {
        if (basis_[gen].parity == Parity::Even) {
            Word nw = w;
            nw.push_back(gen);
            result.terms_[nw] = Scalar::constant(ring_, 1);
        } else {
            // odd g: g*g = (g,g)/2; the bracket value is even, so it moves
            // through u without a sign.
            Word u(w.begin(), w.end() - 1);
            Scalar c = gram_[gen][gen].scaled(RatFun(Rational(1, 2)));
            if (!c.is_zero())
                result += monomial(u, c);
        }
    } else {
        uint16_t h = w.back();
        Word u(w.begin(), w.end() - 1);
        // w*g = u*(h*g) = (-1)^{|h||g|} (u*g)*h + (-1)^{|u|(|h|+|g|)} (h,g)*u
        int sign_hg = (basis_[h].parity == Parity::Odd && basis_[gen].parity == Parity::Odd) ? -1 : 1;
        WeylElement ug = insert_right(u, gen);
        for (const auto& [w2, c2] : ug.terms_) {
            WeylElement wh = insert_right(w2, h);
            for (const auto& [w3, c3] : wh.terms_) {
                Scalar c = c2 * c3;
                if (sign_hg < 0)
                    c = -c;
                if (!c.is_zero()) {
                    auto it = result.terms_.find(w3);
                    if (it == result.terms_.end())
                        result.terms_[w3] = c;
                    else {
                        it->second += c;
                        if (it->second.is_zero())
                            result.terms_.erase(it);
                    }
                }
            }
        }
        const Scalar& hg = gram_[h][gen];
        if (!hg.is_zero()) {
            Parity pu = word_parity(u);
            Parity phg = basis_[h].parity + basis_[gen].parity;
            int sign = (pu == Parity::Odd && phg == Parity::Odd) ? -1 : 1;
            Scalar c = sign > 0 ? hg : -hg;
            auto it = result.terms_.find(u);
            if (it == result.terms_.end())
                result.terms_[u] = c;
            else {
                it->second += c;
                if (it->second.is_zero())
                    result.terms_.erase(it);
            }
        }
    }
    insert_memo_[key] = result;
    return result;
}

WeylElement WeylAlgebra::word_mul(const Word& a, const Word& b) const {
    WeylElement acc = monomial(a, Scalar::constant(ring_, 1));
    for (uint16_t g : b) {
        WeylElement next(shared_from_this());
        for (const auto& [w, c] : acc.terms_) {
            WeylElement ins = insert_right(w, g);
            for (const auto& [w2, c2] : ins.terms_) {
                Scalar nc = c * c2;
                if (nc.is_zero())
                    continue;
                auto it = next.terms_.find(w2);
                if (it == next.terms_.end())
                    next.terms_[w2] = nc;
                else {
                    it->second += nc;
                    if (it->second.is_zero())
                        next.terms_.erase(it);
                }
            }
        }
        acc = std::move(next);
    }
    return acc;
}

WeylElement WeylAlgebra::mul(const WeylElement& a, const WeylElement& b) const {
    WeylElement r(shared_from_this());
    for (const auto& [wa, ca] : a.terms_) {
        Parity pa = word_parity(wa);
        for (const auto& [wb, cb] : b.terms_) {
            // (ca wa)(cb wb) = (-1)^{|wa||cb|} (ca cb) (wa wb); for odd wa the
            // sign acts through the grading involution of cb.
            Scalar coeff = pa == Parity::Odd ? ca * cb.involution() : ca * cb;
            if (coeff.is_zero())
                continue;
            WeylElement prod = word_mul(wa, wb);
            for (const auto& [w, c] : prod.terms_) {
                Scalar nc = coeff * c;
                if (nc.is_zero())
                    continue;
                auto it = r.terms_.find(w);
                if (it == r.terms_.end())
                    r.terms_[w] = nc;
                else {
                    it->second += nc;
                    if (it->second.is_zero())
                        r.terms_.erase(it);
                }
            }
        }
    }
    return r;
}

WeylElement WeylAlgebra::substitute(const WeylElement& a, const WeylAlgebraPtr& target,
                                    const std::vector<WeylElement>& images) const {
    require(images.size() == dim(), "substitution needs one image per generator");
    WeylElement r(target);
    for (const auto& [w, c] : a.terms_) {
        WeylElement acc = target->constant(c);
        for (uint16_t g : w)
            acc = acc * images[g];
        r += acc;
    }
    return r;
}

} // namespace hcx
