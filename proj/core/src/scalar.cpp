#include "hcx/scalar.hpp"

#include <bit>
#include <sstream>

namespace hcx {

BaseRing::BaseRing(std::vector<std::string> even, std::vector<std::string> odd)
    : even_names(std::move(even)), odd_names(std::move(odd)) {
    require(odd_names.size() <= 63, "too many odd names");
    std::vector<std::string> all = even_names;
    all.insert(all.end(), odd_names.begin(), odd_names.end());
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            require(all[i] != all[j], "ring names are not pairwise distinct: " + all[i]);
}

std::optional<size_t> BaseRing::even_index(const std::string& name) const {
    for (size_t i = 0; i < even_names.size(); ++i)
        if (even_names[i] == name)
            return i;
    return std::nullopt;
}

std::optional<size_t> BaseRing::odd_index(const std::string& name) const {
    for (size_t i = 0; i < odd_names.size(); ++i)
        if (odd_names[i] == name)
            return i;
    return std::nullopt;
}

int grassmann_merge_sign(uint64_t a, uint64_t b) {
    if ((a & b) != 0)
        return 0;
    int inversions = 0;
    for (uint64_t bits = b; bits != 0; bits &= bits - 1) {
        uint64_t lowest = bits & (~bits + 1);
        // Count members of a that are larger than this member of b.
        uint64_t larger = a & ~(lowest | (lowest - 1));
        inversions += std::popcount(larger);
    }
    return inversions % 2 == 0 ? 1 : -1;
}

bool subset_less(uint64_t a, uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb)
        return pa < pb;
    return a < b; // same size: smaller mask = lexicographically earlier members
}

Scalar::Scalar(BaseRingPtr ring, const RatFun& body) : ring_(std::move(ring)) {
    if (!body.is_zero())
        terms_[0] = body;
}

Scalar Scalar::even_variable(BaseRingPtr ring, size_t var) {
    require(var < ring->num_even(), "even variable index out of range");
    return Scalar(ring, RatFun::variable(var));
}

Scalar Scalar::odd_variable(BaseRingPtr ring, size_t var) {
    require(var < ring->num_odd(), "odd variable index out of range");
    Scalar s(ring);
    s.terms_[uint64_t(1) << var] = RatFun(1);
    return s;
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one();
}

std::optional<Parity> Scalar::parity() const {
    std::optional<Parity> p;
    for (const auto& [mask, c] : terms_) {
        Parity q = std::popcount(mask) % 2 == 0 ? Parity::Even : Parity::Odd;
        if (!p)
            p = q;
        else if (*p != q)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::Even);
}

RatFun Scalar::body() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? RatFun(0) : it->second;
}

Scalar Scalar::body_part() const {
    Scalar s(ring_);
    auto it = terms_.find(0);
    if (it != terms_.end())
        s.terms_[0] = it->second;
    return s;
}

Scalar Scalar::soul_part() const {
    Scalar s(ring_);
    for (const auto& [mask, c] : terms_)
        if (mask != 0)
            s.terms_[mask] = c;
    return s;
}

int Scalar::nilpotent_order() const {
    if (is_zero())
        return 1 << 20;
    int ord = 1 << 20;
    for (const auto& [mask, c] : terms_)
        ord = std::min(ord, std::popcount(mask));
    return ord;
}

void Scalar::check_ring(const Scalar& other) const {
    require(!ring_ || !other.ring_ || *ring_ == *other.ring_, "scalars over different base rings");
}

Scalar Scalar::operator-() const {
    Scalar s(ring_);
    for (const auto& [mask, c] : terms_)
        s.terms_[mask] = -c;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_ring(o);
    Scalar s(ring_ ? ring_ : o.ring_);
    s.terms_ = terms_;
    for (const auto& [mask, c] : o.terms_) {
        auto it = s.terms_.find(mask);
        if (it == s.terms_.end()) {
            s.terms_[mask] = c;
        } else {
            it->second += c;
            if (it->second.is_zero())
                s.terms_.erase(it);
        }
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_ring(o);
    Scalar s(ring_ ? ring_ : o.ring_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            int sign = grassmann_merge_sign(ma, mb);
            if (sign == 0)
                continue;
            uint64_t m = ma | mb;
            RatFun c = ca * cb;
            if (sign < 0)
                c = -c;
            auto it = s.terms_.find(m);
            if (it == s.terms_.end()) {
                if (!c.is_zero())
                    s.terms_[m] = std::move(c);
            } else {
                it->second += c;
                if (it->second.is_zero())
                    s.terms_.erase(it);
            }
        }
    return s;
}

Scalar Scalar::involution() const {
    Scalar s(ring_);
    for (const auto& [mask, c] : terms_)
        s.terms_[mask] = std::popcount(mask) % 2 ? -c : c;
    return s;
}

Scalar Scalar::scaled(const RatFun& c) const {
    Scalar s(ring_);
    if (c.is_zero())
        return s;
    for (const auto& [mask, co] : terms_)
        s.terms_[mask] = co * c;
    return s;
}

Scalar Scalar::inverse() const {
    require(is_even(), "inverse of a non-even scalar");
    RatFun b = body();
    require(!b.is_zero(), "inverse of a scalar with zero body");
    Scalar binv(ring_, b.inverse());
    Scalar n = soul_part();
    if (n.is_zero())
        return binv;
    // (b + n)^-1 = b^-1 (1 + n/b)^-1 = b^-1 sum_k (-n/b)^k; n is nilpotent,
    // so the series stops once subsets of every size are exhausted.
    Scalar u = n * binv; // n/b
    Scalar acc = Scalar::constant(ring_, 1);
    Scalar pw = Scalar::constant(ring_, 1);
    size_t kmax = ring_ ? ring_->num_odd() : 0;
    for (size_t k = 1; k <= kmax; ++k) {
        pw = pw * u;
        if (pw.is_zero())
            break;
        acc = (k % 2 == 1) ? acc - pw : acc + pw;
    }
    return binv * acc;
}

Scalar Scalar::derivative_even(size_t var) const {
    Scalar s(ring_);
    for (const auto& [mask, c] : terms_) {
        RatFun d = c.derivative(var);
        if (!d.is_zero())
            s.terms_[mask] = d;
    }
    return s;
}

Scalar Scalar::derivative_odd(size_t var) const {
    Scalar s(ring_);
    uint64_t bit = uint64_t(1) << var;
    for (const auto& [mask, c] : terms_) {
        if (!(mask & bit))
            continue;
        // Left derivative: bring theta_var to the front, then strip it.
        uint64_t smaller = mask & (bit - 1);
        int sign = std::popcount(smaller) % 2 == 0 ? 1 : -1;
        s.terms_[mask & ~bit] = sign > 0 ? c : -c;
    }
    return s;
}

Scalar Scalar::evaluate_even(const std::vector<std::pair<size_t, Rational>>& assignment) const {
    Scalar s(ring_);
    for (const auto& [mask, c] : terms_) {
        RatFun v = c.evaluate_partial(assignment);
        if (!v.is_zero())
            s.terms_[mask] = v;
    }
    return s;
}

Scalar Scalar::substitute_even(const std::vector<Polynomial>& values) const {
    Scalar s(ring_);
    for (const auto& [mask, c] : terms_) {
        RatFun v = c.substitute(values);
        if (!v.is_zero())
            s.terms_[mask] = v;
    }
    return s;
}

Scalar Scalar::reduce_mod_odd() const { return body_part(); }

bool Scalar::depends_on_even(size_t var) const {
    for (const auto& [mask, c] : terms_)
        if (c.num().degree_in(var) > 0 || c.den().degree_in(var) > 0)
            return true;
    return false;
}

bool Scalar::has_odd_part() const {
    for (const auto& [mask, c] : terms_)
        if (mask != 0)
            return true;
    return false;
}

void Scalar::set_term(uint64_t mask, const RatFun& c) {
    if (c.is_zero())
        terms_.erase(mask);
    else
        terms_[mask] = c;
}

RatFun Scalar::term(uint64_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? RatFun(0) : it->second;
}

std::string Scalar::str() const {
    if (is_zero())
        return "0";
    std::vector<uint64_t> masks;
    for (const auto& [mask, c] : terms_)
        masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), subset_less);
    const std::vector<std::string>& evens = ring_ ? ring_->even_names : std::vector<std::string>{};
    std::ostringstream out;
    bool first = true;
    for (uint64_t mask : masks) {
        const RatFun& c = terms_.at(mask);
        std::string cs = c.str(evens);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg)
                out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (neg)
            cs = cs.substr(1);
        if (mask == 0) {
            out << cs;
            continue;
        }
        bool trivial = (cs == "1");
        if (!trivial) {
            bool composite = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
            out << (composite ? "(" + cs + ")" : cs) << "*";
        }
        bool firstv = true;
        for (size_t i = 0; i < 64; ++i) {
            if (!(mask & (uint64_t(1) << i)))
                continue;
            if (!firstv)
                out << "*";
            firstv = false;
            if (ring_ && i < ring_->odd_names.size())
                out << ring_->odd_names[i];
            else
                out << "theta" << i;
        }
    }
    return out.str();
}

} // namespace hcx
