#pragma once

#include "hcx/fock.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hcx {

// Exponent vector over the generators of the coinvariants subspace; even
// generators enter at most once, odd generators arbitrarily often.
using WedgeMono = std::vector<int>;

std::vector<WedgeMono> wedge_basis(const Subspace& i, int k);

// Koszul complex of an isotropic subspace acting on a module model, with
// homological window handling and internal-degree cutoffs. All matrices are
// built over the flattened field of the mode.
class Koszul {
  public:
    Koszul(Subspace i, ModuleModel m, Mode mode);

    const Subspace& coinv() const { return i_; }
    const ModuleModel& module() const { return m_; }

    // Chain element: wedge monomial -> module part (Scalar coefficients ride
    // inside the Weyl element).
    using Chain = std::map<WedgeMono, WeylElement>;
    Chain differential(const Chain& c) const;

    // d*d = 0 on the represented window interior, exact.
    bool d_squared_zero(int k, int n) const;

    struct HEntry {
        int degree = 0;          // reported as -degree
        size_t rank = 0;         // flattened dimension of the homology
        bool stabilized = false; // ranks equal at cutoffs n and n+1
        int cutoff = 0;
        size_t cycles = 0, boundaries = 0;
    };
    // Homology at degree -k with the stabilization probe at n and n+1.
    HEntry homology(int k, int n) const;
    // Escalate the cutoff until the entry stabilizes or the ceiling is hit.
    HEntry stabilized_homology(int k, int n, int ceiling) const;

  private:
    template <class F>
    HEntry homology_impl(int k, int n) const;
    template <class F>
    size_t d_rank(int k, int n) const; // rank of d_k restricted to degree <= n

    Subspace i_;
    ModuleModel m_;
    Mode mode_;
};

// H0 = M / span(I.M) with exact reduction below the cutoff, a distinguished
// vacuum class, coefficient solves against target classes, and the induced
// action of the centralizer (used for transitivity and heat checks).
class Coinvariants {
  public:
    Coinvariants(Subspace i, ModuleModel m, int n, Mode mode);

    int cutoff() const { return n_; }
    size_t flat_dim() const;
    // Reduction to the canonical complement of the boundary space; exact for
    // inputs supported in degrees <= n.
    WeylElement project(const WeylElement& v) const;
    WeylElement vacuum_class() const;
    // Solve v = c . target modulo boundaries; nullopt when inconsistent.
    std::optional<Scalar> express(const WeylElement& v, const WeylElement& target) const;
    // Freeness certificate: the Lambda-multiples of v span the quotient.
    bool certify_generator(const WeylElement& v) const;
    // Induced action of an element of c(I) on classes.
    WeylElement act(const std::vector<Scalar>& hvec, const WeylElement& v) const;
    // Flat coordinates of a class over the complement basis.
    std::vector<Rational> coords_point(const WeylElement& v) const;
    std::vector<RatFun> coords_generic(const WeylElement& v) const;
    size_t complement_size() const;

  private:
    template <class F>
    struct Data {
        Mat<F> reduced;                // RREF'd boundary rows
        std::vector<size_t> pivots;    // pivot flat columns
        std::vector<size_t> complement; // non-pivot flat columns
    };
    template <class F>
    void build(Data<F>& d);
    template <class F>
    WeylElement project_impl(const Data<F>& d, const WeylElement& v) const;

    Subspace i_;
    ModuleModel m_;
    int n_;
    Mode mode_;
    std::vector<Word> words_;
    std::map<Word, size_t> index_;
    size_t nmasks_ = 1;
    Data<Rational> rat_;
    Data<RatFun> gen_;
};

// One-stage vs two-stage coinvariants: H0 of C_J(M) against H0 of
// C_{J/I}(C_I(M)) for nested isotropic subspaces I inside J.
struct TransitivityReport {
    size_t one_stage = 0;
    size_t two_stage = 0;
    bool agree = false;
};
TransitivityReport transitivity_check(const Subspace& i, const Subspace& j, const ModuleModel& m,
                                      int n, const Mode& mode);

// Reduction chain map of the isotropic reduction: the complex of J cap c(I)
// on M^I maps to the complex of J on M; the induced maps on stabilized
// homology must be bijections.
struct ReductionReport {
    struct Entry {
        int degree;
        size_t source_rank, target_rank, induced_rank;
        bool bijective;
        bool stabilized;
    };
    std::vector<Entry> entries;
    bool all_bijective = true;
};
ReductionReport reduction_chain_map(const Subspace& i, const Subspace& j, const ModuleModel& m,
                                    int kmax, int n, const Mode& mode);

// Pointwise higher-vanishing scan over sample points of a 1-parameter family.
struct SpotcheckReport {
    struct Sample {
        Rational t;
        std::vector<Koszul::HEntry> entries;
        bool all_zero;
    };
    std::vector<Sample> samples;
    bool pass = true;
};
SpotcheckReport vanishing_spotcheck(
    size_t param_var, const std::vector<Rational>& samples,
    const std::function<std::pair<Subspace, ModuleModel>(const Mode&)>& instance, int kmax, int n,
    int ceiling);

} // namespace hcx
