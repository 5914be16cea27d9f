#pragma once

#include "hcx/chart.hpp"

#include <functional>
#include <vector>

namespace hcx {

// Left or right Fock module M(I) / M^r(I) in the monomial model of its
// chart: basis words use complement letters only, the vacuum is the empty
// word, and the ambient algebra acts through chart translation followed by
// graph reduction.
class FockModule {
  public:
    // validate_degree > 0 replays the defining relations through the action
    // tables up to that internal degree and fails loudly on any sign error.
    FockModule(ChartPtr chart, int validate_degree = 2);
    static FockModule for_subspace(const Subspace& iso, Side side, const Mode& mode,
                                   int validate_degree = 2);

    const ChartPtr& chart() const { return chart_; }
    Side side() const { return chart_->side(); }
    const BaseRingPtr& ring() const { return chart_->ring(); }
    WeylElement vacuum() const { return chart_->weyl()->one(); }
    std::vector<Word> basis(int n) const { return chart_->model_basis(n); }

    // Module action of an ambient element: left modules act by w.v, right
    // modules by v.w.
    WeylElement act(const WeylElement& ambient_elt, const WeylElement& v) const;
    // Left multiplication on a right model (and vice versa); well defined
    // for elements of the centralizer of I.
    WeylElement act_opposite(const WeylElement& ambient_elt, const WeylElement& v) const;
    WeylElement act_vector(const std::vector<Scalar>& hvec, const WeylElement& v) const;

  private:
    void validate(int degree) const;
    ChartPtr chart_;
};

// Abstract finite module presentation used by the homology machinery: a
// basis of words in a model algebra plus a left action of the ambient H.
struct ModuleModel {
    HeisenbergPtr ambient;
    WeylAlgebraPtr model;                                   // algebra carrying the words
    std::function<std::vector<Word>(int)> basis;            // words up to internal degree
    std::function<WeylElement(const std::vector<Scalar>&, const WeylElement&)> act;
    WeylElement vac;                                        // distinguished vacuum (may be zero)
    bool finite = false;                                    // all degrees exhausted at some n
    int finite_degree = 0;

    static ModuleModel from_fock(const FockModule& fock);
    // W(V) as a left module over itself; finite for purely odd V.
    static ModuleModel regular(const HeisenbergPtr& h);
};

// Filtration-level invariants M^I: flattened kernels of the stacked action
// matrices per level.
struct InvariantsResult {
    std::vector<size_t> dims;                    // flattened dim of M^I cap M_{<=d}, d = 0..N
    std::vector<WeylElement> basis;              // representatives at the top level
};
InvariantsResult invariants(const ModuleModel& m, const Subspace& i, int n, const Mode& mode);

// Clifford factorization data for purely odd V: M(L) tensor M^L -> M.
struct CliffordFactorization {
    bool bijective = false;
    size_t dim_m = 0, dim_ml = 0, dim_inv = 0;
};
CliffordFactorization clifford_factorize(const ModuleModel& m, const Subspace& lag,
                                         const Mode& mode);

} // namespace hcx
