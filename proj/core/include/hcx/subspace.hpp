#pragma once

#include "hcx/weyl.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hcx {

class Heisenberg;
using HeisenbergPtr = std::shared_ptr<const Heisenberg>;

// Split Heisenberg algebra H = k*1 + V presented by the Weyl algebra of V.
// Coordinate vectors over H have length dim(V)+1 with the central component
// first; the central generator is identified with 1 in U(H).
class Heisenberg : public std::enable_shared_from_this<Heisenberg> {
  public:
    static HeisenbergPtr create(WeylAlgebraPtr weyl);

    const WeylAlgebraPtr& weyl() const { return weyl_; }
    const BaseRingPtr& ring() const { return weyl_->ring(); }
    size_t vdim() const { return weyl_->dim(); }
    size_t hdim() const { return vdim() + 1; }

    WeylElement element(const std::vector<Scalar>& hcoords) const {
        return weyl_->affine_element(hcoords);
    }
    std::vector<Scalar> zero_vector() const {
        return std::vector<Scalar>(hdim(), Scalar(ring()));
    }
    std::vector<Scalar> basis_vector(size_t v) const; // v-th V generator, lifted
    std::vector<Scalar> center_vector() const;

    // Form on coordinate vectors via the supercommutator of their elements;
    // both must be parity-homogeneous.
    Scalar pair(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const;

  private:
    explicit Heisenberg(WeylAlgebraPtr weyl) : weyl_(std::move(weyl)) {}
    WeylAlgebraPtr weyl_;
};

// Parity of a coordinate vector when homogeneous (coefficient parity plus
// basis parity agree across components; the center is even).
std::optional<Parity> vector_parity(const Heisenberg& h, const std::vector<Scalar>& v);

// Split a vector into its even and odd homogeneous parts.
std::vector<std::pair<std::vector<Scalar>, Parity>> homogeneous_parts(
    const Heisenberg& h, const std::vector<Scalar>& v);

// Subbundle of H given by homogeneous generator vectors.
struct Subspace {
    HeisenbergPtr ambient;
    std::vector<std::vector<Scalar>> gens;
    std::vector<Parity> parities;
    std::string name; // for diagnostics

    size_t count() const { return gens.size(); }
    WeylElement element(size_t i) const { return ambient->element(gens[i]); }

    static Subspace make(HeisenbergPtr h, std::vector<std::vector<Scalar>> gens,
                         std::string name = "");
    static Subspace zero(HeisenbergPtr h) { return make(std::move(h), {}, "0"); }
};

std::vector<Scalar> pi(const std::vector<Scalar>& hvec); // drop the center coordinate

size_t subspace_rank(const Subspace& s, const Mode& mode);
size_t pi_rank(const Subspace& s, const Mode& mode);
bool gens_independent(const Subspace& s, const Mode& mode);
bool transversal_to_center(const Subspace& s, const Mode& mode);

// Exact (symbolic) isotropy: all pairwise brackets vanish identically.
bool is_isotropic(const Subspace& s);
// Name of an offending pair and its bracket when not isotropic.
std::string isotropy_witness(const Subspace& s);

bool is_lagrangian(const Subspace& s, const Mode& mode);

// pi^-1(pi(I)^perp): contains the center and I itself.
Subspace centralizer(const Subspace& s, const Mode& mode);
// perp of pi(S) inside V (vectors with zero central component).
Subspace perp_in_v(const Subspace& s, const Mode& mode);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const Subspace& a, const Subspace& b, const Mode& mode);
bool subspace_member(const Subspace& s, const std::vector<Scalar>& v, const Mode& mode);
// Span equality over the flattened field.
bool same_span(const Subspace& a, const Subspace& b, const Mode& mode);

// Reduced Heisenberg algebra c(I)/I with a deterministic complement basis.
struct ReducedHeisenberg {
    HeisenbergPtr hbar;
    // Representatives in ambient H coordinates of the reduced V-basis.
    std::vector<std::vector<Scalar>> reps;
    Subspace i_copy;                  // the subspace that was reduced
    ScalarEchelon solve_basis;        // rows: [center | I gens | reps] coordinates
    // Project a vector of c(I) to hbar coordinates; throws if v is not in c(I).
    std::vector<Scalar> project(const std::vector<Scalar>& v) const;
    // Map a subspace of c(I) to a subspace of hbar.
    Subspace project_subspace(const Subspace& s) const;
};

ReducedHeisenberg reduced_heisenberg(const Subspace& isotropic, const Mode& mode);

// Central-character push-out. The extension 0 -> K -> Vt -> V -> 0 carries
// the pulled-back form, so K is the radical of the presymplectic algebra Wt.
struct CentralExtension {
    WeylAlgebraPtr wt;                        // presymplectic Weyl algebra of Vt
    std::vector<std::vector<Scalar>> k_gens;  // radical generators, Vt coordinates
};

struct Pushout {
    HeisenbergPtr h_chi;
    std::vector<size_t> complement; // Vt basis indices chosen to present V
    // Map a Vt coordinate vector to H_chi coordinates (center first).
    std::function<std::vector<Scalar>(const std::vector<Scalar>&)> map_vector;
};

Pushout pushout_central_character(const CentralExtension& ext, const std::vector<Scalar>& chi,
                                  const Mode& mode);
// Maps generators through the push-out; fails when the span meets K.
Subspace pushout_subspace(const Pushout& p, const CentralExtension& ext,
                          const std::vector<std::vector<Scalar>>& gens_in_vt, const Mode& mode);

// Left kernel over the ring: all x with sum_j x_j rows[j] = 0.
std::vector<std::vector<Scalar>> ring_left_kernel(const std::vector<std::vector<Scalar>>& rows,
                                                  const BaseRingPtr& ring, const Mode& mode);

} // namespace hcx
