#pragma once

#include "hcx/subspace.hpp"

#include <memory>
#include <vector>

namespace hcx {

enum class Side { Left, Right };

// Local model of an isotropic subspace I in H: a constant decomposition
// V = I0 + I0* + V' with I0* isotropic dual to I0 and V' the orthogonal
// complement, in which I is the graph of the even morphism (phi, psi, lambda)
// from I0 to I0* + V' + O. The chart carries its own Weyl algebra whose PBW
// order depends on the side:
//   Right: [I0, V', I0*]  (I0 letters normal-order to the front)
//   Left:  [V', I0*, I0]  (I0 letters normal-order to the back)
class Chart {
  public:
    // Build the splitting and graph data from an isotropic subspace.
    static std::shared_ptr<const Chart> from_subspace(const Subspace& iso, Side side,
                                                      const Mode& mode);
    // Explicit chart: the caller provides the decomposition vectors (ambient
    // V coordinates, no central component) and graph data in chart indices.
    static std::shared_ptr<const Chart> make_explicit(
        HeisenbergPtr ambient, Side side, std::vector<std::vector<Scalar>> i0,
        std::vector<std::vector<Scalar>> duals, std::vector<std::vector<Scalar>> vprime,
        std::vector<std::vector<Scalar>> phi, std::vector<std::vector<Scalar>> psi,
        std::vector<Scalar> lambda);

    const HeisenbergPtr& ambient() const { return ambient_; }
    const WeylAlgebraPtr& weyl() const { return weyl_; }
    const BaseRingPtr& ring() const { return ambient_->ring(); }
    Side side() const { return side_; }

    size_t i0_rank() const { return i0_.size(); }
    size_t vprime_rank() const { return vprime_.size(); }
    // Chart generator indices.
    size_t i0_index(size_t k) const;
    size_t vprime_index(size_t k) const;
    size_t dual_index(size_t k) const;
    bool is_i0_index(size_t chart_gen) const;
    // inverse of i0_index on chart generators
    size_t i0_position(size_t chart_gen) const;

    const std::vector<std::vector<Scalar>>& phi() const { return phi_; }
    const std::vector<std::vector<Scalar>>& psi() const { return psi_; }
    const std::vector<Scalar>& lambda() const { return lambda_; }

    // Ambient vectors of the chart basis (V coordinates, length vdim).
    const std::vector<std::vector<Scalar>>& i0_vectors() const { return i0_; }
    const std::vector<std::vector<Scalar>>& dual_vectors() const { return duals_; }
    const std::vector<std::vector<Scalar>>& vprime_vectors() const { return vprime_; }

    // The normalized graph generators of I in chart coordinates:
    //   g_k = i0_k + sum_j phi[j][k] dual_j + sum_j psi[j][k] vprime_j + lambda[k].
    WeylElement graph_generator(size_t k) const;
    // -(phi + psi + lambda)(i0_k): the reduction image of the I0 letter.
    const WeylElement& reduction_image(size_t k) const { return red_[k]; }

    // Translate an ambient Weyl element into the chart algebra.
    WeylElement to_chart(const WeylElement& ambient_elt) const;
    // Translate an ambient H coordinate vector (center first).
    WeylElement to_chart_vector(const std::vector<Scalar>& hvec) const;

    // Rewrite I0 letters away using the graph relations; the result is
    // supported on complement letters only. Right side rewrites leading
    // letters (mod I*U), left side rewrites trailing letters (mod U*I).
    WeylElement reduce(const WeylElement& chart_elt) const;

    bool is_complement_word(const Word& w) const;
    // Model basis: complement words of degree <= n, by degree then lex.
    std::vector<Word> model_basis(int n) const;

    // Verify that the graph generators pairwise supercommute (isotropy of I
    // in chart presentation); throws on failure.
    void validate() const;

  private:
    Chart() = default;
    void finish_setup();

    HeisenbergPtr ambient_;
    WeylAlgebraPtr weyl_;
    Side side_ = Side::Right;
    std::vector<std::vector<Scalar>> i0_, duals_, vprime_;
    std::vector<std::vector<Scalar>> phi_, psi_;
    std::vector<Scalar> lambda_;
    std::vector<WeylElement> red_;          // reduction images per I0 index
    std::vector<WeylElement> ambient_images_; // chart image of each ambient generator
};

using ChartPtr = std::shared_ptr<const Chart>;

} // namespace hcx
