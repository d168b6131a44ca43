#ifndef HARDY_OPERATOR_HPP
#define HARDY_OPERATOR_HPP

#include <optional>
#include <vector>

#include "hardy/function_space.hpp"
#include "hardy/weight_expr.hpp"

namespace hardy {

// Full problem instance: interval, exponents, weights, grid. p' and r are
// always recomputed from p, q.
struct ProblemSpec {
    double p;
    double q;
    GridPtr grid;
    WeightPair weights;

    ProblemSpec(double p_, double q_, GridPtr grid_, WeightPair weights_);

    double p_conj() const { return conjugate_exponent(p); }
    double q_conj() const { return conjugate_exponent(q); }
    double r() const { return 1.0 / p_conj() + 1.0 / q; }
    const Interval& interval() const { return grid->interval(); }

    // Same instance on a different grid (weights re-evaluated).
    ProblemSpec on_grid(GridPtr g) const;
};

// Ascending anchors a = a_0 < a_1 < ... < a_n. Node indices are the
// nearest-node snaps (for block membership); the exact positions are kept
// so anchored integrals can interpolate instead of snapping, which would
// bias them by O(h).
struct ZeroAnchors {
    std::vector<std::size_t> node_indices; // node_indices[0] == 0
    std::vector<double> positions;         // positions[0] == a

    ZeroAnchors(const GridPtr& grid, const std::vector<double>& interior);
    std::size_t count_interior() const { return node_indices.size() - 1; }
};

// (Tf)(x) = v(x) int_a^x f u dt; (Tf)(a) = 0 exactly.
SampledFunction apply_T(const ProblemSpec& spec, const SampledFunction& f);

// (T*h)(x) = u(x) int_x^b v h dy; (T*h)(b) = 0 exactly.
SampledFunction apply_T_star(const ProblemSpec& spec,
                             const SampledFunction& h);

// Anchor-constrained operator: for x in the anchor block (a_i, a_{i+1}),
// (T+f)(x) = v(x) int_{a_i}^x f u dt. Coincides with T on inputs with
// (Tf)(a_i) = 0 for all i.
SampledFunction apply_T_plus(const ProblemSpec& spec,
                             const ZeroAnchors& anchors,
                             const SampledFunction& f);

// Rank-n approximant T_n and the matching residual operator T - T_n built
// from interleaved anchor/block-boundary families; (T - T_n)f equals the
// kernel form of T+ with blocks taken from `block_ends`.
class RankNApproximant {
  public:
    RankNApproximant(const ProblemSpec& spec, const ZeroAnchors& anchors,
                     const std::vector<double>& block_ends);

    SampledFunction apply(const SampledFunction& f) const;           // T_n f
    SampledFunction apply_residual(const SampledFunction& f) const;  // (T-T_n)f
    // Adjoint of the residual with respect to the quadrature inner product.
    SampledFunction apply_residual_adjoint(const SampledFunction& h) const;

    std::size_t rank_bound() const { return anchors_.count_interior(); }

  private:
    ProblemSpec spec_;
    ZeroAnchors anchors_;
    std::vector<std::size_t> block_end_idx_;   // ascending, last = grid end
    std::vector<double> block_end_pos_;        // exact block-end positions
    std::vector<std::size_t> block_anchor_;    // anchor index per block
};

RankNApproximant build_rank_n_approximant(const ProblemSpec& spec,
                                          const ZeroAnchors& anchors,
                                          const std::vector<double>& block_ends);

} // namespace hardy

#endif
