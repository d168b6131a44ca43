#include "hardy/operator.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/kernels.hpp"

namespace hardy {

ProblemSpec::ProblemSpec(double p_, double q_, GridPtr grid_,
                         WeightPair weights_)
    : p(p_), q(q_), grid(std::move(grid_)), weights(std::move(weights_)) {
    validate_exponent(p, "p");
    validate_exponent(q, "q");
    if (!weights.samples_u.grid->same_as(*grid) ||
        !weights.samples_v.grid->same_as(*grid))
        throw GridMismatch("weight samples not on the spec grid");
}

ProblemSpec ProblemSpec::on_grid(GridPtr g) const {
    return ProblemSpec(p, q, g, WeightPair(weights.u, weights.v, g));
}

namespace {

void require_same_grid(const ProblemSpec& spec, const SampledFunction& f) {
    if (!f.grid->same_as(*spec.grid))
        throw GridMismatch("function is not sampled on the spec grid");
}

std::size_t snap_to_node(const GridPtr& grid, double x) {
    const double h = grid->spacing();
    const double rel = (x - grid->interval().a) / h;
    const long idx = std::lround(rel);
    if (idx < 0 || static_cast<std::size_t>(idx) >= grid->size())
        throw AnchorOffGrid("anchor outside the interval");
    if (std::fabs(x - grid->node(static_cast<std::size_t>(idx))) > 0.5 * h)
        throw AnchorOffGrid("anchor not within half a cell of a node");
    return static_cast<std::size_t>(idx);
}

// Prefix integral of a pointwise product, trapezoid rule.
std::vector<double> product_prefix(const ProblemSpec& spec,
                                   const SampledFunction& f,
                                   const SampledFunction& w) {
    std::vector<double> prod(f.size()), pre(f.size());
    kernels::multiply(f.values, w.values, prod);
    kernels::trapezoid_prefix(spec.grid->nodes(), prod, pre);
    return pre;
}

// Prefix integral at an off-node position, linearly interpolated.
double prefix_at(const GridPtr& grid, const std::vector<double>& pre,
                 double x) {
    const double h = grid->spacing();
    const double s = std::clamp((x - grid->interval().a) / h, 0.0,
                                static_cast<double>(grid->size() - 1));
    const auto i = std::min(static_cast<std::size_t>(s), grid->size() - 2);
    const double t = s - static_cast<double>(i);
    return pre[i] + t * (pre[i + 1] - pre[i]);
}

} // namespace

SampledFunction apply_T(const ProblemSpec& spec, const SampledFunction& f) {
    require_same_grid(spec, f);
    const auto pre = product_prefix(spec, f, spec.weights.samples_u);
    SampledFunction g(spec.grid);
    kernels::multiply(pre, spec.weights.samples_v.values, g.values);
    return g;
}

SampledFunction apply_T_star(const ProblemSpec& spec,
                             const SampledFunction& h) {
    require_same_grid(spec, h);
    const auto pre = product_prefix(spec, h, spec.weights.samples_v);
    const double total = pre.back();
    SampledFunction out(spec.grid);
    // int_x^b v h = P(b) - P(x)
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = spec.weights.samples_u[i] * (total - pre[i]);
    out[out.size() - 1] = 0.0;
    return out;
}

ZeroAnchors::ZeroAnchors(const GridPtr& grid,
                         const std::vector<double>& interior) {
    node_indices.push_back(0);
    positions.push_back(grid->interval().a);
    for (double x : interior) {
        node_indices.push_back(snap_to_node(grid, x));
        positions.push_back(x);
    }
    for (std::size_t k = 1; k < node_indices.size(); ++k)
        if (node_indices[k] <= node_indices[k - 1])
            throw AnchorOffGrid("anchors must snap to strictly increasing nodes");
}

RankNApproximant::RankNApproximant(const ProblemSpec& spec,
                                   const ZeroAnchors& anchors,
                                   const std::vector<double>& block_ends)
    : spec_(spec), anchors_(anchors) {
    for (double x : block_ends) {
        block_end_idx_.push_back(snap_to_node(spec.grid, x));
        block_end_pos_.push_back(x);
    }
    if (block_end_idx_.empty() ||
        block_end_idx_.back() != spec.grid->size() - 1) {
        block_end_idx_.push_back(spec.grid->size() - 1);
        block_end_pos_.push_back(spec.grid->interval().b);
    }
    for (std::size_t k = 1; k < block_end_idx_.size(); ++k)
        if (block_end_idx_[k] <= block_end_idx_[k - 1])
            throw AnchorOffGrid("block ends must be strictly increasing");

    // Block i pairs with anchor a_i; the families must interleave so that
    // each anchor lies in the closure of its block.
    if (anchors_.node_indices.size() != block_end_idx_.size())
        throw AnchorOffGrid("anchor and block counts must match");
    std::size_t start = 0;
    for (std::size_t k = 0; k < block_end_idx_.size(); ++k) {
        const std::size_t a_idx = anchors_.node_indices[k];
        if (a_idx < start || a_idx > block_end_idx_[k])
            throw AnchorOffGrid("anchor lies outside its block");
        block_anchor_.push_back(k);
        start = block_end_idx_[k];
    }
}

SampledFunction RankNApproximant::apply(const SampledFunction& f) const {
    require_same_grid(spec_, f);
    const auto pre = product_prefix(spec_, f, spec_.weights.samples_u);
    SampledFunction out(spec_.grid);
    std::size_t block = 0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        // Membership by exact block ends: a node past the true boundary
        // must switch anchors, or the effective block grows by O(h).
        while (block + 1 < block_end_pos_.size() &&
               spec_.grid->node(j) > block_end_pos_[block])
            ++block;
        const double pa = prefix_at(
            spec_.grid, pre, anchors_.positions[block_anchor_[block]]);
        out[j] = spec_.weights.samples_v[j] * pa;
    }
    return out;
}

SampledFunction RankNApproximant::apply_residual(
    const SampledFunction& f) const {
    require_same_grid(spec_, f);
    const auto pre = product_prefix(spec_, f, spec_.weights.samples_u);
    SampledFunction out(spec_.grid);
    std::size_t block = 0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        while (block + 1 < block_end_pos_.size() &&
               spec_.grid->node(j) > block_end_pos_[block])
            ++block;
        const double pa = prefix_at(
            spec_.grid, pre, anchors_.positions[block_anchor_[block]]);
        out[j] = spec_.weights.samples_v[j] * (pre[j] - pa);
    }
    return out;
}

SampledFunction RankNApproximant::apply_residual_adjoint(
    const SampledFunction& h) const {
    require_same_grid(spec_, h);
    const auto pre = product_prefix(spec_, h, spec_.weights.samples_v);
    SampledFunction out(spec_.grid);
    std::size_t block = 0;
    double block_start = spec_.grid->interval().a;
    for (std::size_t t = 0; t < out.size(); ++t) {
        while (block + 1 < block_end_pos_.size() &&
               spec_.grid->node(t) > block_end_pos_[block]) {
            block_start = block_end_pos_[block];
            ++block;
        }
        const double anchor = anchors_.positions[block_anchor_[block]];
        double s;
        if (spec_.grid->node(t) >= anchor)
            s = prefix_at(spec_.grid, pre, block_end_pos_[block]) -
                pre[t];                       // + int_t^{B_{k+1}} v h
        else
            s = -(pre[t] - prefix_at(spec_.grid, pre,
                                     block_start)); // - int_{B_k}^t v h
        out[t] = spec_.weights.samples_u[t] * s;
    }
    return out;
}

RankNApproximant build_rank_n_approximant(const ProblemSpec& spec,
                                          const ZeroAnchors& anchors,
                                          const std::vector<double>& block_ends) {
    return RankNApproximant(spec, anchors, block_ends);
}

SampledFunction apply_T_plus(const ProblemSpec& spec,
                             const ZeroAnchors& anchors,
                             const SampledFunction& f) {
    // Blocks induced directly by the anchors; each block integrates from
    // its own left anchor.
    std::vector<double> ends(anchors.positions.begin() + 1,
                             anchors.positions.end());
    return RankNApproximant(spec, anchors, ends).apply_residual(f);
}

} // namespace hardy
