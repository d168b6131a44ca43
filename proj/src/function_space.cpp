#include "hardy/function_space.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/kernels.hpp"

namespace hardy {

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw Error("interval requires finite a < b");
}

Grid::Grid(Interval iv, int level) : interval_(iv), level_(level) {
    if (level < 0) throw Error("grid level must be nonnegative");
    if (level >= 30 || ((std::size_t(1) << level) + 1) > kMaxNodes)
        throw ResourceLimit("grid node count exceeds configured maximum");
    const std::size_t n = (std::size_t(1) << level) + 1;
    const double h = iv.length() / static_cast<double>(n - 1);
    nodes_.resize(n);
    weights_.assign(n, h);
    for (std::size_t i = 0; i < n; ++i)
        nodes_[i] = iv.a + static_cast<double>(i) * h;
    nodes_.front() = iv.a;
    nodes_.back() = iv.b;
    weights_.front() = weights_.back() = 0.5 * h;
}

GridPtr make_grid(Interval iv, int level) {
    return std::make_shared<const Grid>(iv, level);
}

GridPtr refine(const GridPtr& grid) {
    return make_grid(grid->interval(), grid->level() + 1);
}

SampledFunction::SampledFunction(GridPtr g, std::vector<double> vals)
    : grid(std::move(g)), values(std::move(vals)) {
    if (values.size() != grid->size())
        throw GridMismatch("value count does not match grid");
}

SampledFunction::SampledFunction(GridPtr g)
    : grid(std::move(g)), values(grid->size(), 0.0) {}

NodalCountPolicy::NodalCountPolicy(double floor, int width)
    : abs_floor(floor), cluster_width(width) {
    if (!(floor > 0.0 && floor <= 1e-3))
        throw Error("abs_floor must lie in (0, 1e-3]");
    if (width < 1) throw Error("cluster_width must be >= 1");
}

void validate_exponent(double p, const char* name) {
    if (!(std::isfinite(p) && p > 1.0))
        throw Error(std::string(name) + " must lie in (1, inf)");
}

double signed_power(double t, double p) {
    if (t == 0.0) return 0.0;
    const double m = std::pow(std::fabs(t), p - 1.0);
    return t > 0.0 ? m : -m;
}

double conjugate_exponent(double p) { return p / (p - 1.0); }

SampledFunction signed_power(const SampledFunction& f, double p) {
    SampledFunction out(f.grid);
    kernels::signed_power_array(f.values, p, out.values);
    return out;
}

double lp_norm(const SampledFunction& f, double p) {
    if (p < 1.0) throw Error("lp_norm requires p >= 1");
    const double s =
        kernels::weighted_abs_pow_sum(f.values, f.grid->quad_weights(), p);
    return std::pow(s, 1.0 / p);
}

namespace {

struct Run {
    int sign; // -1, 0, +1
    std::size_t first;
    std::size_t last;
};

std::vector<Run> classify_runs(const SampledFunction& f,
                               const NodalCountPolicy& policy) {
    double maxabs = 0.0;
    for (double v : f.values) {
        if (!std::isfinite(v)) throw Error("non-finite sample");
        maxabs = std::max(maxabs, std::fabs(v));
    }
    const double floor = policy.abs_floor * maxabs;
    if (maxabs == 0.0) throw AllZero("all samples are zero");

    std::vector<Run> runs;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f.values[i];
        const int s = std::fabs(v) <= floor ? 0 : (v > 0.0 ? 1 : -1);
        if (runs.empty() || runs.back().sign != s)
            runs.push_back({s, i, i});
        else
            runs.back().last = i;
    }
    if (runs.size() == 1 && runs.front().sign == 0)
        throw AllZero("all samples below the zero floor");

    // A nonzero blip shorter than cluster_width sandwiched between zero
    // runs is noise; absorb it so the flanking runs form one zero cluster.
    std::vector<Run> merged;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        Run r = runs[k];
        const bool blip =
            r.sign != 0 && k > 0 && k + 1 < runs.size() &&
            runs[k - 1].sign == 0 && runs[k + 1].sign == 0 &&
            static_cast<int>(r.last - r.first + 1) < policy.cluster_width;
        if (blip) r.sign = 0;
        if (!merged.empty() && merged.back().sign == r.sign)
            merged.back().last = r.last;
        else
            merged.push_back(r);
    }
    return merged;
}

} // namespace

int count_sign_changes(const SampledFunction& f,
                       const NodalCountPolicy& policy) {
    const auto runs = classify_runs(f, policy);
    int prev = 0, changes = 0;
    for (const Run& r : runs) {
        if (r.sign == 0) continue;
        if (prev != 0 && r.sign != prev) ++changes;
        prev = r.sign;
    }
    return changes;
}

int count_zeros(const SampledFunction& f, const NodalCountPolicy& policy) {
    const auto runs = classify_runs(f, policy);
    const std::size_t last_idx = f.size() - 1;
    int zeros = 0;
    int prev = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const Run& r = runs[k];
        if (r.sign != 0) {
            if (prev != 0 && r.sign != prev) ++zeros; // crossing
            prev = r.sign;
            continue;
        }
        // Zero cluster touching an endpoint is not an interior zero.
        if (r.first == 0 || r.last == last_idx) continue;
        const int left = runs[k - 1].sign;
        const int right = k + 1 < runs.size() ? runs[k + 1].sign : 0;
        if (left != 0 && left == right) ++zeros; // touching zero
        // opposite flanks: the crossing is counted when `right` is visited
    }
    return zeros;
}

std::vector<double> zero_locations(const SampledFunction& f,
                                   const NodalCountPolicy& policy) {
    const auto runs = classify_runs(f, policy);
    const auto& xs = f.grid->nodes();
    const std::size_t last_idx = f.size() - 1;
    std::vector<double> locs;
    int prev = 0;
    std::size_t prev_last = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const Run& r = runs[k];
        if (r.sign != 0) {
            if (prev != 0 && r.sign != prev) {
                if (k > 0 && runs[k - 1].sign == 0) {
                    const Run& z = runs[k - 1];
                    locs.push_back(0.5 * (xs[z.first] + xs[z.last]));
                } else {
                    // crossing between adjacent nodes: linear interpolation
                    const std::size_t i = prev_last, j = r.first;
                    const double fi = f.values[i], fj = f.values[j];
                    locs.push_back(xs[i] + (xs[j] - xs[i]) * fi / (fi - fj));
                }
            }
            prev = r.sign;
            prev_last = r.last;
            continue;
        }
        if (r.first == 0 || r.last == last_idx) continue;
        const int left = runs[k - 1].sign;
        const int right = k + 1 < runs.size() ? runs[k + 1].sign : 0;
        if (left != 0 && left == right)
            locs.push_back(0.5 * (xs[r.first] + xs[r.last]));
    }
    std::sort(locs.begin(), locs.end());
    return locs;
}

} // namespace hardy
