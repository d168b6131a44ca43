#ifndef HARDY_FUNCTION_SPACE_HPP
#define HARDY_FUNCTION_SPACE_HPP

#include <memory>
#include <vector>

#include "hardy/errors.hpp"

namespace hardy {

struct Interval {
    double a;
    double b;

    Interval(double a_, double b_);
    double length() const { return b - a; }
};

// Uniform grid with 2^level + 1 nodes and composite-trapezoid weights.
// Grids are immutable and shared by SampledFunction instances.
class Grid {
  public:
    static constexpr std::size_t kMaxNodes = (1u << 22) + 1;

    Grid(Interval iv, int level);

    const Interval& interval() const { return interval_; }
    int level() const { return level_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& quad_weights() const { return weights_; }
    double node(std::size_t i) const { return nodes_[i]; }
    double spacing() const { return nodes_[1] - nodes_[0]; }

    bool same_as(const Grid& other) const { return this == &other; }

  private:
    Interval interval_;
    int level_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(Interval iv, int level);

// One level finer; the node set is a superset of the input's.
GridPtr refine(const GridPtr& grid);

struct SampledFunction {
    GridPtr grid;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(GridPtr g, std::vector<double> vals);
    explicit SampledFunction(GridPtr g); // zero-filled

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    template <typename F>
    static SampledFunction sample(GridPtr g, F&& fn) {
        std::vector<double> v(g->size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(g->node(i));
        return SampledFunction(std::move(g), std::move(v));
    }
};

struct NodalCountPolicy {
    double abs_floor = 1e-8; // relative to max|values|
    int cluster_width = 2;

    NodalCountPolicy() = default;
    NodalCountPolicy(double floor, int width);
};

// x_(p) = |x|^{p-1} sgn(x)
double signed_power(double t, double p);

// Conjugate exponent p' = p/(p-1).
double conjugate_exponent(double p);

SampledFunction signed_power(const SampledFunction& f, double p);

// Quadrature approximation of (int_I |f|^p)^{1/p}.
double lp_norm(const SampledFunction& f, double p);

// Z(f): distinct zeros on the open interior. Sign changes count one each;
// a near-zero cluster flanked by equal signs counts one (touching zero).
int count_zeros(const SampledFunction& f, const NodalCountPolicy& policy = {});

// P(f): strict sign alternations; always <= count_zeros.
int count_sign_changes(const SampledFunction& f,
                       const NodalCountPolicy& policy = {});

// Interior crossing locations (for anchor construction). Each sign change
// is located by linear interpolation; each touching cluster by its center.
std::vector<double> zero_locations(const SampledFunction& f,
                                   const NodalCountPolicy& policy = {});

void validate_exponent(double p, const char* name);

} // namespace hardy

#endif
