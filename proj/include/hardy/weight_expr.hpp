#ifndef HARDY_WEIGHT_EXPR_HPP
#define HARDY_WEIGHT_EXPR_HPP

#include <memory>
#include <string>

#include "hardy/function_space.hpp"

namespace hardy {

// Small arithmetic expression language for the weight functions u, v:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?          ('^' right-associative)
//   unary  := '-' unary | base
//   base   := number | 'x' | '(' expr ')' | func '(' expr ')'
//   func   := exp | log | sin | cos | sqrt | abs
class WeightExpr {
  public:
    struct Node;
    using NodePtr = std::unique_ptr<Node>;

    double eval(double x) const;
    std::string unparse() const;

    friend WeightExpr parse_weight(const std::string& text);

  private:
    explicit WeightExpr(NodePtr root);
    std::shared_ptr<const Node> root_;
};

WeightExpr parse_weight(const std::string& text);

SampledFunction evaluate_weight(const WeightExpr& expr, const GridPtr& grid);

struct WeightPair {
    WeightExpr u;
    WeightExpr v;
    SampledFunction samples_u;
    SampledFunction samples_v;

    // Evaluates both weights on the grid and checks strict positivity at
    // nodes and cell midpoints.
    WeightPair(WeightExpr u_expr, WeightExpr v_expr, const GridPtr& grid);
};

} // namespace hardy

#endif
