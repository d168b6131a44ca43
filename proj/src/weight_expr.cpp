#include "hardy/weight_expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace hardy {

namespace {
enum class Kind { number, var, add, sub, mul, div, pow, neg, func };
} // namespace

struct WeightExpr::Node {
    Kind kind;
    double value = 0.0;       // number
    std::string func;         // func name
    NodePtr lhs, rhs;         // rhs unused for neg/func
};

namespace {

using Node = WeightExpr::Node;
using NodePtr = WeightExpr::NodePtr;

NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

double eval_node(const Node& n, double x) {
    switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::var: return x;
        case Kind::add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
        case Kind::sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
        case Kind::mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        case Kind::div: {
            const double d = eval_node(*n.rhs, x);
            if (d == 0.0) throw DomainError("division by zero");
            return eval_node(*n.lhs, x) / d;
        }
        case Kind::pow:
            return std::pow(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
        case Kind::neg: return -eval_node(*n.lhs, x);
        case Kind::func: {
            const double a = eval_node(*n.lhs, x);
            if (n.func == "exp") return std::exp(a);
            if (n.func == "log") {
                if (a <= 0.0) throw DomainError("log of nonpositive value");
                return std::log(a);
            }
            if (n.func == "sin") return std::sin(a);
            if (n.func == "cos") return std::cos(a);
            if (n.func == "sqrt") {
                if (a < 0.0) throw DomainError("sqrt of negative value");
                return std::sqrt(a);
            }
            if (n.func == "abs") return std::fabs(a);
            throw DomainError("unknown function " + n.func);
        }
    }
    throw DomainError("corrupt expression node");
}

void unparse_node(const Node& n, std::ostream& os) {
    switch (n.kind) {
        case Kind::number: os << n.value; return;
        case Kind::var: os << 'x'; return;
        case Kind::add:
        case Kind::sub:
        case Kind::mul:
        case Kind::div:
        case Kind::pow: {
            const char op = n.kind == Kind::add   ? '+'
                            : n.kind == Kind::sub ? '-'
                            : n.kind == Kind::mul ? '*'
                            : n.kind == Kind::div ? '/'
                                                  : '^';
            os << '(';
            unparse_node(*n.lhs, os);
            os << op;
            unparse_node(*n.rhs, os);
            os << ')';
            return;
        }
        case Kind::neg:
            os << "(-";
            unparse_node(*n.lhs, os);
            os << ')';
            return;
        case Kind::func:
            os << n.func << '(';
            unparse_node(*n.lhs, os);
            os << ')';
            return;
    }
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("empty expression", 0);
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError("trailing characters", pos_);
        return e;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = make(c == '+' ? Kind::add : Kind::sub, std::move(lhs), term());
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = make(c == '*' ? Kind::mul : Kind::div, std::move(lhs),
                       factor());
        }
    }

    NodePtr factor() {
        NodePtr lhs = unary();
        if (peek() == '^') {
            ++pos_;
            return make(Kind::pow, std::move(lhs), factor());
        }
        return lhs;
    }

    NodePtr unary() {
        if (peek() == '-') {
            ++pos_;
            return make(Kind::neg, unary());
        }
        return base();
    }

    NodePtr base() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        throw SyntaxError("expected number, 'x', '(' or function", pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        std::size_t consumed = 0;
        double v;
        try {
            v = std::stod(text_.substr(start), &consumed);
        } catch (const std::exception&) {
            throw SyntaxError("malformed number", start);
        }
        pos_ = start + consumed;
        auto n = make(Kind::number);
        n->value = v;
        return n;
    }

    NodePtr ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "x") return make(Kind::var);
        static const char* kFuncs[] = {"exp", "log", "sin", "cos", "sqrt", "abs"};
        for (const char* f : kFuncs) {
            if (name == f) {
                expect('(');
                NodePtr arg = expr();
                expect(')');
                auto n = make(Kind::func, std::move(arg));
                n->func = name;
                return n;
            }
        }
        throw SyntaxError("unknown identifier '" + name + "'", start);
    }

    void expect(char c) {
        if (peek() != c)
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
};

} // namespace

WeightExpr::WeightExpr(NodePtr root) : root_(std::move(root)) {}

double WeightExpr::eval(double x) const { return eval_node(*root_, x); }

std::string WeightExpr::unparse() const {
    std::ostringstream os;
    os.precision(17);
    unparse_node(*root_, os);
    return os.str();
}

WeightExpr parse_weight(const std::string& text) {
    if (text.empty()) throw SyntaxError("empty expression", 0);
    return WeightExpr(Parser(text).parse());
}

SampledFunction evaluate_weight(const WeightExpr& expr, const GridPtr& grid) {
    return SampledFunction::sample(grid, [&](double x) {
        const double v = expr.eval(x);
        if (!std::isfinite(v)) throw DomainError("weight evaluates non-finite");
        return v;
    });
}

WeightPair::WeightPair(WeightExpr u_expr, WeightExpr v_expr,
                       const GridPtr& grid)
    : u(std::move(u_expr)),
      v(std::move(v_expr)),
      samples_u(evaluate_weight(u, grid)),
      samples_v(evaluate_weight(v, grid)) {
    auto check = [&](const WeightExpr& e, const SampledFunction& s,
                     const char* name) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] <= 0.0)
                throw NotPositive(std::string(name) + " is not positive at x=" +
                                  std::to_string(grid->node(i)));
            if (i + 1 < s.size()) {
                const double mid = 0.5 * (grid->node(i) + grid->node(i + 1));
                if (e.eval(mid) <= 0.0)
                    throw NotPositive(std::string(name) +
                                      " is not positive at x=" +
                                      std::to_string(mid));
            }
        }
    };
    check(u, samples_u, "u");
    check(v, samples_v, "v");
}

} // namespace hardy
