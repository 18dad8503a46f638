#pragma once

#include <memory>
#include <optional>
#include <string>

#include "civita/coeff.hpp"
#include "civita/lc_number.hpp"

namespace civita {

// Symbolic expression in one real variable. The node set is closed under
// symbolic differentiation, which the Taylor extension machinery relies on.
class RealExpr {
public:
    enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, PowInt, PowReal, Exp, Ln, Sin, Cos };

    struct Node {
        Op op;
        Coeff value{Rational(0)};  // Const
        long long ipow = 0;        // PowInt
        double rpow = 0.0;         // PowReal
        std::shared_ptr<const Node> a, b;
    };

    RealExpr() = default;
    explicit RealExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    const Node& node() const { return *node_; }
    const std::shared_ptr<const Node>& ptr() const { return node_; }
    bool valid() const { return node_ != nullptr; }

private:
    std::shared_ptr<const Node> node_;
};

// Constructors with constant folding and 0/1 absorption.
RealExpr expr_const(Coeff c);
RealExpr expr_var();
RealExpr expr_neg(const RealExpr& a);
RealExpr expr_add(const RealExpr& a, const RealExpr& b);
RealExpr expr_sub(const RealExpr& a, const RealExpr& b);
RealExpr expr_mul(const RealExpr& a, const RealExpr& b);
RealExpr expr_div(const RealExpr& a, const RealExpr& b);
RealExpr expr_pow_int(const RealExpr& a, long long n);
RealExpr expr_pow_real(const RealExpr& a, double r);
RealExpr expr_exp(const RealExpr& a);
RealExpr expr_ln(const RealExpr& a);
RealExpr expr_sin(const RealExpr& a);
RealExpr expr_cos(const RealExpr& a);

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' exponent)?
//   base   := number | 'x' | '(' expr ')' | func '(' expr ')'
//   func   := 'sin' | 'cos' | 'exp' | 'ln'
// plus unary minus on base. Throws ParseError with a byte offset.
RealExpr parse_expr(const std::string& text);

std::string render(const RealExpr& e);

// Symbolic derivative, simplified.
RealExpr diff(const RealExpr& e);

// Standard evaluation; throws std::domain_error on ln of a non-positive
// value, division by zero or a fractional power of a negative base.
double eval_real(const RealExpr& e, double x);

// Adaptive Gauss-Kronrod 7/15 quadrature with absolute error target `tol`.
// Throws std::runtime_error when the evaluation budget runs out.
double quad(const RealExpr& e, double a, double b, double tol,
            long max_evals = 1000000);

// True for expressions built from polynomials and the entire primitives
// exp, sin, cos: the class whose Taylor expansions may be pushed to
// arbitrary order.
bool is_entire(const RealExpr& e);

// A real function together with the Taylor order of its lift to the field
// (nullopt order = full analytic extension) and its real domain [lo, hi].
struct ExtensionFn {
    RealExpr base;
    std::optional<int> order;  // nullopt: analytic extension, entire base only
    double lo = 0.0;
    double hi = 0.0;

    ExtensionFn(RealExpr b, std::optional<int> k, double lo_, double hi_);
};

// Order-k Taylor lift evaluated at a nearstandard point x: with r = st(x)
// and eps = x - r, returns sum_{i<=k} f^(i)(r) eps^i / i!.
LCNumber extend(const ExtensionFn& f, const LCNumber& x);

} // namespace civita
