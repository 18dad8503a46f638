#include "civita/real_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <stdexcept>
#include <vector>

#include "civita/error.hpp"

namespace civita {

using Op = RealExpr::Op;
using NodePtr = std::shared_ptr<const RealExpr::Node>;

namespace {

NodePtr make(RealExpr::Node n) { return std::make_shared<const RealExpr::Node>(std::move(n)); }

bool is_const(const RealExpr& e) { return e.valid() && e.node().op == Op::Const; }
bool is_const_value(const RealExpr& e, double v) {
    return is_const(e) && e.node().value.to_double() == v;
}

} // namespace

RealExpr expr_const(Coeff c) {
    RealExpr::Node n;
    n.op = Op::Const;
    n.value = std::move(c);
    return RealExpr(make(std::move(n)));
}

RealExpr expr_var() {
    RealExpr::Node n;
    n.op = Op::Var;
    return RealExpr(make(std::move(n)));
}

RealExpr expr_neg(const RealExpr& a) {
    if (is_const(a)) return expr_const(-a.node().value);
    if (a.node().op == Op::Neg) return RealExpr(a.node().a);
    RealExpr::Node n;
    n.op = Op::Neg;
    n.a = a.ptr();
    return RealExpr(make(std::move(n)));
}

RealExpr expr_add(const RealExpr& a, const RealExpr& b) {
    if (is_const(a) && is_const(b)) return expr_const(a.node().value + b.node().value);
    if (is_const_value(a, 0.0)) return b;
    if (is_const_value(b, 0.0)) return a;
    RealExpr::Node n;
    n.op = Op::Add;
    n.a = a.ptr();
    n.b = b.ptr();
    return RealExpr(make(std::move(n)));
}

RealExpr expr_sub(const RealExpr& a, const RealExpr& b) {
    if (is_const(a) && is_const(b)) return expr_const(a.node().value - b.node().value);
    if (is_const_value(b, 0.0)) return a;
    if (is_const_value(a, 0.0)) return expr_neg(b);
    RealExpr::Node n;
    n.op = Op::Sub;
    n.a = a.ptr();
    n.b = b.ptr();
    return RealExpr(make(std::move(n)));
}

RealExpr expr_mul(const RealExpr& a, const RealExpr& b) {
    if (is_const(a) && is_const(b)) return expr_const(a.node().value * b.node().value);
    if (is_const_value(a, 0.0) || is_const_value(b, 0.0)) return expr_const(Coeff(Rational(0)));
    if (is_const_value(a, 1.0)) return b;
    if (is_const_value(b, 1.0)) return a;
    RealExpr::Node n;
    n.op = Op::Mul;
    n.a = a.ptr();
    n.b = b.ptr();
    return RealExpr(make(std::move(n)));
}

RealExpr expr_div(const RealExpr& a, const RealExpr& b) {
    if (is_const(b) && b.node().value.is_zero())
        throw std::domain_error("division by constant zero");
    if (is_const(a) && is_const(b)) return expr_const(a.node().value / b.node().value);
    if (is_const_value(a, 0.0)) return expr_const(Coeff(Rational(0)));
    if (is_const_value(b, 1.0)) return a;
    RealExpr::Node n;
    n.op = Op::Div;
    n.a = a.ptr();
    n.b = b.ptr();
    return RealExpr(make(std::move(n)));
}

RealExpr expr_pow_int(const RealExpr& a, long long p) {
    if (p == 0) return expr_const(Coeff(Rational(1)));
    if (p == 1) return a;
    if (is_const(a) && a.node().value.exact() && p > 0 && p < 64)
        return expr_const(Coeff(pow(a.node().value.rat(), p)));
    RealExpr::Node n;
    n.op = Op::PowInt;
    n.ipow = p;
    n.a = a.ptr();
    return RealExpr(make(std::move(n)));
}

RealExpr expr_pow_real(const RealExpr& a, double r) {
    if (r == static_cast<double>(static_cast<long long>(r)))
        return expr_pow_int(a, static_cast<long long>(r));
    RealExpr::Node n;
    n.op = Op::PowReal;
    n.rpow = r;
    n.a = a.ptr();
    return RealExpr(make(std::move(n)));
}

static RealExpr unary_fn(Op op, const RealExpr& a) {
    RealExpr::Node n;
    n.op = op;
    n.a = a.ptr();
    return RealExpr(make(std::move(n)));
}

RealExpr expr_exp(const RealExpr& a) { return unary_fn(Op::Exp, a); }
RealExpr expr_ln(const RealExpr& a) { return unary_fn(Op::Ln, a); }
RealExpr expr_sin(const RealExpr& a) { return unary_fn(Op::Sin, a); }
RealExpr expr_cos(const RealExpr& a) { return unary_fn(Op::Cos, a); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct ExprScanner {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
};

class Parser {
public:
    explicit Parser(const std::string& text) : sc_{text} {}

    RealExpr run() {
        RealExpr e = expr();
        if (sc_.peek() != '\0') throw ParseError("trailing input", sc_.pos);
        return e;
    }

private:
    RealExpr expr() {
        RealExpr acc = term();
        while (true) {
            char c = sc_.peek();
            if (c == '+') {
                ++sc_.pos;
                acc = expr_add(acc, term());
            } else if (c == '-') {
                ++sc_.pos;
                acc = expr_sub(acc, term());
            } else {
                return acc;
            }
        }
    }

    RealExpr term() {
        RealExpr acc = factor();
        while (true) {
            char c = sc_.peek();
            if (c == '*') {
                ++sc_.pos;
                acc = expr_mul(acc, factor());
            } else if (c == '/') {
                ++sc_.pos;
                acc = expr_div(acc, factor());
            } else {
                return acc;
            }
        }
    }

    RealExpr factor() {
        RealExpr b = base();
        if (sc_.peek() != '^') return b;
        ++sc_.pos;
        return exponent(b);
    }

    RealExpr exponent(const RealExpr& b) {
        bool paren = sc_.accept('(');
        bool neg = sc_.accept('-');
        sc_.skip_ws();
        std::size_t start = sc_.pos;
        auto [value, integral] = scan_number_raw();
        if (paren) {
            // parenthesized rational like (1/2)
            if (sc_.peek() == '/') {
                ++sc_.pos;
                auto [den, den_int] = scan_number_raw();
                if (!integral || !den_int || den == 0.0)
                    throw ParseError("expected rational exponent", start);
                value /= den;
                integral = value == static_cast<double>(static_cast<long long>(value));
            }
            sc_.expect(')');
        }
        if (neg) value = -value;
        if (integral) return expr_pow_int(b, static_cast<long long>(value));
        return expr_pow_real(b, value);
    }

    std::pair<double, bool> scan_number_raw() {
        sc_.skip_ws();
        std::size_t start = sc_.pos;
        while (sc_.pos < sc_.s.size() && std::isdigit(static_cast<unsigned char>(sc_.s[sc_.pos])))
            ++sc_.pos;
        bool integral = sc_.pos > start;
        if (sc_.pos < sc_.s.size() && sc_.s[sc_.pos] == '.') {
            integral = false;
            ++sc_.pos;
            while (sc_.pos < sc_.s.size() &&
                   std::isdigit(static_cast<unsigned char>(sc_.s[sc_.pos])))
                ++sc_.pos;
        }
        if (sc_.pos < sc_.s.size() && (sc_.s[sc_.pos] == 'e' || sc_.s[sc_.pos] == 'E')) {
            std::size_t p = sc_.pos + 1;
            if (p < sc_.s.size() && (sc_.s[p] == '+' || sc_.s[p] == '-')) ++p;
            if (p < sc_.s.size() && std::isdigit(static_cast<unsigned char>(sc_.s[p]))) {
                integral = false;
                sc_.pos = p;
                while (sc_.pos < sc_.s.size() &&
                       std::isdigit(static_cast<unsigned char>(sc_.s[sc_.pos])))
                    ++sc_.pos;
            }
        }
        if (sc_.pos == start) throw ParseError("expected number", start);
        return {std::strtod(sc_.s.substr(start, sc_.pos - start).c_str(), nullptr), integral};
    }

    RealExpr base() {
        char c = sc_.peek();
        if (c == '-') {
            ++sc_.pos;
            return expr_neg(base());
        }
        if (c == '(') {
            ++sc_.pos;
            RealExpr e = expr();
            sc_.expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            auto [value, integral] = scan_number_raw();
            if (integral)
                return expr_const(Coeff(Rational(static_cast<std::int64_t>(value))));
            return expr_const(Coeff(value));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = sc_.pos;
            while (sc_.pos < sc_.s.size() &&
                   std::isalpha(static_cast<unsigned char>(sc_.s[sc_.pos])))
                ++sc_.pos;
            std::string name = sc_.s.substr(start, sc_.pos - start);
            if (name == "x") return expr_var();
            if (name == "pi") return expr_const(Coeff(M_PI));
            sc_.expect('(');
            RealExpr arg = expr();
            sc_.expect(')');
            if (name == "sin") return expr_sin(arg);
            if (name == "cos") return expr_cos(arg);
            if (name == "exp") return expr_exp(arg);
            if (name == "ln") return expr_ln(arg);
            throw ParseError("unknown function '" + name + "'", start);
        }
        throw ParseError("expected expression", sc_.pos);
    }

    ExprScanner sc_;
};

} // namespace

RealExpr parse_expr(const std::string& text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::PowInt:
        case Op::PowReal: return 4;
        default: return 5;
    }
}

void render_rec(const RealExpr::Node& n, int parent_prec, std::string& out) {
    int prec = precedence(n.op);
    bool paren = prec < parent_prec;
    auto open = [&] { if (paren) out += "("; };
    auto close = [&] { if (paren) out += ")"; };
    switch (n.op) {
        case Op::Const: {
            std::string s = n.value.str();
            if (!s.empty() && s[0] == '-')
                out += "(" + s + ")";
            else
                out += s;
            break;
        }
        case Op::Var: out += "x"; break;
        case Op::Neg:
            open();
            out += "-";
            render_rec(*n.a, prec + 1, out);
            close();
            break;
        case Op::Add:
            open();
            render_rec(*n.a, prec, out);
            out += " + ";
            render_rec(*n.b, prec + 1, out);
            close();
            break;
        case Op::Sub:
            open();
            render_rec(*n.a, prec, out);
            out += " - ";
            render_rec(*n.b, prec + 1, out);
            close();
            break;
        case Op::Mul:
            open();
            render_rec(*n.a, prec, out);
            out += "*";
            render_rec(*n.b, prec + 1, out);
            close();
            break;
        case Op::Div:
            open();
            render_rec(*n.a, prec, out);
            out += "/";
            render_rec(*n.b, prec + 1, out);
            close();
            break;
        case Op::PowInt:
            open();
            render_rec(*n.a, prec + 1, out);
            out += "^";
            if (n.ipow < 0)
                out += "(" + std::to_string(n.ipow) + ")";
            else
                out += std::to_string(n.ipow);
            close();
            break;
        case Op::PowReal: {
            open();
            render_rec(*n.a, prec + 1, out);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.rpow);
            out += "^";
            if (n.rpow < 0)
                out += "(" + std::string(buf) + ")";
            else
                out += buf;
            close();
            break;
        }
        case Op::Exp:
        case Op::Ln:
        case Op::Sin:
        case Op::Cos: {
            const char* name = n.op == Op::Exp   ? "exp"
                               : n.op == Op::Ln  ? "ln"
                               : n.op == Op::Sin ? "sin"
                                                 : "cos";
            out += name;
            out += "(";
            render_rec(*n.a, 0, out);
            out += ")";
            break;
        }
    }
}

} // namespace

std::string render(const RealExpr& e) {
    std::string out;
    render_rec(e.node(), 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Differentiation

RealExpr diff(const RealExpr& e) {
    const auto& n = e.node();
    switch (n.op) {
        case Op::Const: return expr_const(Coeff(Rational(0)));
        case Op::Var: return expr_const(Coeff(Rational(1)));
        case Op::Neg: return expr_neg(diff(RealExpr(n.a)));
        case Op::Add: return expr_add(diff(RealExpr(n.a)), diff(RealExpr(n.b)));
        case Op::Sub: return expr_sub(diff(RealExpr(n.a)), diff(RealExpr(n.b)));
        case Op::Mul:
            return expr_add(expr_mul(diff(RealExpr(n.a)), RealExpr(n.b)),
                            expr_mul(RealExpr(n.a), diff(RealExpr(n.b))));
        case Op::Div:
            return expr_div(expr_sub(expr_mul(diff(RealExpr(n.a)), RealExpr(n.b)),
                                     expr_mul(RealExpr(n.a), diff(RealExpr(n.b)))),
                            expr_pow_int(RealExpr(n.b), 2));
        case Op::PowInt:
            return expr_mul(expr_mul(expr_const(Coeff(Rational(n.ipow))),
                                     expr_pow_int(RealExpr(n.a), n.ipow - 1)),
                            diff(RealExpr(n.a)));
        case Op::PowReal:
            return expr_mul(expr_mul(expr_const(Coeff(n.rpow)),
                                     expr_pow_real(RealExpr(n.a), n.rpow - 1.0)),
                            diff(RealExpr(n.a)));
        case Op::Exp: return expr_mul(expr_exp(RealExpr(n.a)), diff(RealExpr(n.a)));
        case Op::Ln: return expr_div(diff(RealExpr(n.a)), RealExpr(n.a));
        case Op::Sin: return expr_mul(expr_cos(RealExpr(n.a)), diff(RealExpr(n.a)));
        case Op::Cos:
            return expr_neg(expr_mul(expr_sin(RealExpr(n.a)), diff(RealExpr(n.a))));
    }
    throw std::logic_error("diff: unhandled node");
}

// ---------------------------------------------------------------------------
// Evaluation

double eval_real(const RealExpr& e, double x) {
    const auto& n = e.node();
    switch (n.op) {
        case Op::Const: return n.value.to_double();
        case Op::Var: return x;
        case Op::Neg: return -eval_real(RealExpr(n.a), x);
        case Op::Add: return eval_real(RealExpr(n.a), x) + eval_real(RealExpr(n.b), x);
        case Op::Sub: return eval_real(RealExpr(n.a), x) - eval_real(RealExpr(n.b), x);
        case Op::Mul: return eval_real(RealExpr(n.a), x) * eval_real(RealExpr(n.b), x);
        case Op::Div: {
            double den = eval_real(RealExpr(n.b), x);
            if (den == 0.0) throw std::domain_error("eval: division by zero");
            return eval_real(RealExpr(n.a), x) / den;
        }
        case Op::PowInt: {
            double b = eval_real(RealExpr(n.a), x);
            if (b == 0.0 && n.ipow < 0)
                throw std::domain_error("eval: zero to a negative power");
            return std::pow(b, static_cast<double>(n.ipow));
        }
        case Op::PowReal: {
            double b = eval_real(RealExpr(n.a), x);
            if (b < 0.0) throw std::domain_error("eval: fractional power of a negative base");
            if (b == 0.0 && n.rpow <= 0.0)
                throw std::domain_error("eval: zero to a non-positive power");
            return std::pow(b, n.rpow);
        }
        case Op::Exp: return std::exp(eval_real(RealExpr(n.a), x));
        case Op::Ln: {
            double v = eval_real(RealExpr(n.a), x);
            if (v <= 0.0) throw std::domain_error("eval: ln of a non-positive value");
            return std::log(v);
        }
        case Op::Sin: return std::sin(eval_real(RealExpr(n.a), x));
        case Op::Cos: return std::cos(eval_real(RealExpr(n.a), x));
    }
    throw std::logic_error("eval: unhandled node");
}

// ---------------------------------------------------------------------------
// Quadrature: adaptive Gauss-Kronrod 7/15, absolute error target split
// proportionally to subinterval length.

namespace {

struct GK15 {
    double value;
    double error;
};

GK15 gk15(const RealExpr& e, double a, double b, long& evals) {
    static const double xgk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
        0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
    static const double wgk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
    static const double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fc = eval_real(e, mid);
    ++evals;
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = half * xgk[i];
        double f1 = eval_real(e, mid - dx);
        double f2 = eval_real(e, mid + dx);
        evals += 2;
        kron += wgk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += wg[i / 2] * (f1 + f2);
    }
    kron *= half;
    gauss *= half;

    double delta = std::fabs(kron - gauss);
    double err = 200.0 * delta * std::sqrt(200.0 * delta);
    return {kron, std::fmax(err, std::fabs(kron) * 1e-16)};
}

} // namespace

double quad(const RealExpr& e, double a, double b, double tol, long max_evals) {
    if (!(a <= b)) throw std::invalid_argument("quad: requires a <= b");
    if (tol <= 0) throw std::invalid_argument("quad: tolerance must be positive");
    if (a == b) return 0.0;

    // Worst-segment-first refinement against a global absolute error target.
    struct Seg {
        double a, b, value, error;
        bool operator<(const Seg& o) const { return error < o.error; }
    };
    long evals = 0;
    GK15 whole = gk15(e, a, b, evals);
    std::priority_queue<Seg> heap;
    heap.push({a, b, whole.value, whole.error});
    double sum = whole.value;
    double err = whole.error;

    while (err > tol) {
        Seg s = heap.top();
        if ((s.b - s.a) < 1e-15 * (b - a))
            throw std::runtime_error(
                "quad: tolerance unreachable at the resolution floor (singular integrand?)");
        if (evals >= max_evals)
            throw std::runtime_error("quad: evaluation budget exhausted before convergence");
        heap.pop();
        double mid = 0.5 * (s.a + s.b);
        GK15 left = gk15(e, s.a, mid, evals);
        GK15 right = gk15(e, mid, s.b, evals);
        sum += left.value + right.value - s.value;
        err += left.error + right.error - s.error;
        heap.push({s.a, mid, left.value, left.error});
        heap.push({mid, s.b, right.value, right.error});
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Taylor extension to the field

bool is_entire(const RealExpr& e) {
    const auto& n = e.node();
    switch (n.op) {
        case Op::Const:
        case Op::Var: return true;
        case Op::Neg:
        case Op::Exp:
        case Op::Sin:
        case Op::Cos: return is_entire(RealExpr(n.a));
        case Op::Add:
        case Op::Sub:
        case Op::Mul: return is_entire(RealExpr(n.a)) && is_entire(RealExpr(n.b));
        case Op::PowInt: return n.ipow >= 0 && is_entire(RealExpr(n.a));
        default: return false;
    }
}

ExtensionFn::ExtensionFn(RealExpr b, std::optional<int> k, double lo_, double hi_)
    : base(std::move(b)), order(k), lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("ExtensionFn: empty domain");
    if (order && *order < 0) throw std::invalid_argument("ExtensionFn: negative order");
    if (!order && !is_entire(base))
        throw std::invalid_argument(
            "ExtensionFn: analytic extension requires a polynomial or entire base");
}

LCNumber extend(const ExtensionFn& f, const LCNumber& x) {
    ExtReal st = standard_part(x);
    if (!st.finite())
        throw std::domain_error("extend: argument is not nearstandard (infinite)");
    double r = st.value.to_double();
    if (r < f.lo || r > f.hi)
        throw std::domain_error("extend: standard part outside the function domain");

    const Config cfg = x.config();
    LCNumber eps = x - LCNumber::real(st.value, cfg);
    LCNumber result = LCNumber::real(Coeff(eval_real(f.base, r)), cfg);
    if (eps.is_zero()) return result;

    const Rational window = Rational(cfg.depth) * eps.granularity();
    RealExpr deriv = f.base;
    LCNumber eps_pow = LCNumber::real(Coeff(Rational(1)), cfg);
    double factorial = 1.0;

    const long long cap = f.order ? *f.order : 8LL * cfg.depth + 8;
    for (long long i = 1; i <= cap; ++i) {
        deriv = diff(deriv);
        eps_pow = eps_pow * eps;
        if (eps_pow.is_zero()) break;
        factorial *= static_cast<double>(i);
        if (!f.order && *eps_pow.valuation() > window) break;
        Coeff ci(eval_real(deriv, r) / factorial);
        result = result + LCNumber::real(ci, cfg) * eps_pow;
    }
    return result;
}

} // namespace civita
