#include "minsurf/holomorphic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "format.hpp"

namespace minsurf {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::EvaluationSingularity: return "EvaluationSingularity";
    case ErrorKind::SingularPath: return "SingularPath";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidConstant: return "InvalidConstant";
    case ErrorKind::InvalidBasePoint: return "InvalidBasePoint";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NotPlanar: return "NotPlanar";
    case ErrorKind::DegenerateConic: return "DegenerateConic";
    case ErrorKind::NotHyperbola: return "NotHyperbola";
    case ErrorKind::AxisNotMonotone: return "AxisNotMonotone";
    case ErrorKind::IOError: return "IOError";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// DomainSpec

DomainSpec DomainSpec::rectangle(double u_min, double u_max, double v_min, double v_max) {
    DomainSpec d;
    d.u_min = u_min;
    d.u_max = u_max;
    d.v_min = v_min;
    d.v_max = v_max;
    return d;
}

void DomainSpec::validate() const {
    if (!(std::isfinite(u_min) && std::isfinite(u_max) && std::isfinite(v_min) &&
          std::isfinite(v_max)) ||
        !(u_max > u_min) || !(v_max > v_min)) {
        throw Error(ErrorKind::InvalidArgument, "domain rectangle is degenerate");
    }
    if (!std::isfinite(cut_angle)) {
        throw Error(ErrorKind::InvalidArgument, "branch-cut angle must be finite");
    }
    const double slack = 1e-12 * (1.0 + std::max(width(), height()));
    for (const Complex& p : punctures) {
        if (p.real() < u_min - slack || p.real() > u_max + slack || p.imag() < v_min - slack ||
            p.imag() > v_max + slack) {
            throw Error(ErrorKind::InvalidArgument,
                        "puncture " + format_complex(p) + " lies outside the domain rectangle");
        }
    }
}

bool DomainSpec::contains(Complex z) const {
    return z.real() >= u_min && z.real() <= u_max && z.imag() >= v_min && z.imag() <= v_max;
}

double DomainSpec::puncture_distance(Complex z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& p : punctures) best = std::min(best, std::abs(z - p));
    return best;
}

// ---------------------------------------------------------------------------
// Expression nodes

struct Expr::Node {
    Op op = Op::Const;
    Complex value{};
    int exponent = 0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

const std::shared_ptr<const Expr::Node>& zero_node() {
    static const auto node = std::make_shared<const Expr::Node>();
    return node;
}

bool is_const(const Expr& e, Complex v) { return e.op() == Expr::Op::Const && e.value() == v; }

int arity(Expr::Op op) {
    switch (op) {
    case Expr::Op::Const:
    case Expr::Op::Var: return 0;
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
    case Expr::Op::Div: return 2;
    default: return 1;
    }
}

Complex int_pow(Complex base, int n) {
    if (n == 0) return {1.0, 0.0};
    if (n < 0) {
        if (base == Complex{}) {
            throw Error(ErrorKind::EvaluationSingularity, "negative power of zero");
        }
        return Complex{1.0, 0.0} / int_pow(base, -n);
    }
    Complex result{1.0, 0.0};
    Complex factor = base;
    unsigned m = static_cast<unsigned>(n);
    while (m != 0) {
        if (m & 1U) result *= factor;
        factor *= factor;
        m >>= 1U;
    }
    return result;
}

Complex log_with_cut(Complex w, double cut_angle) {
    if (w == Complex{}) throw Error(ErrorKind::EvaluationSingularity, "log of zero");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double arg = std::arg(w);
    if (cut_angle != kPrincipalCut) {
        // shift into (cut_angle - 2π, cut_angle]
        arg += two_pi * std::floor((cut_angle - arg) / two_pi);
    }
    return {std::log(std::abs(w)), arg};
}

Complex eval_node(const Expr::Node& n, Complex z, double cut) {
    switch (n.op) {
    case Expr::Op::Const: return n.value;
    case Expr::Op::Var: return z;
    case Expr::Op::Add: return eval_node(*n.a, z, cut) + eval_node(*n.b, z, cut);
    case Expr::Op::Sub: return eval_node(*n.a, z, cut) - eval_node(*n.b, z, cut);
    case Expr::Op::Mul: return eval_node(*n.a, z, cut) * eval_node(*n.b, z, cut);
    case Expr::Op::Div: {
        const Complex den = eval_node(*n.b, z, cut);
        if (den == Complex{}) throw Error(ErrorKind::EvaluationSingularity, "division by zero");
        return eval_node(*n.a, z, cut) / den;
    }
    case Expr::Op::Neg: return -eval_node(*n.a, z, cut);
    case Expr::Op::Pow: return int_pow(eval_node(*n.a, z, cut), n.exponent);
    case Expr::Op::Exp: return std::exp(eval_node(*n.a, z, cut));
    case Expr::Op::Log: return log_with_cut(eval_node(*n.a, z, cut), cut);
    case Expr::Op::Sinh: return std::sinh(eval_node(*n.a, z, cut));
    case Expr::Op::Cosh: return std::cosh(eval_node(*n.a, z, cut));
    }
    return {};
}

} // namespace

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(Complex value) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = value;
    node_ = std::move(n);
}

Expr::Expr(double value) : Expr(Complex{value, 0.0}) {}

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Op Expr::op() const { return node_->op; }
Complex Expr::value() const { return node_->value; }
int Expr::exponent() const { return node_->exponent; }
Expr Expr::lhs() const { return node_->a ? Expr(node_->a) : Expr(); }
Expr Expr::rhs() const { return node_->b ? Expr(node_->b) : Expr(); }

bool Expr::is_constant() const { return !contains(Op::Var); }
bool Expr::is_zero() const { return is_const(*this, Complex{}); }

bool Expr::contains(Op op) const {
    if (node_->op == op) return true;
    if (node_->a && Expr(node_->a).contains(op)) return true;
    if (node_->b && Expr(node_->b).contains(op)) return true;
    return false;
}

std::size_t Expr::node_count() const {
    std::size_t count = 1;
    if (node_->a) count += Expr(node_->a).node_count();
    if (node_->b) count += Expr(node_->b).node_count();
    return count;
}

Expr Expr::make(Op op, Expr a, Expr b, int exponent) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->exponent = exponent;
    n->a = a.node_;
    if (arity(op) == 2) n->b = b.node_;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Complex Expr::eval(Complex z, double cut_angle) const {
    const Complex result = eval_node(*node_, z, cut_angle);
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
        throw Error(ErrorKind::EvaluationSingularity,
                    "non-finite value at z = " + format_complex(z));
    }
    return result;
}

// Construction folds constants and drops additive zeros / multiplicative
// ones so that transformed curves stay small.

Expr operator+(const Expr& a, const Expr& b) {
    if (a.op() == Expr::Op::Const && b.op() == Expr::Op::Const) return Expr(a.value() + b.value());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Expr::make(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.op() == Expr::Op::Const && b.op() == Expr::Op::Const) return Expr(a.value() - b.value());
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return Expr::make(Expr::Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.op() == Expr::Op::Const && b.op() == Expr::Op::Const) return Expr(a.value() * b.value());
    if (a.is_zero() || b.is_zero()) return Expr();
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (is_const(a, -1.0)) return -b;
    if (is_const(b, -1.0)) return -a;
    // c1 * (c2 * x) -> (c1 c2) * x
    if (a.op() == Expr::Op::Const && b.op() == Expr::Op::Mul && b.lhs().op() == Expr::Op::Const) {
        return Expr(a.value() * b.lhs().value()) * b.rhs();
    }
    if (b.op() == Expr::Op::Const && a.op() != Expr::Op::Const) return b * a;
    return Expr::make(Expr::Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.op() == Expr::Op::Const && b.op() == Expr::Op::Const && b.value() != Complex{}) {
        return Expr(a.value() / b.value());
    }
    if (a.is_zero() && !b.is_zero()) return Expr();
    if (is_const(b, 1.0)) return a;
    return Expr::make(Expr::Op::Div, a, b);
}

Expr operator-(const Expr& a) {
    if (a.op() == Expr::Op::Const) return Expr(-a.value());
    if (a.op() == Expr::Op::Neg) return a.lhs();
    return Expr::make(Expr::Op::Neg, a);
}

Expr pow(const Expr& base, int exponent) {
    if (exponent == 0) return Expr(1.0);
    if (exponent == 1) return base;
    if (base.op() == Expr::Op::Const && !(base.value() == Complex{} && exponent < 0)) {
        return Expr(int_pow(base.value(), exponent));
    }
    if (base.op() == Expr::Op::Pow) {
        const long long combined = static_cast<long long>(base.exponent()) * exponent;
        if (combined >= std::numeric_limits<int>::min() &&
            combined <= std::numeric_limits<int>::max()) {
            return pow(base.lhs(), static_cast<int>(combined));
        }
    }
    return Expr::make(Expr::Op::Pow, base, Expr(), exponent);
}

Expr exp(const Expr& a) {
    if (a.op() == Expr::Op::Const) return Expr(std::exp(a.value()));
    return Expr::make(Expr::Op::Exp, a);
}

Expr log(const Expr& a) { return Expr::make(Expr::Op::Log, a); }

Expr sinh(const Expr& a) {
    if (a.op() == Expr::Op::Const) return Expr(std::sinh(a.value()));
    return Expr::make(Expr::Op::Sinh, a);
}

Expr cosh(const Expr& a) {
    if (a.op() == Expr::Op::Const) return Expr(std::cosh(a.value()));
    return Expr::make(Expr::Op::Cosh, a);
}

Expr Expr::derivative() const {
    const Expr a = lhs();
    const Expr b = rhs();
    switch (op()) {
    case Op::Const: return Expr();
    case Op::Var: return Expr(1.0);
    case Op::Add: return a.derivative() + b.derivative();
    case Op::Sub: return a.derivative() - b.derivative();
    case Op::Mul: return a.derivative() * b + a * b.derivative();
    case Op::Div: {
        const Expr da = a.derivative();
        const Expr db = b.derivative();
        if (db.is_zero()) return da / b;
        return (da * b - a * db) / pow(b, 2);
    }
    case Op::Neg: return -a.derivative();
    case Op::Pow: return Expr(static_cast<double>(exponent())) * pow(a, exponent() - 1) * a.derivative();
    case Op::Exp: return *this * a.derivative();
    case Op::Log: return a.derivative() / a;
    case Op::Sinh: return cosh(a) * a.derivative();
    case Op::Cosh: return sinh(a) * a.derivative();
    }
    return Expr();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// 1: + -, 2: * /, 3: unary minus, 4: ^, 5: atoms.
int precedence(const Expr& e) {
    switch (e.op()) {
    case Expr::Op::Add:
    case Expr::Op::Sub: return 1;
    case Expr::Op::Mul:
    case Expr::Op::Div: return 2;
    case Expr::Op::Neg: return 3;
    case Expr::Op::Pow: return 4;
    default: return 5;
    }
}

std::string wrap(const Expr& e, int min_prec) {
    std::string s = e.str();
    if (precedence(e) < min_prec) return "(" + s + ")";
    return s;
}

} // namespace

std::string Expr::str() const {
    switch (op()) {
    case Op::Const: {
        const Complex v = value();
        std::string s = format_complex(v);
        const bool plain = v.imag() == 0.0 && !std::signbit(v.real()) && std::isfinite(v.real());
        return plain ? s : "(" + s + ")";
    }
    case Op::Var: return "z";
    case Op::Add: return wrap(lhs(), 1) + " + " + wrap(rhs(), 2);
    case Op::Sub: return wrap(lhs(), 1) + " - " + wrap(rhs(), 2);
    case Op::Mul: return wrap(lhs(), 2) + "*" + wrap(rhs(), 3);
    case Op::Div: return wrap(lhs(), 2) + "/" + wrap(rhs(), 3);
    case Op::Neg: return "-" + wrap(lhs(), 4);
    case Op::Pow: {
        const int n = exponent();
        return wrap(lhs(), 5) + "^" + (n < 0 ? "(" + std::to_string(n) + ")" : std::to_string(n));
    }
    case Op::Exp: return "exp(" + lhs().str() + ")";
    case Op::Log: return "log(" + lhs().str() + ")";
    case Op::Sinh: return "sinh(" + lhs().str() + ")";
    case Op::Cosh: return "cosh(" + lhs().str() + ")";
    }
    return "";
}

std::string format_complex(Complex value) {
    const double re = value.real();
    const double im = value.imag();
    if (im == 0.0 && !std::signbit(im)) return detail::shortest(re);
    if (re == 0.0 && !std::signbit(re)) return detail::shortest(im) + "i";
    std::string s = detail::shortest(re);
    const std::string ims = detail::shortest(im);
    if (ims.front() == '-') {
        s += ims;
    } else {
        s += "+" + ims;
    }
    return s + "i";
}

} // namespace minsurf
