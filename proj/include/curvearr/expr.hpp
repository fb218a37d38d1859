#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>

#include "curvearr/big_interval.hpp"
#include "curvearr/box.hpp"
#include "curvearr/dyadic.hpp"
#include "curvearr/errors.hpp"
#include "curvearr/interval.hpp"

namespace curvearr {

enum class Op { X, Y, Const, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp };
enum class Var { X, Y };

struct Node;
using Expr = std::shared_ptr<const Node>;

/// Immutable expression node. Binary ops use a and b; unary ops and Pow use a.
struct Node {
    Op op;
    mpq_class value;  // Const
    int exponent = 0; // Pow
    Expr a;
    Expr b;
};

// Constructors with local simplification (constant folding, 0*e, 1*e, e+0, ...).
Expr make_x();
Expr make_y();
Expr make_const(const mpq_class& v);
Expr make_add(const Expr& a, const Expr& b);
Expr make_sub(const Expr& a, const Expr& b);
Expr make_mul(const Expr& a, const Expr& b);
Expr make_div(const Expr& a, const Expr& b);
Expr make_neg(const Expr& a);
Expr make_pow(const Expr& a, int n);
Expr make_sin(const Expr& a);
Expr make_cos(const Expr& a);
Expr make_exp(const Expr& a);

/// Parses the curve grammar. Error offsets are 1-based character columns.
/// Unary minus binds looser than '^', so "-x^2" is -(x^2).
Expr parse(std::string_view text);
Expr differentiate(const Expr& e, Var v);
std::string to_string(const Expr& e);
/// Structural equality.
bool same(const Expr& a, const Expr& b);
/// No sin/cos/exp anywhere: the value at a rational point is rational.
bool is_rational(const Expr& e);
bool is_constant(const Expr& e);

/// Generic natural interval extension. I must provide +, -, *, /, unary -, iv_pow,
/// iv_sin, iv_cos, iv_exp; make_const turns an mpq into an I.
template <class I, class MakeConst>
I eval_interval(const Node& n, const I& x, const I& y, const MakeConst& make_const_iv) {
    switch (n.op) {
        case Op::X:
            return x;
        case Op::Y:
            return y;
        case Op::Const:
            return make_const_iv(n.value);
        case Op::Add:
            return eval_interval(*n.a, x, y, make_const_iv) + eval_interval(*n.b, x, y, make_const_iv);
        case Op::Sub:
            return eval_interval(*n.a, x, y, make_const_iv) - eval_interval(*n.b, x, y, make_const_iv);
        case Op::Mul:
            if (same(n.a, n.b)) {
                return iv_square(eval_interval(*n.a, x, y, make_const_iv));
            }
            return eval_interval(*n.a, x, y, make_const_iv) * eval_interval(*n.b, x, y, make_const_iv);
        case Op::Div:
            return eval_interval(*n.a, x, y, make_const_iv) / eval_interval(*n.b, x, y, make_const_iv);
        case Op::Neg:
            return -eval_interval(*n.a, x, y, make_const_iv);
        case Op::Pow:
            return iv_pow(eval_interval(*n.a, x, y, make_const_iv), n.exponent);
        case Op::Sin:
            return iv_sin(eval_interval(*n.a, x, y, make_const_iv));
        case Op::Cos:
            return iv_cos(eval_interval(*n.a, x, y, make_const_iv));
        case Op::Exp:
            return iv_exp(eval_interval(*n.a, x, y, make_const_iv));
    }
    throw InternalError("eval_interval: unknown node");
}

/// Inclusion function over a box, double intervals.
Interval eval_box(const Expr& e, const Box2& b);
/// Inclusion function over a box in MPFR at the given precision, widened to doubles.
Interval eval_box_big(const Expr& e, const Box2& b, long precision_bits);
/// Exact value of a rational expression at a dyadic point. Throws DomainError on division
/// by zero and InternalError for transcendental expressions.
mpq_class eval_exact(const Expr& e, const mpq_class& x, const mpq_class& y);
/// Enclosure of e(p); exact (degenerate when representable) for rational expressions,
/// otherwise an MPFR enclosure at 128 bits.
Interval eval_point(const Expr& e, const Dyadic& x, const Dyadic& y);

/// Outcome of a sign query.
struct SignResult {
    int sign = 1;          // never 0
    bool exact_zero = false;  // certified zero, mapped to +1
    bool uncertain = false;   // escalation bound reached, +1 assumed
};

/// Sign of e(p), with 0 treated as +1. max_bits bounds precision escalation for
/// transcendental expressions.
SignResult eval_sign_detail(const Expr& e, const Dyadic& x, const Dyadic& y, long max_bits = 256);
inline int eval_sign(const Expr& e, const Dyadic& x, const Dyadic& y, long max_bits = 256) {
    return eval_sign_detail(e, x, y, max_bits).sign;
}

/// Throws InputError unless every denominator and every negatively powered base excludes 0
/// on the box.
void check_denominators(const Expr& e, const Box2& roi);

}  // namespace curvearr
