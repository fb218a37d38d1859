#include "curvearr/expr.hpp"

#include <cctype>
#include <climits>
#include <vector>

namespace curvearr {

namespace {

Expr node(Op op, Expr a = nullptr, Expr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_const(const Expr& e, const mpq_class& v) { return e->op == Op::Const && e->value == v; }

}  // namespace

Expr make_x() {
    static const Expr x = node(Op::X);
    return x;
}

Expr make_y() {
    static const Expr y = node(Op::Y);
    return y;
}

Expr make_const(const mpq_class& v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = v;
    n->value.canonicalize();
    return n;
}

Expr make_add(const Expr& a, const Expr& b) {
    if (a->op == Op::Const && b->op == Op::Const) {
        return make_const(a->value + b->value);
    }
    if (is_const(b, 0)) {
        return a;
    }
    if (is_const(a, 0)) {
        return b;
    }
    return node(Op::Add, a, b);
}

Expr make_sub(const Expr& a, const Expr& b) {
    if (a->op == Op::Const && b->op == Op::Const) {
        return make_const(a->value - b->value);
    }
    if (is_const(b, 0)) {
        return a;
    }
    if (is_const(a, 0)) {
        return make_neg(b);
    }
    return node(Op::Sub, a, b);
}

Expr make_neg(const Expr& a) {
    if (a->op == Op::Const) {
        return make_const(-a->value);
    }
    if (a->op == Op::Neg) {
        return a->a;
    }
    if (a->op == Op::Mul && a->a->op == Op::Const) {
        return make_mul(make_const(-a->a->value), a->b);
    }
    return node(Op::Neg, a);
}

Expr make_mul(const Expr& a, const Expr& b) {
    if (a->op == Op::Const && b->op == Op::Const) {
        return make_const(a->value * b->value);
    }
    if (is_const(a, 0) || is_const(b, 0)) {
        return make_const(0);
    }
    if (is_const(a, 1)) {
        return b;
    }
    if (is_const(b, 1)) {
        return a;
    }
    if (is_const(a, -1)) {
        return make_neg(b);
    }
    if (is_const(b, -1)) {
        return make_neg(a);
    }
    if (b->op == Op::Const) {
        return make_mul(b, a);
    }
    if (a->op == Op::Const && b->op == Op::Mul && b->a->op == Op::Const) {
        return make_mul(make_const(a->value * b->a->value), b->b);
    }
    return node(Op::Mul, a, b);
}

Expr make_div(const Expr& a, const Expr& b) {
    if (b->op == Op::Const && b->value != 0) {
        if (a->op == Op::Const) {
            return make_const(a->value / b->value);
        }
        if (b->value == 1) {
            return a;
        }
    }
    if (is_const(a, 0) && !is_const(b, 0)) {
        return make_const(0);
    }
    return node(Op::Div, a, b);
}

Expr make_pow(const Expr& a, int n) {
    if (n == 0) {
        return make_const(1);
    }
    if (n == 1) {
        return a;
    }
    if (a->op == Op::Const && (n > 0 || a->value != 0)) {
        mpq_class r = 1;
        for (int i = 0; i < std::abs(n); ++i) {
            r *= a->value;
        }
        return make_const(n > 0 ? r : mpq_class(1 / r));
    }
    auto p = std::make_shared<Node>();
    p->op = Op::Pow;
    p->exponent = n;
    p->a = a;
    return p;
}

Expr make_sin(const Expr& a) {
    if (is_const(a, 0)) {
        return make_const(0);
    }
    return node(Op::Sin, a);
}

Expr make_cos(const Expr& a) {
    if (is_const(a, 0)) {
        return make_const(1);
    }
    return node(Op::Cos, a);
}

Expr make_exp(const Expr& a) {
    if (is_const(a, 0)) {
        return make_const(1);
    }
    return node(Op::Exp, a);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ < text_.size()) {
            fail({"operator", "end of input"}, "unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
        const std::size_t col = pos_ + 1;
        std::string list;
        for (const auto& e : expected) {
            list += (list.empty() ? "" : ", ") + e;
        }
        throw ParseError(col, std::move(expected),
                         "syntax error at offset " + std::to_string(col) + ": " + msg + " (expected " + list + ")");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail({std::string(1, c)}, pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                           : "unexpected end of input");
        }
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+')) {
                e = make_add(e, term());
            } else if (accept('-')) {
                e = make_sub(e, term());
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (accept('*')) {
                e = make_mul(e, factor());
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Expr d = factor();
                if (is_const(d, 0)) {
                    pos_ = at;
                    fail({"nonzero divisor"}, "division by zero");
                }
                e = make_div(e, d);
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        if (accept('-')) {
            return make_neg(factor());
        }
        Expr b = base();
        if (accept('^')) {
            skip_ws();
            bool neg = false;
            if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
                neg = text_[pos_] == '-';
                ++pos_;
            }
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                fail({"integer"}, "exponent must be an integer");
            }
            long n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                n = n * 10 + (text_[pos_] - '0');
                if (n > 1000) {
                    fail({"integer <= 1000"}, "exponent too large");
                }
                ++pos_;
            }
            if (b->op == Op::Const && b->value == 0 && neg) {
                fail({"nonzero base"}, "negative power of zero");
            }
            b = make_pow(b, static_cast<int>(neg ? -n : n));
        }
        return b;
    }

    Expr base() {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail({"number", "x", "y", "(", "function"}, "unexpected end of input");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            const std::string_view id = text_.substr(start, pos_ - start);
            if (id == "x") {
                return make_x();
            }
            if (id == "y") {
                return make_y();
            }
            if (id == "sin" || id == "cos" || id == "exp") {
                expect('(');
                Expr arg = expr();
                expect(')');
                return id == "sin" ? make_sin(arg) : (id == "cos" ? make_cos(arg) : make_exp(arg));
            }
            pos_ = start;
            fail({"x", "y", "sin", "cos", "exp"}, "unknown identifier '" + std::string(id) + "'");
        }
        fail({"number", "x", "y", "(", "function"}, "unexpected '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
                ++look;
            }
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                digits();
            }
        }
        try {
            return make_const(parse_decimal_rational(text_.substr(start, pos_ - start)));
        } catch (const std::invalid_argument&) {
            pos_ = start;
            fail({"number"}, "malformed number");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------

Expr differentiate(const Expr& e, Var v) {
    switch (e->op) {
        case Op::X:
            return make_const(v == Var::X ? 1 : 0);
        case Op::Y:
            return make_const(v == Var::Y ? 1 : 0);
        case Op::Const:
            return make_const(0);
        case Op::Add:
            return make_add(differentiate(e->a, v), differentiate(e->b, v));
        case Op::Sub:
            return make_sub(differentiate(e->a, v), differentiate(e->b, v));
        case Op::Mul:
            return make_add(make_mul(differentiate(e->a, v), e->b), make_mul(e->a, differentiate(e->b, v)));
        case Op::Div: {
            const Expr num = make_sub(make_mul(differentiate(e->a, v), e->b), make_mul(e->a, differentiate(e->b, v)));
            return make_div(num, make_pow(e->b, 2));
        }
        case Op::Neg:
            return make_neg(differentiate(e->a, v));
        case Op::Pow:
            return make_mul(make_mul(make_const(e->exponent), make_pow(e->a, e->exponent - 1)),
                            differentiate(e->a, v));
        case Op::Sin:
            return make_mul(make_cos(e->a), differentiate(e->a, v));
        case Op::Cos:
            return make_neg(make_mul(make_sin(e->a), differentiate(e->a, v)));
        case Op::Exp:
            return make_mul(e, differentiate(e->a, v));
    }
    throw InternalError("differentiate: unknown node");
}

namespace {

// Binding strength for printing: sums 1, products 2, unary minus 3, powers 4, atoms 5.
int precedence(const Expr& e) {
    switch (e->op) {
        case Op::Add:
        case Op::Sub:
            return 1;
        case Op::Mul:
        case Op::Div:
            return 2;
        case Op::Neg:
            return 3;
        case Op::Pow:
            return 4;
        case Op::Const:
            if (e->value < 0) {
                return 3;
            }
            return e->value.get_den() == 1 ? 5 : 2;
        default:
            return 5;
    }
}

std::string wrap(const Expr& e, int min_prec) {
    const std::string s = to_string(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const Expr& e) {
    switch (e->op) {
        case Op::X:
            return "x";
        case Op::Y:
            return "y";
        case Op::Const:
            return e->value.get_str();
        case Op::Add:
            return wrap(e->a, 1) + " + " + wrap(e->b, 2);
        case Op::Sub:
            return wrap(e->a, 1) + " - " + wrap(e->b, 2);
        case Op::Mul:
            // A leading negative constant prints without parentheses: "-2*x".
            return (e->a->op == Op::Const ? e->a->value.get_str() : wrap(e->a, 2)) + "*" + wrap(e->b, 3);
        case Op::Div:
            return wrap(e->a, 2) + "/" + wrap(e->b, 3);
        case Op::Neg:
            return "-" + wrap(e->a, 3);
        case Op::Pow:
            return wrap(e->a, 5) + "^" + std::to_string(e->exponent);
        case Op::Sin:
            return "sin(" + to_string(e->a) + ")";
        case Op::Cos:
            return "cos(" + to_string(e->a) + ")";
        case Op::Exp:
            return "exp(" + to_string(e->a) + ")";
    }
    throw InternalError("to_string: unknown node");
}

bool same(const Expr& a, const Expr& b) {
    if (a == b) {
        return true;
    }
    if (!a || !b || a->op != b->op) {
        return false;
    }
    switch (a->op) {
        case Op::X:
        case Op::Y:
            return true;
        case Op::Const:
            return a->value == b->value;
        case Op::Pow:
            return a->exponent == b->exponent && same(a->a, b->a);
        case Op::Neg:
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
            return same(a->a, b->a);
        default:
            return same(a->a, b->a) && same(a->b, b->b);
    }
}

bool is_rational(const Expr& e) {
    if (!e) {
        return true;
    }
    if (e->op == Op::Sin || e->op == Op::Cos || e->op == Op::Exp) {
        return false;
    }
    return is_rational(e->a) && is_rational(e->b);
}

bool is_constant(const Expr& e) {
    if (!e) {
        return true;
    }
    if (e->op == Op::X || e->op == Op::Y) {
        return false;
    }
    return is_constant(e->a) && is_constant(e->b);
}

// ---------------------------------------------------------------------------
// Evaluation

Interval eval_box(const Expr& e, const Box2& b) {
    return eval_interval<Interval>(*e, b.ix(), b.iy(), [](const mpq_class& v) { return Interval::enclose(v); });
}

Interval eval_box_big(const Expr& e, const Box2& b, long precision_bits) {
    const auto prec = static_cast<mpfr_prec_t>(precision_bits);
    const BigInterval x = BigInterval::hull(BigInterval(b.x0, prec), BigInterval(b.x1, prec));
    const BigInterval y = BigInterval::hull(BigInterval(b.y0, prec), BigInterval(b.y1, prec));
    const BigInterval r =
        eval_interval<BigInterval>(*e, x, y, [prec](const mpq_class& v) { return BigInterval(v, prec); });
    return {r.lo_down(), r.hi_up(), false};
}

mpq_class eval_exact(const Expr& e, const mpq_class& x, const mpq_class& y) {
    switch (e->op) {
        case Op::X:
            return x;
        case Op::Y:
            return y;
        case Op::Const:
            return e->value;
        case Op::Add:
            return eval_exact(e->a, x, y) + eval_exact(e->b, x, y);
        case Op::Sub:
            return eval_exact(e->a, x, y) - eval_exact(e->b, x, y);
        case Op::Mul:
            return eval_exact(e->a, x, y) * eval_exact(e->b, x, y);
        case Op::Div: {
            const mpq_class d = eval_exact(e->b, x, y);
            if (d == 0) {
                throw DomainError("division by zero");
            }
            return eval_exact(e->a, x, y) / d;
        }
        case Op::Neg:
            return -eval_exact(e->a, x, y);
        case Op::Pow: {
            const mpq_class base = eval_exact(e->a, x, y);
            if (base == 0 && e->exponent < 0) {
                throw DomainError("negative power of zero");
            }
            mpq_class r = 1;
            mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::abs(e->exponent)));
            mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::abs(e->exponent)));
            r.canonicalize();
            return e->exponent < 0 ? mpq_class(1 / r) : r;
        }
        default:
            throw InternalError("eval_exact: transcendental expression");
    }
}

namespace {

BigInterval eval_point_big(const Expr& e, const Dyadic& x, const Dyadic& y, long bits) {
    const auto prec = static_cast<mpfr_prec_t>(bits);
    return eval_interval<BigInterval>(*e, BigInterval(x, prec), BigInterval(y, prec),
                                      [prec](const mpq_class& v) { return BigInterval(v, prec); });
}

}  // namespace

Interval eval_point(const Expr& e, const Dyadic& x, const Dyadic& y) {
    if (is_rational(e)) {
        return Interval::enclose(eval_exact(e, x.to_rational(), y.to_rational()));
    }
    const BigInterval r = eval_point_big(e, x, y, 128);
    return {r.lo_down(), r.hi_up(), false};
}

SignResult eval_sign_detail(const Expr& e, const Dyadic& x, const Dyadic& y, long max_bits) {
    SignResult out;
    try {
        const Interval fast = eval_interval<Interval>(*e, Interval::enclose(x), Interval::enclose(y),
                                                      [](const mpq_class& v) { return Interval::enclose(v); });
        if (fast.certain_sign() != 0) {
            out.sign = fast.certain_sign();
            return out;
        }
    } catch (const DomainError&) {
        // fall through to the slower paths
    }
    if (is_rational(e)) {
        const int s = sgn(eval_exact(e, x.to_rational(), y.to_rational()));
        out.sign = s < 0 ? -1 : 1;
        out.exact_zero = s == 0;
        return out;
    }
    for (long bits = 64; bits <= max_bits; bits *= 2) {
        const BigInterval r = eval_point_big(e, x, y, bits);
        if (r.certain_sign() != 0) {
            out.sign = r.certain_sign();
            return out;
        }
    }
    out.sign = 1;
    out.uncertain = true;
    return out;
}

void check_denominators(const Expr& e, const Box2& roi) {
    if (!e) {
        return;
    }
    if (e->op == Op::Div || (e->op == Op::Pow && e->exponent < 0)) {
        const Expr& den = e->op == Op::Div ? e->b : e->a;
        bool ok = false;
        try {
            ok = !eval_box(den, roi).contains_zero();
        } catch (const DomainError&) {
            ok = false;
        }
        if (!ok) {
            throw InputError("denominator '" + to_string(den) + "' is not sign-definite on the region of interest");
        }
    }
    check_denominators(e->a, roi);
    check_denominators(e->b, roi);
}

}  // namespace curvearr
