#include "sgeom/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace sgeom {

namespace {

const std::map<std::string_view, FuncId> kFuncs = {
    {"sin", FuncId::Sin},   {"cos", FuncId::Cos},   {"tan", FuncId::Tan},
    {"exp", FuncId::Exp},   {"log", FuncId::Log},   {"sqrt", FuncId::Sqrt},
    {"sinh", FuncId::Sinh}, {"cosh", FuncId::Cosh}, {"tanh", FuncId::Tanh},
};

}  // namespace

const char* func_name(FuncId f) {
    switch (f) {
        case FuncId::Sin: return "sin";
        case FuncId::Cos: return "cos";
        case FuncId::Tan: return "tan";
        case FuncId::Exp: return "exp";
        case FuncId::Log: return "log";
        case FuncId::Sqrt: return "sqrt";
        case FuncId::Sinh: return "sinh";
        case FuncId::Cosh: return "cosh";
        case FuncId::Tanh: return "tanh";
    }
    return "?";
}

ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = v;
    return e;
}

ExprPtr make_coord(std::size_t i) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Coord;
    e->coord = i;
    return e;
}

ExprPtr make_neg(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Neg;
    e->lhs = std::move(a);
    return e;
}

ExprPtr make_binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr make_call(FuncId f, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Call;
    e->func = f;
    e->lhs = std::move(a);
    return e;
}

ParseError::ParseError(std::size_t offset, std::string message, std::string expected)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      expected_(std::move(expected)) {}

// ---------------------------------------------------------------------------
// Parser: plain recursive descent over a hand-rolled lexer.
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind = Kind::End;
    std::size_t offset = 0;
    double number = 0.0;
    std::string_view text;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : in_(input) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.offset = pos_;
        if (pos_ >= in_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        const char c = in_[pos_];
        switch (c) {
            case '+': tok_.kind = Token::Kind::Plus; ++pos_; return;
            case '-': tok_.kind = Token::Kind::Minus; ++pos_; return;
            case '*': tok_.kind = Token::Kind::Star; ++pos_; return;
            case '/': tok_.kind = Token::Kind::Slash; ++pos_; return;
            case '^': tok_.kind = Token::Kind::Caret; ++pos_; return;
            case '(': tok_.kind = Token::Kind::LParen; ++pos_; return;
            case ')': tok_.kind = Token::Kind::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < in_.size() &&
                   (std::isalnum(static_cast<unsigned char>(in_[end])) || in_[end] == '_'))
                ++end;
            tok_.kind = Token::Kind::Ident;
            tok_.text = in_.substr(pos_, end - pos_);
            pos_ = end;
            return;
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    // Decimal with optional fraction and exponent: 12, 1.5, .5, 2e-3, 1.5E+2.
    void lex_number() {
        std::size_t end = pos_;
        while (end < in_.size() && std::isdigit(static_cast<unsigned char>(in_[end]))) ++end;
        if (end < in_.size() && in_[end] == '.') {
            ++end;
            while (end < in_.size() && std::isdigit(static_cast<unsigned char>(in_[end]))) ++end;
        }
        if (end < in_.size() && (in_[end] == 'e' || in_[end] == 'E')) {
            std::size_t ex = end + 1;
            if (ex < in_.size() && (in_[ex] == '+' || in_[ex] == '-')) ++ex;
            if (ex < in_.size() && std::isdigit(static_cast<unsigned char>(in_[ex]))) {
                ++ex;
                while (ex < in_.size() && std::isdigit(static_cast<unsigned char>(in_[ex]))) ++ex;
                end = ex;
            }
        }
        const std::string_view slice = in_.substr(pos_, end - pos_);
        double v = 0.0;
        const auto res = std::from_chars(slice.data(), slice.data() + slice.size(), v);
        if (res.ec != std::errc{} || res.ptr != slice.data() + slice.size())
            throw ParseError(pos_, "malformed number literal", "number");
        tok_.kind = Token::Kind::Number;
        tok_.number = v;
        tok_.text = slice;
        pos_ = end;
    }

    std::string_view in_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    Parser(std::string_view input, std::span<const std::string> coords)
        : lex_(input), coords_(coords) {}

    ExprPtr run() {
        if (lex_.peek().kind == Token::Kind::End)
            throw ParseError(0, "empty input", "expression");
        ExprPtr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError(t.offset, "trailing tokens after expression", "end of input");
        return e;
    }

private:
    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            const Token::Kind k = lex_.peek().kind;
            if (k == Token::Kind::Plus) {
                lex_.take();
                e = make_binary(Expr::Kind::Add, std::move(e), term());
            } else if (k == Token::Kind::Minus) {
                lex_.take();
                e = make_binary(Expr::Kind::Sub, std::move(e), term());
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            const Token::Kind k = lex_.peek().kind;
            if (k == Token::Kind::Star) {
                lex_.take();
                e = make_binary(Expr::Kind::Mul, std::move(e), factor());
            } else if (k == Token::Kind::Slash) {
                lex_.take();
                e = make_binary(Expr::Kind::Div, std::move(e), factor());
            } else {
                return e;
            }
        }
    }

    // Unary minus; pow binds tighter, so -u^2 is -(u^2). A minus directly on
    // a number literal folds into it, so "-1.5" round-trips as one node.
    ExprPtr factor() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            ExprPtr inner = factor();
            if (inner->kind == Expr::Kind::Number) return make_number(-inner->number);
            return make_neg(std::move(inner));
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            return make_binary(Expr::Kind::Pow, std::move(base), factor());
        }
        return base;
    }

    ExprPtr atom() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Number:
                return make_number(t.number);
            case Token::Kind::LParen: {
                ExprPtr e = expr();
                const Token close = lex_.take();
                if (close.kind != Token::Kind::RParen)
                    throw ParseError(close.offset, "unbalanced parentheses", ")");
                return e;
            }
            case Token::Kind::Ident: {
                if (lex_.peek().kind == Token::Kind::LParen) {
                    const auto it = kFuncs.find(t.text);
                    if (it == kFuncs.end())
                        throw ParseError(t.offset,
                                         "unknown function '" + std::string(t.text) + "'",
                                         "function name");
                    lex_.take();  // '('
                    ExprPtr arg = expr();
                    const Token close = lex_.take();
                    if (close.kind != Token::Kind::RParen)
                        throw ParseError(close.offset, "unbalanced parentheses", ")");
                    return make_call(it->second, std::move(arg));
                }
                for (std::size_t i = 0; i < coords_.size(); ++i)
                    if (coords_[i] == t.text) return make_coord(i);
                throw ParseError(t.offset, "unknown identifier '" + std::string(t.text) + "'",
                                 "coordinate name");
            }
            default:
                throw ParseError(t.offset, "expected an operand", "number, coordinate or '('");
        }
    }

    Lexer lex_;
    std::span<const std::string> coords_;
};

}  // namespace

ExprPtr parse(std::string_view input, std::span<const std::string> coords) {
    return Parser(input, coords).run();
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

std::string number_repr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Trim to the shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(shorter, "%lf", &back);
        if (back == v) return shorter;
    }
    return buf;
}

void render(const Expr& e, std::span<const std::string> coords, int min_prec, std::string& out) {
    // a negative literal prints with a leading '-', so it binds like a Neg
    const int prec = (e.kind == Expr::Kind::Number && std::signbit(e.number))
                         ? precedence(Expr::Kind::Neg)
                         : precedence(e.kind);
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (e.kind) {
        case Expr::Kind::Number: out += number_repr(e.number); break;
        case Expr::Kind::Coord: out += coords[e.coord]; break;
        case Expr::Kind::Neg:
            out += '-';
            render(*e.lhs, coords, 3, out);
            break;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            render(*e.lhs, coords, 1, out);
            out += (e.kind == Expr::Kind::Add) ? " + " : " - ";
            render(*e.rhs, coords, 2, out);
            break;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
            render(*e.lhs, coords, 2, out);
            out += (e.kind == Expr::Kind::Mul) ? "*" : "/";
            render(*e.rhs, coords, 3, out);
            break;
        case Expr::Kind::Pow:
            render(*e.lhs, coords, 5, out);
            out += '^';
            render(*e.rhs, coords, 3, out);  // exponent may carry unary minus
            break;
        case Expr::Kind::Call:
            out += func_name(e.func);
            out += '(';
            render(*e.lhs, coords, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e, std::span<const std::string> coords) {
    std::string out;
    render(e, coords, 0, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Number: return a.number == b.number;
        case Expr::Kind::Coord: return a.coord == b.coord;
        case Expr::Kind::Neg: return structurally_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Call:
            return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

bool is_constant(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: return true;
        case Expr::Kind::Coord: return false;
        case Expr::Kind::Neg:
        case Expr::Kind::Call: return is_constant(*e.lhs);
        default: return is_constant(*e.lhs) && is_constant(*e.rhs);
    }
}

// ---------------------------------------------------------------------------
// Evaluation over double and over Jet2, one recursion parameterized by an
// operations struct.
// ---------------------------------------------------------------------------

namespace {

constexpr double kIntegerExponentTol = 1e-12;

bool near_integer(double x, long long& k) {
    const double r = std::round(x);
    if (std::abs(x - r) <= kIntegerExponentTol && std::abs(r) < 1e15) {
        k = static_cast<long long>(r);
        return true;
    }
    return false;
}

struct ValueOps {
    using S = double;
    std::span<const double> p;

    S number(double v) const { return v; }
    S coord(std::size_t i) const { return p[i]; }
    static S neg(S a) { return -a; }
    static S add(S a, S b) { return a + b; }
    static S sub(S a, S b) { return a - b; }
    static S mul(S a, S b) { return a * b; }
    static S div(S a, S b) {
        if (b == 0.0) throw EvalError("division by zero");
        return a / b;
    }
    static S pow_integer(S b, long long k) {
        if (k < 0 && b == 0.0) throw EvalError("zero raised to a negative power");
        S r = 1.0;
        const long long m = k < 0 ? -k : k;
        for (long long i = 0; i < m; ++i) r *= b;
        return k < 0 ? 1.0 / r : r;
    }
    static S pow_real(S b, double e) {
        if (b < 0.0) throw EvalError("fractional power of a negative base");
        if (b == 0.0 && e < 0.0) throw EvalError("zero raised to a negative power");
        return std::pow(b, e);
    }
    static S pow_general(S b, S e) {
        if (b <= 0.0) throw EvalError("variable exponent requires a positive base");
        return std::exp(e * std::log(b));
    }
    static S call(FuncId f, S a) {
        switch (f) {
            case FuncId::Sin: return std::sin(a);
            case FuncId::Cos: return std::cos(a);
            case FuncId::Tan: return std::tan(a);
            case FuncId::Exp: return std::exp(a);
            case FuncId::Log:
                if (a <= 0.0) throw EvalError("log of a non-positive value");
                return std::log(a);
            case FuncId::Sqrt:
                if (a < 0.0) throw EvalError("sqrt of a negative value");
                return std::sqrt(a);
            case FuncId::Sinh: return std::sinh(a);
            case FuncId::Cosh: return std::cosh(a);
            case FuncId::Tanh: return std::tanh(a);
        }
        throw EvalError("unknown function");
    }
};

struct JetOps {
    using S = Jet2;
    std::span<const double> p;
    std::size_t n;

    S number(double v) const { return Jet2::constant(v, n); }
    S coord(std::size_t i) const { return Jet2::coordinate(p[i], i, n); }
    static S neg(S a) { return -std::move(a); }
    static S add(S a, const S& b) { return std::move(a) + b; }
    static S sub(S a, const S& b) { return std::move(a) - b; }
    static S mul(const S& a, const S& b) { return a * b; }
    static S div(const S& a, const S& b) {
        if (b.value == 0.0) throw EvalError("division by zero");
        return a / b;
    }
    static S pow_integer(const S& b, long long k) {
        if (k < 0 && b.value == 0.0) throw EvalError("zero raised to a negative power");
        return pow_int(b, k);
    }
    static S pow_real(const S& b, double e) {
        if (b.value <= 0.0)
            throw EvalError("fractional power needs a positive base for differentiation");
        const double f = std::pow(b.value, e);
        return chain(b, f, e * f / b.value, e * (e - 1.0) * f / (b.value * b.value));
    }
    static S pow_general(const S& b, const S& e) {
        if (b.value <= 0.0) throw EvalError("variable exponent requires a positive base");
        // b^e = exp(e log b)
        const S lg = call(FuncId::Log, b);
        return call(FuncId::Exp, mul(e, lg));
    }
    static S call(FuncId f, const S& a) {
        const double x = a.value;
        switch (f) {
            case FuncId::Sin: return chain(a, std::sin(x), std::cos(x), -std::sin(x));
            case FuncId::Cos: return chain(a, std::cos(x), -std::sin(x), -std::cos(x));
            case FuncId::Tan: {
                const double t = std::tan(x);
                const double d = 1.0 + t * t;
                return chain(a, t, d, 2.0 * t * d);
            }
            case FuncId::Exp: {
                const double ex = std::exp(x);
                return chain(a, ex, ex, ex);
            }
            case FuncId::Log:
                if (x <= 0.0) throw EvalError("log of a non-positive value");
                return chain(a, std::log(x), 1.0 / x, -1.0 / (x * x));
            case FuncId::Sqrt: {
                if (x < 0.0) throw EvalError("sqrt of a negative value");
                if (x == 0.0) throw EvalError("sqrt not differentiable at zero");
                const double s = std::sqrt(x);
                return chain(a, s, 0.5 / s, -0.25 / (x * s));
            }
            case FuncId::Sinh: return chain(a, std::sinh(x), std::cosh(x), std::sinh(x));
            case FuncId::Cosh: return chain(a, std::cosh(x), std::sinh(x), std::cosh(x));
            case FuncId::Tanh: {
                const double t = std::tanh(x);
                const double d = 1.0 - t * t;
                return chain(a, t, d, -2.0 * t * d);
            }
        }
        throw EvalError("unknown function");
    }
};

template <class Ops>
typename Ops::S eval_rec(const Expr& e, const Ops& ops) {
    using S = typename Ops::S;
    switch (e.kind) {
        case Expr::Kind::Number: return ops.number(e.number);
        case Expr::Kind::Coord: return ops.coord(e.coord);
        case Expr::Kind::Neg: return Ops::neg(eval_rec(*e.lhs, ops));
        case Expr::Kind::Add: return Ops::add(eval_rec(*e.lhs, ops), eval_rec(*e.rhs, ops));
        case Expr::Kind::Sub: return Ops::sub(eval_rec(*e.lhs, ops), eval_rec(*e.rhs, ops));
        case Expr::Kind::Mul: return Ops::mul(eval_rec(*e.lhs, ops), eval_rec(*e.rhs, ops));
        case Expr::Kind::Div: return Ops::div(eval_rec(*e.lhs, ops), eval_rec(*e.rhs, ops));
        case Expr::Kind::Pow: {
            S base = eval_rec(*e.lhs, ops);
            if (is_constant(*e.rhs)) {
                const double ev = eval_rec(*e.rhs, ValueOps{{}});
                long long k = 0;
                if (near_integer(ev, k)) return Ops::pow_integer(base, k);
                return Ops::pow_real(base, ev);
            }
            return Ops::pow_general(base, eval_rec(*e.rhs, ops));
        }
        case Expr::Kind::Call: return Ops::call(e.func, eval_rec(*e.lhs, ops));
    }
    throw EvalError("corrupt expression node");
}

}  // namespace

double eval_value(const Expr& e, std::span<const double> p) {
    return eval_rec(e, ValueOps{p});
}

Jet2 eval_jet2(const Expr& e, std::span<const double> p) {
    return eval_rec(e, JetOps{p, p.size()});
}

}  // namespace sgeom
