#pragma once

#include "sgeom/jet.hpp"

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sgeom {

enum class FuncId { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh };

const char* func_name(FuncId f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable parsed scalar expression over named chart coordinates.
/// Coordinate references are stored by index into the chart's coordinate
/// list. Shared freely; evaluation is pure.
struct Expr {
    enum class Kind { Number, Coord, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind = Kind::Number;
    double number = 0.0;
    std::size_t coord = 0;
    FuncId func = FuncId::Sin;
    ExprPtr lhs;  // only child for Neg/Call
    ExprPtr rhs;
};

ExprPtr make_number(double v);
ExprPtr make_coord(std::size_t i);
ExprPtr make_neg(ExprPtr a);
ExprPtr make_binary(Expr::Kind k, ExprPtr a, ExprPtr b);
ExprPtr make_call(FuncId f, ExprPtr a);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string message, std::string expected = {});

    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

/// Evaluation-time domain failure (log of a non-positive value, sqrt of a
/// negative, division by zero, fractional power of a negative base).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grammar, precedence low to high: add/sub (left), mul/div (left),
/// unary minus, pow (right), atoms. "-u^2" parses as -(u^2).
ExprPtr parse(std::string_view input, std::span<const std::string> coords);

std::string to_string(const Expr& e, std::span<const std::string> coords);

bool structurally_equal(const Expr& a, const Expr& b);

/// True when the expression references no coordinate.
bool is_constant(const Expr& e);

double eval_value(const Expr& e, std::span<const double> p);
Jet2 eval_jet2(const Expr& e, std::span<const double> p);

}  // namespace sgeom
