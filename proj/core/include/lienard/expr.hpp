#pragma once

#include "lienard/errors.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lienard {

/// Which family a variable belongs to: positions x1…xn, velocities y1…yn,
/// time t, or the perturbation amplitude eps.
enum class VarKind { X, Y, Time, Eps };

/// Reference to a concrete variable; `index` is 0-based and only meaningful
/// for X and Y (x1 has kind X, index 0).
struct VarRef {
    VarKind kind;
    int index = 0;

    friend bool operator==(const VarRef& a, const VarRef& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    friend bool operator<(const VarRef& a, const VarRef& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.index < b.index;
    }
};

/// Canonical source-level name of a variable ("x1", "y2", "t", "eps").
[[nodiscard]] std::string var_name(VarKind kind, int index = 0);

/// Positional variable assignment used on the hot evaluation paths.
/// `has_t` / `has_eps` declare whether t and eps are bound at all; an
/// expression referencing an undeclared variable raises EvalError.
struct EvalContext {
    std::span<const double> x;
    std::span<const double> y;
    double t = 0.0;
    double eps = 0.0;
    bool has_t = false;
    bool has_eps = false;
};

namespace detail {
struct ExprNode;
struct ExprAccess;
}  // namespace detail

/// Immutable arithmetic expression over x1…xn, y1…yn, t, eps.
///
/// Supported nodes: real constants, variables, unary minus, + - * /,
/// integer powers via ^, and sin/cos/exp/sqrt/abs. Expressions are
/// value-semantic handles to shared immutable trees, so copies are cheap
/// and evaluation is reentrant.
class Expression {
public:
    /// The constant 0.
    Expression();

    [[nodiscard]] static Expression constant(double value);
    [[nodiscard]] static Expression variable(VarKind kind, int index = 0);

    /// Evaluate with positional bindings. Throws EvalError on an unbound
    /// variable, division by zero, or sqrt of a negative number.
    [[nodiscard]] double eval(const EvalContext& ctx) const;

    /// Evaluate with named bindings ("x1" → value); convenient in tests.
    [[nodiscard]] double eval(const std::map<std::string, double>& binding) const;

    /// True when the tree contains no division and no transcendental nodes,
    /// i.e. exact differentiation and antiderivatives are available.
    [[nodiscard]] bool is_polynomial() const;

    [[nodiscard]] bool depends_on(VarKind kind) const;
    [[nodiscard]] bool depends_on(VarKind kind, int index) const;

    /// All distinct variables referenced, sorted (X before Y before t, eps).
    [[nodiscard]] std::vector<VarRef> variables() const;

    /// Value if the expression is a bare constant.
    [[nodiscard]] std::optional<double> constant_value() const;

    /// Exact partial derivative. Throws NonPolynomialError when the tree
    /// contains a node outside the polynomial subset (the message names it).
    [[nodiscard]] Expression differentiate(VarKind kind, int index = 0) const;

    /// Exact antiderivative with zero constant term, for expressions that
    /// are univariate polynomials in the given variable.
    [[nodiscard]] Expression antiderivative(VarKind kind, int index = 0) const;

    /// Render to source form; parse(str()) evaluates identically.
    [[nodiscard]] std::string str() const;

    friend Expression operator-(const Expression& e);
    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);

private:
    explicit Expression(std::shared_ptr<const detail::ExprNode> node);
    std::shared_ptr<const detail::ExprNode> node_;
    friend struct detail::ExprAccess;
};

/// Integer power; exponent must be ≥ 0.
[[nodiscard]] Expression pow(const Expression& base, int exponent);
[[nodiscard]] Expression sin(const Expression& e);
[[nodiscard]] Expression cos(const Expression& e);
[[nodiscard]] Expression exp(const Expression& e);
[[nodiscard]] Expression sqrt(const Expression& e);
[[nodiscard]] Expression abs(const Expression& e);

/// Parse expression source. Precedence: ^ > unary minus > * / > + -.
/// Exponents must be literal nonnegative integers. Throws ParseError with a
/// 1-based position on malformed input or unknown identifiers.
[[nodiscard]] Expression parse(std::string_view source);

}  // namespace lienard
