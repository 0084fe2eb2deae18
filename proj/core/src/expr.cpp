#include "lienard/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace lienard {

namespace detail {

enum class Kind { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Sqrt, Abs };

struct ExprNode {
    Kind kind;
    double value = 0.0;             // Constant
    VarRef var{VarKind::X, 0};      // Variable
    int exponent = 0;               // Pow
    std::shared_ptr<const ExprNode> a, b;
};

using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprAccess {
    static const NodePtr& node(const Expression& e) { return e.node_; }
    static Expression wrap(NodePtr n) { return Expression(std::move(n)); }
};

namespace {

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Constant: return "constant";
        case Kind::Variable: return "variable";
        case Kind::Neg: return "negation";
        case Kind::Add: return "addition";
        case Kind::Sub: return "subtraction";
        case Kind::Mul: return "multiplication";
        case Kind::Div: return "division";
        case Kind::Pow: return "power";
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
        case Kind::Exp: return "exp";
        case Kind::Sqrt: return "sqrt";
        case Kind::Abs: return "abs";
    }
    return "?";
}

NodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

NodePtr make_constant(double v) { return make_node({.kind = Kind::Constant, .value = v}); }

NodePtr make_variable(VarKind kind, int index) {
    return make_node({.kind = Kind::Variable, .var = {kind, index}});
}

bool is_const(const NodePtr& n, double v) {
    return n->kind == Kind::Constant && n->value == v;
}

NodePtr make_neg(NodePtr a) {
    if (a->kind == Kind::Constant) return make_constant(-a->value);
    if (a->kind == Kind::Neg) return a->a;
    return make_node({.kind = Kind::Neg, .a = std::move(a)});
}

NodePtr make_add(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant && std::isfinite(a->value + b->value))
        return make_constant(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return make_node({.kind = Kind::Add, .a = std::move(a), .b = std::move(b)});
}

NodePtr make_sub(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant && std::isfinite(a->value - b->value))
        return make_constant(a->value - b->value);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return make_neg(std::move(b));
    return make_node({.kind = Kind::Sub, .a = std::move(a), .b = std::move(b)});
}

NodePtr make_mul(NodePtr a, NodePtr b) {
    if (a->kind == Kind::Constant && b->kind == Kind::Constant && std::isfinite(a->value * b->value))
        return make_constant(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return make_node({.kind = Kind::Mul, .a = std::move(a), .b = std::move(b)});
}

NodePtr make_div(NodePtr a, NodePtr b) {
    // No folding: "1/0" must surface as an evaluation error, not a parse-time one.
    return make_node({.kind = Kind::Div, .a = std::move(a), .b = std::move(b)});
}

NodePtr make_pow(NodePtr a, int exponent) {
    if (exponent < 0) throw Error("pow: exponent must be nonnegative");
    if (exponent == 0) return make_constant(1.0);
    if (exponent == 1) return a;
    if (a->kind == Kind::Constant) {
        double r = 1.0, base = a->value;
        for (int k = 0; k < exponent; ++k) r *= base;
        if (std::isfinite(r)) return make_constant(r);
    }
    return make_node({.kind = Kind::Pow, .exponent = exponent, .a = std::move(a)});
}

NodePtr make_func(Kind kind, NodePtr a) {
    return make_node({.kind = kind, .a = std::move(a)});
}

double eval_node(const ExprNode& n, const EvalContext& ctx) {
    switch (n.kind) {
        case Kind::Constant:
            return n.value;
        case Kind::Variable:
            switch (n.var.kind) {
                case VarKind::X:
                    if (n.var.index < 0 || static_cast<std::size_t>(n.var.index) >= ctx.x.size())
                        throw EvalError("unbound variable '" + var_name(VarKind::X, n.var.index) + "'");
                    return ctx.x[static_cast<std::size_t>(n.var.index)];
                case VarKind::Y:
                    if (n.var.index < 0 || static_cast<std::size_t>(n.var.index) >= ctx.y.size())
                        throw EvalError("unbound variable '" + var_name(VarKind::Y, n.var.index) + "'");
                    return ctx.y[static_cast<std::size_t>(n.var.index)];
                case VarKind::Time:
                    if (!ctx.has_t) throw EvalError("unbound variable 't'");
                    return ctx.t;
                case VarKind::Eps:
                    if (!ctx.has_eps) throw EvalError("unbound variable 'eps'");
                    return ctx.eps;
            }
            throw EvalError("corrupt variable node");
        case Kind::Neg:
            return -eval_node(*n.a, ctx);
        case Kind::Add:
            return eval_node(*n.a, ctx) + eval_node(*n.b, ctx);
        case Kind::Sub:
            return eval_node(*n.a, ctx) - eval_node(*n.b, ctx);
        case Kind::Mul:
            return eval_node(*n.a, ctx) * eval_node(*n.b, ctx);
        case Kind::Div: {
            double num = eval_node(*n.a, ctx);
            double den = eval_node(*n.b, ctx);
            if (den == 0.0) throw EvalError("division by zero");
            return num / den;
        }
        case Kind::Pow: {
            double base = eval_node(*n.a, ctx);
            double r = 1.0;
            int k = n.exponent;
            while (k > 0) {  // exponentiation by squaring, deterministic
                if (k & 1) r *= base;
                base *= base;
                k >>= 1;
            }
            return r;
        }
        case Kind::Sin: return std::sin(eval_node(*n.a, ctx));
        case Kind::Cos: return std::cos(eval_node(*n.a, ctx));
        case Kind::Exp: return std::exp(eval_node(*n.a, ctx));
        case Kind::Sqrt: {
            double v = eval_node(*n.a, ctx);
            if (v < 0.0) throw EvalError("sqrt of a negative value");
            return std::sqrt(v);
        }
        case Kind::Abs: return std::fabs(eval_node(*n.a, ctx));
    }
    throw EvalError("corrupt expression node");
}

bool poly_node(const ExprNode& n) {
    switch (n.kind) {
        case Kind::Constant:
        case Kind::Variable:
            return true;
        case Kind::Neg:
            return poly_node(*n.a);
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
            return poly_node(*n.a) && poly_node(*n.b);
        case Kind::Pow:
            return poly_node(*n.a);
        default:
            return false;
    }
}

void collect_vars(const ExprNode& n, std::vector<VarRef>& out) {
    switch (n.kind) {
        case Kind::Constant:
            return;
        case Kind::Variable:
            out.push_back(n.var);
            return;
        default:
            if (n.a) collect_vars(*n.a, out);
            if (n.b) collect_vars(*n.b, out);
    }
}

NodePtr diff_node(const NodePtr& n, const VarRef& v) {
    switch (n->kind) {
        case Kind::Constant:
            return make_constant(0.0);
        case Kind::Variable:
            return make_constant(n->var == v ? 1.0 : 0.0);
        case Kind::Neg:
            return make_neg(diff_node(n->a, v));
        case Kind::Add:
            return make_add(diff_node(n->a, v), diff_node(n->b, v));
        case Kind::Sub:
            return make_sub(diff_node(n->a, v), diff_node(n->b, v));
        case Kind::Mul:
            return make_add(make_mul(diff_node(n->a, v), n->b),
                            make_mul(n->a, diff_node(n->b, v)));
        case Kind::Pow:
            // d/dv u^k = k·u^(k−1)·u'
            return make_mul(make_constant(static_cast<double>(n->exponent)),
                            make_mul(make_pow(n->a, n->exponent - 1), diff_node(n->a, v)));
        default:
            throw NonPolynomialError(std::string("differentiate: non-polynomial node '") +
                                     kind_name(n->kind) + "'");
    }
}

// Dense coefficient form (coeffs[k] multiplies var^k) of a univariate polynomial.
std::vector<double> univariate_coeffs(const NodePtr& n, const VarRef& v) {
    constexpr std::size_t kDegreeCap = 256;
    switch (n->kind) {
        case Kind::Constant:
            return {n->value};
        case Kind::Variable:
            if (n->var == v) return {0.0, 1.0};
            throw NonPolynomialError("antiderivative: expression depends on '" +
                                     var_name(n->var.kind, n->var.index) +
                                     "', expected univariate in '" + var_name(v.kind, v.index) + "'");
        case Kind::Neg: {
            auto c = univariate_coeffs(n->a, v);
            for (double& x : c) x = -x;
            return c;
        }
        case Kind::Add:
        case Kind::Sub: {
            auto a = univariate_coeffs(n->a, v);
            auto b = univariate_coeffs(n->b, v);
            if (b.size() > a.size()) a.resize(b.size(), 0.0);
            for (std::size_t k = 0; k < b.size(); ++k)
                a[k] += (n->kind == Kind::Add) ? b[k] : -b[k];
            return a;
        }
        case Kind::Mul: {
            auto a = univariate_coeffs(n->a, v);
            auto b = univariate_coeffs(n->b, v);
            if (a.size() + b.size() > kDegreeCap)
                throw NonPolynomialError("antiderivative: polynomial degree exceeds cap");
            std::vector<double> c(a.size() + b.size() - 1, 0.0);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
            return c;
        }
        case Kind::Pow: {
            auto base = univariate_coeffs(n->a, v);
            std::vector<double> r{1.0};
            for (int k = 0; k < n->exponent; ++k) {
                if (r.size() + base.size() > kDegreeCap)
                    throw NonPolynomialError("antiderivative: polynomial degree exceeds cap");
                std::vector<double> c(r.size() + base.size() - 1, 0.0);
                for (std::size_t i = 0; i < r.size(); ++i)
                    for (std::size_t j = 0; j < base.size(); ++j) c[i + j] += r[i] * base[j];
                r = std::move(c);
            }
            return r;
        }
        default:
            throw NonPolynomialError(std::string("antiderivative: non-polynomial node '") +
                                     kind_name(n->kind) + "'");
    }
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Printing precedence levels: + - are 1, * / are 2, unary minus 3, ^ 4, atoms 10.
int node_prec(const ExprNode& n) {
    switch (n.kind) {
        case Kind::Add:
        case Kind::Sub:
            return 1;
        case Kind::Mul:
        case Kind::Div:
            return 2;
        case Kind::Neg:
            return 3;
        case Kind::Pow:
            return 4;
        case Kind::Constant:
            return n.value < 0.0 ? 3 : 10;  // negative constants print a leading '-'
        default:
            return 10;
    }
}

void print_node(const ExprNode& n, int min_prec, std::string& out) {
    const int prec = node_prec(n);
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (n.kind) {
        case Kind::Constant:
            out += fmt_double(n.value);
            break;
        case Kind::Variable:
            out += var_name(n.var.kind, n.var.index);
            break;
        case Kind::Neg:
            out += '-';
            print_node(*n.a, 3, out);
            break;
        case Kind::Add:
            print_node(*n.a, 1, out);
            out += '+';
            print_node(*n.b, 2, out);
            break;
        case Kind::Sub:
            print_node(*n.a, 1, out);
            out += '-';
            print_node(*n.b, 2, out);
            break;
        case Kind::Mul:
            print_node(*n.a, 2, out);
            out += '*';
            print_node(*n.b, 3, out);
            break;
        case Kind::Div:
            print_node(*n.a, 2, out);
            out += '/';
            print_node(*n.b, 3, out);
            break;
        case Kind::Pow:
            print_node(*n.a, 10, out);
            out += '^';
            out += std::to_string(n.exponent);
            break;
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Exp:
        case Kind::Sqrt:
        case Kind::Abs:
            out += kind_name(n.kind);
            out += '(';
            print_node(*n.a, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

// ---------------------------------------------------------------------------
// Recursive-descent parser
// ---------------------------------------------------------------------------

struct Token {
    enum class Type { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Type type = Type::End;
    std::size_t pos = 0;  // 1-based start position
    double number = 0.0;
    bool is_integer = false;
    long int_value = 0;
    std::string text;
};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) { advance(); }

    NodePtr parse_all() {
        NodePtr e = parse_expr();
        if (tok_.type != Token::Type::End)
            throw ParseError("unexpected trailing input", tok_.pos);
        return e;
    }

private:
    std::string_view src_;
    std::size_t cursor_ = 0;
    Token tok_;

    [[noreturn]] void fail(const std::string& what, std::size_t pos) { throw ParseError(what, pos); }

    void advance() {
        while (cursor_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[cursor_]))) ++cursor_;
        tok_ = Token{};
        tok_.pos = cursor_ + 1;
        if (cursor_ >= src_.size()) {
            tok_.type = Token::Type::End;
            return;
        }
        const char c = src_[cursor_];
        switch (c) {
            case '+': tok_.type = Token::Type::Plus; ++cursor_; return;
            case '-': tok_.type = Token::Type::Minus; ++cursor_; return;
            case '*': tok_.type = Token::Type::Star; ++cursor_; return;
            case '/': tok_.type = Token::Type::Slash; ++cursor_; return;
            case '^': tok_.type = Token::Type::Caret; ++cursor_; return;
            case '(': tok_.type = Token::Type::LParen; ++cursor_; return;
            case ')': tok_.type = Token::Type::RParen; ++cursor_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            lex_identifier();
            return;
        }
        fail(std::string("unexpected character '") + c + "'", tok_.pos);
    }

    void lex_number() {
        const std::size_t start = cursor_;
        bool saw_digit = false, saw_dot = false, saw_exp = false;
        while (cursor_ < src_.size()) {
            const char c = src_[cursor_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                saw_digit = true;
                ++cursor_;
            } else if (c == '.' && !saw_dot && !saw_exp) {
                saw_dot = true;
                ++cursor_;
            } else if ((c == 'e' || c == 'E') && saw_digit && !saw_exp) {
                saw_exp = true;
                ++cursor_;
                if (cursor_ < src_.size() && (src_[cursor_] == '+' || src_[cursor_] == '-')) ++cursor_;
            } else {
                break;
            }
        }
        if (!saw_digit) fail("malformed number", start + 1);
        const std::string text(src_.substr(start, cursor_ - start));
        tok_.type = Token::Type::Number;
        tok_.text = text;
        tok_.number = std::strtod(text.c_str(), nullptr);
        tok_.is_integer = !saw_dot && !saw_exp;
        if (tok_.is_integer) tok_.int_value = std::strtol(text.c_str(), nullptr, 10);
    }

    void lex_identifier() {
        const std::size_t start = cursor_;
        while (cursor_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[cursor_]))) ++cursor_;
        while (cursor_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[cursor_]))) ++cursor_;
        tok_.type = Token::Type::Identifier;
        tok_.text = std::string(src_.substr(start, cursor_ - start));
    }

    bool accept(Token::Type t) {
        if (tok_.type != t) return false;
        advance();
        return true;
    }

    NodePtr parse_expr() {
        NodePtr e = parse_term();
        for (;;) {
            if (accept(Token::Type::Plus)) {
                e = make_add(std::move(e), parse_term());
            } else if (accept(Token::Type::Minus)) {
                e = make_sub(std::move(e), parse_term());
            } else {
                return e;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr e = parse_factor();
        for (;;) {
            if (accept(Token::Type::Star)) {
                e = make_mul(std::move(e), parse_factor());
            } else if (accept(Token::Type::Slash)) {
                e = make_div(std::move(e), parse_factor());
            } else {
                return e;
            }
        }
    }

    // factor := '-' factor | primary ('^' integer)?
    NodePtr parse_factor() {
        if (accept(Token::Type::Minus)) return make_neg(parse_factor());
        NodePtr e = parse_primary();
        if (tok_.type == Token::Type::Caret) {
            advance();
            if (tok_.type != Token::Type::Number) fail("expected an integer exponent after '^'", tok_.pos);
            if (!tok_.is_integer) fail("non-integer exponent on '^'", tok_.pos);
            if (tok_.int_value < 0 || tok_.int_value > 1000) fail("exponent out of range", tok_.pos);
            const int k = static_cast<int>(tok_.int_value);
            advance();
            e = make_pow(std::move(e), k);
        }
        return e;
    }

    NodePtr parse_primary() {
        if (tok_.type == Token::Type::Number) {
            NodePtr e = make_constant(tok_.number);
            advance();
            return e;
        }
        if (accept(Token::Type::LParen)) {
            NodePtr e = parse_expr();
            if (!accept(Token::Type::RParen)) fail("expected ')'", tok_.pos);
            return e;
        }
        if (tok_.type == Token::Type::Identifier) {
            const Token id = tok_;
            advance();
            return resolve_identifier(id);
        }
        fail("expected an operand", tok_.pos);
    }

    NodePtr resolve_identifier(const Token& id) {
        const std::string& name = id.text;
        if (name == "t") return make_variable(VarKind::Time, 0);
        if (name == "eps") return make_variable(VarKind::Eps, 0);

        static const std::map<std::string, Kind> functions{
            {"sin", Kind::Sin}, {"cos", Kind::Cos}, {"exp", Kind::Exp},
            {"sqrt", Kind::Sqrt}, {"abs", Kind::Abs}};
        if (auto it = functions.find(name); it != functions.end()) {
            if (!accept(Token::Type::LParen)) fail("expected '(' after '" + name + "'", tok_.pos);
            NodePtr arg = parse_expr();
            if (!accept(Token::Type::RParen)) fail("expected ')'", tok_.pos);
            return make_func(it->second, std::move(arg));
        }

        if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1 &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            const long idx = std::strtol(name.c_str() + 1, nullptr, 10);
            if (idx < 1 || idx > 999) fail("variable index out of range in '" + name + "'", id.pos);
            return make_variable(name[0] == 'x' ? VarKind::X : VarKind::Y, static_cast<int>(idx - 1));
        }
        fail("unknown identifier '" + name + "'", id.pos);
    }
};

}  // namespace
}  // namespace detail

using detail::ExprAccess;
using detail::Kind;
using detail::NodePtr;

std::string var_name(VarKind kind, int index) {
    switch (kind) {
        case VarKind::X: return "x" + std::to_string(index + 1);
        case VarKind::Y: return "y" + std::to_string(index + 1);
        case VarKind::Time: return "t";
        case VarKind::Eps: return "eps";
    }
    return "?";
}

Expression::Expression() : node_(detail::make_constant(0.0)) {}
Expression::Expression(NodePtr node) : node_(std::move(node)) {}

Expression Expression::constant(double value) { return Expression(detail::make_constant(value)); }

Expression Expression::variable(VarKind kind, int index) {
    if ((kind == VarKind::X || kind == VarKind::Y) && index < 0)
        throw Error("variable: negative index");
    return Expression(detail::make_variable(kind, index));
}

double Expression::eval(const EvalContext& ctx) const { return detail::eval_node(*node_, ctx); }

double Expression::eval(const std::map<std::string, double>& binding) const {
    // Pack the named binding into a positional context.
    int max_x = 0, max_y = 0;
    for (const VarRef& v : variables()) {
        if (v.kind == VarKind::X) max_x = std::max(max_x, v.index + 1);
        if (v.kind == VarKind::Y) max_y = std::max(max_y, v.index + 1);
    }
    std::vector<double> xs(static_cast<std::size_t>(max_x)), ys(static_cast<std::size_t>(max_y));
    EvalContext ctx{xs, ys, 0.0, 0.0, false, false};
    auto lookup = [&](const std::string& name) {
        auto it = binding.find(name);
        if (it == binding.end()) throw EvalError("unbound variable '" + name + "'");
        return it->second;
    };
    for (const VarRef& v : variables()) {
        switch (v.kind) {
            case VarKind::X: xs[static_cast<std::size_t>(v.index)] = lookup(var_name(v.kind, v.index)); break;
            case VarKind::Y: ys[static_cast<std::size_t>(v.index)] = lookup(var_name(v.kind, v.index)); break;
            case VarKind::Time: ctx.t = lookup("t"); ctx.has_t = true; break;
            case VarKind::Eps: ctx.eps = lookup("eps"); ctx.has_eps = true; break;
        }
    }
    return eval(ctx);
}

bool Expression::is_polynomial() const { return detail::poly_node(*node_); }

bool Expression::depends_on(VarKind kind) const {
    for (const VarRef& v : variables())
        if (v.kind == kind) return true;
    return false;
}

bool Expression::depends_on(VarKind kind, int index) const {
    for (const VarRef& v : variables())
        if (v.kind == kind && v.index == index) return true;
    return false;
}

std::vector<VarRef> Expression::variables() const {
    std::vector<VarRef> vars;
    detail::collect_vars(*node_, vars);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

std::optional<double> Expression::constant_value() const {
    if (node_->kind == Kind::Constant) return node_->value;
    return std::nullopt;
}

Expression Expression::differentiate(VarKind kind, int index) const {
    return Expression(detail::diff_node(node_, VarRef{kind, index}));
}

Expression Expression::antiderivative(VarKind kind, int index) const {
    const VarRef v{kind, index};
    const std::vector<double> coeffs = detail::univariate_coeffs(node_, v);
    NodePtr sum = detail::make_constant(0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0.0) continue;
        const double c = coeffs[k] / static_cast<double>(k + 1);
        NodePtr term = detail::make_mul(detail::make_constant(c),
                                        detail::make_pow(detail::make_variable(kind, index),
                                                         static_cast<int>(k + 1)));
        sum = detail::make_add(std::move(sum), std::move(term));
    }
    return Expression(std::move(sum));
}

std::string Expression::str() const {
    std::string out;
    detail::print_node(*node_, 0, out);
    return out;
}

Expression operator-(const Expression& e) { return Expression(detail::make_neg(e.node_)); }
Expression operator+(const Expression& a, const Expression& b) {
    return Expression(detail::make_add(a.node_, b.node_));
}
Expression operator-(const Expression& a, const Expression& b) {
    return Expression(detail::make_sub(a.node_, b.node_));
}
Expression operator*(const Expression& a, const Expression& b) {
    return Expression(detail::make_mul(a.node_, b.node_));
}
Expression operator/(const Expression& a, const Expression& b) {
    return Expression(detail::make_div(a.node_, b.node_));
}

Expression pow(const Expression& base, int exponent) {
    return ExprAccess::wrap(detail::make_pow(ExprAccess::node(base), exponent));
}
Expression sin(const Expression& e) {
    return ExprAccess::wrap(detail::make_func(Kind::Sin, ExprAccess::node(e)));
}
Expression cos(const Expression& e) {
    return ExprAccess::wrap(detail::make_func(Kind::Cos, ExprAccess::node(e)));
}
Expression exp(const Expression& e) {
    return ExprAccess::wrap(detail::make_func(Kind::Exp, ExprAccess::node(e)));
}
Expression sqrt(const Expression& e) {
    return ExprAccess::wrap(detail::make_func(Kind::Sqrt, ExprAccess::node(e)));
}
Expression abs(const Expression& e) {
    return ExprAccess::wrap(detail::make_func(Kind::Abs, ExprAccess::node(e)));
}

Expression parse(std::string_view source) {
    if (source.empty()) throw ParseError("empty expression", 1);
    detail::Parser parser(source);
    return ExprAccess::wrap(parser.parse_all());
}

}  // namespace lienard
