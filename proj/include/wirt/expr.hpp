#pragma once

// Complex expressions in z and conj(z).
//
// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := NUMBER | 'i' | 'pi' | 'e' | 'z' | 'zbar'
//           | IDENT '(' expr ')' | '(' expr ')'
//   IDENT  := exp | ln | sin | cos | sqrt | conj
//
// '^' is right-associative and binds tighter than unary minus, so -z^2 is
// -(z^2). An exponent that is an integral constant becomes an integer power
// (repeated squaring, no branch cut); any other exponent goes through the
// principal branch exp(b*ln(a)). `zbar` is sugar for conj(z).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "jet.hpp"

namespace wirt {

enum class NodeKind : std::uint8_t { Constant, VarZ, Conj, Neg, Add, Sub, Mul, Div, PowInt, Pow, Fn };

struct ExprNode;

/// Immutable expression tree; copies share structure.
class Expr {
public:
    Expr() = delete;

    static Expr constant(Complex c);
    static Expr z();
    static Expr conj(Expr a);
    static Expr neg(Expr a);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr pow_int(Expr base, std::int64_t n);
    static Expr pow(Expr base, Expr exponent);
    static Expr fn(ElementaryFn f, Expr a);

    const ExprNode& node() const noexcept { return *node_; }

private:
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    NodeKind kind = NodeKind::Constant;
    Complex constant{};
    std::int64_t exponent = 0;
    ElementaryFn fn = ElementaryFn::Exp;
    std::size_t depth = 1;
    std::optional<Expr> lhs;
    std::optional<Expr> rhs;
};

inline Expr Expr::constant(Complex c) {
    ExprNode n;
    // Constants never carry a negative zero, so formatting and reparsing are exact.
    n.constant = {c.real() + 0.0, c.imag() + 0.0};
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}
inline Expr Expr::z() {
    ExprNode n;
    n.kind = NodeKind::VarZ;
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

#define WIRT_UNARY_BUILDER(name, KIND)                                  \
    inline Expr Expr::name(Expr a) {                                    \
        ExprNode n;                                                     \
        n.kind = NodeKind::KIND;                                        \
        n.depth = a.node().depth + 1;                                   \
        n.lhs = std::move(a);                                           \
        return Expr(std::make_shared<const ExprNode>(std::move(n)));    \
    }
#define WIRT_BINARY_BUILDER(name, KIND)                                 \
    inline Expr Expr::name(Expr a, Expr b) {                            \
        ExprNode n;                                                     \
        n.kind = NodeKind::KIND;                                        \
        n.depth = std::max(a.node().depth, b.node().depth) + 1;         \
        n.lhs = std::move(a);                                           \
        n.rhs = std::move(b);                                           \
        return Expr(std::make_shared<const ExprNode>(std::move(n)));    \
    }
WIRT_UNARY_BUILDER(conj, Conj)
WIRT_UNARY_BUILDER(neg, Neg)
WIRT_BINARY_BUILDER(add, Add)
WIRT_BINARY_BUILDER(sub, Sub)
WIRT_BINARY_BUILDER(mul, Mul)
WIRT_BINARY_BUILDER(div, Div)
WIRT_BINARY_BUILDER(pow, Pow)
#undef WIRT_UNARY_BUILDER
#undef WIRT_BINARY_BUILDER

inline Expr Expr::pow_int(Expr base, std::int64_t e) {
    ExprNode n;
    n.kind = NodeKind::PowInt;
    n.exponent = e;
    n.depth = base.node().depth + 1;
    n.lhs = std::move(base);
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

inline Expr Expr::fn(ElementaryFn f, Expr a) {
    if (f == ElementaryFn::Conj) return conj(std::move(a));
    if (f == ElementaryFn::Neg) return neg(std::move(a));
    ExprNode n;
    n.kind = NodeKind::Fn;
    n.fn = f;
    n.depth = a.node().depth + 1;
    n.lhs = std::move(a);
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

inline Expr operator+(Expr a, Expr b) { return Expr::add(std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::sub(std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::mul(std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::div(std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return Expr::neg(std::move(a)); }

inline Expr exp(Expr a) { return Expr::fn(ElementaryFn::Exp, std::move(a)); }
inline Expr conj(Expr a) { return Expr::conj(std::move(a)); }

/// True when no Conj node occurs in the tree, i.e. the expression is
/// holomorphic wherever it is defined.
inline bool is_conj_free(const Expr& e) {
    const ExprNode& n = e.node();
    if (n.kind == NodeKind::Conj) return false;
    if (n.lhs && !is_conj_free(*n.lhs)) return false;
    if (n.rhs && !is_conj_free(*n.rhs)) return false;
    return true;
}

// ---- formatting -------------------------------------------------------------

namespace detail {

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_constant(Complex c) {
    const double re = c.real(), im = c.imag();
    if (im == 0.0) {
        if (std::signbit(re)) return "(" + format_real(re) + ")";
        return format_real(re);
    }
    std::string s = "(" + format_real(re);
    s += std::signbit(im) ? "-" : "+";
    s += format_real(std::abs(im)) + "*i)";
    return s;
}

}  // namespace detail

/// Canonical fully parenthesized text; parse(format(e)) evaluates identically to e.
inline std::string format(const Expr& e) {
    const ExprNode& n = e.node();
    auto bin = [&](char op) { return "(" + format(*n.lhs) + op + format(*n.rhs) + ")"; };
    switch (n.kind) {
    case NodeKind::Constant: return detail::format_constant(n.constant);
    case NodeKind::VarZ: return "z";
    case NodeKind::Conj: return "conj(" + format(*n.lhs) + ")";
    case NodeKind::Neg: return "(-" + format(*n.lhs) + ")";
    case NodeKind::Add: return bin('+');
    case NodeKind::Sub: return bin('-');
    case NodeKind::Mul: return bin('*');
    case NodeKind::Div: return bin('/');
    case NodeKind::PowInt:
        return "(" + format(*n.lhs) + "^" +
               (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent)) + ")";
    case NodeKind::Pow: return bin('^');
    case NodeKind::Fn: return std::string(name_of(n.fn)) + "(" + format(*n.lhs) + ")";
    }
    return {};
}

// ---- evaluation -------------------------------------------------------------

/// Value and both Wirtinger derivatives of e at z. A DomainError raised by a
/// subexpression carries that subexpression's canonical text.
inline WirtingerJet eval_jet(const Expr& e, Complex z) {
    const ExprNode& n = e.node();
    try {
        switch (n.kind) {
        case NodeKind::Constant: return WirtingerJet::constant(n.constant);
        case NodeKind::VarZ: return WirtingerJet::variable(z);
        case NodeKind::Conj: return conj(eval_jet(*n.lhs, z));
        case NodeKind::Neg: return -eval_jet(*n.lhs, z);
        case NodeKind::Add: return eval_jet(*n.lhs, z) + eval_jet(*n.rhs, z);
        case NodeKind::Sub: return eval_jet(*n.lhs, z) - eval_jet(*n.rhs, z);
        case NodeKind::Mul: {
            WirtingerJet r = eval_jet(*n.lhs, z) * eval_jet(*n.rhs, z);
            detail::check_finite(r, "product");
            return r;
        }
        case NodeKind::Div: return eval_jet(*n.lhs, z) / eval_jet(*n.rhs, z);
        case NodeKind::PowInt: return pow_int(eval_jet(*n.lhs, z), n.exponent);
        case NodeKind::Pow: return pow(eval_jet(*n.lhs, z), eval_jet(*n.rhs, z));
        case NodeKind::Fn: return jet_apply(n.fn, eval_jet(*n.lhs, z));
        }
    } catch (DomainError& err) {
        if (err.subexpression().empty()) err.set_subexpression(format(e));
        throw;
    }
    return {};
}

inline Complex evaluate(const Expr& e, Complex z) { return eval_jet(e, z).value; }

// ---- parsing ----------------------------------------------------------------

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        if (text_.size() > max_length)
            throw SyntaxError(max_length, {}, "input longer than " + std::to_string(max_length) + " bytes");
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return e;
    }

private:
    enum class Tok { End, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Bad };

    struct Token {
        Tok kind = Tok::End;
        std::size_t offset = 0;
        std::string_view text;
        double number = 0.0;
    };

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    Token peek() {
        skip_ws();
        Token t;
        t.offset = pos_;
        if (pos_ >= text_.size()) return t;
        const char c = text_[pos_];
        auto single = [&](Tok k) {
            t.kind = k;
            t.text = text_.substr(pos_, 1);
            return t;
        };
        switch (c) {
        case '+': return single(Tok::Plus);
        case '-': return single(Tok::Minus);
        case '*': return single(Tok::Star);
        case '/': return single(Tok::Slash);
        case '^': return single(Tok::Caret);
        case '(': return single(Tok::LParen);
        case ')': return single(Tok::RParen);
        default: break;
        }
        const auto uc = static_cast<unsigned char>(c);
        if (std::isdigit(uc) || (c == '.' && pos_ + 1 < text_.size() &&
                                 std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            std::size_t p = pos_;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
            if (p < text_.size() && text_[p] == '.') {
                ++p;
                while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
            }
            // Exponent only when digits follow, so "2e" stays NUMBER IDENT.
            if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
                std::size_t q = p + 1;
                if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
                if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
                    while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
                    p = q;
                }
            }
            t.kind = Tok::Number;
            t.text = text_.substr(pos_, p - pos_);
            t.number = std::strtod(std::string(t.text).c_str(), nullptr);
            return t;
        }
        if (std::isalpha(uc) || c == '_') {
            std::size_t p = pos_;
            while (p < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_'))
                ++p;
            t.kind = Tok::Ident;
            t.text = text_.substr(pos_, p - pos_);
            return t;
        }
        t.kind = Tok::Bad;
        t.text = text_.substr(pos_, 1);
        return t;
    }

    void advance(const Token& t) { pos_ = t.offset + t.text.size(); }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        const Token t = peek();
        std::string found;
        if (t.kind == Tok::End)
            found = "end of input";
        else {
            found = "'";
            for (char ch : t.text) {
                const auto u = static_cast<unsigned char>(ch);
                if (std::isprint(u)) {
                    found += ch;
                } else {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\x%02x", u);
                    found += buf;
                }
            }
            found += "'";
        }
        throw SyntaxError(t.offset, std::move(expected), found);
    }

    static std::vector<std::string> atom_starts() {
        return {"NUMBER", "'i'", "'pi'", "'e'", "'z'", "'zbar'", "IDENT", "'('", "'-'"};
    }

    static bool is_const(const Expr& e) { return e.node().kind == NodeKind::Constant; }

    // Literal arithmetic only; a fold that would leave a non-finite constant is skipped.
    static std::optional<Expr> fold(const Expr& lhs, const Expr& rhs, Tok op) {
        if (!is_const(lhs) || !is_const(rhs)) return std::nullopt;
        const Complex a = lhs.node().constant, b = rhs.node().constant;
        Complex r;
        switch (op) {
        case Tok::Plus: r = a + b; break;
        case Tok::Minus: r = a - b; break;
        case Tok::Star: r = a * b; break;
        case Tok::Slash:
            if (b == Complex{}) return std::nullopt;
            r = a / b;
            break;
        default: return std::nullopt;
        }
        if (!is_finite(r)) return std::nullopt;
        return Expr::constant(r);
    }

    static constexpr int max_depth = 256;
    // Bounds tree depth (and so recursion in evaluation) for left-deep chains like z+z+z+...
    static constexpr std::size_t max_length = 4096;

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser, std::size_t offset) : p(parser) {
            if (++p.depth_ > max_depth)
                throw SyntaxError(offset, {}, "nesting deeper than " + std::to_string(max_depth) + " levels");
        }
        ~DepthGuard() { --p.depth_; }
        DepthGuard(const DepthGuard&) = delete;
        DepthGuard& operator=(const DepthGuard&) = delete;
    };

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            const Token t = peek();
            if (t.kind != Tok::Plus && t.kind != Tok::Minus) return lhs;
            advance(t);
            Expr rhs = parse_term();
            if (auto folded = fold(lhs, rhs, t.kind)) {
                lhs = *folded;
            } else {
                lhs = t.kind == Tok::Plus ? Expr::add(lhs, rhs) : Expr::sub(lhs, rhs);
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        for (;;) {
            const Token t = peek();
            if (t.kind != Tok::Star && t.kind != Tok::Slash) return lhs;
            advance(t);
            Expr rhs = parse_factor();
            if (auto folded = fold(lhs, rhs, t.kind)) {
                lhs = *folded;
            } else {
                lhs = t.kind == Tok::Star ? Expr::mul(lhs, rhs) : Expr::div(lhs, rhs);
            }
        }
    }

    Expr parse_factor() {
        const Token t = peek();
        DepthGuard guard(*this, t.offset);
        if (t.kind == Tok::Minus) {
            advance(t);
            Expr a = parse_factor();
            if (is_const(a)) return Expr::constant(-a.node().constant);
            return Expr::neg(a);
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        const Token t = peek();
        if (t.kind != Tok::Caret) return base;
        advance(t);
        Expr ex = parse_factor();
        if (is_const(ex)) {
            const Complex c = ex.node().constant;
            if (c.imag() == 0.0 && std::abs(c.real()) <= 1e15 && c.real() == std::trunc(c.real())) {
                const auto n = static_cast<std::int64_t>(c.real());
                if (is_const(base) && std::abs(n) <= 64) {
                    try {
                        return Expr::constant(eval_jet(Expr::pow_int(base, n), 0.0).value);
                    } catch (const DomainError&) {
                        // 0^-n or overflow: keep the node so evaluation reports it.
                    }
                }
                return Expr::pow_int(base, n);
            }
        }
        return Expr::pow(base, ex);
    }

    Expr parse_atom() {
        const Token t = peek();
        switch (t.kind) {
        case Tok::Number: {
            advance(t);
            if (!std::isfinite(t.number)) {
                pos_ = t.offset;
                throw SyntaxError(t.offset, {"finite NUMBER"}, "'" + std::string(t.text) + "'");
            }
            return Expr::constant(t.number);
        }
        case Tok::LParen: {
            advance(t);
            Expr e = parse_expr();
            expect_rparen();
            return e;
        }
        case Tok::Ident: {
            advance(t);
            const std::string_view id = t.text;
            if (id == "z") return Expr::z();
            if (id == "zbar") return Expr::conj(Expr::z());
            if (id == "i") return Expr::constant(I);
            if (id == "pi") return Expr::constant(pi);
            if (id == "e") return Expr::constant(std::numbers::e);
            std::optional<ElementaryFn> fn;
            if (id == "exp") fn = ElementaryFn::Exp;
            else if (id == "ln") fn = ElementaryFn::Ln;
            else if (id == "sin") fn = ElementaryFn::Sin;
            else if (id == "cos") fn = ElementaryFn::Cos;
            else if (id == "sqrt") fn = ElementaryFn::Sqrt;
            else if (id == "conj") fn = ElementaryFn::Conj;
            if (!fn) throw UnknownIdentifierError(t.offset, std::string(id));
            const Token open = peek();
            if (open.kind != Tok::LParen) fail({"'('"});
            advance(open);
            Expr arg = parse_expr();
            expect_rparen();
            return Expr::fn(*fn, arg);
        }
        default: fail(atom_starts());
        }
    }

    void expect_rparen() {
        const Token t = peek();
        if (t.kind != Tok::RParen) fail({"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
        advance(t);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace detail

/// Parses text in the expression grammar. Throws SyntaxError (with byte
/// offset and expected-token set) or UnknownIdentifierError.
inline Expr parse(std::string_view text) { return detail::Parser(text).parse_all(); }

}  // namespace wirt
