#pragma once

// Forward-mode Wirtinger jets.
//
// A jet carries f together with both Wirtinger derivatives
//   d_z    = df/dz    = (f_x - i f_y) / 2
//   d_zbar = df/dzbar = (f_x + i f_y) / 2
// treating z and conj(z) as independent variables. For g = h(f) with h
// holomorphic the chain rule acts channel-wise: dg = h'(f) df. Conjugation
// is the only non-holomorphic primitive; it swaps and conjugates the channels
// because d(conj f)/dz = conj(df/dzbar).

#include <cstdint>
#include <string>
#include <string_view>

#include "complex.hpp"
#include "errors.hpp"

namespace wirt {

struct WirtingerJet {
    Complex value{};
    Complex d_z{};
    Complex d_zbar{};

    static constexpr WirtingerJet constant(Complex c) noexcept { return {c, {}, {}}; }
    /// Seed for the independent variable: jet(z) = (z, 1, 0).
    static constexpr WirtingerJet variable(Complex z) noexcept { return {z, 1.0, 0.0}; }

    friend bool operator==(const WirtingerJet&, const WirtingerJet&) = default;
};

enum class ElementaryFn : std::uint8_t { Exp, Ln, Sin, Cos, Sqrt, Neg, Conj, Recip };

inline std::string_view name_of(ElementaryFn fn) noexcept {
    switch (fn) {
    case ElementaryFn::Exp: return "exp";
    case ElementaryFn::Ln: return "ln";
    case ElementaryFn::Sin: return "sin";
    case ElementaryFn::Cos: return "cos";
    case ElementaryFn::Sqrt: return "sqrt";
    case ElementaryFn::Neg: return "neg";
    case ElementaryFn::Conj: return "conj";
    case ElementaryFn::Recip: return "recip";
    }
    return "?";
}

// ---- linear algebra on jets ------------------------------------------------

inline WirtingerJet operator+(const WirtingerJet& a, const WirtingerJet& b) noexcept {
    return {a.value + b.value, a.d_z + b.d_z, a.d_zbar + b.d_zbar};
}
inline WirtingerJet operator-(const WirtingerJet& a, const WirtingerJet& b) noexcept {
    return {a.value - b.value, a.d_z - b.d_z, a.d_zbar - b.d_zbar};
}
inline WirtingerJet operator-(const WirtingerJet& a) noexcept { return {-a.value, -a.d_z, -a.d_zbar}; }
inline WirtingerJet operator*(Complex s, const WirtingerJet& a) noexcept {
    return {s * a.value, s * a.d_z, s * a.d_zbar};
}
inline WirtingerJet operator*(const WirtingerJet& a, Complex s) noexcept { return s * a; }

inline WirtingerJet operator*(const WirtingerJet& a, const WirtingerJet& b) noexcept {
    return {a.value * b.value, a.value * b.d_z + b.value * a.d_z, a.value * b.d_zbar + b.value * a.d_zbar};
}

inline WirtingerJet conj(const WirtingerJet& a) noexcept {
    return {std::conj(a.value), std::conj(a.d_zbar), std::conj(a.d_z)};
}

namespace detail {

inline void check_finite(const WirtingerJet& j, std::string_view op) {
    if (!is_finite(j.value) || !is_finite(j.d_z) || !is_finite(j.d_zbar))
        throw DomainError("non-finite result in " + std::string(op));
}

inline void check_guard(Complex v, std::string_view op, std::string_view what) {
    if (!is_finite(v)) throw DomainError("non-finite argument to " + std::string(op));
    if (std::abs(v) < guard_radius(0.0))
        throw DomainError(std::string(op) + " argument within guard radius of its " + std::string(what));
}

// Channel-wise chain rule for a holomorphic outer function with derivative d.
inline WirtingerJet chain(Complex value, Complex d, const WirtingerJet& arg) noexcept {
    return {value, d * arg.d_z, d * arg.d_zbar};
}

}  // namespace detail

/// Jet of fn(arg). ln and sqrt use the principal branch (cut along the
/// negative real axis); ln, sqrt and recip refuse arguments within the guard
/// radius of 0.
inline WirtingerJet jet_apply(ElementaryFn fn, const WirtingerJet& arg) {
    using detail::chain;
    WirtingerJet out;
    const Complex v = arg.value;
    switch (fn) {
    case ElementaryFn::Exp: {
        const Complex e = std::exp(v);
        out = chain(e, e, arg);
        break;
    }
    case ElementaryFn::Ln:
        detail::check_guard(v, "ln", "branch point");
        out = chain(std::log(v), 1.0 / v, arg);
        break;
    case ElementaryFn::Sin: out = chain(std::sin(v), std::cos(v), arg); break;
    case ElementaryFn::Cos: out = chain(std::cos(v), -std::sin(v), arg); break;
    case ElementaryFn::Sqrt: {
        detail::check_guard(v, "sqrt", "branch point");
        const Complex s = std::sqrt(v);
        out = chain(s, 0.5 / s, arg);
        break;
    }
    case ElementaryFn::Neg: out = -arg; break;
    case ElementaryFn::Conj: out = conj(arg); break;
    case ElementaryFn::Recip: {
        detail::check_guard(v, "recip", "pole");
        const Complex r = 1.0 / v;
        out = chain(r, -r * r, arg);
        break;
    }
    }
    detail::check_finite(out, name_of(fn));
    return out;
}

inline WirtingerJet operator/(const WirtingerJet& a, const WirtingerJet& b) {
    return a * jet_apply(ElementaryFn::Recip, b);
}

/// Integer power by repeated squaring; negative exponents invert first.
inline WirtingerJet pow_int(const WirtingerJet& base, std::int64_t n) {
    if (n == 0) return WirtingerJet::constant(1.0);
    WirtingerJet b = n < 0 ? jet_apply(ElementaryFn::Recip, base) : base;
    std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    WirtingerJet acc = WirtingerJet::constant(1.0);
    bool first = true;
    while (e) {
        if (e & 1u) {
            acc = first ? b : acc * b;
            first = false;
        }
        e >>= 1u;
        if (e) b = b * b;
    }
    detail::check_finite(acc, "integer power");
    return acc;
}

/// Principal-branch power exp(exponent * ln(base)).
inline WirtingerJet pow(const WirtingerJet& base, const WirtingerJet& exponent) {
    return jet_apply(ElementaryFn::Exp, exponent * jet_apply(ElementaryFn::Ln, base));
}

}  // namespace wirt
