#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "complex.hpp"
#include "errors.hpp"

namespace wirt {

struct WirtingerPair {
    Complex d_z{};
    Complex d_zbar{};
};

/// Default central-difference step: cbrt(eps) scaled by max(1, |z|).
inline double default_fd_step(Complex z) noexcept {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(z));
}

/// Central-difference estimate of both Wirtinger derivatives of a pointwise
/// function, from the four-point stencil z +- h, z +- ih. Truncation error is
/// O(h^2). `f` must be callable as Complex(Complex); any exception it throws
/// or any non-finite stencil value becomes an EvaluationError naming the point.
template <class F>
WirtingerPair fd_wirtinger(F&& f, Complex z, double h) {
    auto sample = [&](Complex p) {
        Complex v;
        try {
            v = f(p);
        } catch (const Error& e) {
            std::ostringstream os;
            os.precision(17);
            os << "stencil point " << p << " not evaluable: " << e.what();
            throw EvaluationError(os.str());
        }
        if (!is_finite(v)) {
            std::ostringstream os;
            os.precision(17);
            os << "non-finite value at stencil point " << p;
            throw EvaluationError(os.str());
        }
        return v;
    };
    const Complex fx = (sample(z + h) - sample(z - h)) / (2.0 * h);
    const Complex fy = (sample(z + I * h) - sample(z - I * h)) / (2.0 * h);
    return {0.5 * (fx - I * fy), 0.5 * (fx + I * fy)};
}

template <class F>
WirtingerPair fd_wirtinger(F&& f, Complex z) {
    return fd_wirtinger(std::forward<F>(f), z, default_fd_step(z));
}

}  // namespace wirt
