#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace wirt {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};
inline constexpr double pi = std::numbers::pi;

inline bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Radius around a pole or branch point inside which evaluation is refused.
inline double guard_radius(Complex z) noexcept { return 1e-9 * std::max(1.0, std::abs(z)); }

/// Allowed fraction of non-evaluable samples on area lattices.
inline constexpr double max_skip_fraction = 1e-3;

/// Compensated (Kahan-Babuska) summation of complex terms. The result depends
/// only on the order in which terms are added.
class KahanSum {
public:
    void add(Complex term) noexcept {
        add_part(term.real(), sum_re_, comp_re_);
        add_part(term.imag(), sum_im_, comp_im_);
    }

    Complex value() const noexcept { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

private:
    static void add_part(double x, double& sum, double& comp) noexcept {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double sum_re_ = 0.0, comp_re_ = 0.0;
    double sum_im_ = 0.0, comp_im_ = 0.0;
};

}  // namespace wirt
