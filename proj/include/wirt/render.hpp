#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "expr.hpp"

namespace wirt {

struct Window {
    double x0 = -2.0, y0 = -2.0, x1 = 2.0, y1 = 2.0;
};

struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, top row first
    std::size_t black_pixels = 0;   // non-evaluable samples
};

/// Complex coordinate of the center of pixel (col, row); row 0 is the top (y1) edge.
inline Complex pixel_center(const Window& w, std::size_t width, std::size_t height, std::size_t col, std::size_t row) {
    const double fx = (static_cast<double>(col) + 0.5) / static_cast<double>(width);
    const double fy = (static_cast<double>(row) + 0.5) / static_cast<double>(height);
    return {w.x0 + fx * (w.x1 - w.x0), w.y1 - fy * (w.y1 - w.y0)};
}

/// Hue in [0, 1) from arg f, counter-clockwise from the positive real axis.
inline double domain_hue(Complex v) {
    double h = std::arg(v) / (2.0 * pi);
    if (h < 0.0) h += 1.0;
    return h >= 1.0 ? 0.0 : h;
}

/// Lightness in [0, 1] from a logarithmic ramp of |f|: 1/2 + atan(ln|f|)/pi.
/// |f| = 1 maps to 1/2; zeros go black and poles white.
inline double domain_lightness(Complex v) {
    const double m = std::abs(v);
    if (m == 0.0) return 0.0;
    if (std::isinf(m)) return 1.0;
    return 0.5 + std::atan(std::log(m)) / pi;
}

namespace detail {

inline void hsl_to_rgb(double h, double l, std::uint8_t out[3]) {
    const double c = 1.0 - std::abs(2.0 * l - 1.0);
    const double hp = h * 6.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp) % 6) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
    }
    const double m = l - 0.5 * c;
    const double ch[3] = {r + m, g + m, b + m};
    for (int k = 0; k < 3; ++k) out[k] = static_cast<std::uint8_t>(std::lround(std::clamp(ch[k], 0.0, 1.0) * 255.0));
}

}  // namespace detail

inline Image render_domain_coloring(const Expr& f, const Window& window, std::size_t width, std::size_t height) {
    if (width < 16 || height < 16) throw InvalidSpecError("image must be at least 16 x 16 pixels");
    if (!(window.x0 < window.x1) || !(window.y0 < window.y1) || !std::isfinite(window.x0) ||
        !std::isfinite(window.x1) || !std::isfinite(window.y0) || !std::isfinite(window.y1))
        throw InvalidSpecError("window must satisfy x0 < x1 and y0 < y1");
    Image img;
    img.width = width;
    img.height = height;
    img.rgb.assign(width * height * 3, 0);
    for (std::size_t row = 0; row < height; ++row) {
        for (std::size_t col = 0; col < width; ++col) {
            std::uint8_t* px = &img.rgb[(row * width + col) * 3];
            Complex v;
            try {
                v = evaluate(f, pixel_center(window, width, height, col, row));
            } catch (const DomainError&) {
                ++img.black_pixels;
                continue;
            }
            detail::hsl_to_rgb(domain_hue(v), domain_lightness(v), px);
        }
    }
    return img;
}

/// Binary PPM (P6), maxval 255.
inline void write_ppm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace wirt
