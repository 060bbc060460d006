#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"

namespace wirt {

using MetricValue = std::variant<double, Complex>;

struct Metric {
    std::string name;
    MetricValue value;

    friend bool operator==(const Metric&, const Metric&) = default;
};

/// Outcome of a theorem check. `pass` holds exactly when the headline metric
/// is at most `tolerance`; reports of pure computations have no headline and pass.
struct CheckReport {
    std::string check;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<Metric> metrics;
    double tolerance = 0.0;
    bool pass = true;
    std::size_t n_points = 0;
    std::size_t n_skipped = 0;
    std::string headline;  // name of the metric compared against tolerance; empty if none

    CheckReport& input(std::string key, std::string value) {
        inputs.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    CheckReport& set(std::string name, MetricValue value) {
        for (auto& m : metrics)
            if (m.name == name) {
                m.value = value;
                return *this;
            }
        metrics.push_back({std::move(name), value});
        return *this;
    }

    const MetricValue* find(std::string_view name) const {
        for (const auto& m : metrics)
            if (m.name == name) return &m.value;
        return nullptr;
    }

    double number(std::string_view name) const {
        const MetricValue* v = find(name);
        if (!v) throw Error("report '" + check + "' has no metric '" + std::string(name) + "'");
        if (const double* d = std::get_if<double>(v)) return *d;
        return std::abs(std::get<Complex>(*v));
    }

    Complex complex(std::string_view name) const {
        const MetricValue* v = find(name);
        if (!v) throw Error("report '" + check + "' has no metric '" + std::string(name) + "'");
        if (const Complex* c = std::get_if<Complex>(v)) return *c;
        return std::get<double>(*v);
    }

    /// Sets the headline metric and tolerance and recomputes `pass`.
    CheckReport& judge(std::string headline_metric, double tol) {
        headline = std::move(headline_metric);
        tolerance = tol;
        pass = number(headline) <= tolerance;
        return *this;
    }
};

}  // namespace wirt
