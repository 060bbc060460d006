#pragma once

// JSON form of CheckReport:
//   { "check": string, "inputs": {string: string}, "metrics": {name: number | [re, im]},
//     "tolerance": number, "pass": bool, "n_points": int, "n_skipped": int }
// Numbers are written with 17 significant digits, so parsing and re-serializing
// reproduces the text byte for byte.

#include <cmath>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "expr.hpp"
#include "report.hpp"

namespace wirt {

namespace detail {

inline std::string json_number(double x) {
    if (!std::isfinite(x)) throw Error("refusing to serialize a non-finite report value");
    return format_real(x == 0.0 ? 0.0 : x);  // JSON has no negative zero
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace detail

inline std::string to_json(const CheckReport& r) {
    std::string out = "{\"check\":" + detail::json_string(r.check) + ",\"inputs\":{";
    for (std::size_t i = 0; i < r.inputs.size(); ++i) {
        if (i) out += ',';
        out += detail::json_string(r.inputs[i].first) + ':' + detail::json_string(r.inputs[i].second);
    }
    out += "},\"metrics\":{";
    for (std::size_t i = 0; i < r.metrics.size(); ++i) {
        if (i) out += ',';
        out += detail::json_string(r.metrics[i].name) + ':';
        if (const double* d = std::get_if<double>(&r.metrics[i].value)) {
            out += detail::json_number(*d);
        } else {
            const Complex c = std::get<Complex>(r.metrics[i].value);
            out += '[' + detail::json_number(c.real()) + ',' + detail::json_number(c.imag()) + ']';
        }
    }
    out += "},\"tolerance\":" + detail::json_number(r.tolerance);
    out += ",\"pass\":";
    out += r.pass ? "true" : "false";
    out += ",\"n_points\":" + std::to_string(r.n_points) + ",\"n_skipped\":" + std::to_string(r.n_skipped) + "}";
    return out;
}

/// Parses and validates a report. The headline metric name is not part of the
/// JSON form and comes back empty.
inline CheckReport report_from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("report is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("report must be a JSON object");
    if (j.size() != 7) throw Error("report must have exactly the seven schema fields");
    auto require = [&](const char* key, bool (nlohmann::ordered_json::*is_type)() const noexcept) {
        if (!j.contains(key) || !(j[key].*is_type)())
            throw Error(std::string("report field '") + key + "' missing or mistyped");
    };
    using J = nlohmann::ordered_json;
    require("check", &J::is_string);
    require("inputs", &J::is_object);
    require("metrics", &J::is_object);
    require("tolerance", &J::is_number);
    require("pass", &J::is_boolean);
    require("n_points", &J::is_number_unsigned);
    require("n_skipped", &J::is_number_unsigned);

    CheckReport r;
    r.check = j["check"].get<std::string>();
    for (const auto& [k, v] : j["inputs"].items()) {
        if (!v.is_string()) throw Error("report input '" + k + "' is not a string");
        r.inputs.emplace_back(k, v.get<std::string>());
    }
    for (const auto& [k, v] : j["metrics"].items()) {
        if (v.is_number()) {
            r.metrics.push_back({k, v.get<double>()});
        } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            r.metrics.push_back({k, Complex{v[0].get<double>(), v[1].get<double>()}});
        } else {
            throw Error("report metric '" + k + "' must be a number or an [re, im] pair");
        }
    }
    r.tolerance = j["tolerance"].get<double>();
    r.pass = j["pass"].get<bool>();
    r.n_points = j["n_points"].get<std::size_t>();
    r.n_skipped = j["n_skipped"].get<std::size_t>();
    if (r.n_skipped > r.n_points) throw Error("report has more skipped than total points");
    return r;
}

}  // namespace wirt
