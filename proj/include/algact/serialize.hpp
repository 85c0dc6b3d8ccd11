#pragma once

#include <json.hpp>

#include "algact/measures.hpp"
#include "algact/oracle.hpp"
#include "algact/solver.hpp"

namespace algact {

using nlohmann::json;

inline json to_json(const GroupDescriptor& G, const FinSupp<std::int64_t>& a) {
    json out = json::array();
    for (const auto& [g, c] : a.coeffs()) out.push_back({element_str(G, g), c});
    return out;
}

inline json to_json(const GroupDescriptor& G, const FinSupp<double>& a) {
    json out = json::array();
    for (const auto& [g, c] : a.coeffs()) out.push_back({element_str(G, g), c});
    return out;
}

inline json to_json(const GroupDescriptor& G, const FinSupp<Rational>& a) {
    json out = json::array();
    for (const auto& [g, c] : a.coeffs()) out.push_back({element_str(G, g), c.str()});
    return out;
}

template <class T>
json to_json(const GroupRingMatrix<T>& f) {
    json rows = json::array();
    for (int i = 0; i < f.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < f.cols(); ++j) row.push_back(to_json(f.group(), f.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

template <class T>
json to_json(const FinSuppVector<T>& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(to_json(v.G, v[i]));
    return out;
}

inline json to_json(const TruncatedL2Matrix& xi) {
    json out;
    out["group"] = xi.G.str();
    out["n"] = xi.n;
    out["radius"] = xi.radius;
    out["interior_radius"] = xi.interior_radius;
    out["residual_left"] = xi.residual_left;
    out["residual_right"] = xi.residual_right;
    out["residual_left_full"] = xi.residual_left_full;
    out["residual_right_full"] = xi.residual_right_full;
    out["tail_mass"] = xi.tail_mass;
    out["method"] = xi.method;
    json rows = json::array();
    for (int i = 0; i < xi.n; ++i) {
        json row = json::array();
        for (int j = 0; j < xi.n; ++j) row.push_back(to_json(xi.G, xi.at(i, j)));
        rows.push_back(row);
    }
    out["coefficients"] = rows;
    return out;
}

inline json to_json(const SolverReport& r) {
    json out;
    out["method"] = r.method;
    out["R"] = r.radius;
    out["eps"] = r.eps;
    out["iterations"] = r.iterations;
    out["interior_radius"] = r.interior_radius;
    out["residual_left"] = r.residual_left;
    out["residual_right"] = r.residual_right;
    out["residual_left_full"] = r.residual_left_full;
    out["residual_right_full"] = r.residual_right_full;
    out["tail_mass"] = r.tail_mass;
    out["shell_ratio"] = r.shell_ratio;
    out["terminated_exactly"] = r.terminated_exactly;
    out["residual_history"] = r.residual_history;
    if (r.method == "torus-grid") {
        out["grid"] = r.grid;
        out["imag_residue"] = r.imag_residue;
        out["aliasing_error"] = r.aliasing_error;
        out["min_symbol"] = r.min_symbol;
    }
    if (!r.message.empty()) out["message"] = r.message;
    return out;
}

inline json to_json(const FourierReport& r) {
    json out;
    out["alpha"] = r.alpha_id;
    out["exact"] = r.exact_value;
    out["tail_bound"] = r.tail_bound;
    out["mc_re"] = r.mc_estimate.real();
    out["mc_im"] = r.mc_estimate.imag();
    out["stderr"] = r.mc_stderr;
    out["N"] = r.samples;
    out["seed"] = r.seed;
    return out;
}

/// One CSV line per FourierReport, matching the documented column order
/// m, alpha_id, exact, tail_bound, mc_re, mc_im, stderr, N, seed.
inline std::string csv_row(int m, const FourierReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%d,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%lld,%llu", m,
                  r.alpha_id.c_str(), r.exact_value, r.tail_bound, r.mc_estimate.real(),
                  r.mc_estimate.imag(), r.mc_stderr, static_cast<long long>(r.samples),
                  static_cast<unsigned long long>(r.seed));
    return buf;
}

}  // namespace algact
