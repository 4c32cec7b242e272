#pragma once

#include <json.hpp>

#include "gb/bounds.hpp"
#include "gb/errors.hpp"

namespace gb {

inline nlohmann::json to_json(const BoundCertificate& c) {
    nlohmann::json j;
    j["claim"] = {{"quantity", c.claim.quantity},
                  {"relation", c.claim.relation},
                  {"bound_symbolic", c.claim.bound_symbolic},
                  {"bound_decimal", c.claim.bound_decimal}};
    nlohmann::json in = nlohmann::json::object();
    if (c.inputs.n) in["n"] = *c.inputs.n;
    if (c.inputs.m) in["m"] = *c.inputs.m;
    if (c.inputs.N) in["N"] = *c.inputs.N;
    if (!c.inputs.dims.empty()) in["dims"] = c.inputs.dims;
    j["inputs"] = std::move(in);
    j["method"] = to_string(c.method);
    nlohmann::json ev;
    ev["k_n"] = c.evidence.k_n;
    if (c.evidence.grid_file) ev["grid_file"] = *c.evidence.grid_file;
    if (c.evidence.exact_value) ev["exact_value"] = *c.evidence.exact_value;
    if (c.evidence.analytic_value) ev["analytic_value"] = *c.evidence.analytic_value;
    j["evidence"] = std::move(ev);
    j["verified"] = c.verified;
    return j;
}

inline BoundCertificate certificate_from_json(const nlohmann::json& j) {
    try {
        BoundCertificate c;
        const auto& cl = j.at("claim");
        c.claim.quantity = cl.at("quantity").get<std::string>();
        c.claim.relation = cl.at("relation").get<std::string>();
        c.claim.bound_symbolic = cl.at("bound_symbolic").get<std::string>();
        c.claim.bound_decimal = cl.at("bound_decimal").get<double>();
        const auto& in = j.at("inputs");
        if (in.contains("n")) c.inputs.n = in.at("n").get<long long>();
        if (in.contains("m")) c.inputs.m = in.at("m").get<long long>();
        if (in.contains("N")) c.inputs.N = in.at("N").get<long long>();
        if (in.contains("dims"))
            c.inputs.dims = in.at("dims").get<std::vector<std::size_t>>();
        const std::string method = j.at("method").get<std::string>();
        if (method == "analytic_hadamard")
            c.method = BoundMethod::analytic_hadamard;
        else if (method == "exact_search")
            c.method = BoundMethod::exact_search;
        else if (method == "truncated_config")
            c.method = BoundMethod::truncated_config;
        else if (method == "covering")
            c.method = BoundMethod::covering;
        else
            throw ShapeError("certificate parse: unknown method " + method);
        const auto& ev = j.at("evidence");
        c.evidence.k_n = ev.at("k_n").get<long long>();
        if (ev.contains("grid_file"))
            c.evidence.grid_file = ev.at("grid_file").get<std::string>();
        if (ev.contains("exact_value"))
            c.evidence.exact_value = ev.at("exact_value").get<long long>();
        if (ev.contains("analytic_value"))
            c.evidence.analytic_value = ev.at("analytic_value").get<double>();
        c.verified = j.at("verified").get<bool>();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ShapeError(std::string("certificate parse: ") + e.what());
    }
}

// Recomputes a certificate's claim from its inputs and method, reporting
// whether the stored claim still stands.
inline bool reverify(const BoundCertificate& c) {
    try {
        switch (c.method) {
            case BoundMethod::analytic_hadamard:
            case BoundMethod::truncated_config: {
                if (!c.inputs.n || c.claim.quantity != "R_n" ||
                    c.claim.relation != ">=")
                    return false;
                const BoundCertificate fresh = r_lower_certificate(*c.inputs.n);
                return fresh.verified && fresh.evidence.k_n == c.evidence.k_n &&
                       fresh.claim.bound_decimal >= c.claim.bound_decimal;
            }
            case BoundMethod::exact_search: {
                if (!c.inputs.n || *c.inputs.n < 1 || *c.inputs.n > 6 ||
                    c.claim.quantity != "R_n" || c.claim.relation != "=")
                    return false;
                const long long fresh =
                    exact_R(static_cast<int>(*c.inputs.n)).value;
                return static_cast<double>(fresh) == c.claim.bound_decimal;
            }
            case BoundMethod::covering: {
                if (!c.inputs.N) return false;
                const BoundCertificate fresh = global_g_bound(*c.inputs.N);
                return fresh.claim.bound_symbolic == c.claim.bound_symbolic &&
                       fresh.claim.bound_decimal == c.claim.bound_decimal;
            }
        }
    } catch (const Error&) {
        return false;
    }
    return false;
}

}  // namespace gb
