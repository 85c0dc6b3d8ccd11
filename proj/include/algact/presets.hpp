#pragma once

#include "algact/group_ring.hpp"

namespace algact {

enum class Claim { Yes, No, Unknown };

/// A named example class of f in M_n(Z(G)) with its documented operator
/// properties. The lambda-invertibility rationales are cited facts, not
/// computed claims.
struct ExamplePreset {
    std::string name;
    GroupDescriptor G;
    GroupRingMatrix<std::int64_t> f;
    Claim l1_invertible;
    std::string rationale;
};

inline ExamplePreset preset(const std::string& name) {
    auto make = [](const std::string& nm, const std::string& grp,
                   const std::vector<std::pair<std::string, std::int64_t>>& terms,
                   Claim l1, const std::string& why) {
        GroupDescriptor G = GroupDescriptor::parse(grp);
        GroupRingMatrix<std::int64_t> f(G, 1, 1);
        for (const auto& [el, c] : terms) f.at(0, 0).add_to(parse_element(G, el), c);
        return ExamplePreset{nm, G, f, l1, why};
    };
    if (name == "l1-dominant-z")
        return make("l1-dominant-z", "Z", {{"0", 3}, {"1", -1}, {"2", -1}}, Claim::Yes,
                    "f = 3e - g - g^2: |{-1,-1}|_1 = 2 < 3, invertible in l1(Z) by the "
                    "Neumann series, hence lambda(f) invertible");
    if (name == "l1-dominant-f2")
        return make("l1-dominant-f2", "F2", {{"e", 4}, {"a", -1}, {"b", -1}}, Claim::Yes,
                    "f = 4e - a - b: coefficient mass 2 < 4, invertible in l1(F2)");
    if (name == "harmonic-f2")
        return make("harmonic-f2", "F2",
                    {{"e", 4}, {"a", -1}, {"a^-1", -1}, {"b", -1}, {"b^-1", -1}}, Claim::No,
                    "Harmonic model: ||lambda(a+a^-1+b+b^-1)|| = 2*sqrt(3) < 4 on the "
                    "nonamenable F2, so lambda(f) is invertible; the coefficient-sum "
                    "homomorphism l1(G) -> C kills f, so f is not invertible in l1");
    if (name == "li-example-f2")
        return make("li-example-f2", "F2", {{"e", 3}, {"b", 1}, {"ab", -1}, {"a^2b", -1}},
                    Claim::No,
                    "f = 3e + (e - a - a^2) b with a, b generating a free semigroup: "
                    "lambda(f) invertible but f not invertible in l1");
    throw config_error("unknown preset: " + name);
}

inline std::vector<std::string> preset_names() {
    return {"l1-dominant-z", "l1-dominant-f2", "harmonic-f2", "li-example-f2"};
}

}  // namespace algact
