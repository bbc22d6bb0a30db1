#pragma once

// JSON descriptors for catalog maps:
//   {"v": 1, "kind": "c_d", "d": 2}
//   {"v": 1, "kind": "poly", "coeffs": [[0,0],[1,0],[0,1]]}
// "v" is optional on input (must be 1 when present), always written on output.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "parafatou/maps.hpp"

namespace parafatou {

inline MapKind kind_from_name(const std::string& name) {
    if (name == "quad") return MapKind::quad;
    if (name == "expm1") return MapKind::expm1_map;
    if (name == "zexpz") return MapKind::zexpz;
    if (name == "blaschke") return MapKind::blaschke;
    if (name == "blaschke_tilde") return MapKind::blaschke_tilde;
    if (name == "b_inf") return MapKind::b_inf;
    if (name == "c_d") return MapKind::c_d;
    if (name == "c_inf") return MapKind::c_inf;
    if (name == "poly") return MapKind::poly;
    throw std::invalid_argument("unknown map kind: " + name);
}

inline ParabolicMap map_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("map descriptor: expected an object with a \"kind\" string");
    if (j.contains("v") && j["v"] != 1)
        throw std::invalid_argument("map descriptor: unsupported schema version");
    MapKind kind = kind_from_name(j["kind"].get<std::string>());
    if (kind == MapKind::poly) {
        if (!j.contains("coeffs") || !j["coeffs"].is_array())
            throw std::invalid_argument("poly map: missing \"coeffs\" array");
        std::vector<Cplx> cs;
        for (const auto& e : j["coeffs"]) {
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("poly map: coefficients are [re, im] pairs");
            cs.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return make_poly(std::move(cs));
    }
    if (kind == MapKind::blaschke || kind == MapKind::blaschke_tilde || kind == MapKind::c_d) {
        if (!j.contains("d") || !j["d"].is_number_integer())
            throw std::invalid_argument(std::string(kind_name(kind)) + " map: missing integer \"d\"");
        return make_map(kind, j["d"].get<int>());
    }
    return make_map(kind);
}

inline ParabolicMap map_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("map descriptor: ") + e.what());
    }
    return map_from_json(j);
}

inline nlohmann::json map_to_json(const ParabolicMap& m) {
    nlohmann::json j;
    j["v"] = 1;
    j["kind"] = kind_name(m.kind);
    if (m.kind == MapKind::blaschke || m.kind == MapKind::blaschke_tilde || m.kind == MapKind::c_d)
        j["d"] = m.d;
    if (m.kind == MapKind::poly) {
        auto arr = nlohmann::json::array();
        for (const auto& c : m.coeffs)
            arr.push_back({c.real(), c.imag()});
        j["coeffs"] = arr;
    }
    return j;
}

}  // namespace parafatou
