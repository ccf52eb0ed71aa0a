#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

// Frozen expected values regenerated by scripts/gen_fixtures.py.
inline const nlohmann::json& fixtures() {
    static const nlohmann::json fx = [] {
        std::ifstream in(CPX_FIXTURES_PATH);
        if (!in) throw std::runtime_error("fixture file missing: " CPX_FIXTURES_PATH);
        return nlohmann::json::parse(in);
    }();
    return fx;
}

inline double fx(const std::string& key) { return fixtures().at(key).get<double>(); }
