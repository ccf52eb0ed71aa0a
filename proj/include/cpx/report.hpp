#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpx/asymptotics.hpp"
#include "cpx/fieldsim.hpp"
#include "cpx/pickands.hpp"
#include "cpx/series.hpp"

namespace cpx {

// One structured report per CLI run. Keys serialize in sorted order and no
// timestamps are recorded, so identical inputs give byte-identical payloads.
struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::vector<std::string> flags;

    nlohmann::json to_json() const;
    std::string dump() const;
    static RunReport from_json(const nlohmann::json& j);
};

nlohmann::json to_json(const StatReport& r);
nlohmann::json to_json(const TailApprox& t);
nlohmann::json to_json(const ConstantEstimate& e);
nlohmann::json to_json(const TailEstimate& e);
nlohmann::json to_json(const StudyRow& row);

}  // namespace cpx
