#include "cpx/report.hpp"

#include "cpx/version.hpp"

namespace cpx {

using nlohmann::json;

json RunReport::to_json() const {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["inputs"] = inputs;
    j["results"] = results;
    if (seed) {
        j["seed"] = *seed;
    } else {
        j["seed"] = nullptr;
    }
    j["flags"] = flags;
    return j;
}

std::string RunReport::dump() const { return to_json().dump(2) + "\n"; }

RunReport RunReport::from_json(const json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    r.flags = j.at("flags").get<std::vector<std::string>>();
    return r;
}

json to_json(const StatReport& r) {
    return json{{"kind", to_string(r.kind)},
                {"value", r.value},
                {"i_star", r.i_star},
                {"j_star", r.j_star}};
}

json to_json(const TailApprox& t) {
    json j{{"value", t.value},
           {"log_value", t.log_value},
           {"constant", t.constant},
           {"exponent_power", t.exponent_power},
           {"pre_asymptotic", t.pre_asymptotic}};
    if (!t.constant_source.empty()) j["constant_source"] = t.constant_source;
    return j;
}

json to_json(const ConstantEstimate& e) {
    json j{{"kind", to_string(e.kind)},
           {"value", e.value},
           {"std_error", e.std_error},
           {"n_replicates", e.n_replicates},
           {"alpha", e.grid.alpha},
           {"lambda", e.grid.horizon},
           {"step", e.grid.step}};
    if (e.kind == ConstantKind::POfLambda || e.kind == ConstantKind::QOfLambda) {
        j["lambda1"] = e.lambda1;
    }
    if (e.has_f) {
        j["b_over_a"] = e.b_over_a;
        j["c_over_sqrt_a"] = e.c_over_sqrt_a;
    }
    return j;
}

json to_json(const TailEstimate& e) {
    return json{{"p_hat", e.p_hat},
                {"ci_low", e.ci_low},
                {"ci_high", e.ci_high},
                {"n_rep", e.n_rep},
                {"grid_m", e.grid_m},
                {"threshold", e.threshold}};
}

json to_json(const StudyRow& row) {
    return json{{"threshold", row.threshold},
                {"p_hat", row.p_hat},
                {"ci_low", row.ci_low},
                {"ci_high", row.ci_high},
                {"p_hat_fine", row.p_hat_fine},
                {"analytic", row.analytic},
                {"ratio", row.ratio}};
}

}  // namespace cpx
