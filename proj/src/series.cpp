#include "cpx/series.hpp"

#include <cmath>

namespace cpx {

std::string to_string(StatKind kind) {
    switch (kind) {
        case StatKind::Z1: return "z1";
        case StatKind::Z2: return "z2";
        case StatKind::Z3: return "z3";
        case StatKind::Z4: return "z4";
    }
    return "?";
}

ObservationSeries::ObservationSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw ParamError("observation series needs m >= 2, got m = " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InputError("non-finite observation at position " + std::to_string(i + 1));
        }
    }
}

double HypothesisParams::require_mu0() const {
    if (!mu0 || !std::isfinite(*mu0)) {
        throw ParamError("mu0 is required for this statistic");
    }
    return *mu0;
}

double HypothesisParams::require_delta() const {
    if (!delta || !std::isfinite(*delta) || *delta <= 0.0) {
        throw ParamError("delta > 0 is required for this statistic");
    }
    return *delta;
}

}  // namespace cpx
