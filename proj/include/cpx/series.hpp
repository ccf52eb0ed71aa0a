#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cpx/errors.hpp"

namespace cpx {

enum class StatKind { Z1, Z2, Z3, Z4 };

std::string to_string(StatKind kind);

// Observed sequence x_1..x_m. Rejects NaN/inf at construction: a silent NaN
// would propagate through every max below.
class ObservationSeries {
public:
    explicit ObservationSeries(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t m() const { return values_.size(); }

private:
    std::vector<double> values_;
};

// Baseline mean mu0 (optional) and shift delta (optional, > 0 when present).
struct HypothesisParams {
    std::optional<double> mu0;
    std::optional<double> delta;

    double require_mu0() const;
    double require_delta() const;
};

// A statistic value with its maximizing index pair, 0 <= i < j <= m under the
// lexicographic tie-break (smallest i, then smallest j).
struct StatReport {
    StatKind kind = StatKind::Z1;
    double value = 0.0;
    std::size_t i_star = 0;
    std::size_t j_star = 1;
};

}  // namespace cpx
