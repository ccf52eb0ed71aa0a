#pragma once

#include <vector>

#include "cpx/series.hpp"

namespace cpx {

// Partial sums with S_0 = 0 prepended: output[k] = x_1 + ... + x_k, length m+1.
std::vector<double> partial_sums(const ObservationSeries& x);

// The four change-point statistics, each maximized over all pairs
// 0 <= i < j <= m with the lexicographic tie-break.
//
//   z1: delta * max [S_j - j mu0 - (S_i - i mu0) - (j-i) delta/2]   (mu0, delta known)
//   z2: as z1 with mu0 replaced by S_m/m                            (delta known)
//   z3: delta * max [S_j - S_i - (j-i) S_m/m - delta/2 (j-i)(1-(j-i)/m)]
//   z4: max [S_j - S_i - (j-i) S_m/m]^+ / sqrt((j-i)(1-(j-i)/m))    (parameter-free)
//
// z4 assigns pairs with j-i = m a zero contribution (the 0/0 limit along the
// identically-zero numerator) and reports (0,1) when the overall max is 0.
StatReport z1(const ObservationSeries& x, const HypothesisParams& h);
StatReport z2(const ObservationSeries& x, const HypothesisParams& h);
StatReport z3(const ObservationSeries& x, const HypothesisParams& h);
StatReport z4(const ObservationSeries& x);

// Re-evaluates the defining expression of `kind` at a single index pair.
double stat_at_pair(StatKind kind, const ObservationSeries& x, const HypothesisParams& h,
                    std::size_t i, std::size_t j);

}  // namespace cpx
