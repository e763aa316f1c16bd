#pragma once

#include "recsel/types.hpp"

namespace recsel {

// Indicator of the N largest predicted means, ties to the lowest index.
Selection top_n_select(const Vector& mu, int top_n);

enum class MvStrategy { exhaustive, local_search };

// Maximizes (1 - alpha) mu'z - alpha z' Sigma z over N-subsets. Exhaustive
// enumeration is exact and guarded at C(n,N) <= 1e5; local_search runs
// first-improvement single swaps from the top-N start (at most 500 sweeps).
Selection mean_variance_select(const Vector& mu, const Matrix& sigma,
                               double alpha, int top_n,
                               MvStrategy strategy = MvStrategy::local_search);

double mean_variance_objective(const Selection& z, const Vector& mu,
                               const Matrix& sigma, double alpha);

}  // namespace recsel
