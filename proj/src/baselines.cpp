#include "recsel/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace recsel {

Selection top_n_select(const Vector& mu, int top_n) {
    const Index n = mu.size();
    if (top_n < 0 || top_n > n) {
        throw std::invalid_argument("top_n_select: N outside [0, n]");
    }
    std::vector<Index> idx(n);
    std::iota(idx.begin(), idx.end(), Index{0});
    std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
        if (mu(a) != mu(b)) return mu(a) > mu(b);
        return a < b;
    });
    Selection z = Selection::Zero(n);
    for (int i = 0; i < top_n; ++i) z(idx[i]) = 1.0;
    return z;
}

double mean_variance_objective(const Selection& z, const Vector& mu,
                               const Matrix& sigma, double alpha) {
    return (1.0 - alpha) * mu.dot(z) - alpha * z.dot(sigma * z);
}

namespace {

Selection exhaustive_mv(const Vector& mu, const Matrix& sigma, double alpha,
                        int top_n) {
    const Index n = mu.size();
    double combos = 1.0;
    for (int i = 0; i < top_n; ++i) {
        combos *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    if (combos > 1e5) {
        throw std::invalid_argument(
            "mean_variance_select: exhaustive guard C(n,N) <= 1e5 exceeded");
    }
    std::vector<Index> comb(top_n);
    std::iota(comb.begin(), comb.end(), Index{0});
    Selection best;
    double best_val = -std::numeric_limits<double>::infinity();
    for (;;) {
        Selection z = Selection::Zero(n);
        for (const Index i : comb) z(i) = 1.0;
        const double val = mean_variance_objective(z, mu, sigma, alpha);
        if (best.size() == 0 || val > best_val) {
            best_val = val;
            best = z;
        }
        int j = top_n - 1;
        while (j >= 0 && comb[j] == n - top_n + j) --j;
        if (j < 0) break;
        ++comb[j];
        for (int l = j + 1; l < top_n; ++l) comb[l] = comb[l - 1] + 1;
    }
    return best;
}

Selection local_search_mv(const Vector& mu, const Matrix& sigma, double alpha,
                          int top_n) {
    const Index n = mu.size();
    Selection z = top_n_select(mu, top_n);
    double val = mean_variance_objective(z, mu, sigma, alpha);

    for (int sweep = 0; sweep < 500; ++sweep) {
        bool improved = false;
        for (Index out = 0; out < n && !improved; ++out) {
            if (z(out) != 1.0) continue;
            for (Index in = 0; in < n && !improved; ++in) {
                if (z(in) != 0.0) continue;
                Selection cand = z;
                cand(out) = 0.0;
                cand(in) = 1.0;
                const double cand_val =
                    mean_variance_objective(cand, mu, sigma, alpha);
                if (cand_val > val) {
                    z = cand;
                    val = cand_val;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return z;
}

}  // namespace

Selection mean_variance_select(const Vector& mu, const Matrix& sigma,
                               double alpha, int top_n, MvStrategy strategy) {
    const Index n = mu.size();
    if (top_n < 1 || top_n > n) {
        throw std::invalid_argument("mean_variance_select: N outside [1, n]");
    }
    if (sigma.rows() != n || sigma.cols() != n) {
        throw std::invalid_argument("mean_variance_select: sigma shape");
    }
    if (strategy == MvStrategy::exhaustive) {
        return exhaustive_mv(mu, sigma, alpha, top_n);
    }
    return local_search_mv(mu, sigma, alpha, top_n);
}

}  // namespace recsel
