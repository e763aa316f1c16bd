#include "recsel/covariance.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "recsel/psd.hpp"

namespace recsel {

CovarianceTable pairwise_covariance(const RatingDataset& train) {
    if (train.records().empty()) {
        throw std::invalid_argument("pairwise_covariance: empty training set");
    }

    struct Acc {
        std::int64_t n = 0;
        double sum_i = 0.0;   // ratings of the lower-id item
        double sum_j = 0.0;   // ratings of the higher-id item
        double sum_ij = 0.0;
    };
    std::unordered_map<std::uint64_t, Acc> acc;

    for (UserId u = 0; u < static_cast<UserId>(train.n_users()); ++u) {
        const auto& ratings = train.user_ratings(u);
        for (std::size_t a = 0; a < ratings.size(); ++a) {
            for (std::size_t b = a; b < ratings.size(); ++b) {
                ItemId i = ratings[a].first;
                ItemId j = ratings[b].first;
                double ri = ratings[a].second;
                double rj = ratings[b].second;
                if (j < i) {
                    std::swap(i, j);
                    std::swap(ri, rj);
                }
                auto& e = acc[(static_cast<std::uint64_t>(
                                  static_cast<std::uint32_t>(i))
                               << 32) |
                              static_cast<std::uint32_t>(j)];
                e.n += 1;
                e.sum_i += ri;
                e.sum_j += rj;
                e.sum_ij += ri * rj;
            }
        }
    }

    CovarianceTable table;
    for (const auto& [k, e] : acc) {
        const ItemId i = static_cast<ItemId>(k >> 32);
        const ItemId j = static_cast<ItemId>(k & 0xffffffffULL);
        const double n = static_cast<double>(e.n);
        const double mu_i = e.sum_i / n;
        const double mu_j = e.sum_j / n;
        const double sigma = e.sum_ij / n - mu_i * mu_j;
        table.set(i, j, sigma, e.n);
    }
    return table;
}

Matrix shrinkage_target(const Matrix& S) {
    const Index n = S.rows();
    Matrix F = Matrix::Zero(n, n);
    double corr_sum = 0.0;
    std::int64_t corr_count = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double denom = S(i, i) * S(j, j);
            if (denom > 0.0) {
                corr_sum += S(i, j) / std::sqrt(denom);
            }
            ++corr_count;
        }
    }
    const double rho_bar = (corr_count > 0) ? corr_sum / corr_count : 0.0;
    for (Index i = 0; i < n; ++i) {
        F(i, i) = S(i, i);
        for (Index j = i + 1; j < n; ++j) {
            const double denom = S(i, i) * S(j, j);
            if (denom > 0.0) {
                F(i, j) = F(j, i) = rho_bar * std::sqrt(denom);
            }
        }
    }
    return F;
}

UserCovariance user_covariance(const CovarianceTable& table,
                               const ItemList& candidates, double weight,
                               double floor) {
    if (candidates.empty()) {
        throw std::invalid_argument("user_covariance: empty candidate list");
    }
    if (weight < 0.0 || weight > 1.0) {
        throw std::invalid_argument("user_covariance: weight outside [0,1]");
    }
    const Index n = static_cast<Index>(candidates.size());
    Matrix S(n, n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = a; b < n; ++b) {
            const double sigma = table.get(candidates[a], candidates[b]).sigma;
            S(a, b) = S(b, a) = sigma;
        }
    }
    const Matrix F = shrinkage_target(S);
    const Matrix M = weight * S + (1.0 - weight) * F;

    UserCovariance out;
    const double lam_min = min_eigenvalue(M);
    out.jitter = std::max(0.0, floor - lam_min);
    out.sigma = psd_repair(M, floor);
    return out;
}

void write_covariance_csv(const CovarianceTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_covariance_csv: cannot write '" + path +
                                 "'");
    }
    out << "item_i,item_j,sigma,count\n";
    table.for_each([&](ItemId i, ItemId j, const CovarianceTable::Entry& e) {
        out << i << ',' << j << ',' << e.sigma << ',' << e.count << '\n';
    });
}

}  // namespace recsel
