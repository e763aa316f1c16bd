#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "recsel/dataset.hpp"
#include "recsel/types.hpp"

namespace recsel {

// Global pairwise sample covariances, keyed by unordered item pair. For a
// pair (i, j) the statistic is computed over the users who rated both items,
// with means taken over that same co-rater set. Pairs never co-rated are
// absent (equivalently zero). Diagonal entries exist for every rated item.
class CovarianceTable {
  public:
    struct Entry {
        double sigma = 0.0;
        std::int64_t count = 0;
    };

    Entry get(ItemId i, ItemId j) const {
        auto it = map_.find(key(i, j));
        if (it == map_.end()) return {};
        return it->second;
    }

    void set(ItemId i, ItemId j, double sigma, std::int64_t count) {
        map_[key(i, j)] = {sigma, count};
    }

    std::size_t size() const { return map_.size(); }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (const auto& [k, e] : map_) {
            fn(static_cast<ItemId>(k >> 32),
               static_cast<ItemId>(k & 0xffffffffULL), e);
        }
    }

  private:
    static std::uint64_t key(ItemId i, ItemId j) {
        const std::uint32_t a = static_cast<std::uint32_t>(std::min(i, j));
        const std::uint32_t b = static_cast<std::uint32_t>(std::max(i, j));
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    std::unordered_map<std::uint64_t, Entry> map_;
};

struct UserCovariance {
    Matrix sigma;           // dense |I(u)| x |I(u)|, PSD after repair
    double jitter = 0.0;    // eigenvalue lift applied by the repair
};

CovarianceTable pairwise_covariance(const RatingDataset& train);

// Constant-correlation target: diagonal preserved, off-diagonals set to
// rho_bar * sqrt(S_ii * S_jj) with rho_bar the mean off-diagonal correlation
// of S (zero-variance rows contribute correlation 0).
Matrix shrinkage_target(const Matrix& S);

// Sigma_u = psd_repair(w * S_u + (1 - w) * F_u, floor), S_u extracted from
// the table over the candidate list.
UserCovariance user_covariance(const CovarianceTable& table,
                               const ItemList& candidates, double weight,
                               double floor = 1e-6);

void write_covariance_csv(const CovarianceTable& table, const std::string& path);

}  // namespace recsel
