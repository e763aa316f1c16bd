#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recsel/dataset.hpp"
#include "recsel/types.hpp"

namespace recsel {

struct MfConfig {
    int factors = 100;
    double learning_rate = 0.01;
    double regularization = 0.1;
    int epochs = 20;
    std::uint64_t seed = 0;
};

// Biased matrix-factorization model fit by SGD: r_hat = mu + b_u + b_i +
// q_i' p_u. Entities never seen in training fall back to the bias terms that
// are available (global mean only, in the worst case).
struct FactorModel {
    Matrix user_factors;   // |U| x k
    Matrix item_factors;   // |I| x k
    Vector user_bias;
    Vector item_bias;
    std::vector<char> user_seen;
    std::vector<char> item_seen;
    double global_mean = 0.0;
    int factors = 0;
    double scale_lo = 0.0;
    double scale_hi = 0.0;
    std::vector<double> train_rmse;  // per epoch

    double predict(UserId u, ItemId i) const;
};

FactorModel fit_mf(const RatingDataset& train, const MfConfig& cfg);

// Predictions for the candidate list, clipped to the rating scale, ordered as
// the candidates. Throws on an empty candidate list.
Vector predicted_mean_vector(const FactorModel& model, UserId user,
                             const ItemList& candidates);

void save_factor_model(const FactorModel& model, const std::string& path);
FactorModel load_factor_model(const std::string& path);

}  // namespace recsel
