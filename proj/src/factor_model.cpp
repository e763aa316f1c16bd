#include "recsel/factor_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "recsel/rng.hpp"

namespace recsel {

double FactorModel::predict(UserId u, ItemId i) const {
    const bool ku = u >= 0 && u < static_cast<UserId>(user_seen.size()) &&
                    user_seen[u];
    const bool ki = i >= 0 && i < static_cast<ItemId>(item_seen.size()) &&
                    item_seen[i];
    double r = global_mean;
    if (ku) r += user_bias(u);
    if (ki) r += item_bias(i);
    if (ku && ki) r += user_factors.row(u).dot(item_factors.row(i));
    return std::clamp(r, scale_lo, scale_hi);
}

FactorModel fit_mf(const RatingDataset& train, const MfConfig& cfg) {
    if (train.records().empty()) {
        throw std::invalid_argument("fit_mf: empty training set");
    }
    if (cfg.factors < 1 || cfg.learning_rate <= 0.0 ||
        cfg.regularization < 0.0 || cfg.epochs < 1) {
        throw std::invalid_argument("fit_mf: invalid hyperparameters");
    }

    const Index nu = static_cast<Index>(train.n_users());
    const Index ni = static_cast<Index>(train.n_items());
    const int k = cfg.factors;

    FactorModel m;
    m.factors = k;
    m.scale_lo = train.scale_lo;
    m.scale_hi = train.scale_hi;
    m.user_bias = Vector::Zero(nu);
    m.item_bias = Vector::Zero(ni);
    m.user_factors.resize(nu, k);
    m.item_factors.resize(ni, k);
    m.user_seen.assign(nu, 0);
    m.item_seen.assign(ni, 0);

    Xoshiro256StarStar rng(cfg.seed);
    // Init scale 0.1/sqrt(k) keeps q'p dot products ~1e-3 so bias-dominated
    // data stays near the global mean from the start.
    const double init_std = 0.1 / std::sqrt(static_cast<double>(k));
    for (Index r = 0; r < nu; ++r) {
        for (int f = 0; f < k; ++f) m.user_factors(r, f) = init_std * rng.normal();
    }
    for (Index r = 0; r < ni; ++r) {
        for (int f = 0; f < k; ++f) m.item_factors(r, f) = init_std * rng.normal();
    }

    double sum = 0.0;
    for (const auto& rec : train.records()) {
        sum += rec.rating;
        m.user_seen[rec.user] = 1;
        m.item_seen[rec.item] = 1;
    }
    m.global_mean = sum / static_cast<double>(train.records().size());

    const double lr = cfg.learning_rate;
    const double reg = cfg.regularization;
    std::vector<std::size_t> order(train.records().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    Vector pu(k), qi(k);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double sq_err = 0.0;
        for (const std::size_t idx : order) {
            const auto& rec = train.records()[idx];
            pu = m.user_factors.row(rec.user);
            qi = m.item_factors.row(rec.item);
            const double pred = m.global_mean + m.user_bias(rec.user) +
                                m.item_bias(rec.item) + pu.dot(qi);
            const double e = rec.rating - pred;
            if (!std::isfinite(e)) {
                throw std::runtime_error(
                    "fit_mf: non-finite training error at epoch " +
                    std::to_string(epoch) + " (diverged; lower learning_rate)");
            }
            sq_err += e * e;
            m.user_bias(rec.user) += lr * (e - reg * m.user_bias(rec.user));
            m.item_bias(rec.item) += lr * (e - reg * m.item_bias(rec.item));
            m.user_factors.row(rec.user) += lr * (e * qi - reg * pu).transpose();
            m.item_factors.row(rec.item) += lr * (e * pu - reg * qi).transpose();
        }
        m.train_rmse.push_back(
            std::sqrt(sq_err / static_cast<double>(order.size())));
    }
    return m;
}

Vector predicted_mean_vector(const FactorModel& model, UserId user,
                             const ItemList& candidates) {
    if (candidates.empty()) {
        throw std::invalid_argument("predicted_mean_vector: empty candidates");
    }
    Vector mu(static_cast<Index>(candidates.size()));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        mu(static_cast<Index>(i)) = model.predict(user, candidates[i]);
    }
    return mu;
}

void save_factor_model(const FactorModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_factor_model: cannot write '" + path + "'");
    }
    out.precision(17);
    out << "k," << model.factors << "\n";
    out << "global_mean," << model.global_mean << "\n";
    out << "scale," << model.scale_lo << ',' << model.scale_hi << "\n";
    auto dump = [&](const char* tag, const Matrix& factors, const Vector& bias,
                    const std::vector<char>& seen) {
        for (Index r = 0; r < factors.rows(); ++r) {
            if (!seen[r]) continue;
            out << tag << ',' << r << ',' << bias(r);
            for (int f = 0; f < model.factors; ++f) out << ',' << factors(r, f);
            out << '\n';
        }
    };
    dump("user", model.user_factors, model.user_bias, model.user_seen);
    dump("item", model.item_factors, model.item_bias, model.item_seen);
}

FactorModel load_factor_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_factor_model: cannot open '" + path + "'");
    }
    FactorModel m;
    std::string line;
    struct Row {
        bool user;
        Index id;
        double bias;
        std::vector<double> f;
    };
    std::vector<Row> rows;
    Index max_user = -1, max_item = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        auto next_double = [&]() {
            std::string v;
            std::getline(ss, v, ',');
            return std::stod(v);
        };
        if (tok == "k") {
            m.factors = static_cast<int>(next_double());
        } else if (tok == "global_mean") {
            m.global_mean = next_double();
        } else if (tok == "scale") {
            m.scale_lo = next_double();
            m.scale_hi = next_double();
        } else if (tok == "user" || tok == "item") {
            Row row;
            row.user = (tok == "user");
            row.id = static_cast<Index>(next_double());
            row.bias = next_double();
            row.f.resize(m.factors);
            for (int f = 0; f < m.factors; ++f) row.f[f] = next_double();
            (row.user ? max_user : max_item) =
                std::max(row.user ? max_user : max_item, row.id);
            rows.push_back(std::move(row));
        }
    }
    m.user_factors = Matrix::Zero(max_user + 1, m.factors);
    m.item_factors = Matrix::Zero(max_item + 1, m.factors);
    m.user_bias = Vector::Zero(max_user + 1);
    m.item_bias = Vector::Zero(max_item + 1);
    m.user_seen.assign(max_user + 1, 0);
    m.item_seen.assign(max_item + 1, 0);
    for (const auto& row : rows) {
        auto& factors = row.user ? m.user_factors : m.item_factors;
        auto& bias = row.user ? m.user_bias : m.item_bias;
        auto& seen = row.user ? m.user_seen : m.item_seen;
        bias(row.id) = row.bias;
        for (int f = 0; f < m.factors; ++f) factors(row.id, f) = row.f[f];
        seen[row.id] = 1;
    }
    return m;
}

}  // namespace recsel
