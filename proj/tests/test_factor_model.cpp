#include <doctest.h>

#include <cstdio>

#include "recsel/factor_model.hpp"
#include "recsel/rng.hpp"

using namespace recsel;

namespace {

RatingDataset make_dataset(
    const std::vector<std::tuple<std::string, std::string, double>>& rows) {
    RatingDataset ds;
    ds.scale_lo = 1.0;
    ds.scale_hi = 5.0;
    for (const auto& [u, i, r] : rows) {
        ds.upsert(ds.intern_user(u), ds.intern_item(i), r);
    }
    return ds;
}

RatingDataset random_dataset(int users, int items, double density,
                             std::uint64_t seed) {
    Xoshiro256StarStar rng(seed);
    std::vector<std::tuple<std::string, std::string, double>> rows;
    for (int u = 0; u < users; ++u) {
        for (int i = 0; i < items; ++i) {
            if (rng.uniform() < density) {
                rows.emplace_back("u" + std::to_string(u),
                                  "i" + std::to_string(i),
                                  1.0 + static_cast<double>(rng.below(5)));
            }
        }
    }
    return make_dataset(rows);
}

}  // namespace

TEST_CASE("constant training data pins predictions to the constant") {
    std::vector<std::tuple<std::string, std::string, double>> rows;
    for (int u = 0; u < 6; ++u) {
        for (int i = 0; i < 8; ++i) {
            rows.emplace_back("u" + std::to_string(u), "i" + std::to_string(i),
                              3.0);
        }
    }
    const auto ds = make_dataset(rows);
    MfConfig cfg;
    cfg.factors = 100;
    cfg.epochs = 20;
    cfg.seed = 1;
    const auto model = fit_mf(ds, cfg);
    for (UserId u = 0; u < 6; ++u) {
        for (ItemId i = 0; i < 8; ++i) {
            CHECK(model.predict(u, i) == doctest::Approx(3.0).epsilon(0.05 / 3.0));
        }
    }
}

TEST_CASE("training RMSE does not end above where it started") {
    const auto ds = random_dataset(20, 25, 0.4, 3);
    MfConfig cfg;
    cfg.factors = 16;
    cfg.epochs = 20;
    cfg.seed = 2;
    const auto model = fit_mf(ds, cfg);
    REQUIRE(model.train_rmse.size() == 20);
    CHECK(model.train_rmse.back() <= model.train_rmse.front());
}

TEST_CASE("fit is deterministic given the seed") {
    const auto ds = random_dataset(12, 15, 0.5, 7);
    MfConfig cfg;
    cfg.factors = 8;
    cfg.epochs = 5;
    cfg.seed = 11;
    const auto m1 = fit_mf(ds, cfg);
    const auto m2 = fit_mf(ds, cfg);
    CHECK((m1.user_factors - m2.user_factors).norm() == 0.0);
    CHECK((m1.item_factors - m2.item_factors).norm() == 0.0);
    CHECK((m1.user_bias - m2.user_bias).norm() == 0.0);
    cfg.seed = 12;
    const auto m3 = fit_mf(ds, cfg);
    CHECK((m1.user_factors - m3.user_factors).norm() > 0.0);
}

TEST_CASE("per-sample SGD direction matches central finite differences") {
    // 3 users x 3 items toy problem; the SGD step must descend
    // L = 0.5 e^2 + 0.5 reg (b_u^2 + b_i^2 + |p_u|^2 + |q_i|^2)
    const double reg = 0.1;
    const int k = 2;
    Xoshiro256StarStar rng(19);
    Vector pu(k), qi(k);
    for (int f = 0; f < k; ++f) {
        pu(f) = rng.normal();
        qi(f) = rng.normal();
    }
    double bu = 0.3, bi = -0.2, mu = 3.1, r = 4.0;

    auto loss = [&](double bu_, double bi_, const Vector& pu_, const Vector& qi_) {
        const double e = r - (mu + bu_ + bi_ + pu_.dot(qi_));
        return 0.5 * e * e + 0.5 * reg * (bu_ * bu_ + bi_ * bi_ +
                                          pu_.squaredNorm() + qi_.squaredNorm());
    };

    const double e = r - (mu + bu + bi + pu.dot(qi));
    // analytic gradients implied by the update rules (negated directions)
    const double g_bu = -(e - reg * bu);
    const double g_bi = -(e - reg * bi);
    const Vector g_pu = -(e * qi - reg * pu);
    const Vector g_qi = -(e * pu - reg * qi);

    const double h = 1e-6;
    const double fd_bu = (loss(bu + h, bi, pu, qi) - loss(bu - h, bi, pu, qi)) / (2 * h);
    const double fd_bi = (loss(bu, bi + h, pu, qi) - loss(bu, bi - h, pu, qi)) / (2 * h);
    CHECK(g_bu == doctest::Approx(fd_bu).epsilon(1e-5));
    CHECK(g_bi == doctest::Approx(fd_bi).epsilon(1e-5));
    for (int f = 0; f < k; ++f) {
        Vector pp = pu, pm = pu;
        pp(f) += h;
        pm(f) -= h;
        CHECK(g_pu(f) ==
              doctest::Approx((loss(bu, bi, pp, qi) - loss(bu, bi, pm, qi)) / (2 * h))
                  .epsilon(1e-5));
        Vector qp = qi, qm = qi;
        qp(f) += h;
        qm(f) -= h;
        CHECK(g_qi(f) ==
              doctest::Approx((loss(bu, bi, pu, qp) - loss(bu, bi, pu, qm)) / (2 * h))
                  .epsilon(1e-5));
    }
}

TEST_CASE("predictions are clipped to the rating scale") {
    const auto ds = make_dataset({{"u", "a", 5.0}, {"u", "b", 5.0},
                                  {"v", "a", 5.0}, {"v", "b", 5.0}});
    MfConfig cfg;
    cfg.factors = 4;
    cfg.epochs = 50;
    cfg.learning_rate = 0.05;
    cfg.regularization = 0.0;
    cfg.seed = 3;
    const auto model = fit_mf(ds, cfg);
    const auto mu = predicted_mean_vector(model, 0, {0, 1});
    for (Index i = 0; i < mu.size(); ++i) {
        CHECK(mu(i) <= 5.0);
        CHECK(mu(i) >= 1.0);
    }
}

TEST_CASE("cold entities use bias fallbacks") {
    auto ds = make_dataset({{"u", "a", 4.0}, {"u", "b", 2.0},
                            {"v", "a", 4.0}, {"v", "b", 2.0}});
    // register a test-only item in the shared id space, unseen in training
    const ItemId cold = ds.intern_item("cold");
    MfConfig cfg;
    cfg.factors = 4;
    cfg.epochs = 10;
    cfg.seed = 4;
    const auto model = fit_mf(ds, cfg);
    const double expect =
        std::clamp(model.global_mean + model.user_bias(0), 1.0, 5.0);
    CHECK(model.predict(0, cold) == doctest::Approx(expect));
    // fully unknown pair falls back to the global mean
    CHECK(model.predict(999, 999) ==
          doctest::Approx(std::clamp(model.global_mean, 1.0, 5.0)));
}

TEST_CASE("prediction vector matches candidate order and length") {
    const auto ds = random_dataset(8, 10, 0.6, 5);
    MfConfig cfg;
    cfg.factors = 4;
    cfg.epochs = 3;
    cfg.seed = 6;
    const auto model = fit_mf(ds, cfg);
    const ItemList cands = {4, 1, 7};
    const auto mu = predicted_mean_vector(model, 2, cands);
    REQUIRE(mu.size() == 3);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        CHECK(mu(static_cast<Index>(i)) == model.predict(2, cands[i]));
    }
    CHECK_THROWS_AS(predicted_mean_vector(model, 2, {}), std::invalid_argument);
}

TEST_CASE("model save/load roundtrip preserves predictions") {
    const auto ds = random_dataset(6, 9, 0.7, 8);
    MfConfig cfg;
    cfg.factors = 5;
    cfg.epochs = 4;
    cfg.seed = 9;
    const auto model = fit_mf(ds, cfg);
    save_factor_model(model, "model_test.tmp");
    const auto loaded = load_factor_model("model_test.tmp");
    for (UserId u = 0; u < 6; ++u) {
        for (ItemId i = 0; i < 9; ++i) {
            CHECK(loaded.predict(u, i) == doctest::Approx(model.predict(u, i)));
        }
    }
    std::remove("model_test.tmp");
}

TEST_CASE("bad inputs rejected") {
    RatingDataset empty;
    MfConfig cfg;
    CHECK_THROWS_AS(fit_mf(empty, cfg), std::invalid_argument);
    const auto ds = random_dataset(4, 4, 0.9, 2);
    cfg.factors = 0;
    CHECK_THROWS_AS(fit_mf(ds, cfg), std::invalid_argument);
}
