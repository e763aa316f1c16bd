#pragma once

#include <string>
#include <utility>
#include <vector>

#include "recsel/baselines.hpp"
#include "recsel/dataset.hpp"
#include "recsel/factor_model.hpp"
#include "recsel/padm.hpp"
#include "recsel/types.hpp"

namespace recsel {

struct MethodSpec {
    enum class Kind { top_n, mv, dro };
    Kind kind = Kind::top_n;
    std::vector<double> alpha_grid;                        // mv
    std::vector<std::pair<double, double>> kappa_grid;     // dro
};

struct ExperimentConfig {
    std::string dataset_path;
    RatingSchema schema = RatingSchema::movielens();
    double split_ratio = 0.6;
    std::uint64_t base_seed = 42;
    std::size_t min_ratings = 50;
    int runs = 10;
    std::size_t users_per_run = 100;
    int top_n = 3;
    double relevance_threshold = 4.0;
    MfConfig predictor;
    double shrinkage_weight = 0.25;
    double covariance_floor = 1e-6;
    Formulation formulation;
    PadmSettings padm;
    std::vector<MethodSpec> methods;
};

struct Report {
    struct Row {
        std::string method;
        std::string param;
        double f1_mean = 0, f1_se = 0;
        double div_mean = 0, div_se = 0;
        double time_mean = 0, time_se = 0;
    };
    struct RunRow {
        int run = 0;
        std::string method;
        std::string param;
        double f1 = 0;
        double div = 0;
    };
    std::vector<Row> rows;
    std::vector<RunRow> run_rows;
};

struct SelectionRecord {
    int run = 0;
    std::string user;
    std::string method;
    std::string param;
    int rank = 0;
    std::string item;
};

ExperimentConfig load_experiment_config(const std::string& path);

// Full protocol: per run, split / fit / estimate covariances / sample users /
// select with every method and parameter point / score. Deterministic given
// the config (wall-clock columns aside); run r derives its seeds from
// base_seed + r.
Report run_experiment(const ExperimentConfig& cfg,
                      std::vector<SelectionRecord>* selections = nullptr);

void write_report_csv(const Report& report, const std::string& path);
void write_selections_csv(const std::vector<SelectionRecord>& records,
                          const std::string& path);

}  // namespace recsel
