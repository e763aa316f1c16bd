#include "recsel/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "recsel/covariance.hpp"
#include "recsel/metrics.hpp"
#include "recsel/parallel.hpp"

namespace recsel {

namespace {

using nlohmann::json;

std::string format_param(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

struct MethodPoint {
    MethodSpec::Kind kind;
    double alpha = 0.0;
    double kappa1 = 0.0, kappa2 = 0.0;
    std::string method_name;
    std::string param_name;
};

std::vector<MethodPoint> expand_methods(const ExperimentConfig& cfg) {
    std::vector<MethodPoint> points;
    for (const auto& m : cfg.methods) {
        switch (m.kind) {
            case MethodSpec::Kind::top_n:
                points.push_back({m.kind, 0, 0, 0, "top_n", "-"});
                break;
            case MethodSpec::Kind::mv:
                for (const double a : m.alpha_grid) {
                    points.push_back(
                        {m.kind, a, 0, 0, "mv", "alpha=" + format_param(a)});
                }
                break;
            case MethodSpec::Kind::dro:
                for (const auto& [k1, k2] : m.kappa_grid) {
                    points.push_back({m.kind, 0, k1, k2, "dro",
                                      "k1=" + format_param(k1) +
                                          ";k2=" + format_param(k2)});
                }
                break;
        }
    }
    if (points.empty()) {
        throw std::invalid_argument("run_experiment: empty method roster");
    }
    return points;
}

double combinations(Index n, int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) {
        c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return c;
}

struct Welford {
    std::int64_t n = 0;
    double sum = 0.0, sumsq = 0.0;
    void add(double v) {
        ++n;
        sum += v;
        sumsq += v * v;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double se() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var =
            std::max(0.0, (sumsq - static_cast<double>(n) * m * m) /
                              static_cast<double>(n - 1));
        return std::sqrt(var / static_cast<double>(n));
    }
};

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_experiment_config: cannot open '" + path +
                                 "'");
    }
    json j;
    in >> j;

    ExperimentConfig cfg;
    const auto& ds = j.at("dataset");
    cfg.dataset_path = ds.at("path").get<std::string>();
    if (ds.contains("schema")) {
        const auto& sc = ds.at("schema");
        cfg.schema.user_col = sc.value("user_col", cfg.schema.user_col);
        cfg.schema.item_col = sc.value("item_col", cfg.schema.item_col);
        cfg.schema.rating_col = sc.value("rating_col", cfg.schema.rating_col);
        if (sc.contains("delimiter")) {
            const auto d = sc.at("delimiter").get<std::string>();
            cfg.schema.delimiter = d == "tab" ? '\t' : d.at(0);
        }
        if (sc.contains("scale")) {
            cfg.schema.scale = {sc.at("scale").at(0).get<double>(),
                                sc.at("scale").at(1).get<double>()};
        }
    }
    if (j.contains("split")) {
        const auto& sp = j.at("split");
        cfg.split_ratio = sp.value("ratio", cfg.split_ratio);
        cfg.base_seed = sp.value("base_seed", cfg.base_seed);
        cfg.min_ratings = sp.value("min_ratings", cfg.min_ratings);
    }
    cfg.runs = j.value("runs", cfg.runs);
    cfg.users_per_run = j.value("users_per_run", cfg.users_per_run);
    cfg.top_n = j.value("top_n", cfg.top_n);
    cfg.relevance_threshold =
        j.value("relevance_threshold", cfg.relevance_threshold);
    if (j.contains("predictor")) {
        const auto& p = j.at("predictor");
        cfg.predictor.factors = p.value("factors", cfg.predictor.factors);
        cfg.predictor.learning_rate =
            p.value("learning_rate", cfg.predictor.learning_rate);
        cfg.predictor.regularization =
            p.value("regularization", cfg.predictor.regularization);
        cfg.predictor.epochs = p.value("epochs", cfg.predictor.epochs);
    }
    cfg.shrinkage_weight = j.value("shrinkage_weight", cfg.shrinkage_weight);
    cfg.covariance_floor = j.value("covariance_floor", cfg.covariance_floor);
    if (j.contains("formulation")) {
        const auto& f = j.at("formulation");
        const std::string kind = f.value("kind", std::string("frobenius"));
        if (kind == "plain") {
            cfg.formulation.kind = FormulationKind::plain;
        } else if (kind == "trace") {
            cfg.formulation.kind = FormulationKind::trace;
        } else {
            cfg.formulation.kind = FormulationKind::frobenius;
        }
        cfg.formulation.lambda_p = f.value("lambda_p", cfg.formulation.lambda_p);
        cfg.formulation.lambda_q = f.value("lambda_q", cfg.formulation.lambda_q);
        cfg.formulation.tau_p = f.value("tau_p", cfg.formulation.tau_p);
        cfg.formulation.tau_q = f.value("tau_q", cfg.formulation.tau_q);
    }
    if (j.contains("padm")) {
        const auto& p = j.at("padm");
        cfg.padm.eps_in = p.value("eps_in", cfg.padm.eps_in);
        cfg.padm.eps_out = p.value("eps_out", cfg.padm.eps_out);
        cfg.padm.theta = p.value("theta", cfg.padm.theta);
        cfg.padm.gamma0 = p.value("gamma0", cfg.padm.gamma0);
        cfg.padm.max_outer = p.value("max_outer", cfg.padm.max_outer);
        cfg.padm.max_inner = p.value("max_inner", cfg.padm.max_inner);
        const std::string init = p.value("init", std::string("topk_spread"));
        cfg.padm.init =
            init == "eq7" ? PadmInit::eq7 : PadmInit::topk_spread;
        if (p.contains("conic")) {
            const auto& c = p.at("conic");
            cfg.padm.conic.tol_primal =
                c.value("tol_primal", cfg.padm.conic.tol_primal);
            cfg.padm.conic.tol_rel = c.value("tol_rel", cfg.padm.conic.tol_rel);
            cfg.padm.conic.max_iter = c.value("max_iter", cfg.padm.conic.max_iter);
        }
    }
    if (!j.contains("methods")) {
        throw std::runtime_error("load_experiment_config: missing methods");
    }
    for (const auto& m : j.at("methods")) {
        MethodSpec spec;
        const std::string name = m.at("name").get<std::string>();
        if (name == "top_n") {
            spec.kind = MethodSpec::Kind::top_n;
        } else if (name == "mv") {
            spec.kind = MethodSpec::Kind::mv;
            for (const auto& a : m.at("alpha_grid")) {
                spec.alpha_grid.push_back(a.get<double>());
            }
        } else if (name == "dro") {
            spec.kind = MethodSpec::Kind::dro;
            for (const auto& k : m.at("kappa_grid")) {
                spec.kappa_grid.emplace_back(k.at(0).get<double>(),
                                             k.at(1).get<double>());
            }
        } else {
            throw std::runtime_error("load_experiment_config: unknown method '" +
                                     name + "'");
        }
        cfg.methods.push_back(std::move(spec));
    }
    return cfg;
}

Report run_experiment(const ExperimentConfig& cfg,
                      std::vector<SelectionRecord>* selections) {
    if (cfg.runs < 1) throw std::invalid_argument("run_experiment: runs < 1");
    const auto points = expand_methods(cfg);

    RatingDataset ds = parse_ratings(cfg.dataset_path, cfg.schema);

    struct PointAgg {
        Welford f1_runs, div_runs, times;
    };
    std::vector<PointAgg> agg(points.size());
    Report report;

    for (int run = 0; run < cfg.runs; ++run) {
        const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(run);
        std::string stage = "split";
        try {
            const SplitDataset split =
                split_train_test(ds, cfg.split_ratio, seed, cfg.min_ratings);

            stage = "fit_predictor";
            MfConfig mf_cfg = cfg.predictor;
            mf_cfg.seed = seed;
            const FactorModel model = fit_mf(split.train, mf_cfg);

            stage = "covariance";
            const CovarianceTable table = pairwise_covariance(split.train);

            stage = "sample_users";
            const auto users =
                sample_target_users(split, cfg.users_per_run, seed,
                                    static_cast<std::size_t>(cfg.top_n));

            stage = "select";
            // Universe for the diversity metric: union of the target users'
            // candidate sets.
            std::map<ItemId, std::size_t> universe;
            std::vector<ItemList> all_candidates(users.size());
            for (std::size_t ui = 0; ui < users.size(); ++ui) {
                all_candidates[ui] = candidate_set(users[ui], split);
                for (const ItemId item : all_candidates[ui]) {
                    universe.emplace(item, 0);
                }
            }
            {
                std::size_t pos = 0;
                for (auto& [item, slot] : universe) slot = pos++;
            }

            struct UserOutcome {
                // per method point: selected items (ranked) and stats
                std::vector<ItemList> picks;
                std::vector<double> f1;
                std::vector<double> seconds;
            };
            std::vector<UserOutcome> outcomes(users.size());

            parallel_for(users.size(), [&](std::size_t ui) {
                const UserId user = users[ui];
                const ItemList& candidates = all_candidates[ui];
                const Index n = static_cast<Index>(candidates.size());
                const Vector mu = predicted_mean_vector(model, user, candidates);
                const UserCovariance ucov =
                    user_covariance(table, candidates, cfg.shrinkage_weight,
                                    cfg.covariance_floor);
                const auto relevant = relevant_items(
                    split.test.user_ratings(user), cfg.relevance_threshold);

                UserOutcome& oc = outcomes[ui];
                oc.picks.resize(points.size());
                oc.f1.resize(points.size());
                oc.seconds.resize(points.size());

                for (std::size_t pi = 0; pi < points.size(); ++pi) {
                    const MethodPoint& mp = points[pi];
                    Selection z;
                    const auto t0 = std::chrono::steady_clock::now();
                    switch (mp.kind) {
                        case MethodSpec::Kind::top_n:
                            z = top_n_select(mu, cfg.top_n);
                            break;
                        case MethodSpec::Kind::mv: {
                            const MvStrategy strat =
                                combinations(n, cfg.top_n) <= 1e5
                                    ? MvStrategy::exhaustive
                                    : MvStrategy::local_search;
                            z = mean_variance_select(mu, ucov.sigma, mp.alpha,
                                                     cfg.top_n, strat);
                            break;
                        }
                        case MethodSpec::Kind::dro: {
                            UserProblem up;
                            up.candidates = candidates;
                            up.mu = mu;
                            up.sigma = ucov.sigma;
                            up.top_n = cfg.top_n;
                            up.kappa1 = mp.kappa1;
                            up.kappa2 = mp.kappa2;
                            up.formulation = cfg.formulation;
                            z = padm_solve(up, cfg.padm).z;
                            break;
                        }
                    }
                    const auto t1 = std::chrono::steady_clock::now();
                    oc.seconds[pi] =
                        std::chrono::duration<double>(t1 - t0).count();

                    // Rank selected items by predicted mean, ties by item id.
                    std::vector<std::pair<double, ItemId>> picked;
                    for (Index i = 0; i < n; ++i) {
                        if (z(i) == 1.0) picked.emplace_back(mu(i), candidates[i]);
                    }
                    std::sort(picked.begin(), picked.end(), [](auto a, auto b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                    });
                    std::set<ItemId> pick_set;
                    for (const auto& [score, item] : picked) {
                        oc.picks[pi].push_back(item);
                        pick_set.insert(item);
                    }
                    oc.f1[pi] = f1_score(pick_set, relevant);
                }
            });

            stage = "aggregate";
            for (std::size_t pi = 0; pi < points.size(); ++pi) {
                Welford f1_users;
                std::vector<std::int64_t> counts(universe.size(), 0);
                for (std::size_t ui = 0; ui < users.size(); ++ui) {
                    const auto& oc = outcomes[ui];
                    f1_users.add(oc.f1[pi]);
                    agg[pi].times.add(oc.seconds[pi]);
                    for (const ItemId item : oc.picks[pi]) {
                        ++counts[universe.at(item)];
                    }
                    if (selections) {
                        for (std::size_t rank = 0; rank < oc.picks[pi].size();
                             ++rank) {
                            selections->push_back(
                                {run, split.test.user_token(users[ui]),
                                 points[pi].method_name, points[pi].param_name,
                                 static_cast<int>(rank + 1),
                                 split.test.item_token(oc.picks[pi][rank])});
                        }
                    }
                }
                const double div = gini_diversity(counts);
                agg[pi].f1_runs.add(f1_users.mean());
                agg[pi].div_runs.add(div);
                report.run_rows.push_back({run, points[pi].method_name,
                                           points[pi].param_name,
                                           f1_users.mean(), div});
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("run_experiment: run " +
                                     std::to_string(run) + ", stage " + stage +
                                     ": " + e.what());
        }
    }

    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        report.rows.push_back({points[pi].method_name, points[pi].param_name,
                               agg[pi].f1_runs.mean(), agg[pi].f1_runs.se(),
                               agg[pi].div_runs.mean(), agg[pi].div_runs.se(),
                               agg[pi].times.mean(), agg[pi].times.se()});
    }
    return report;
}

void write_report_csv(const Report& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_report_csv: cannot write '" + path + "'");
    }
    out.precision(10);
    out << "method,param,f1_mean,f1_se,div_mean,div_se,time_mean,time_se\n";
    for (const auto& r : report.rows) {
        out << r.method << ',' << r.param << ',' << r.f1_mean << ',' << r.f1_se
            << ',' << r.div_mean << ',' << r.div_se << ',' << r.time_mean << ','
            << r.time_se << '\n';
    }
}

void write_selections_csv(const std::vector<SelectionRecord>& records,
                          const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_selections_csv: cannot write '" + path +
                                 "'");
    }
    out << "run,user_id,method,param,rank,item_id\n";
    for (const auto& r : records) {
        out << r.run << ',' << r.user << ',' << r.method << ',' << r.param << ','
            << r.rank << ',' << r.item << '\n';
    }
}

}  // namespace recsel
