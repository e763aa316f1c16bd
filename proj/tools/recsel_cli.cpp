// Batch CLI around the selection library: split preparation, predictor
// fitting, per-method selection, metric evaluation and the full pipeline.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "recsel/covariance.hpp"
#include "recsel/experiment.hpp"
#include "recsel/metrics.hpp"

namespace {

struct SchemaOpts {
    int user_col = 0, item_col = 1, rating_col = 2;
    std::string delim = "tab";
    std::vector<double> scale;

    recsel::RatingSchema to_schema() const {
        recsel::RatingSchema s;
        s.user_col = user_col;
        s.item_col = item_col;
        s.rating_col = rating_col;
        s.delimiter = delim == "tab" ? '\t' : delim.at(0);
        if (scale.size() == 2) s.scale = {scale[0], scale[1]};
        return s;
    }
};

void add_schema_opts(CLI::App* cmd, SchemaOpts& opts) {
    cmd->add_option("--user-col", opts.user_col, "0-based user column");
    cmd->add_option("--item-col", opts.item_col, "0-based item column");
    cmd->add_option("--rating-col", opts.rating_col, "0-based rating column");
    cmd->add_option("--delim", opts.delim, "field delimiter ('tab' or a char)");
    cmd->add_option("--scale", opts.scale, "rating scale lo hi")->expected(2);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributionally robust top-N recommendation selection"};
    app.require_subcommand(1);

    // ---- prepare ----
    auto* prepare = app.add_subcommand("prepare", "split a rating file and dump the fold manifest");
    std::string prep_data, prep_out = "manifest.csv";
    double prep_ratio = 0.6;
    std::uint64_t prep_seed = 42;
    std::size_t prep_min = 50;
    SchemaOpts prep_schema;
    prepare->add_option("--data", prep_data, "rating file")->required();
    prepare->add_option("--ratio", prep_ratio, "train fraction");
    prepare->add_option("--seed", prep_seed, "split seed");
    prepare->add_option("--min-ratings", prep_min, "drop users below this count");
    prepare->add_option("--out", prep_out, "manifest path");
    add_schema_opts(prepare, prep_schema);

    // ---- fit ----
    auto* fit = app.add_subcommand("fit", "fit the rating predictor on the train fold");
    std::string fit_data, fit_out = "model.csv";
    double fit_ratio = 0.6;
    std::uint64_t fit_seed = 42;
    std::size_t fit_min = 50;
    recsel::MfConfig fit_cfg;
    SchemaOpts fit_schema;
    fit->add_option("--data", fit_data, "rating file")->required();
    fit->add_option("--ratio", fit_ratio, "train fraction");
    fit->add_option("--seed", fit_seed, "split + SGD seed");
    fit->add_option("--min-ratings", fit_min, "drop users below this count");
    fit->add_option("--factors", fit_cfg.factors, "latent factor count");
    fit->add_option("--learning-rate", fit_cfg.learning_rate, "SGD step size");
    fit->add_option("--reg", fit_cfg.regularization, "L2 weight");
    fit->add_option("--epochs", fit_cfg.epochs, "SGD epochs");
    fit->add_option("--out", fit_out, "model dump path");
    add_schema_opts(fit, fit_schema);

    // ---- select ----
    auto* select = app.add_subcommand("select", "run one method / parameter point for one run seed");
    std::string sel_config, sel_method = "top_n", sel_out = "selections.csv";
    int sel_run = 0;
    double sel_alpha = 0.0, sel_k1 = 0.1, sel_k2 = 0.1;
    select->add_option("--config", sel_config, "experiment config JSON")->required();
    select->add_option("--method", sel_method, "top_n | mv | dro");
    select->add_option("--run", sel_run, "run index (seed = base_seed + run)");
    select->add_option("--alpha", sel_alpha, "mv risk aversion");
    select->add_option("--k1", sel_k1, "dro kappa1");
    select->add_option("--k2", sel_k2, "dro kappa2");
    select->add_option("--out", sel_out, "selections CSV path");

    // ---- evaluate ----
    auto* evaluate = app.add_subcommand("evaluate", "score a selections CSV against the config's splits");
    std::string eval_config, eval_selections, eval_out;
    evaluate->add_option("--config", eval_config, "experiment config JSON")->required();
    evaluate->add_option("--selections", eval_selections, "selections CSV")->required();
    evaluate->add_option("--out", eval_out, "metrics CSV (default stdout)");

    // ---- run ----
    auto* run = app.add_subcommand("run", "full pipeline from a config file");
    std::string run_config, run_report = "report.csv", run_selections = "selections.csv";
    run->add_option("--config", run_config, "experiment config JSON")->required();
    run->add_option("--report", run_report, "report CSV path");
    run->add_option("--selections", run_selections, "selections CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prepare) {
            recsel::ParseReport rep;
            const auto ds = recsel::parse_ratings(prep_data, prep_schema.to_schema(), &rep);
            std::cerr << "parsed " << rep.parsed << " records (" << rep.malformed
                      << " malformed, " << rep.out_of_scale << " out of scale, "
                      << rep.duplicates_dropped << " duplicates dropped)\n";
            const auto split = recsel::split_train_test(ds, prep_ratio, prep_seed, prep_min);
            recsel::write_split_manifest(split, prep_out);
            std::cerr << "wrote " << prep_out << " (train "
                      << split.train.records().size() << ", test "
                      << split.test.records().size() << ")\n";
        } else if (*fit) {
            const auto ds = recsel::parse_ratings(fit_data, fit_schema.to_schema());
            const auto split = recsel::split_train_test(ds, fit_ratio, fit_seed, fit_min);
            fit_cfg.seed = fit_seed;
            const auto model = recsel::fit_mf(split.train, fit_cfg);
            recsel::save_factor_model(model, fit_out);
            std::cerr << "train RMSE " << model.train_rmse.back() << ", wrote "
                      << fit_out << "\n";
        } else if (*select) {
            auto cfg = recsel::load_experiment_config(sel_config);
            cfg.runs = 1;
            cfg.base_seed += static_cast<std::uint64_t>(sel_run);
            cfg.methods.clear();
            recsel::MethodSpec spec;
            if (sel_method == "top_n") {
                spec.kind = recsel::MethodSpec::Kind::top_n;
            } else if (sel_method == "mv") {
                spec.kind = recsel::MethodSpec::Kind::mv;
                spec.alpha_grid = {sel_alpha};
            } else if (sel_method == "dro") {
                spec.kind = recsel::MethodSpec::Kind::dro;
                spec.kappa_grid = {{sel_k1, sel_k2}};
            } else {
                throw std::runtime_error("unknown method '" + sel_method + "'");
            }
            cfg.methods.push_back(spec);
            std::vector<recsel::SelectionRecord> records;
            recsel::run_experiment(cfg, &records);
            for (auto& r : records) r.run = sel_run;
            recsel::write_selections_csv(records, sel_out);
            std::cerr << "wrote " << records.size() << " rows to " << sel_out << "\n";
        } else if (*evaluate) {
            const auto cfg = recsel::load_experiment_config(eval_config);
            const auto ds = recsel::parse_ratings(cfg.dataset_path, cfg.schema);

            std::ifstream in(eval_selections);
            if (!in) throw std::runtime_error("cannot open " + eval_selections);
            struct Row { int run; std::string user, method, param, item; };
            std::vector<Row> rows;
            std::string line;
            std::getline(in, line);  // header
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                std::stringstream ss(line);
                std::string run_s, user, method, param, rank_s, item;
                std::getline(ss, run_s, ',');
                std::getline(ss, user, ',');
                std::getline(ss, method, ',');
                std::getline(ss, param, ',');
                std::getline(ss, rank_s, ',');
                std::getline(ss, item, ',');
                rows.push_back({std::stoi(run_s), user, method, param, item});
            }

            std::set<int> runs;
            for (const auto& r : rows) runs.insert(r.run);

            std::ostringstream os;
            os.precision(10);
            os << "run,method,param,f1_mean,diversity\n";
            for (const int run_idx : runs) {
                const auto split = recsel::split_train_test(
                    ds, cfg.split_ratio,
                    cfg.base_seed + static_cast<std::uint64_t>(run_idx),
                    cfg.min_ratings);
                // group rows by (method,param) then user
                std::map<std::pair<std::string, std::string>,
                         std::map<std::string, std::set<std::string>>> groups;
                for (const auto& r : rows) {
                    if (r.run != run_idx) continue;
                    groups[{r.method, r.param}][r.user].insert(r.item);
                }
                for (const auto& [mp, users] : groups) {
                    double f1_sum = 0.0;
                    std::map<recsel::ItemId, std::int64_t> counts;
                    std::set<recsel::ItemId> universe;
                    for (const auto& [user_tok, items] : users) {
                        const auto uid = split.test.find_user(user_tok);
                        if (!uid) throw std::runtime_error("user '" + user_tok + "' not in split");
                        for (const auto item : recsel::candidate_set(*uid, split)) universe.insert(item);
                        const auto relevant = recsel::relevant_items(
                            split.test.user_ratings(*uid), cfg.relevance_threshold);
                        std::set<recsel::ItemId> rec;
                        for (const auto& tok : items) {
                            const auto iid = split.test.find_item(tok);
                            if (!iid) throw std::runtime_error("item '" + tok + "' unknown");
                            rec.insert(*iid);
                            ++counts[*iid];
                        }
                        f1_sum += recsel::f1_score(rec, relevant);
                    }
                    std::vector<std::int64_t> count_vec;
                    for (const auto item : universe) {
                        auto it = counts.find(item);
                        count_vec.push_back(it == counts.end() ? 0 : it->second);
                    }
                    os << run_idx << ',' << mp.first << ',' << mp.second << ','
                       << f1_sum / static_cast<double>(users.size()) << ','
                       << recsel::gini_diversity(count_vec) << '\n';
                }
            }
            if (eval_out.empty()) {
                std::cout << os.str();
            } else {
                std::ofstream out(eval_out);
                out << os.str();
                std::cerr << "wrote " << eval_out << "\n";
            }
        } else if (*run) {
            const auto cfg = recsel::load_experiment_config(run_config);
            std::vector<recsel::SelectionRecord> records;
            const auto report = recsel::run_experiment(cfg, &records);
            recsel::write_report_csv(report, run_report);
            recsel::write_selections_csv(records, run_selections);
            std::cerr << "wrote " << run_report << " and " << run_selections << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
