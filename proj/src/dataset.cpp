#include "recsel/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "recsel/rng.hpp"

namespace recsel {

namespace {

std::uint64_t pair_key(UserId u, ItemId i) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(i);
}

}  // namespace

std::optional<UserId> RatingDataset::find_user(const std::string& token) const {
    auto it = user_index_.find(token);
    if (it == user_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ItemId> RatingDataset::find_item(const std::string& token) const {
    auto it = item_index_.find(token);
    if (it == item_index_.end()) return std::nullopt;
    return it->second;
}

UserId RatingDataset::intern_user(const std::string& token) {
    auto it = user_index_.find(token);
    if (it != user_index_.end()) return it->second;
    const UserId id = static_cast<UserId>(user_tokens_.size());
    user_tokens_.push_back(token);
    user_index_.emplace(token, id);
    by_user_.emplace_back();
    return id;
}

ItemId RatingDataset::intern_item(const std::string& token) {
    auto it = item_index_.find(token);
    if (it != item_index_.end()) return it->second;
    const ItemId id = static_cast<ItemId>(item_tokens_.size());
    item_tokens_.push_back(token);
    item_index_.emplace(token, id);
    return id;
}

bool RatingDataset::upsert(UserId u, ItemId i, double rating) {
    const std::uint64_t key = pair_key(u, i);
    auto it = slot_.find(key);
    if (it != slot_.end()) {
        records_[it->second].rating = rating;
        auto& ur = by_user_[u];
        for (auto& [item, r] : ur) {
            if (item == i) {
                r = rating;
                break;
            }
        }
        return true;
    }
    slot_.emplace(key, records_.size());
    records_.push_back({u, i, rating});
    by_user_[u].emplace_back(i, rating);
    return false;
}

const std::vector<std::pair<ItemId, double>>& RatingDataset::user_ratings(
    UserId u) const {
    return by_user_[u];
}

RatingDataset RatingDataset::empty_like() const {
    RatingDataset out;
    out.scale_lo = scale_lo;
    out.scale_hi = scale_hi;
    out.user_tokens_ = user_tokens_;
    out.item_tokens_ = item_tokens_;
    out.user_index_ = user_index_;
    out.item_index_ = item_index_;
    out.by_user_.resize(user_tokens_.size());
    return out;
}

RatingDataset parse_ratings(const std::string& path, const RatingSchema& schema,
                            ParseReport* report) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("parse_ratings: cannot open '" + path + "'");
    }
    ParseReport rep;
    RatingDataset ds;

    const int max_col =
        std::max({schema.user_col, schema.item_col, schema.rating_col});

    struct Raw {
        std::string user, item;
        double rating;
    };
    std::vector<Raw> raws;

    std::string line;
    std::vector<std::string> fields;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++rep.lines_total;
        if (line.empty()) continue;

        fields.clear();
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(schema.delimiter, start);
            if (pos == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        if (static_cast<int>(fields.size()) <= max_col) {
            ++rep.malformed;
            continue;
        }
        double rating;
        try {
            std::size_t used = 0;
            rating = std::stod(fields[schema.rating_col], &used);
            if (used != fields[schema.rating_col].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            ++rep.malformed;
            continue;
        }
        if (!std::isfinite(rating) || fields[schema.user_col].empty() ||
            fields[schema.item_col].empty()) {
            ++rep.malformed;
            continue;
        }
        if (schema.scale &&
            (rating < schema.scale->first || rating > schema.scale->second)) {
            ++rep.out_of_scale;
            continue;
        }
        raws.push_back({fields[schema.user_col], fields[schema.item_col], rating});
        ++rep.parsed;
    }

    if (raws.empty()) {
        throw std::runtime_error("parse_ratings: zero parsable records in '" +
                                 path + "'");
    }

    if (schema.scale) {
        ds.scale_lo = schema.scale->first;
        ds.scale_hi = schema.scale->second;
    } else {
        double lo = raws.front().rating, hi = raws.front().rating;
        for (const auto& r : raws) {
            lo = std::min(lo, r.rating);
            hi = std::max(hi, r.rating);
        }
        ds.scale_lo = lo;
        ds.scale_hi = hi;
    }

    for (const auto& r : raws) {
        const UserId u = ds.intern_user(r.user);
        const ItemId i = ds.intern_item(r.item);
        if (ds.upsert(u, i, r.rating)) ++rep.duplicates_dropped;
    }

    if (report) *report = rep;
    return ds;
}

SplitDataset split_train_test(const RatingDataset& ds, double ratio,
                              std::uint64_t seed, std::size_t min_ratings) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw std::invalid_argument("split_train_test: ratio must be in (0,1)");
    }
    min_ratings = std::max<std::size_t>(min_ratings, 2);

    SplitDataset split;
    split.train = ds.empty_like();
    split.test = ds.empty_like();
    split.seed = seed;
    split.ratio = ratio;

    for (UserId u = 0; u < static_cast<UserId>(ds.n_users()); ++u) {
        const auto& ratings = ds.user_ratings(u);
        const std::size_t count = ratings.size();
        if (count < min_ratings) continue;

        std::vector<std::size_t> order(count);
        for (std::size_t i = 0; i < count; ++i) order[i] = i;
        Xoshiro256StarStar rng(derive_seed(seed, static_cast<std::uint64_t>(u)));
        rng.shuffle(order);

        std::size_t n_train = static_cast<std::size_t>(
            std::llround(ratio * static_cast<double>(count)));
        n_train = std::clamp<std::size_t>(n_train, 1, count - 1);

        for (std::size_t i = 0; i < count; ++i) {
            const auto& [item, rating] = ratings[order[i]];
            auto& fold = (i < n_train) ? split.train : split.test;
            fold.upsert(u, item, rating);
        }
    }
    return split;
}

ItemList candidate_set(UserId user, const SplitDataset& split) {
    if (user < 0 || user >= static_cast<UserId>(split.test.n_users())) {
        throw std::out_of_range("candidate_set: unknown user id");
    }
    const auto& ratings = split.test.user_ratings(user);
    if (ratings.empty()) {
        throw std::runtime_error("candidate_set: user " + std::to_string(user) +
                                 " has no test ratings");
    }
    ItemList items;
    items.reserve(ratings.size());
    for (const auto& [item, rating] : ratings) items.push_back(item);
    std::sort(items.begin(), items.end());
    return items;
}

std::vector<UserId> eligible_users(const SplitDataset& split,
                                   std::size_t min_candidates) {
    std::vector<UserId> out;
    for (UserId u = 0; u < static_cast<UserId>(split.test.n_users()); ++u) {
        if (split.test.user_ratings(u).size() >= min_candidates &&
            !split.test.user_ratings(u).empty()) {
            out.push_back(u);
        }
    }
    return out;
}

std::vector<UserId> sample_target_users(const SplitDataset& split, std::size_t k,
                                        std::uint64_t seed,
                                        std::size_t min_candidates) {
    const auto eligible = eligible_users(split, min_candidates);
    if (k > eligible.size()) {
        throw std::invalid_argument(
            "sample_target_users: requested " + std::to_string(k) +
            " users but only " + std::to_string(eligible.size()) + " eligible");
    }
    Xoshiro256StarStar rng(derive_seed(seed, 0xA11CEULL));
    const auto picks = sample_without_replacement(eligible.size(), k, rng);
    std::vector<UserId> out;
    out.reserve(k);
    for (auto idx : picks) out.push_back(eligible[idx]);
    return out;
}

void write_split_manifest(const SplitDataset& split, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_split_manifest: cannot write '" + path +
                                 "'");
    }
    out << "user_id,item_id,rating,fold\n";
    auto dump = [&](const RatingDataset& fold, const char* name) {
        for (const auto& rec : fold.records()) {
            out << fold.user_token(rec.user) << ',' << fold.item_token(rec.item)
                << ',' << rec.rating << ',' << name << '\n';
        }
    };
    dump(split.train, "train");
    dump(split.test, "test");
}

}  // namespace recsel
