#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recsel/types.hpp"

namespace recsel {

struct RatingRecord {
    UserId user;
    ItemId item;
    double rating;
};

// Column layout of a delimiter-separated rating file. Field indices are
// 0-based positions within a line; extra columns (timestamps etc.) are
// ignored. MovieLens u.data is the default layout.
struct RatingSchema {
    int user_col = 0;
    int item_col = 1;
    int rating_col = 2;
    char delimiter = '\t';
    // Declared rating scale. When absent the scale is inferred from the
    // observed min/max.
    std::optional<std::pair<double, double>> scale;

    static RatingSchema movielens() {
        RatingSchema s;
        s.scale = {1.0, 5.0};
        return s;
    }
};

struct ParseReport {
    std::size_t lines_total = 0;
    std::size_t parsed = 0;
    std::size_t malformed = 0;
    std::size_t out_of_scale = 0;
    std::size_t duplicates_dropped = 0;
};

// Sparse user x item rating table. Records hold dense 0-based ids; the token
// tables map them back to the original identifiers. (user, item) pairs are
// unique: on duplicates the last parsed record wins.
class RatingDataset {
  public:
    double scale_lo = 0.0;
    double scale_hi = 0.0;

    const std::vector<RatingRecord>& records() const { return records_; }
    std::size_t n_users() const { return user_tokens_.size(); }
    std::size_t n_items() const { return item_tokens_.size(); }

    const std::string& user_token(UserId u) const { return user_tokens_[u]; }
    const std::string& item_token(ItemId i) const { return item_tokens_[i]; }
    std::optional<UserId> find_user(const std::string& token) const;
    std::optional<ItemId> find_item(const std::string& token) const;

    UserId intern_user(const std::string& token);
    ItemId intern_item(const std::string& token);

    // Appends or overwrites (last-wins); returns true if it replaced an
    // existing (user, item) record.
    bool upsert(UserId u, ItemId i, double rating);

    // (item, rating) pairs per user, in insertion order.
    const std::vector<std::pair<ItemId, double>>& user_ratings(UserId u) const;

    // Copy with identical token/id tables and no records.
    RatingDataset empty_like() const;

  private:
    std::vector<std::string> user_tokens_;
    std::vector<std::string> item_tokens_;
    std::unordered_map<std::string, UserId> user_index_;
    std::unordered_map<std::string, ItemId> item_index_;
    std::vector<RatingRecord> records_;
    std::vector<std::vector<std::pair<ItemId, double>>> by_user_;
    std::unordered_map<std::uint64_t, std::size_t> slot_;  // (u,i) -> records_ pos
};

struct SplitDataset {
    RatingDataset train;
    RatingDataset test;
    std::uint64_t seed = 0;
    double ratio = 0.0;
};

RatingDataset parse_ratings(const std::string& path, const RatingSchema& schema,
                            ParseReport* report = nullptr);

// Per-user random partition; train count = round(ratio * count) clamped to
// [1, count-1]. Users with fewer than min_ratings are removed first.
// Deterministic given seed, independent of user processing order.
SplitDataset split_train_test(const RatingDataset& ds, double ratio,
                              std::uint64_t seed, std::size_t min_ratings = 2);

// The user's test items, ascending dense id. Throws if the user has no test
// ratings.
ItemList candidate_set(UserId user, const SplitDataset& split);

// Uniform sample (without replacement) of k users whose candidate set has at
// least min_candidates items.
std::vector<UserId> sample_target_users(const SplitDataset& split, std::size_t k,
                                        std::uint64_t seed,
                                        std::size_t min_candidates = 1);

std::vector<UserId> eligible_users(const SplitDataset& split,
                                   std::size_t min_candidates);

void write_split_manifest(const SplitDataset& split, const std::string& path);

}  // namespace recsel
