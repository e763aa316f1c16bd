#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "recsel/dataset.hpp"

using namespace recsel;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = "recsel_test_" + std::to_string(counter++) + ".tmp";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("parse movielens-style line") {
    TempFile f("196\t242\t3\t881250949\n186\t302\t3\t891717742\n");
    ParseReport rep;
    const auto ds = parse_ratings(f.path, RatingSchema::movielens(), &rep);
    CHECK(rep.parsed == 2);
    CHECK(rep.malformed == 0);
    CHECK(ds.records().size() == 2);
    CHECK(ds.user_token(ds.records()[0].user) == "196");
    CHECK(ds.item_token(ds.records()[0].item) == "242");
    CHECK(ds.records()[0].rating == 3.0);
    CHECK(ds.scale_lo == 1.0);
    CHECK(ds.scale_hi == 5.0);
}

TEST_CASE("empty file raises zero parsable records") {
    TempFile f("");
    CHECK_THROWS_WITH_AS(parse_ratings(f.path, RatingSchema::movielens()),
                         doctest::Contains("zero parsable"), std::runtime_error);
}

TEST_CASE("missing file raises") {
    CHECK_THROWS_AS(parse_ratings("no_such_file.xyz", RatingSchema::movielens()),
                    std::runtime_error);
}

TEST_CASE("duplicate user-item keeps the last rating") {
    TempFile f("1\t9\t2\t0\n1\t9\t5\t0\n");
    ParseReport rep;
    const auto ds = parse_ratings(f.path, RatingSchema::movielens(), &rep);
    CHECK(ds.records().size() == 1);
    CHECK(ds.records()[0].rating == 5.0);
    CHECK(rep.duplicates_dropped == 1);
}

TEST_CASE("out-of-scale and malformed records counted and dropped") {
    TempFile f("1\t1\t9\t0\nbroken line\n2\t2\t4\t0\n3\t3\tnope\t0\n");
    ParseReport rep;
    const auto ds = parse_ratings(f.path, RatingSchema::movielens(), &rep);
    CHECK(rep.out_of_scale == 1);
    CHECK(rep.malformed == 2);
    CHECK(ds.records().size() == 1);
}

TEST_CASE("scale inferred when schema does not declare one") {
    TempFile f("1,10,7\n2,11,3\n");
    RatingSchema sc;
    sc.delimiter = ',';
    const auto ds = parse_ratings(f.path, sc);
    CHECK(ds.scale_lo == 3.0);
    CHECK(ds.scale_hi == 7.0);
}

namespace {

RatingDataset synthetic_dataset(int users, int items_per_user) {
    static TempFile* keeper = nullptr;
    std::string content;
    for (int u = 1; u <= users; ++u) {
        for (int i = 0; i < items_per_user; ++i) {
            const int item = 100 + ((u * 13 + i * 7) % 40);
            const int rating = 1 + ((u + i) % 5);
            content += std::to_string(u) + "\t" + std::to_string(item) + "\t" +
                       std::to_string(rating) + "\t0\n";
        }
    }
    delete keeper;
    keeper = new TempFile(content);
    return parse_ratings(keeper->path, RatingSchema::movielens());
}

}  // namespace

TEST_CASE("split counts follow round(ratio * count) clamped") {
    const auto ds = synthetic_dataset(12, 10);
    const auto split = split_train_test(ds, 0.6, 1, 2);
    for (UserId u = 0; u < static_cast<UserId>(ds.n_users()); ++u) {
        const auto total = ds.user_ratings(u).size();
        CHECK(split.train.user_ratings(u).size() == 6);
        CHECK(split.test.user_ratings(u).size() == total - 6);
    }
}

TEST_CASE("round-to-nearest on 5 ratings at 0.6 gives 3 train 2 test") {
    const auto ds = synthetic_dataset(4, 5);
    const auto split = split_train_test(ds, 0.6, 7, 2);
    for (UserId u = 0; u < static_cast<UserId>(ds.n_users()); ++u) {
        CHECK(split.train.user_ratings(u).size() == 3);
        CHECK(split.test.user_ratings(u).size() == 2);
    }
}

TEST_CASE("split partitions each user's ratings and is deterministic") {
    const auto ds = synthetic_dataset(9, 8);
    const auto s1 = split_train_test(ds, 0.6, 99, 2);
    const auto s2 = split_train_test(ds, 0.6, 99, 2);
    const auto s3 = split_train_test(ds, 0.6, 100, 2);

    bool identical = true, differs_from_s3 = false;
    for (UserId u = 0; u < static_cast<UserId>(ds.n_users()); ++u) {
        std::set<ItemId> train, test, all;
        for (const auto& [i, r] : s1.train.user_ratings(u)) train.insert(i);
        for (const auto& [i, r] : s1.test.user_ratings(u)) test.insert(i);
        for (const auto& [i, r] : ds.user_ratings(u)) all.insert(i);
        // partition property
        std::set<ItemId> uni = train;
        uni.insert(test.begin(), test.end());
        CHECK(uni == all);
        for (const auto i : test) CHECK(train.count(i) == 0);

        std::set<ItemId> train2, train3;
        for (const auto& [i, r] : s2.train.user_ratings(u)) train2.insert(i);
        for (const auto& [i, r] : s3.train.user_ratings(u)) train3.insert(i);
        identical = identical && (train == train2);
        differs_from_s3 = differs_from_s3 || (train != train3);
    }
    CHECK(identical);
    CHECK(differs_from_s3);
}

TEST_CASE("users below min_ratings are removed before splitting") {
    TempFile f("1\t1\t3\t0\n1\t2\t3\t0\n1\t3\t3\t0\n2\t1\t4\t0\n2\t2\t4\t0\n");
    const auto ds = parse_ratings(f.path, RatingSchema::movielens());
    const auto split = split_train_test(ds, 0.6, 5, 3);
    const auto u2 = ds.find_user("2");
    REQUIRE(u2.has_value());
    CHECK(split.train.user_ratings(*u2).empty());
    CHECK(split.test.user_ratings(*u2).empty());
}

TEST_CASE("ratio outside (0,1) rejected") {
    const auto ds = synthetic_dataset(3, 5);
    CHECK_THROWS_AS(split_train_test(ds, 1.0, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(split_train_test(ds, 0.0, 1, 2), std::invalid_argument);
}

TEST_CASE("candidate_set is the sorted test items") {
    const auto ds = synthetic_dataset(6, 9);
    const auto split = split_train_test(ds, 0.6, 3, 2);
    for (UserId u = 0; u < static_cast<UserId>(ds.n_users()); ++u) {
        const auto items = candidate_set(u, split);
        CHECK(items.size() == split.test.user_ratings(u).size());
        for (std::size_t i = 1; i < items.size(); ++i) {
            CHECK(items[i - 1] < items[i]);
        }
        // candidates never appear in the user's train fold
        std::set<ItemId> train;
        for (const auto& [i, r] : split.train.user_ratings(u)) train.insert(i);
        for (const auto i : items) CHECK(train.count(i) == 0);
    }
}

TEST_CASE("candidate_set on user without test ratings throws") {
    TempFile f("1\t1\t3\t0\n1\t2\t3\t0\n2\t1\t4\t0\n2\t2\t4\t0\n");
    const auto ds = parse_ratings(f.path, RatingSchema::movielens());
    auto split = split_train_test(ds, 0.6, 5, 2);
    // fabricate a user with no test fold entries
    SplitDataset broken = split;
    broken.test = ds.empty_like();
    CHECK_THROWS_AS(candidate_set(0, broken), std::runtime_error);
}

TEST_CASE("sample_target_users: exhaustive, distinct, deterministic") {
    const auto ds = synthetic_dataset(15, 8);
    const auto split = split_train_test(ds, 0.6, 21, 2);
    const auto all = eligible_users(split, 3);
    const auto full = sample_target_users(split, all.size(), 4, 3);
    CHECK(std::set<UserId>(full.begin(), full.end()) ==
          std::set<UserId>(all.begin(), all.end()));

    const auto a = sample_target_users(split, 5, 4, 3);
    const auto b = sample_target_users(split, 5, 4, 3);
    const auto c = sample_target_users(split, 5, 5, 3);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(std::set<UserId>(a.begin(), a.end()).size() == 5);

    CHECK_THROWS_AS(sample_target_users(split, all.size() + 1, 4, 3),
                    std::invalid_argument);
}

TEST_CASE("manifest roundtrips fold sizes") {
    const auto ds = synthetic_dataset(5, 6);
    const auto split = split_train_test(ds, 0.6, 2, 2);
    write_split_manifest(split, "manifest_test.tmp");
    std::ifstream in("manifest_test.tmp");
    std::string line;
    std::getline(in, line);
    CHECK(line == "user_id,item_id,rating,fold");
    std::size_t train_rows = 0, test_rows = 0;
    while (std::getline(in, line)) {
        if (line.find(",train") != std::string::npos) ++train_rows;
        if (line.find(",test") != std::string::npos) ++test_rows;
    }
    CHECK(train_rows == split.train.records().size());
    CHECK(test_rows == split.test.records().size());
    std::remove("manifest_test.tmp");
}
