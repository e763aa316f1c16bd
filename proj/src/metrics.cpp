#include "recsel/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace recsel {

std::set<ItemId> relevant_items(
    const std::vector<std::pair<ItemId, double>>& test_ratings,
    double threshold) {
    std::set<ItemId> out;
    for (const auto& [item, rating] : test_ratings) {
        if (rating >= threshold) out.insert(item);
    }
    return out;
}

double f1_score(const std::set<ItemId>& recommended,
                const std::set<ItemId>& relevant) {
    if (recommended.empty()) {
        throw std::invalid_argument("f1_score: empty recommendation set");
    }
    if (relevant.empty()) return 0.0;
    std::size_t hits = 0;
    for (const ItemId i : recommended) hits += relevant.count(i);
    return 2.0 * static_cast<double>(hits) /
           static_cast<double>(recommended.size() + relevant.size());
}

double gini_diversity(const std::vector<std::int64_t>& counts) {
    const std::size_t m = counts.size();
    if (m == 0) throw std::invalid_argument("gini_diversity: empty counts");
    std::int64_t total = 0;
    for (const auto c : counts) {
        if (c < 0) throw std::invalid_argument("gini_diversity: negative count");
        total += c;
    }
    if (total == 0) throw std::invalid_argument("gini_diversity: all-zero counts");

    // Sorted O(m log m) evaluation of the pairwise mean difference form.
    std::vector<std::int64_t> sorted(counts);
    std::sort(sorted.begin(), sorted.end());
    double weighted = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        weighted += static_cast<double>(i + 1) * static_cast<double>(sorted[i]);
    }
    const double md = static_cast<double>(m);
    const double gini = 2.0 * weighted / (md * static_cast<double>(total)) -
                        (md + 1.0) / md;
    return 1.0 - gini;
}

}  // namespace recsel
