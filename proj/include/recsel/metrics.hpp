#pragma once

#include <set>
#include <vector>

#include "recsel/dataset.hpp"
#include "recsel/types.hpp"

namespace recsel {

// Test items of the user rated at or above the threshold.
std::set<ItemId> relevant_items(
    const std::vector<std::pair<ItemId, double>>& test_ratings,
    double threshold);

// 2 |rec & rel| / (|rec| + |rel|); 0 when nothing is relevant.
double f1_score(const std::set<ItemId>& recommended,
                const std::set<ItemId>& relevant);

// One minus the Gini coefficient of the per-item recommendation counts,
// computed over the whole counts vector (the item universe).
double gini_diversity(const std::vector<std::int64_t>& counts);

}  // namespace recsel
