#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace recsel {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

using ItemId = std::int32_t;
using UserId = std::int32_t;

using ItemList = std::vector<ItemId>;

// Indicator vector over a candidate list; entries are 0/1 doubles so it can
// be mixed freely with Eigen expressions.
using Selection = Vector;

}  // namespace recsel
