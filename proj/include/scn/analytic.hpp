#pragma once

#include "scn/model.hpp"

namespace scn {

// Out-neighborhood overlap of retailer i with its active peers, each overlap
// weighted by the peer's out-degree: rho_i = sum_{i' active, i' != i}
// |N(i) ∩ N(i')| / deg(i'). Inactive peers contribute nothing.
double rho(const Network& net, int i);

// Congestion pressure on supplier j: F_j = sum over in-neighbors i' of
// 1/deg(i'). Pass exclude >= 0 to drop one retailer's contribution (F^{-i}).
double congestion(const Network& net, int j, int exclude = -1);

// Expected payoff of retailer i, congestion-free model (gamma ignored).
// Inactive retailers earn exactly 0.
double payoff_no_congestion(const Network& net, const ModelParams& p, int i);

// Expected payoff of retailer i with quadratic congestion. Reduces to
// payoff_no_congestion at gamma = 0.
double payoff_congestion(const Network& net, const ModelParams& p, int i);

// Expected payoff of retailer i under per-supplier reliability/congestion.
// Equals payoff_congestion when all suppliers share lambda and gamma.
double payoff_hetero_retailer(const Network& net, const HeteroParams& h, int i);

// Expected payoff of supplier j under per-supplier reliability. Suppliers
// nobody links to earn exactly 0.
double payoff_hetero_supplier(const Network& net, const HeteroParams& h, int j);

// Homogeneous wrapper for supplier payoffs.
double payoff_supplier(const Network& net, const ModelParams& p, int j);

}  // namespace scn
