#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scn/analytic.hpp"
#include "scn/model.hpp"

namespace scn {

// Ties within this margin keep the status quo; only strictly larger expected
// payoffs count as improvements.
inline constexpr double kGainTolerance = 1e-12;

// A unilateral supplier-set change that strictly raises one retailer's
// expected payoff. Link indices are 0-based and sorted.
struct DeviationCertificate {
    int retailer = 0;
    std::vector<int> from;
    std::vector<int> to;
    double gain = 0.0;
};

struct NashResult {
    bool is_nash = false;
    // Maximal-gain deviation over all retailers and subsets; set iff !is_nash.
    std::optional<DeviationCertificate> deviation;
};

// All payoff-maximizing supplier subsets for one retailer, holding everyone
// else fixed. Exhaustive over the 2^m subsets (m <= 20 guarded); subsets whose
// payoff is within kGainTolerance of the maximum are returned together,
// sorted lexicographically.
std::vector<std::vector<int>> best_responses(const Network& net, const ModelParams& p,
                                             int retailer);
std::vector<std::vector<int>> best_responses(const Network& net, const HeteroParams& p,
                                             int retailer);

NashResult nash_check(const Network& net, const ModelParams& p);
NashResult nash_check(const Network& net, const HeteroParams& p);

struct EquilibriumEntry {
    Network net;
    std::optional<Classification> label;  // filled for 2x2 games
    std::vector<double> retailer_payoffs;
};

struct EquilibriumReport {
    std::vector<EquilibriumEntry> entries;  // ascending profile-code order
    std::uint64_t profiles_examined = 0;
};

// Checks every pure strategy profile, ordered by profile code (retailer 0 in
// the low bits, one bit per supplier). canonical keeps one representative per
// orbit under payoff-preserving supplier relabelings; with per-supplier
// parameters only relabelings that preserve them qualify.
EquilibriumReport enumerate_equilibria(const ModelParams& p, bool canonical = false);
EquilibriumReport enumerate_equilibria(const HeteroParams& p, bool canonical = false);

struct BrTrace {
    std::vector<Network> trajectory;  // start plus one entry per applied update
    bool converged = false;
    int rounds = 0;  // round-robin passes executed, including the final quiet one
};

// Round-robin best-response updates from a starting network. A retailer moves
// only on strict improvement, to the lexicographically smallest argmax subset;
// stops at a fixed point or after max_rounds passes.
BrTrace br_dynamics(const Network& start, const ModelParams& p, int max_rounds = 64);
BrTrace br_dynamics(const Network& start, const HeteroParams& p, int max_rounds = 64);

}  // namespace scn
