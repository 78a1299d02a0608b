#pragma once

#include <cstdint>

#include "scn/model.hpp"

namespace scn {

// One sampled outcome of the supply game. Per-agent vectors are indexed
// [tier-1][agent] for tiers 1..T; tier_supply and price run over tiers
// 1..T+1 (the last entry belongs to the raw-material tier).
struct Realization {
    std::vector<std::vector<uint8_t>> success;
    std::vector<std::vector<double>> demand;
    std::vector<std::vector<double>> realized;
    std::vector<std::vector<double>> supply;
    std::vector<double> tier_supply;
    std::vector<double> price;
    std::vector<std::vector<double>> payoff;
};

struct AgentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

struct PayoffEstimate {
    uint64_t samples = 0;
    uint64_t seed = 0;
    std::vector<std::vector<AgentEstimate>> tiers;  // [tier-1][agent]
    const std::vector<AgentEstimate>& retailers() const { return tiers.front(); }
    const std::vector<AgentEstimate>& suppliers() const { return tiers.back(); }
};

// The counter-th uniform variate of the stream identified by seed. Stateless
// (a SplitMix64 finalizer over seed + stride*counter), so draws can be
// evaluated in any order and on any number of threads with identical results.
double uniform01(uint64_t seed, uint64_t counter);

// Evaluate the game on fixed success indicators (shape must match the tiers).
Realization realize_with(const Network& net, const ModelParams& p,
                         const std::vector<std::vector<uint8_t>>& success);
Realization realize_with(const Network& net, const HeteroParams& h,
                         const std::vector<std::vector<uint8_t>>& success);

// Draw sample `index` of the stream and evaluate it.
Realization realize(const Network& net, const ModelParams& p,
                    uint64_t seed, uint64_t index);
Realization realize(const Network& net, const HeteroParams& h,
                    uint64_t seed, uint64_t index);

// Sample mean and standard error of every agent's payoff. Bit-identical for
// a given (seed, samples) regardless of `jobs`.
PayoffEstimate estimate_payoffs(const Network& net, const ModelParams& p,
                                uint64_t samples, uint64_t seed, int jobs = 1);
PayoffEstimate estimate_payoffs(const Network& net, const HeteroParams& h,
                                uint64_t samples, uint64_t seed, int jobs = 1);

}  // namespace scn
