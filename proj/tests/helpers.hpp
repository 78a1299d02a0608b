#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "scn/analytic.hpp"
#include "scn/model.hpp"
#include "scn/montecarlo.hpp"

namespace scn::test {

// Deterministic fixtures; every test seeds its own engine.
using Rng = std::mt19937_64;

inline std::vector<int> random_mask_links(Rng& rng, int m, bool allow_empty) {
    std::uniform_int_distribution<int> bits(allow_empty ? 0 : 1, (1 << m) - 1);
    const int mask = bits(rng);
    std::vector<int> links;
    for (int j = 0; j < m; ++j)
        if (mask & (1 << j)) links.push_back(j);
    return links;
}

inline Network random_network(Rng& rng, int n, int m, bool allow_empty = true) {
    std::vector<std::vector<int>> links;
    for (int i = 0; i < n; ++i) links.push_back(random_mask_links(rng, m, allow_empty));
    return Network(n, m, std::move(links));
}

inline std::vector<int> links_from_mask(int mask, int m) {
    std::vector<int> links;
    for (int j = 0; j < m; ++j)
        if (mask & (1 << j)) links.push_back(j);
    return links;
}

// Exact expected payoffs by enumerating every success pattern of the
// strategic agents, weighted by its probability. Exponential in the agent
// count; keep instances small.
template <class Params>
std::vector<std::vector<double>> exact_expected_payoffs(const Network& net, const Params& p,
                                                        const std::vector<double>& prob_tier1,
                                                        const std::vector<double>& prob_rest) {
    std::vector<std::pair<int, int>> agents;  // (tier-1 index, agent)
    for (int t = 0; t < net.tier_count(); ++t)
        for (int a = 0; a < net.tier_size(t + 1); ++a) agents.emplace_back(t, a);
    const size_t total = agents.size();

    std::vector<std::vector<double>> acc(static_cast<size_t>(net.tier_count()));
    for (int t = 0; t < net.tier_count(); ++t)
        acc[static_cast<size_t>(t)].assign(static_cast<size_t>(net.tier_size(t + 1)), 0.0);

    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << total); ++pattern) {
        std::vector<std::vector<uint8_t>> success(static_cast<size_t>(net.tier_count()));
        for (int t = 0; t < net.tier_count(); ++t)
            success[static_cast<size_t>(t)].assign(static_cast<size_t>(net.tier_size(t + 1)), 0);
        double weight = 1.0;
        for (size_t k = 0; k < total; ++k) {
            const auto [t, a] = agents[k];
            const double pr = t == 0 ? prob_tier1[static_cast<size_t>(a)]
                                     : prob_rest[static_cast<size_t>(a)];
            const bool on = (pattern >> k) & 1;
            success[static_cast<size_t>(t)][static_cast<size_t>(a)] = on ? 1 : 0;
            weight *= on ? pr : 1.0 - pr;
        }
        if (weight == 0.0) continue;
        const Realization r = realize_with(net, p, success);
        for (int t = 0; t < net.tier_count(); ++t)
            for (int a = 0; a < net.tier_size(t + 1); ++a)
                acc[static_cast<size_t>(t)][static_cast<size_t>(a)] +=
                    weight * r.payoff[static_cast<size_t>(t)][static_cast<size_t>(a)];
    }
    return acc;
}

inline std::vector<std::vector<double>> exact_expected_payoffs(const Network& net,
                                                               const ModelParams& p) {
    std::vector<double> tier1(static_cast<size_t>(net.retailers()), p.lambda);
    // prob_rest is indexed per agent within its tier; homogeneous, so a vector
    // sized to the largest tier covers every lookup.
    size_t widest = 0;
    for (int t = 2; t <= net.tier_count(); ++t)
        widest = std::max(widest, static_cast<size_t>(net.tier_size(t)));
    std::vector<double> rest(widest, p.lambda);
    return exact_expected_payoffs(net, p, tier1, rest);
}

inline std::vector<std::vector<double>> exact_expected_payoffs(const Network& net,
                                                               const HeteroParams& h) {
    std::vector<double> tier1(static_cast<size_t>(net.retailers()), h.lambda_r);
    return exact_expected_payoffs(net, h, tier1, h.lambda_sup);
}

// Profile code shared with the enumerator: retailer i occupies bits
// [i*m, (i+1)*m).
inline std::uint64_t profile_code(const Network& net) {
    std::uint64_t code = 0;
    for (int i = 0; i < net.retailers(); ++i)
        for (int j : net.retailer_links(i))
            code |= std::uint64_t{1} << (i * net.suppliers() + j);
    return code;
}

// Brute-force Nash filter over every profile, strict-improvement deviations
// checked directly against the closed form.
inline std::set<std::uint64_t> naive_equilibria(const ModelParams& p) {
    const int n = p.n, m = p.m;
    std::set<std::uint64_t> found;
    const int profile_count = 1 << (n * m);
    for (int code = 0; code < profile_count; ++code) {
        std::vector<std::vector<int>> links;
        for (int i = 0; i < n; ++i) links.push_back(links_from_mask((code >> (i * m)) & ((1 << m) - 1), m));
        const Network net(n, m, links);
        bool nash = true;
        for (int i = 0; i < n && nash; ++i) {
            const double base = payoff_congestion(net, p, i);
            for (int mask = 0; mask < (1 << m) && nash; ++mask) {
                const Network alt = net.with_retailer_links(i, links_from_mask(mask, m));
                if (payoff_congestion(alt, p, i) > base + 1e-12) nash = false;
            }
        }
        if (nash) found.insert(static_cast<std::uint64_t>(code));
    }
    return found;
}

}  // namespace scn::test
