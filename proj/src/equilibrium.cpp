#include "scn/equilibrium.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace scn {

namespace {

double payoff_for(const Network& net, const ModelParams& p, int i) {
    return payoff_congestion(net, p, i);
}

double payoff_for(const Network& net, const HeteroParams& p, int i) {
    return payoff_hetero_retailer(net, p, i);
}

void require_game(const Network& net, int n, int m) {
    if (net.tier_count() != 2)
        throw ValidationError("equilibrium analysis needs a two-tier network");
    if (net.retailers() != n || net.suppliers() != m)
        throw ValidationError("network and params disagree on n or m");
}

void require_two_tier_params(const ModelParams& p) {
    if (p.tier_sizes().size() != 2)
        throw ValidationError("equilibrium analysis needs two-tier parameters");
}

void require_two_tier_params(const HeteroParams&) {}

void require_subset_search(int m) {
    if (m < 1 || m > 20)
        throw SizeGuardError(
            "exhaustive subset search needs m <= 20; use br_dynamics for larger games");
}

std::vector<int> mask_links(std::uint32_t mask, int m) {
    std::vector<int> links;
    for (int j = 0; j < m; ++j)
        if (mask >> j & 1u) links.push_back(j);
    return links;
}

template <class Params>
std::vector<std::vector<int>> best_responses_impl(const Network& net, const Params& p,
                                                  int retailer) {
    p.validate();
    require_two_tier_params(p);
    require_game(net, p.n, p.m);
    require_subset_search(p.m);
    if (retailer < 0 || retailer >= p.n) throw ValidationError("retailer index out of range");

    const std::uint32_t lim = 1u << p.m;
    std::vector<std::pair<double, std::vector<int>>> all;
    all.reserve(lim);
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < lim; ++mask) {
        std::vector<int> links = mask_links(mask, p.m);
        const Network cand = net.with_retailer_links(retailer, links);
        const double v = payoff_for(cand, p, retailer);
        best = std::max(best, v);
        all.emplace_back(v, std::move(links));
    }
    std::vector<std::vector<int>> out;
    for (auto& [v, links] : all)
        if (v >= best - kGainTolerance) out.push_back(std::move(links));
    std::sort(out.begin(), out.end());
    return out;
}

template <class Params>
NashResult nash_check_impl(const Network& net, const Params& p) {
    p.validate();
    require_two_tier_params(p);
    require_game(net, p.n, p.m);
    require_subset_search(p.m);

    NashResult res;
    res.is_nash = true;
    const std::uint32_t lim = 1u << p.m;
    double best_gain = kGainTolerance;
    for (int i = 0; i < p.n; ++i) {
        const double base = payoff_for(net, p, i);
        for (std::uint32_t mask = 0; mask < lim; ++mask) {
            std::vector<int> links = mask_links(mask, p.m);
            if (links == net.retailer_links(i)) continue;
            const Network cand = net.with_retailer_links(i, links);
            const double gain = payoff_for(cand, p, i) - base;
            if (gain > best_gain) {
                best_gain = gain;
                res.deviation =
                    DeviationCertificate{i, net.retailer_links(i), std::move(links), gain};
                res.is_nash = false;
            }
        }
    }
    return res;
}

std::vector<std::vector<int>> supplier_symmetries(const ModelParams& p) {
    std::vector<int> perm(static_cast<size_t>(p.m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<std::vector<int>> supplier_symmetries(const HeteroParams& p) {
    std::vector<int> perm(static_cast<size_t>(p.m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int j = 0; j < p.m && ok; ++j) {
            const size_t a = static_cast<size_t>(j);
            const size_t b = static_cast<size_t>(perm[a]);
            ok = p.lambda_sup[b] == p.lambda_sup[a] && p.gamma_sup[b] == p.gamma_sup[a];
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::uint64_t relabel_code(std::uint64_t code, const std::vector<int>& perm, int n, int m) {
    const std::uint64_t digit_mask = (1ull << m) - 1;
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t mask = (code >> (i * m)) & digit_mask;
        std::uint64_t remapped = 0;
        for (int j = 0; j < m; ++j)
            if (mask >> j & 1u) remapped |= 1ull << perm[static_cast<size_t>(j)];
        out |= remapped << (i * m);
    }
    return out;
}

template <class Params>
EquilibriumReport enumerate_impl(const Params& p, bool canonical) {
    p.validate();
    require_two_tier_params(p);
    // Work scales like n * 2^(m*(n+1)); keep the exponent modest.
    if (p.m > 8 || (p.n + 1) * p.m > 24)
        throw SizeGuardError(
            "exhaustive enumeration limited to (n+1)*m <= 24 and m <= 8; "
            "use br_dynamics for larger games");

    const std::uint64_t digit_mask = (1ull << p.m) - 1;
    std::uint64_t total = 1;
    for (int i = 0; i < p.n; ++i) total <<= p.m;

    const std::vector<std::vector<int>> symmetries =
        canonical ? supplier_symmetries(p) : std::vector<std::vector<int>>{};

    EquilibriumReport rep;
    rep.profiles_examined = total;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::vector<int>> links(static_cast<size_t>(p.n));
        for (int i = 0; i < p.n; ++i)
            links[static_cast<size_t>(i)] =
                mask_links(static_cast<std::uint32_t>((code >> (i * p.m)) & digit_mask), p.m);
        Network net(p.n, p.m, links);
        if (!nash_check_impl(net, p).is_nash) continue;
        if (canonical) {
            bool minimal = true;
            for (const auto& perm : symmetries)
                if (relabel_code(code, perm, p.n, p.m) < code) {
                    minimal = false;
                    break;
                }
            if (!minimal) continue;
        }
        std::optional<Classification> label;
        if (p.n == 2 && p.m == 2) label = classify_2x2(net);
        std::vector<double> payoffs;
        payoffs.reserve(static_cast<size_t>(p.n));
        for (int i = 0; i < p.n; ++i) payoffs.push_back(payoff_for(net, p, i));
        rep.entries.push_back(EquilibriumEntry{std::move(net), label, std::move(payoffs)});
    }
    return rep;
}

template <class Params>
BrTrace br_dynamics_impl(const Network& start, const Params& p, int max_rounds) {
    p.validate();
    require_two_tier_params(p);
    require_game(start, p.n, p.m);
    require_subset_search(p.m);
    if (max_rounds < 0) throw ValidationError("max_rounds must be >= 0");

    BrTrace tr;
    tr.trajectory.push_back(start);
    Network cur = start;
    const std::uint32_t lim = 1u << p.m;
    for (int round = 0; round < max_rounds; ++round) {
        tr.rounds = round + 1;
        bool moved = false;
        for (int i = 0; i < p.n; ++i) {
            const double base = payoff_for(cur, p, i);
            double vmax = -std::numeric_limits<double>::infinity();
            std::vector<std::vector<int>> argmax;
            for (std::uint32_t mask = 0; mask < lim; ++mask) {
                std::vector<int> links = mask_links(mask, p.m);
                const Network cand = cur.with_retailer_links(i, links);
                const double v = payoff_for(cand, p, i);
                if (v > vmax) {
                    vmax = v;
                    argmax.clear();
                }
                if (v == vmax) argmax.push_back(std::move(links));
            }
            if (vmax <= base + kGainTolerance) continue;
            cur = cur.with_retailer_links(i, *std::min_element(argmax.begin(), argmax.end()));
            tr.trajectory.push_back(cur);
            moved = true;
        }
        if (!moved) {
            tr.converged = true;
            break;
        }
    }
    return tr;
}

}  // namespace

std::vector<std::vector<int>> best_responses(const Network& net, const ModelParams& p,
                                             int retailer) {
    return best_responses_impl(net, p, retailer);
}

std::vector<std::vector<int>> best_responses(const Network& net, const HeteroParams& p,
                                             int retailer) {
    return best_responses_impl(net, p, retailer);
}

NashResult nash_check(const Network& net, const ModelParams& p) {
    return nash_check_impl(net, p);
}

NashResult nash_check(const Network& net, const HeteroParams& p) {
    return nash_check_impl(net, p);
}

EquilibriumReport enumerate_equilibria(const ModelParams& p, bool canonical) {
    return enumerate_impl(p, canonical);
}

EquilibriumReport enumerate_equilibria(const HeteroParams& p, bool canonical) {
    return enumerate_impl(p, canonical);
}

BrTrace br_dynamics(const Network& start, const ModelParams& p, int max_rounds) {
    return br_dynamics_impl(start, p, max_rounds);
}

BrTrace br_dynamics(const Network& start, const HeteroParams& p, int max_rounds) {
    return br_dynamics_impl(start, p, max_rounds);
}

}  // namespace scn
