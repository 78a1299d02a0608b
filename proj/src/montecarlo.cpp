#include "scn/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace scn {

namespace {

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Flattened per-run parameters: success probability per agent and congestion
// coefficient per upstream agent, for either parameter flavor.
struct RunSpec {
    std::vector<int> sizes;
    double D = 1.0;
    double c = 0.0;
    double delta = 0.0;
    std::vector<std::vector<double>> lambda;  // [tier-1][agent]
    std::vector<std::vector<double>> gamma;   // [tier-2][agent], tiers 2..T
};

RunSpec make_spec(const Network& net, const ModelParams& p) {
    p.validate();
    const auto sizes = p.tier_sizes();
    if (net.tier_count() != static_cast<int>(sizes.size()))
        throw ValidationError("network and params disagree on tier count");
    for (size_t t = 0; t < sizes.size(); ++t)
        if (net.tier_size(static_cast<int>(t) + 1) != sizes[t])
            throw ValidationError("network and params disagree on a tier size");
    RunSpec s;
    s.sizes = sizes;
    s.D = p.d;
    s.c = p.c;
    s.delta = p.delta();
    for (int sz : sizes) s.lambda.push_back(std::vector<double>(static_cast<size_t>(sz), p.lambda));
    for (size_t t = 1; t < sizes.size(); ++t)
        s.gamma.push_back(std::vector<double>(static_cast<size_t>(sizes[t]), p.gamma));
    return s;
}

RunSpec make_spec(const Network& net, const HeteroParams& h) {
    h.validate();
    if (net.tier_count() != 2 || net.retailers() != h.n || net.suppliers() != h.m)
        throw ValidationError("heterogeneous params need a matching two-tier network");
    RunSpec s;
    s.sizes = {h.n, h.m};
    s.D = h.d;
    s.c = h.c;
    s.delta = h.delta();
    s.lambda.push_back(std::vector<double>(static_cast<size_t>(h.n), h.lambda_r));
    s.lambda.push_back(h.lambda_sup);
    s.gamma.push_back(h.gamma_sup);
    return s;
}

int total_agents(const RunSpec& s) {
    int acc = 0;
    for (int sz : s.sizes) acc += sz;
    return acc;
}

std::vector<std::vector<uint8_t>> draw_success(const RunSpec& s, uint64_t seed, uint64_t index) {
    std::vector<std::vector<uint8_t>> w;
    const uint64_t per_sample = static_cast<uint64_t>(total_agents(s));
    uint64_t k = index * per_sample;
    for (size_t t = 0; t < s.sizes.size(); ++t) {
        std::vector<uint8_t> row(static_cast<size_t>(s.sizes[t]));
        for (int i = 0; i < s.sizes[t]; ++i)
            row[static_cast<size_t>(i)] =
                uniform01(seed, k++) < s.lambda[t][static_cast<size_t>(i)] ? 1 : 0;
        w.push_back(std::move(row));
    }
    return w;
}

Realization run(const Network& net, const RunSpec& s,
                const std::vector<std::vector<uint8_t>>& success) {
    const int T = static_cast<int>(s.sizes.size());
    if (static_cast<int>(success.size()) != T)
        throw ValidationError("success indicators: wrong tier count");
    for (int t = 0; t < T; ++t)
        if (static_cast<int>(success[static_cast<size_t>(t)].size()) !=
            s.sizes[static_cast<size_t>(t)])
            throw ValidationError("success indicators: wrong agent count");

    Realization r;
    r.success = success;
    r.demand.resize(static_cast<size_t>(T));
    r.realized.resize(static_cast<size_t>(T));
    r.supply.resize(static_cast<size_t>(T));
    r.payoff.resize(static_cast<size_t>(T));

    // Demand flows upstream; every retailer faces consumer demand D, linked
    // or not, and each agent splits its demand evenly over its out-links.
    r.demand[0].assign(static_cast<size_t>(s.sizes[0]), s.D);
    for (int t = 2; t <= T; ++t) {
        auto& row = r.demand[static_cast<size_t>(t - 1)];
        row.assign(static_cast<size_t>(s.sizes[static_cast<size_t>(t - 1)]), 0.0);
        for (int j = 0; j < s.sizes[static_cast<size_t>(t - 1)]; ++j)
            for (int i : net.in_neighbors(t, j))
                row[static_cast<size_t>(j)] +=
                    r.demand[static_cast<size_t>(t - 2)][static_cast<size_t>(i)] /
                    net.out_degree(t - 1, i);
    }

    // Deliveries flow back down, rationed proportionally: the raw tier never
    // fails, below it each agent receives its ordered share scaled by the
    // upstream agent's delivered fraction.
    r.realized[static_cast<size_t>(T - 1)] = r.demand[static_cast<size_t>(T - 1)];
    for (int t = T - 1; t >= 1; --t) {
        auto& row = r.realized[static_cast<size_t>(t - 1)];
        row.assign(static_cast<size_t>(s.sizes[static_cast<size_t>(t - 1)]), 0.0);
        for (int i = 0; i < s.sizes[static_cast<size_t>(t - 1)]; ++i) {
            const auto& nb = net.out_neighbors(t, i);
            if (nb.empty()) continue;
            const double order = r.demand[static_cast<size_t>(t - 1)][static_cast<size_t>(i)] /
                                 static_cast<double>(nb.size());
            double got = 0.0;
            for (int j : nb) {
                const double dem = r.demand[static_cast<size_t>(t)][static_cast<size_t>(j)];
                if (dem <= 0.0 || !r.success[static_cast<size_t>(t)][static_cast<size_t>(j)])
                    continue;
                got += (r.realized[static_cast<size_t>(t)][static_cast<size_t>(j)] / dem) * order;
            }
            row[static_cast<size_t>(i)] = got;
        }
    }

    r.tier_supply.assign(static_cast<size_t>(T + 1), 0.0);
    for (int t = 1; t <= T; ++t) {
        auto& row = r.supply[static_cast<size_t>(t - 1)];
        row.assign(static_cast<size_t>(s.sizes[static_cast<size_t>(t - 1)]), 0.0);
        for (int i = 0; i < s.sizes[static_cast<size_t>(t - 1)]; ++i) {
            if (r.success[static_cast<size_t>(t - 1)][static_cast<size_t>(i)])
                row[static_cast<size_t>(i)] =
                    r.realized[static_cast<size_t>(t - 1)][static_cast<size_t>(i)];
            r.tier_supply[static_cast<size_t>(t - 1)] += row[static_cast<size_t>(i)];
        }
    }
    for (double v : r.realized[static_cast<size_t>(T - 1)])
        r.tier_supply[static_cast<size_t>(T)] += v;

    r.price.resize(static_cast<size_t>(T + 1));
    for (int t = 0; t <= T; ++t)
        r.price[static_cast<size_t>(t)] = s.delta - r.tier_supply[static_cast<size_t>(t)];

    for (int t = 1; t <= T; ++t) {
        auto& row = r.payoff[static_cast<size_t>(t - 1)];
        row.assign(static_cast<size_t>(s.sizes[static_cast<size_t>(t - 1)]), 0.0);
        for (int i = 0; i < s.sizes[static_cast<size_t>(t - 1)]; ++i) {
            const double sell = r.supply[static_cast<size_t>(t - 1)][static_cast<size_t>(i)] *
                                r.price[static_cast<size_t>(t - 1)];
            const double buy = r.realized[static_cast<size_t>(t - 1)][static_cast<size_t>(i)] *
                               r.price[static_cast<size_t>(t)];
            double pay = sell - buy;
            if (t < T) {
                const auto& nb = net.out_neighbors(t, i);
                pay -= s.c * static_cast<double>(nb.size());
                if (!nb.empty()) {
                    double lat = 0.0;
                    for (int j : nb) {
                        const double sj = r.supply[static_cast<size_t>(t)][static_cast<size_t>(j)];
                        lat += 0.5 * s.gamma[static_cast<size_t>(t - 1)][static_cast<size_t>(j)] * sj * sj;
                    }
                    pay -= lat / static_cast<double>(nb.size());
                }
            }
            row[static_cast<size_t>(i)] = pay;
        }
    }
    return r;
}

PayoffEstimate estimate(const Network& net, const RunSpec& s,
                        uint64_t samples, uint64_t seed, int jobs) {
    if (samples == 0) throw ValidationError("samples must be >= 1");
    if (jobs < 1) throw ValidationError("jobs must be >= 1");

    const int agents = total_agents(s);
    constexpr uint64_t kBlock = 4096;
    const uint64_t nblocks = (samples + kBlock - 1) / kBlock;

    // Fixed-size blocks accumulated in block order keep the floating-point
    // reduction identical for every thread count.
    std::vector<std::vector<double>> block_sum(nblocks), block_sq(nblocks);
    std::atomic<uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const uint64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            std::vector<double> sum(static_cast<size_t>(agents), 0.0);
            std::vector<double> sq(static_cast<size_t>(agents), 0.0);
            const uint64_t lo = b * kBlock;
            const uint64_t hi = std::min(samples, lo + kBlock);
            for (uint64_t k = lo; k < hi; ++k) {
                const Realization r = run(net, s, draw_success(s, seed, k));
                size_t a = 0;
                for (const auto& tier : r.payoff)
                    for (double v : tier) {
                        sum[a] += v;
                        sq[a] += v * v;
                        ++a;
                    }
            }
            block_sum[b] = std::move(sum);
            block_sq[b] = std::move(sq);
        }
    };
    const int nthreads = static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(jobs), nblocks));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<double> sum(static_cast<size_t>(agents), 0.0), sq(static_cast<size_t>(agents), 0.0);
    for (uint64_t b = 0; b < nblocks; ++b)
        for (int a = 0; a < agents; ++a) {
            sum[static_cast<size_t>(a)] += block_sum[b][static_cast<size_t>(a)];
            sq[static_cast<size_t>(a)] += block_sq[b][static_cast<size_t>(a)];
        }

    PayoffEstimate est;
    est.samples = samples;
    est.seed = seed;
    const double nd = static_cast<double>(samples);
    size_t a = 0;
    for (int sz : s.sizes) {
        std::vector<AgentEstimate> tier(static_cast<size_t>(sz));
        for (int i = 0; i < sz; ++i, ++a) {
            AgentEstimate& e = tier[static_cast<size_t>(i)];
            e.mean = sum[a] / nd;
            if (samples > 1) {
                const double var = std::max(0.0, (sq[a] - nd * e.mean * e.mean) / (nd - 1.0));
                e.std_error = std::sqrt(var / nd);
            }
        }
        est.tiers.push_back(std::move(tier));
    }
    return est;
}

}  // namespace

double uniform01(uint64_t seed, uint64_t counter) {
    const uint64_t z = mix64(seed + (counter + 1) * 0x9E3779B97F4A7C15ULL);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Realization realize_with(const Network& net, const ModelParams& p,
                         const std::vector<std::vector<uint8_t>>& success) {
    return run(net, make_spec(net, p), success);
}

Realization realize_with(const Network& net, const HeteroParams& h,
                         const std::vector<std::vector<uint8_t>>& success) {
    return run(net, make_spec(net, h), success);
}

Realization realize(const Network& net, const ModelParams& p, uint64_t seed, uint64_t index) {
    const RunSpec s = make_spec(net, p);
    return run(net, s, draw_success(s, seed, index));
}

Realization realize(const Network& net, const HeteroParams& h, uint64_t seed, uint64_t index) {
    const RunSpec s = make_spec(net, h);
    return run(net, s, draw_success(s, seed, index));
}

PayoffEstimate estimate_payoffs(const Network& net, const ModelParams& p,
                                uint64_t samples, uint64_t seed, int jobs) {
    return estimate(net, make_spec(net, p), samples, seed, jobs);
}

PayoffEstimate estimate_payoffs(const Network& net, const HeteroParams& h,
                                uint64_t samples, uint64_t seed, int jobs) {
    return estimate(net, make_spec(net, h), samples, seed, jobs);
}

}  // namespace scn
