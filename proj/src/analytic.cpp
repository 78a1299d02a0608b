#include "scn/analytic.hpp"

namespace scn {

namespace {

void require_two_tier(const Network& net) {
    if (net.tier_count() != 2)
        throw ValidationError("closed forms are defined for two-tier networks");
}

// Per-supplier vectors are indexed by network positions, so the sizes must
// agree exactly.
void require_match(const Network& net, int n, int m) {
    if (net.retailers() != n || net.suppliers() != m)
        throw ValidationError("network size does not match the parameter set");
}

}  // namespace

double rho(const Network& net, int i) {
    require_two_tier(net);
    double acc = 0.0;
    for (int k = 0; k < net.retailers(); ++k) {
        if (k == i || !net.retailer_active(k)) continue;
        acc += static_cast<double>(net.overlap(i, k)) / net.retailer_degree(k);
    }
    return acc;
}

double congestion(const Network& net, int j, int exclude) {
    require_two_tier(net);
    double acc = 0.0;
    for (int i : net.in_neighbors(2, j)) {
        if (i == exclude) continue;
        acc += 1.0 / net.retailer_degree(i);
    }
    return acc;
}

namespace {

// Shared leading term: lambda(1-lambda)D(lambda D((1+lambda)n_active - lambda) - Delta).
double base_term(const Network& net, const ModelParams& p) {
    const double l = p.lambda;
    const int na = net.active_retailer_count();
    return l * (1.0 - l) * p.d * (l * p.d * ((1.0 + l) * na - l) - p.delta());
}

}  // namespace

double payoff_no_congestion(const Network& net, const ModelParams& p, int i) {
    require_two_tier(net);
    require_match(net, p.n, p.m);
    p.validate();
    if (!net.retailer_active(i)) return 0.0;
    const double l = p.lambda;
    const double deg = net.retailer_degree(i);
    const double r = rho(net, i);
    return base_term(net, p)
         + l * (1.0 - l) * (1.0 - l) * p.d * p.d * (1.0 + (1.0 + l) * r) / deg
         - p.c * deg;
}

double payoff_congestion(const Network& net, const ModelParams& p, int i) {
    require_two_tier(net);
    require_match(net, p.n, p.m);
    p.validate();
    if (!net.retailer_active(i)) return 0.0;
    const double l = p.lambda;
    const double g = p.gamma;
    const double d2 = p.d * p.d;
    const double deg = net.retailer_degree(i);
    double acc = base_term(net, p)
               + (l * d2 / deg) * ((1.0 - l) * (1.0 - l) - g / (2.0 * deg));
    for (int j : net.retailer_links(i)) {
        const double fmi = congestion(net, j, i);
        acc += (l * d2 / deg)
             * fmi * ((1.0 - l) * (1.0 - l * l) - g / deg - 0.5 * g * fmi);
    }
    return acc - p.c * deg;
}

double payoff_hetero_retailer(const Network& net, const HeteroParams& h, int i) {
    require_two_tier(net);
    require_match(net, h.n, h.m);
    h.validate();
    if (!net.retailer_active(i)) return 0.0;
    const double lr = h.lambda_r;
    const double d2 = h.d * h.d;
    const int deg_i = net.retailer_degree(i);

    auto mean_lambda = [&](int r) {
        double s = 0.0;
        for (int j : net.retailer_links(r)) s += h.lambda_sup[static_cast<size_t>(j)];
        return s / net.retailer_degree(r);
    };
    // sum of lambda_j(1-lambda_j) over N(i) ∩ N(i'), degree-normalized
    auto sigma = [&](int a, int b) {
        double s = 0.0;
        const auto& na = net.retailer_links(a);
        const auto& nb = net.retailer_links(b);
        size_t x = 0, y = 0;
        while (x < na.size() && y < nb.size()) {
            if (na[x] < nb[y]) ++x;
            else if (na[x] > nb[y]) ++y;
            else {
                const double lj = h.lambda_sup[static_cast<size_t>(na[x])];
                s += lj * (1.0 - lj);
                ++x; ++y;
            }
        }
        return s / (static_cast<double>(net.retailer_degree(a)) * net.retailer_degree(b));
    };

    const double lbar_i = mean_lambda(i);
    // Diagonal pair carries (1 - lambda_r): a retailer's success indicator is
    // idempotent, so E[omega_i * omega_i] = lambda_r, not lambda_r^2.
    double pairs = (1.0 - lr) * (lbar_i * lbar_i + sigma(i, i));
    for (int k = 0; k < net.retailers(); ++k) {
        if (k == i || !net.retailer_active(k)) continue;
        pairs += (1.0 - lr * lr) * (lbar_i * mean_lambda(k) + sigma(i, k));
    }

    double latency = 0.0;
    for (int j : net.retailer_links(i)) {
        const double f = congestion(net, j);
        latency += h.gamma_sup[static_cast<size_t>(j)] * h.lambda_sup[static_cast<size_t>(j)] * f * f;
    }
    latency *= d2 / (2.0 * deg_i);

    return d2 * pairs - h.delta() * (1.0 - lr) * h.d * lbar_i - h.c * deg_i - latency;
}

namespace {

double supplier_payoff_impl(const Network& net, double d, double delta,
                            const std::vector<double>& lambda_sup, int j) {
    if (net.in_degree(2, j) == 0) return 0.0;
    const double dj = d * congestion(net, j);
    double rival = 0.0;
    for (int k = 0; k < net.suppliers(); ++k) {
        if (k == j || net.in_degree(2, k) == 0) continue;
        rival += lambda_sup[static_cast<size_t>(k)] * d * congestion(net, k);
    }
    const int na = net.active_retailer_count();
    return dj * (lambda_sup[static_cast<size_t>(j)] * (delta - dj - rival)
                 - (delta - na * d));
}

}  // namespace

double payoff_hetero_supplier(const Network& net, const HeteroParams& h, int j) {
    require_two_tier(net);
    require_match(net, h.n, h.m);
    h.validate();
    return supplier_payoff_impl(net, h.d, h.delta(), h.lambda_sup, j);
}

double payoff_supplier(const Network& net, const ModelParams& p, int j) {
    require_two_tier(net);
    require_match(net, p.n, p.m);
    p.validate();
    const std::vector<double> ls(static_cast<size_t>(p.m), p.lambda);
    return supplier_payoff_impl(net, p.d, p.delta(), ls, j);
}

}  // namespace scn
