#include "scn/thresholds.hpp"

#include <cmath>
#include <limits>

#include "scn/analytic.hpp"

namespace scn {

namespace {

constexpr double kMatchTol = 1e-9;

const Network& canonical_net(Candidate k) {
    static const Network cone = make_cone_2x2();
    static const Network parallel = make_parallel_2x2();
    static const Network zee = make_zee_2x2();
    static const Network full = make_full_2x2();
    switch (k) {
        case Candidate::Cone: return cone;
        case Candidate::Parallel: return parallel;
        case Candidate::Zee1: return zee;
        case Candidate::Zee2: return zee;
        case Candidate::Full: return full;
    }
    return cone;
}

int candidate_position(Candidate k) { return k == Candidate::Zee2 ? 1 : 0; }

}  // namespace

std::string to_string(Candidate k) {
    switch (k) {
        case Candidate::Cone: return "cone";
        case Candidate::Parallel: return "parallel";
        case Candidate::Zee1: return "zee1";
        case Candidate::Zee2: return "zee2";
        case Candidate::Full: return "full";
    }
    return "cone";
}

int candidate_degree(Candidate k) {
    return (k == Candidate::Zee2 || k == Candidate::Full) ? 2 : 1;
}

NetClass candidate_class(Candidate k) {
    switch (k) {
        case Candidate::Cone: return NetClass::Cone;
        case Candidate::Parallel: return NetClass::Parallel;
        case Candidate::Zee1: return NetClass::Zee;
        case Candidate::Zee2: return NetClass::Zee;
        case Candidate::Full: return NetClass::Full;
    }
    return NetClass::Other;
}

std::string to_string(Curve k) {
    switch (k) {
        case Curve::FullZee1: return "fz1";
        case Curve::Zee2Cone: return "z2c";
        case Curve::ParallelCone: return "pc";
        case Curve::ParallelZee2: return "pz2";
    }
    return "fz1";
}

double candidate_payoff(Candidate k, double lambda, double gamma, double c, double D) {
    ModelParams p;
    p.n = 2;
    p.m = 2;
    p.d = D;
    p.lambda = lambda;
    p.c = c;
    p.gamma = gamma;
    return payoff_congestion(canonical_net(k), p, candidate_position(k));
}

double candidate_payoff_printed(Candidate k, double lambda, double gamma, double c, double D) {
    const double l = lambda;
    const double d2 = D * D;
    switch (k) {
        case Candidate::Cone:
            return l * (l * l * l - 2.0 * l * l + 1.0 - 3.5 * gamma) * d2 - c;
        case Candidate::Parallel:
            return l * (-l * l * l + 2.0 * l - 1.0 - 0.5 * gamma) * d2 - c;
        case Candidate::Zee1:
            return 0.5 * l * (-l * l * l - l * l + 3.0 * l - 1.0 - 2.25 * gamma) * d2 - c;
        case Candidate::Zee2:
            return 0.5 * l * (-l * l * l - 2.0 * l * l + 5.0 * l - 2.0 - 1.25 * gamma) * d2 - 2.0 * c;
        case Candidate::Full:
            return 0.5 * l * (-l * l * l - 2.0 * l * l + 5.0 * l - 2.0 - gamma) * d2 - 2.0 * c;
    }
    return 0.0;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw ValidationError("bisect: endpoints do not straddle a root");
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

// Root in gamma of a monotone `f` that is increasing (or decreasing) in gamma,
// clamped to 0 when f(0) already has the limiting sign.
double gamma_root(const std::function<double(double)>& f, bool increasing) {
    const double f0 = f(0.0);
    if (increasing ? (f0 >= 0.0) : (f0 <= 0.0)) return 0.0;
    double hi = 1.0;
    for (int k = 0; k < 60; ++k) {
        const double v = f(hi);
        if (increasing ? (v > 0.0) : (v < 0.0)) break;
        hi *= 2.0;
    }
    return bisect(f, 0.0, hi);
}

}  // namespace

double solve_gamma_hat(Curve curve, double lambda, double c, double D) {
    Candidate dense = Candidate::Full, sparse = Candidate::Zee1;
    switch (curve) {
        case Curve::FullZee1: dense = Candidate::Full; sparse = Candidate::Zee1; break;
        case Curve::Zee2Cone: dense = Candidate::Zee2; sparse = Candidate::Cone; break;
        case Curve::ParallelCone: dense = Candidate::Parallel; sparse = Candidate::Cone; break;
        case Curve::ParallelZee2: dense = Candidate::Parallel; sparse = Candidate::Zee2; break;
    }
    // Each difference grows with gamma: the first candidate decays slower.
    auto f = [&](double g) {
        return candidate_payoff(dense, lambda, g, c, D) -
               candidate_payoff(sparse, lambda, g, c, D);
    };
    return gamma_root(f, true);
}

double gamma_max_solved(Candidate k, double lambda, double D) {
    auto f = [&](double g) { return candidate_payoff(k, lambda, g, 0.0, D); };
    return gamma_root(f, false);
}

double gamma_max_printed(Candidate k, double lambda, double D) {
    const double l = lambda;
    const double d2 = D * D;
    const double r5 = std::sqrt(5.0);
    const double r17 = std::sqrt(17.0);
    const double r2 = std::sqrt(2.0);
    switch (k) {
        case Candidate::Cone:
            return (2.0 / 7.0) * (1.0 - l) * ((r5 + 1.0) / 2.0 - l) * ((r5 - 1.0) / 2.0 + l) * d2;
        case Candidate::Parallel:
            return 2.0 * (1.0 - l) * (l + (r5 + 1.0) / 2.0) * (l - (r5 - 1.0) / 2.0) * d2;
        case Candidate::Zee1:
            return (4.0 / 9.0) * (1.0 - l) * (l + r2 + 1.0) * (l - (r2 - 1.0)) * d2;
        case Candidate::Zee2:
            return (4.0 / 5.0) * (1.0 - l) * (l + (r17 + 3.0) / 2.0) * (l - (r17 - 3.0) / 2.0) * d2;
        case Candidate::Full:
            return (1.0 - l) * (l + (r17 + 3.0) / 2.0) * (l - (r17 - 3.0) / 2.0) * d2;
    }
    return 0.0;
}

double c_max_solved(Candidate k, double lambda, double gamma, double D) {
    return candidate_payoff(k, lambda, gamma, 0.0, D) / candidate_degree(k);
}

double c_max_printed(Candidate k, double lambda, double gamma, double D) {
    if (k == Candidate::Parallel) {
        // Feasibility-table row; inconsistent with the parallel candidate
        // payoff (2*lambda^2 where the payoff has 2*lambda). Reconciliation only.
        const double l = lambda;
        return l * (-l * l * l + 2.0 * l * l - 1.0 - 0.5 * gamma) * D * D;
    }
    return candidate_payoff_printed(k, lambda, gamma, 0.0, D) / candidate_degree(k);
}

double lambda_min_solved(Candidate k) {
    const double lo = 1e-9;
    const double hi = 0.99;
    auto f = [&](double l) { return candidate_payoff(k, l, 0.0, 0.0, 1.0); };
    if (f(lo) > 0.0) return 0.0;
    return bisect(f, lo, hi);
}

double lambda_min_printed(Candidate k) {
    switch (k) {
        case Candidate::Cone: return 0.0;
        case Candidate::Parallel: return (std::sqrt(5.0) - 1.0) / 2.0;
        case Candidate::Zee1: return std::sqrt(2.0) - 1.0;
        case Candidate::Zee2: return (std::sqrt(17.0) - 3.0) / 2.0;
        case Candidate::Full: return (std::sqrt(17.0) - 3.0) / 2.0;
    }
    return 0.0;
}

namespace {

double gamma_hat_printed(Curve k, double lambda, double D) {
    const double l = lambda;
    const double q = (1.0 - l) * (1.0 - l) * D * D;
    switch (k) {
        case Curve::FullZee1: return 0.8 * q;
        case Curve::Zee2Cone: return (4.0 / 23.0) * q * (3.0 * l + 4.0);
        case Curve::ParallelCone: return (2.0 / 3.0) * q * (l + 1.0);
        case Curve::ParallelZee2: return l * q;
    }
    return 0.0;
}

SolvedPrinted make_sp(double solved, double printed) {
    SolvedPrinted sp;
    sp.solved = solved;
    sp.printed = printed;
    sp.matches = std::isfinite(solved) && std::isfinite(printed) &&
                 std::abs(solved - printed) <= kMatchTol;
    return sp;
}

}  // namespace

Thresholds2x2 thresholds_2x2(double lambda, double c, double D) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("thresholds need lambda in (0, 1)");
    if (c < 0.0) throw ValidationError("c must be >= 0");
    if (D <= 0.0) throw ValidationError("D must be > 0");
    Thresholds2x2 t;
    t.lambda = lambda;
    t.c = c;
    t.D = D;
    for (size_t k = 0; k < kCandidates.size(); ++k) {
        const Candidate cand = kCandidates[k];
        t.gamma_max[k] = make_sp(gamma_max_solved(cand, lambda, D),
                                 gamma_max_printed(cand, lambda, D));
        t.lambda_min[k] = make_sp(lambda_min_solved(cand), lambda_min_printed(cand));
    }
    for (size_t k = 0; k < kCurves.size(); ++k) {
        const Curve curve = kCurves[k];
        const double at_c = solve_gamma_hat(curve, lambda, c, D);
        const double at_c0 = c == 0.0 ? at_c : solve_gamma_hat(curve, lambda, 0.0, D);
        t.gamma_hat_solved_c0[k] = at_c0;
        t.gamma_hat[k] = make_sp(at_c, gamma_hat_printed(curve, lambda, D));
        t.gamma_hat[k].matches = std::abs(at_c0 - t.gamma_hat[k].printed) <= kMatchTol;
    }
    return t;
}

std::optional<CurveIntersection> gamma_hat_intersection(double c, double D) {
    if (c <= 0.0 || D <= 0.0) return std::nullopt;
    const double lo = lambda_min_printed(Candidate::Parallel) + 1e-6;
    const double hi = 1.0 - 1e-6;
    auto g = [&](double l) {
        return solve_gamma_hat(Curve::FullZee1, l, c, D) -
               solve_gamma_hat(Curve::ParallelZee2, l, c, D);
    };
    const double glo = g(lo);
    const double ghi = g(hi);
    if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
    CurveIntersection pt;
    pt.lambda = bisect(g, lo, hi, 1e-12);
    pt.gamma = solve_gamma_hat(Curve::ParallelCone, pt.lambda, c, D);
    return pt;
}

std::optional<double> RegimeQuantities::f_hat(double degree) const {
    if (degree <= 0.0) throw ValidationError("f_hat needs degree > 0");
    if (gamma <= 0.0) return std::nullopt;
    const double v = (1.0 - lambda) * (1.0 - lambda * lambda) / gamma - 1.0 / degree;
    return std::max(0.0, v);
}

RegimeQuantities regime_quantities(const ModelParams& p) {
    p.validate();
    RegimeQuantities r;
    r.lambda = p.lambda;
    r.gamma = p.gamma;
    r.low_gamma_threshold = (1.0 - p.lambda) * (1.0 - p.lambda * p.lambda) / p.n;
    if (p.c > 0.0) r.d_hat = p.lambda * (1.0 - p.lambda) * p.d / std::sqrt(p.c);
    return r;
}

double lambda_hat(double lambda1, double lambda2, double lambda_r, double gamma) {
    for (double l : {lambda1, lambda2, lambda_r})
        if (!(l > 0.0 && l < 1.0))
            throw ValidationError("lambda_hat needs probabilities in (0, 1)");
    if (gamma < 0.0) throw ValidationError("gamma must be >= 0");
    return lambda1 + lambda2 + 1.0 - 2.0 / (1.0 + lambda_r) -
           gamma / (2.0 * (1.0 - lambda_r * lambda_r));
}

}  // namespace scn
