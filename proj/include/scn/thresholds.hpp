#pragma once

#include <array>
#include <functional>
#include <optional>

#include "scn/model.hpp"

namespace scn {

// Retailer positions in the named 2x2 shapes. Zee has two payoff-distinct
// positions: Zee1 is the single-link retailer, Zee2 the two-link one.
enum class Candidate { Cone, Parallel, Zee1, Zee2, Full };

inline constexpr std::array<Candidate, 5> kCandidates = {
    Candidate::Cone, Candidate::Parallel, Candidate::Zee1, Candidate::Zee2, Candidate::Full};

std::string to_string(Candidate k);
int candidate_degree(Candidate k);  // out-degree of the position: 1,1,1,2,2
NetClass candidate_class(Candidate k);

// Expected payoff of the position, evaluated through the general closed form
// on the canonical network. This is the value the simulator reproduces.
double candidate_payoff(Candidate k, double lambda, double gamma, double c, double D = 1.0);

// The published form of the polynomial. Kept only for reconciliation; the
// cone row is known to disagree with the model.
double candidate_payoff_printed(Candidate k, double lambda, double gamma, double c, double D = 1.0);

// A numerically solved quantity next to its printed closed form. `matches`
// uses an absolute 1e-9 tolerance.
struct SolvedPrinted {
    double solved = 0.0;
    double printed = 0.0;
    bool matches = false;
};

// Region-separating curves: gamma-roots of candidate payoff equalities.
enum class Curve { FullZee1, Zee2Cone, ParallelCone, ParallelZee2 };

inline constexpr std::array<Curve, 4> kCurves = {
    Curve::FullZee1, Curve::Zee2Cone, Curve::ParallelCone, Curve::ParallelZee2};

std::string to_string(Curve k);

// Root of f by bisection on [lo, hi]; endpoints must straddle zero.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol = 1e-12, int max_iter = 200);

// gamma-root of the payoff equality behind `curve` at linking cost c,
// clamped at 0 when the equality already favors the sparser side at gamma=0.
double solve_gamma_hat(Curve curve, double lambda, double c, double D = 1.0);

// Largest gamma keeping the position's payoff nonnegative at c=0 (0 when the
// payoff is nonpositive already at gamma=0).
double gamma_max_solved(Candidate k, double lambda, double D = 1.0);
double gamma_max_printed(Candidate k, double lambda, double D = 1.0);

// Largest linking cost keeping the position's payoff nonnegative.
double c_max_solved(Candidate k, double lambda, double gamma, double D = 1.0);
// Note: the printed parallel row here is the feasibility-table variant, which
// disagrees with the parallel candidate payoff (flagged by callers).
double c_max_printed(Candidate k, double lambda, double gamma, double D = 1.0);

// Smallest lambda at which the position is feasible at gamma=0, c=0.
double lambda_min_solved(Candidate k);
double lambda_min_printed(Candidate k);

struct Thresholds2x2 {
    double lambda = 0.0;
    double c = 0.0;
    double D = 1.0;
    // Indexed by kCandidates order.
    std::array<SolvedPrinted, 5> gamma_max;
    std::array<SolvedPrinted, 5> lambda_min;
    // Indexed by kCurves order. `solved` is at the requested c; the printed
    // closed forms are c=0 curves, so `matches` compares a c=0 solve against
    // them (formula-level reconciliation, independent of the queried c).
    std::array<SolvedPrinted, 4> gamma_hat;
    std::array<double, 4> gamma_hat_solved_c0{};
};

Thresholds2x2 thresholds_2x2(double lambda, double c = 0.0, double D = 1.0);

// Common intersection of the four solved gamma_hat(lambda, c) curves, when it
// exists in lambda ∈ (lambda_min_parallel, 1); requires c > 0.
struct CurveIntersection {
    double lambda = 0.0;
    double gamma = 0.0;
};
std::optional<CurveIntersection> gamma_hat_intersection(double c, double D = 1.0);

// Symmetric-regime quantities. d_hat needs c > 0, f_hat needs gamma > 0;
// both are absent (not zero) otherwise.
struct RegimeQuantities {
    std::optional<double> d_hat;
    double low_gamma_threshold = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
    std::optional<double> f_hat(double degree) const;
};

RegimeQuantities regime_quantities(const ModelParams& p);

// Printed preferred-reliability level for a two-supplier instance.
double lambda_hat(double lambda1, double lambda2, double lambda_r, double gamma);

}  // namespace scn
