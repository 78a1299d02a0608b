#pragma once

#include <string>
#include <vector>

#include "scn/model.hpp"
#include "scn/thresholds.hpp"

namespace scn {

// One parameter point: region prediction from the threshold curves next to
// the exhaustively enumerated equilibrium set. boundary_distance is the gap
// in gamma to the nearest solved curve of the point's lambda column.
struct PhaseCell {
    double lambda = 0.0;
    double gamma = 0.0;
    double c = 0.0;
    std::vector<NetClass> predicted;   // sorted, unique
    std::vector<NetClass> enumerated;  // sorted, unique
    bool agree = false;
    bool in_domain = false;  // lambda above the parallel floor, gamma below its ceiling
    double boundary_distance = 0.0;
};

// Equilibrium classes at (lambda, gamma, c) implied by the solved threshold
// curves: Empty always; Cone/Parallel/Full by their unilateral-deviation
// boundaries intersected with nonnegative candidate payoff. Points outside
// the feasibility domain predict {Empty}. D normalized to 1 (c scales as D^2).
std::vector<NetClass> predict_2x2(double lambda, double gamma, double c);

// Same region logic driven by the printed closed forms (printed gamma-hat
// curves and printed feasibility rows). Reconciliation only.
std::vector<NetClass> predict_2x2_printed(double lambda, double gamma, double c);

// "empty+cone+full" style rendering, fixed class order.
std::string class_set_to_string(const std::vector<NetClass>& set);

struct SweepSpec {
    double lambda_lo = 0.63;
    double lambda_hi = 0.98;
    int lambda_points = 40;
    // Absolute gamma grid [gamma_lo, gamma_hi], or, when gamma_relative, a
    // per-column grid of gamma_points values strictly inside
    // (0, gamma_max(parallel, lambda)).
    double gamma_lo = 0.001;
    double gamma_hi = 0.15;
    int gamma_points = 40;
    bool gamma_relative = false;
    std::vector<double> c_values = {0.0};
    int jobs = 1;  // columns run in parallel; output independent of the count
};

// Grid evaluation, ordered by (c, lambda, gamma). Deterministic.
std::vector<PhaseCell> sweep(const SweepSpec& spec);

// CSV with header lambda,gamma,c,predicted,enumerated,agree.
std::string cells_to_csv(const std::vector<PhaseCell>& cells);

// Enumerated outcomes that contradict one printed closed form.
struct PrintedFinding {
    std::string threshold;
    int cells_contradicted = 0;
    // Bounding box of the contradicted cells.
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    double gamma_lo = 0.0;
    double gamma_hi = 0.0;
};

struct ReconcileReport {
    int total_cells = 0;
    int boundary_cells = 0;  // within boundary_steps grid-steps of a solved curve
    std::vector<PhaseCell> disagreements;  // interior cells where predicted != enumerated
    std::vector<PhaseCell> indeterminate;  // boundary-adjacent disagreements, not failures
    // Fixed order: gamma_hat_pz2, gamma_hat_z2c, c_max_parallel.
    std::vector<PrintedFinding> printed_findings;
};

// Scores prediction against enumeration over swept cells. The per-column
// grid step is inferred from the cells; disagreements closer to a solved
// curve than boundary_steps steps are reported as indeterminate.
ReconcileReport reconcile(const std::vector<PhaseCell>& cells, double boundary_steps = 2.0);

std::string reconcile_to_string(const ReconcileReport& rep);

}  // namespace scn
