#include "scn/phase.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <thread>

#include "scn/equilibrium.hpp"

namespace scn {

namespace {

void require_point(double lambda, double gamma, double c) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ValidationError("prediction needs lambda in (0,1)");
    if (!(gamma >= 0.0)) throw ValidationError("prediction needs gamma >= 0");
    if (!(c >= 0.0)) throw ValidationError("prediction needs c >= 0");
}

// Everything the predictor needs for one (lambda, c) column.
struct ColumnCurves {
    double fz1 = 0.0, z2c = 0.0, pc = 0.0, pz2 = 0.0;  // solved at the column's c
    double printed_z2c = 0.0, printed_pz2 = 0.0;
    double dom_floor = 0.0;    // smallest lambda with the parallel shape feasible
    double dom_ceiling = 0.0;  // largest gamma with the parallel shape feasible at c=0
    std::vector<double> boundaries;  // positive curve values crossing the column
};

// Candidate payoffs are linear in gamma with strictly negative slope, so the
// feasibility edge solves exactly from two evaluations.
double feasibility_gamma_root(Candidate k, double lambda, double c) {
    const double f0 = candidate_payoff(k, lambda, 0.0, c);
    const double f1 = candidate_payoff(k, lambda, 1.0, c);
    return f0 / (f0 - f1);
}

ColumnCurves column_curves(double lambda, double c) {
    const Thresholds2x2 t = thresholds_2x2(lambda, c);
    ColumnCurves cc;
    cc.fz1 = t.gamma_hat[0].solved;
    cc.z2c = t.gamma_hat[1].solved;
    cc.pc = t.gamma_hat[2].solved;
    cc.pz2 = t.gamma_hat[3].solved;
    cc.printed_z2c = t.gamma_hat[1].printed;
    cc.printed_pz2 = t.gamma_hat[3].printed;
    cc.dom_floor = t.lambda_min[1].solved;
    cc.dom_ceiling = t.gamma_max[1].solved;
    for (double v : {cc.fz1, cc.z2c, cc.pc, cc.pz2, cc.dom_ceiling})
        if (v > 0.0) cc.boundaries.push_back(v);
    for (Candidate k : kCandidates) {
        const double root = feasibility_gamma_root(k, lambda, c);
        if (root > 0.0) cc.boundaries.push_back(root);
    }
    return cc;
}

bool in_domain(const ColumnCurves& cc, double lambda, double gamma) {
    return lambda > cc.dom_floor && gamma < cc.dom_ceiling;
}

// Membership by unilateral deviations: a shape stays an equilibrium while no
// retailer gains from rewiring (the paired curve) and its payoff is
// nonnegative (the walk-away deviation).
std::vector<NetClass> predict_with(const ColumnCurves& cc, double lambda, double gamma,
                                   double c) {
    std::vector<NetClass> out{NetClass::Empty};
    if (!in_domain(cc, lambda, gamma)) return out;
    if (gamma <= cc.z2c && gamma <= cc.pc &&
        candidate_payoff(Candidate::Cone, lambda, gamma, c) >= 0.0)
        out.push_back(NetClass::Cone);
    if (gamma >= cc.pz2 && gamma >= cc.pc &&
        candidate_payoff(Candidate::Parallel, lambda, gamma, c) >= 0.0)
        out.push_back(NetClass::Parallel);
    if (gamma >= cc.fz1 && candidate_payoff(Candidate::Full, lambda, gamma, c) >= 0.0)
        out.push_back(NetClass::Full);
    return out;
}

std::vector<NetClass> enumerated_classes(double lambda, double gamma, double c) {
    ModelParams p;
    p.n = 2;
    p.m = 2;
    p.d = 1.0;
    p.lambda = lambda;
    p.gamma = gamma;
    p.c = c;
    const EquilibriumReport rep = enumerate_equilibria(p, false);
    std::vector<NetClass> out;
    for (const auto& e : rep.entries)
        out.push_back(e.label ? e.label->label : NetClass::Other);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double boundary_gap(const ColumnCurves& cc, double gamma) {
    double best = std::numeric_limits<double>::max();
    for (double b : cc.boundaries) best = std::min(best, std::abs(gamma - b));
    return best;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::vector<NetClass> predict_2x2(double lambda, double gamma, double c) {
    require_point(lambda, gamma, c);
    return predict_with(column_curves(lambda, c), lambda, gamma, c);
}

std::vector<NetClass> predict_2x2_printed(double lambda, double gamma, double c) {
    require_point(lambda, gamma, c);
    const Thresholds2x2 t = thresholds_2x2(lambda, c);
    std::vector<NetClass> out{NetClass::Empty};
    if (!(lambda > t.lambda_min[1].printed && gamma < t.gamma_max[1].printed)) return out;
    const double fz1 = t.gamma_hat[0].printed;
    const double z2c = t.gamma_hat[1].printed;
    const double pc = t.gamma_hat[2].printed;
    const double pz2 = t.gamma_hat[3].printed;
    if (gamma <= z2c && gamma <= pc && c <= c_max_printed(Candidate::Cone, lambda, gamma))
        out.push_back(NetClass::Cone);
    if (gamma >= pz2 && gamma >= pc && c <= c_max_printed(Candidate::Parallel, lambda, gamma))
        out.push_back(NetClass::Parallel);
    if (gamma >= fz1 && c <= c_max_printed(Candidate::Full, lambda, gamma))
        out.push_back(NetClass::Full);
    return out;
}

std::string class_set_to_string(const std::vector<NetClass>& set) {
    std::string out;
    for (NetClass cl : set) {
        if (!out.empty()) out += '+';
        out += to_string(cl);
    }
    return out;
}

std::vector<PhaseCell> sweep(const SweepSpec& spec) {
    if (spec.lambda_points < 1 || spec.gamma_points < 1 || spec.c_values.empty())
        throw ValidationError("sweep grid is empty");
    if (!(spec.lambda_lo > 0.0 && spec.lambda_hi < 1.0 && spec.lambda_lo <= spec.lambda_hi))
        throw ValidationError("sweep needs 0 < lambda_lo <= lambda_hi < 1");
    if (!spec.gamma_relative && !(spec.gamma_lo >= 0.0 && spec.gamma_lo <= spec.gamma_hi))
        throw ValidationError("sweep needs 0 <= gamma_lo <= gamma_hi");
    for (double c : spec.c_values)
        if (!(c >= 0.0)) throw ValidationError("sweep needs c >= 0");
    if (spec.jobs < 1) throw ValidationError("sweep needs jobs >= 1");

    std::vector<double> lambdas;
    for (int t = 0; t < spec.lambda_points; ++t)
        lambdas.push_back(spec.lambda_points == 1
                              ? spec.lambda_lo
                              : spec.lambda_lo + (spec.lambda_hi - spec.lambda_lo) * t /
                                                     (spec.lambda_points - 1));

    // One work item per (c, lambda) column; columns land in fixed slots so the
    // output order never depends on the worker count.
    std::vector<std::pair<double, double>> columns;  // (c, lambda)
    for (double c : spec.c_values)
        for (double lambda : lambdas) columns.emplace_back(c, lambda);
    std::vector<std::vector<PhaseCell>> slots(columns.size());
    std::vector<std::string> failures(columns.size());

    auto run_column = [&](size_t idx) {
        const double c = columns[idx].first;
        const double lambda = columns[idx].second;
        const ColumnCurves cc = column_curves(lambda, c);
        std::vector<double> gammas;
        if (spec.gamma_relative) {
            if (!(cc.dom_ceiling > 0.0)) {
                failures[idx] =
                    "relative gamma grid needs the parallel shape feasible at every lambda";
                return;
            }
            for (int k = 1; k <= spec.gamma_points; ++k)
                gammas.push_back(cc.dom_ceiling * k / (spec.gamma_points + 1));
        } else {
            for (int k = 0; k < spec.gamma_points; ++k)
                gammas.push_back(spec.gamma_points == 1
                                     ? spec.gamma_lo
                                     : spec.gamma_lo + (spec.gamma_hi - spec.gamma_lo) * k /
                                                           (spec.gamma_points - 1));
        }
        for (double gamma : gammas) {
            PhaseCell cell;
            cell.lambda = lambda;
            cell.gamma = gamma;
            cell.c = c;
            cell.predicted = predict_with(cc, lambda, gamma, c);
            cell.enumerated = enumerated_classes(lambda, gamma, c);
            cell.agree = cell.predicted == cell.enumerated;
            cell.in_domain = in_domain(cc, lambda, gamma);
            cell.boundary_distance = boundary_gap(cc, gamma);
            slots[idx].push_back(std::move(cell));
        }
    };

    const int workers = static_cast<int>(
        std::min<size_t>(static_cast<size_t>(spec.jobs), columns.size()));
    if (workers <= 1) {
        for (size_t idx = 0; idx < columns.size(); ++idx) run_column(idx);
    } else {
        std::atomic<size_t> next{0};
        auto loop = [&]() {
            for (;;) {
                const size_t idx = next.fetch_add(1);
                if (idx >= columns.size()) return;
                run_column(idx);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(loop);
        for (auto& th : pool) th.join();
    }

    for (const std::string& why : failures)
        if (!why.empty()) throw ValidationError(why);

    std::vector<PhaseCell> cells;
    for (auto& slot : slots)
        for (auto& cell : slot) cells.push_back(std::move(cell));
    return cells;
}

std::string cells_to_csv(const std::vector<PhaseCell>& cells) {
    std::string out = "lambda,gamma,c,predicted,enumerated,agree\n";
    for (const PhaseCell& cell : cells) {
        out += format_double(cell.lambda);
        out += ',';
        out += format_double(cell.gamma);
        out += ',';
        out += format_double(cell.c);
        out += ',';
        out += class_set_to_string(cell.predicted);
        out += ',';
        out += class_set_to_string(cell.enumerated);
        out += ',';
        out += cell.agree ? '1' : '0';
        out += '\n';
    }
    return out;
}

ReconcileReport reconcile(const std::vector<PhaseCell>& cells, double boundary_steps) {
    ReconcileReport rep;
    rep.total_cells = static_cast<int>(cells.size());

    // Grid step per (c, lambda) column, inferred from the swept gammas.
    std::map<std::pair<double, double>, std::vector<double>> columns;
    for (const PhaseCell& cell : cells)
        columns[{cell.c, cell.lambda}].push_back(cell.gamma);
    std::map<std::pair<double, double>, double> step;
    std::map<std::pair<double, double>, ColumnCurves> curves;
    for (auto& [key, gammas] : columns) {
        std::sort(gammas.begin(), gammas.end());
        gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
        double s = 0.0;
        if (gammas.size() > 1) {
            s = std::numeric_limits<double>::max();
            for (size_t k = 1; k < gammas.size(); ++k)
                s = std::min(s, gammas[k] - gammas[k - 1]);
        }
        step[key] = s;
        curves.emplace(key, column_curves(key.second, key.first));
    }

    PrintedFinding pz2{"gamma_hat_pz2", 0, 0, 0, 0, 0};
    PrintedFinding z2c{"gamma_hat_z2c", 0, 0, 0, 0, 0};
    PrintedFinding cmax_par{"c_max_parallel", 0, 0, 0, 0, 0};
    auto record = [](PrintedFinding& f, const PhaseCell& cell) {
        if (f.cells_contradicted == 0) {
            f.lambda_lo = f.lambda_hi = cell.lambda;
            f.gamma_lo = f.gamma_hi = cell.gamma;
        } else {
            f.lambda_lo = std::min(f.lambda_lo, cell.lambda);
            f.lambda_hi = std::max(f.lambda_hi, cell.lambda);
            f.gamma_lo = std::min(f.gamma_lo, cell.gamma);
            f.gamma_hi = std::max(f.gamma_hi, cell.gamma);
        }
        ++f.cells_contradicted;
    };

    for (const PhaseCell& cell : cells) {
        const std::pair<double, double> key{cell.c, cell.lambda};
        const ColumnCurves& cc = curves.at(key);
        const bool near_boundary =
            step.at(key) > 0.0 && cell.boundary_distance <= boundary_steps * step.at(key);
        if (near_boundary) ++rep.boundary_cells;
        if (!cell.agree) {
            if (near_boundary)
                rep.indeterminate.push_back(cell);
            else
                rep.disagreements.push_back(cell);
        }
        if (near_boundary || !cell.in_domain) continue;

        const auto has = [&cell](NetClass cl) {
            return std::find(cell.enumerated.begin(), cell.enumerated.end(), cl) !=
                   cell.enumerated.end();
        };
        // Each printed closed form is scored in isolation against the
        // enumerated outcome, on cells where its question is the binding one.
        if (candidate_payoff(Candidate::Parallel, cell.lambda, cell.gamma, cell.c) >= 0.0 &&
            cell.gamma >= cc.pc &&
            (cell.gamma >= cc.printed_pz2) != has(NetClass::Parallel))
            record(pz2, cell);
        if (candidate_payoff(Candidate::Cone, cell.lambda, cell.gamma, cell.c) >= 0.0 &&
            cell.gamma <= cc.pc && (cell.gamma <= cc.printed_z2c) != has(NetClass::Cone))
            record(z2c, cell);
        if (has(NetClass::Parallel) &&
            cell.c > c_max_printed(Candidate::Parallel, cell.lambda, cell.gamma))
            record(cmax_par, cell);
    }

    rep.printed_findings = {pz2, z2c, cmax_par};
    return rep;
}

std::string reconcile_to_string(const ReconcileReport& rep) {
    std::string out;
    out += "cells: " + std::to_string(rep.total_cells) +
           " (boundary-adjacent: " + std::to_string(rep.boundary_cells) + ")\n";
    out += "interior disagreements: " + std::to_string(rep.disagreements.size()) + "\n";
    for (const PhaseCell& cell : rep.disagreements)
        out += "  lambda=" + format_double(cell.lambda) + " gamma=" + format_double(cell.gamma) +
               " c=" + format_double(cell.c) + " predicted=" + class_set_to_string(cell.predicted) +
               " enumerated=" + class_set_to_string(cell.enumerated) +
               " boundary_distance=" + format_double(cell.boundary_distance) + "\n";
    out += "indeterminate (boundary-adjacent) disagreements: " +
           std::to_string(rep.indeterminate.size()) + "\n";
    out += "printed-formula contradictions:\n";
    for (const PrintedFinding& f : rep.printed_findings) {
        out += "  " + f.threshold + ": " + std::to_string(f.cells_contradicted) + " cells";
        if (f.cells_contradicted > 0)
            out += ", lambda [" + format_double(f.lambda_lo) + ", " + format_double(f.lambda_hi) +
                   "], gamma [" + format_double(f.gamma_lo) + ", " + format_double(f.gamma_hi) +
                   "]";
        out += "\n";
    }
    return out;
}

}  // namespace scn
