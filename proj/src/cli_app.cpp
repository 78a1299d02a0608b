#include "scn/cli_app.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "scn/analytic.hpp"
#include "scn/equilibrium.hpp"
#include "scn/json_io.hpp"
#include "scn/model.hpp"
#include "scn/montecarlo.hpp"
#include "scn/phase.hpp"
#include "scn/thresholds.hpp"

namespace scn {

namespace {

using nlohmann::json;

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string arr_num(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t k = 0; k < v.size(); ++k) {
        if (k) out += ',';
        out += json_number(v[k]);
    }
    return out + "]";
}

// Tier-1 out-links as nested 1-based arrays, e.g. [[1],[1,2]].
std::string links_json(const Network& net) {
    std::string out = "[";
    for (int i = 0; i < net.retailers(); ++i) {
        if (i) out += ',';
        out += '[';
        const auto& nb = net.retailer_links(i);
        for (size_t k = 0; k < nb.size(); ++k) {
            if (k) out += ',';
            out += std::to_string(nb[k] + 1);
        }
        out += ']';
    }
    return out + "]";
}

std::string solved_printed_json(const SolvedPrinted& sp) {
    return "{\"solved\":" + json_number(sp.solved) + ",\"printed\":" + json_number(sp.printed) +
           ",\"matches\":" + bool_str(sp.matches) + "}";
}

// Parameter flags shared by the subcommands; presence is tracked through the
// CLI11 option handles so flags can override config-file values.
struct ParamFlags {
    std::string config;
    double lambda = 0.0, d = 0.0, c = 0.0, gamma = 0.0, lambda_r = 0.0;
    int n = 0, m = 0;
    std::vector<int> tiers;
    std::vector<double> lambda_sup, gamma_sup;
    CLI::Option* o_config = nullptr;
    CLI::Option* o_lambda = nullptr;
    CLI::Option* o_d = nullptr;
    CLI::Option* o_c = nullptr;
    CLI::Option* o_gamma = nullptr;
    CLI::Option* o_n = nullptr;
    CLI::Option* o_m = nullptr;
    CLI::Option* o_tiers = nullptr;
    CLI::Option* o_lambda_r = nullptr;
    CLI::Option* o_lambda_sup = nullptr;
    CLI::Option* o_gamma_sup = nullptr;
};

void add_param_flags(CLI::App* sub, ParamFlags& f) {
    f.o_config = sub->add_option("--config", f.config, "JSON parameter file; flags override it");
    f.o_lambda = sub->add_option("--lambda", f.lambda, "production success probability");
    f.o_d = sub->add_option("--d", f.d, "consumer demand per retailer");
    f.o_c = sub->add_option("--c", f.c, "linking cost per link");
    f.o_gamma = sub->add_option("--gamma", f.gamma, "congestion coefficient");
    f.o_n = sub->add_option("--n", f.n, "retailer count");
    f.o_m = sub->add_option("--m", f.m, "supplier count");
    f.o_tiers = sub->add_option("--tiers", f.tiers, "tier sizes for multi-tier simulation")
                    ->delimiter(',');
    f.o_lambda_r = sub->add_option("--lambda-r", f.lambda_r,
                                   "retailer success probability (per-supplier parameter mode)");
    f.o_lambda_sup =
        sub->add_option("--lambda-sup", f.lambda_sup, "per-supplier success probabilities")
            ->delimiter(',');
    f.o_gamma_sup =
        sub->add_option("--gamma-sup", f.gamma_sup, "per-supplier congestion coefficients")
            ->delimiter(',');
}

json load_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    json cfg;
    try {
        cfg = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (!cfg.is_object()) throw ValidationError("config: top level must be an object");
    static const char* allowed[] = {"n",     "m",        "tiers",      "d",         "lambda",
                                    "c",     "gamma",    "lambda_r",   "lambda_sup", "gamma_sup"};
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed) ok = ok || it.key() == key;
        if (!ok) throw ValidationError("config: unknown key " + it.key());
    }
    return cfg;
}

double config_num(const json& cfg, const char* key) {
    if (!cfg[key].is_number()) throw ValidationError(std::string("config: ") + key + " must be a number");
    return cfg[key].get<double>();
}

int config_int(const json& cfg, const char* key) {
    if (!cfg[key].is_number_integer())
        throw ValidationError(std::string("config: ") + key + " must be an integer");
    return cfg[key].get<int>();
}

std::vector<double> config_num_array(const json& cfg, const char* key) {
    if (!cfg[key].is_array()) throw ValidationError(std::string("config: ") + key + " must be an array");
    std::vector<double> out;
    for (const json& e : cfg[key]) {
        if (!e.is_number()) throw ValidationError(std::string("config: ") + key + " entries must be numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

struct ResolvedParams {
    ModelParams model;
    HeteroParams hetero;
    bool is_hetero = false;
};

// Defaults, then config file, then flags; network shape fills n/m/tiers when
// they were not stated anywhere.
ResolvedParams resolve_params(const ParamFlags& f, const Network* net) {
    ModelParams p;
    bool n_set = false, m_set = false, tiers_set = false;
    bool lambda_r_set = false;
    double lambda_r = 0.0;
    std::vector<double> lambda_sup, gamma_sup;
    bool is_hetero = false;

    if (f.o_config != nullptr && f.o_config->count() > 0) {
        const json cfg = load_config_json(f.config);
        if (cfg.contains("n")) p.n = config_int(cfg, "n"), n_set = true;
        if (cfg.contains("m")) p.m = config_int(cfg, "m"), m_set = true;
        if (cfg.contains("tiers")) {
            if (!cfg["tiers"].is_array()) throw ValidationError("config: tiers must be an array");
            p.tiers.clear();
            for (const json& e : cfg["tiers"]) {
                if (!e.is_number_integer())
                    throw ValidationError("config: tiers entries must be integers");
                p.tiers.push_back(e.get<int>());
            }
            tiers_set = true;
        }
        if (cfg.contains("d")) p.d = config_num(cfg, "d");
        if (cfg.contains("lambda")) p.lambda = config_num(cfg, "lambda");
        if (cfg.contains("c")) p.c = config_num(cfg, "c");
        if (cfg.contains("gamma")) p.gamma = config_num(cfg, "gamma");
        if (cfg.contains("lambda_r")) lambda_r = config_num(cfg, "lambda_r"), lambda_r_set = true,
                                      is_hetero = true;
        if (cfg.contains("lambda_sup")) lambda_sup = config_num_array(cfg, "lambda_sup"),
                                        is_hetero = true;
        if (cfg.contains("gamma_sup")) gamma_sup = config_num_array(cfg, "gamma_sup"),
                                       is_hetero = true;
    }

    if (f.o_lambda->count() > 0) p.lambda = f.lambda;
    if (f.o_d->count() > 0) p.d = f.d;
    if (f.o_c->count() > 0) p.c = f.c;
    if (f.o_gamma->count() > 0) p.gamma = f.gamma;
    if (f.o_n->count() > 0) p.n = f.n, n_set = true;
    if (f.o_m->count() > 0) p.m = f.m, m_set = true;
    if (f.o_tiers->count() > 0) p.tiers = f.tiers, tiers_set = true;
    if (f.o_lambda_r != nullptr && f.o_lambda_r->count() > 0)
        lambda_r = f.lambda_r, lambda_r_set = true, is_hetero = true;
    if (f.o_lambda_sup != nullptr && f.o_lambda_sup->count() > 0)
        lambda_sup = f.lambda_sup, is_hetero = true;
    if (f.o_gamma_sup != nullptr && f.o_gamma_sup->count() > 0)
        gamma_sup = f.gamma_sup, is_hetero = true;

    if (net != nullptr) {
        if (!n_set) p.n = net->retailers();
        if (!m_set) p.m = net->suppliers();
        if (!tiers_set && net->tier_count() > 2) {
            p.tiers.clear();
            for (int t = 1; t <= net->tier_count(); ++t) p.tiers.push_back(net->tier_size(t));
        }
    }

    ResolvedParams rp;
    rp.model = p;
    rp.is_hetero = is_hetero;
    rp.hetero.n = p.n;
    rp.hetero.m = p.m;
    rp.hetero.d = p.d;
    rp.hetero.c = p.c;
    rp.hetero.lambda_r = lambda_r_set ? lambda_r : p.lambda;
    rp.hetero.lambda_sup = lambda_sup.empty()
                               ? std::vector<double>(static_cast<size_t>(p.m), p.lambda)
                               : lambda_sup;
    rp.hetero.gamma_sup =
        gamma_sup.empty() ? std::vector<double>(static_cast<size_t>(p.m), p.gamma) : gamma_sup;
    return rp;
}

// Payload goes to --out when given, else to the result's stdout slot.
void deliver(const std::string& payload, const std::string& out_path, std::string& out) {
    if (out_path.empty()) {
        out = payload;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ValidationError("cannot write " + out_path);
    f << payload;
    if (!f) throw ValidationError("cannot write " + out_path);
}

std::string payoff_payload(const Network& net, const ResolvedParams& rp) {
    std::vector<double> retailers, suppliers;
    if (rp.is_hetero) {
        for (int i = 0; i < net.retailers(); ++i)
            retailers.push_back(payoff_hetero_retailer(net, rp.hetero, i));
        for (int j = 0; j < net.suppliers(); ++j)
            suppliers.push_back(payoff_hetero_supplier(net, rp.hetero, j));
    } else {
        for (int i = 0; i < net.retailers(); ++i)
            retailers.push_back(payoff_congestion(net, rp.model, i));
        for (int j = 0; j < net.suppliers(); ++j)
            suppliers.push_back(payoff_supplier(net, rp.model, j));
    }
    return "{\"retailers\":" + arr_num(retailers) + ",\"suppliers\":" + arr_num(suppliers) +
           "}\n";
}

std::string simulate_payload(const Network& net, const ResolvedParams& rp, std::uint64_t samples,
                             std::uint64_t seed, int jobs) {
    const PayoffEstimate est = rp.is_hetero
                                   ? estimate_payoffs(net, rp.hetero, samples, seed, jobs)
                                   : estimate_payoffs(net, rp.model, samples, seed, jobs);
    std::string tiers = "[";
    for (size_t t = 0; t < est.tiers.size(); ++t) {
        if (t) tiers += ',';
        tiers += '[';
        for (size_t i = 0; i < est.tiers[t].size(); ++i) {
            if (i) tiers += ',';
            tiers += "{\"mean\":" + json_number(est.tiers[t][i].mean) +
                     ",\"std_error\":" + json_number(est.tiers[t][i].std_error) + "}";
        }
        tiers += ']';
    }
    tiers += ']';
    return "{\"samples\":" + std::to_string(est.samples) + ",\"seed\":" + std::to_string(est.seed) +
           ",\"tiers\":" + tiers + "}\n";
}

std::string entry_json(const EquilibriumEntry& e) {
    std::string out = "{\"links\":" + links_json(e.net);
    if (e.label) out += ",\"class\":" + json_escape(to_string(e.label->label));
    out += ",\"payoffs\":" + arr_num(e.retailer_payoffs) + "}";
    return out;
}

std::string enumerate_payload(const ResolvedParams& rp, bool canonical) {
    const EquilibriumReport rep = rp.is_hetero ? enumerate_equilibria(rp.hetero, canonical)
                                               : enumerate_equilibria(rp.model, canonical);
    std::string entries = "[";
    for (size_t k = 0; k < rep.entries.size(); ++k) {
        if (k) entries += ',';
        entries += entry_json(rep.entries[k]);
    }
    entries += ']';
    return "{\"profiles_examined\":" + std::to_string(rep.profiles_examined) +
           ",\"canonical\":" + bool_str(canonical) + ",\"equilibria\":" + entries + "}\n";
}

std::string nash_payload(const Network& net, const ResolvedParams& rp) {
    const NashResult res = rp.is_hetero ? nash_check(net, rp.hetero) : nash_check(net, rp.model);
    if (res.is_nash) return "{\"is_nash\":true}\n";
    const DeviationCertificate& dc = *res.deviation;
    const auto links_1based = [](const std::vector<int>& links) {
        std::string out = "[";
        for (size_t k = 0; k < links.size(); ++k) {
            if (k) out += ',';
            out += std::to_string(links[k] + 1);
        }
        return out + "]";
    };
    return "{\"is_nash\":false,\"deviation\":{\"retailer\":" + std::to_string(dc.retailer + 1) +
           ",\"from\":" + links_1based(dc.from) + ",\"to\":" + links_1based(dc.to) +
           ",\"gain\":" + json_number(dc.gain) + "}}\n";
}

std::string br_payload(const Network& net, const ResolvedParams& rp, int max_rounds) {
    const BrTrace tr = rp.is_hetero ? br_dynamics(net, rp.hetero, max_rounds)
                                    : br_dynamics(net, rp.model, max_rounds);
    std::string steps = "[";
    for (size_t k = 0; k < tr.trajectory.size(); ++k) {
        if (k) steps += ',';
        steps += "{\"links\":" + links_json(tr.trajectory[k]);
        if (tr.trajectory[k].retailers() == 2 && tr.trajectory[k].suppliers() == 2)
            steps += ",\"class\":" +
                     json_escape(to_string(classify_2x2(tr.trajectory[k]).label));
        steps += '}';
    }
    steps += ']';
    return "{\"converged\":" + bool_str(tr.converged) + ",\"rounds\":" + std::to_string(tr.rounds) +
           ",\"trajectory\":" + steps + "}\n";
}

std::string thresholds_payload(double lambda, double c, double gamma, double D,
                               const ModelParams& regime_params, bool degree_given, int degree,
                               bool hat_given, double l1, double l2, double lr) {
    const Thresholds2x2 t = thresholds_2x2(lambda, c, D);
    static const char* curve_names[] = {"fz1", "z2c", "pc", "pz2"};
    static const char* cand_names[] = {"cone", "parallel", "zee1", "zee2", "full"};

    std::string gh = "{";
    for (size_t k = 0; k < kCurves.size(); ++k) {
        if (k) gh += ',';
        gh += std::string("\"") + curve_names[k] + "\":" + solved_printed_json(t.gamma_hat[k]);
    }
    gh += '}';

    std::string gm = "{", lm = "{", cm = "{";
    for (size_t k = 0; k < kCandidates.size(); ++k) {
        if (k) {
            gm += ',';
            lm += ',';
            cm += ',';
        }
        gm += std::string("\"") + cand_names[k] + "\":" + solved_printed_json(t.gamma_max[k]);
        lm += std::string("\"") + cand_names[k] + "\":" + solved_printed_json(t.lambda_min[k]);
        SolvedPrinted sp;
        sp.solved = c_max_solved(kCandidates[k], lambda, gamma, D);
        sp.printed = c_max_printed(kCandidates[k], lambda, gamma, D);
        sp.matches = std::abs(sp.solved - sp.printed) <= 1e-9;
        cm += std::string("\"") + cand_names[k] + "\":" + solved_printed_json(sp);
    }
    gm += '}';
    lm += '}';
    cm += '}';

    const RegimeQuantities rq = regime_quantities(regime_params);
    std::string regime = "{\"d_hat\":";
    regime += rq.d_hat ? json_number(*rq.d_hat) : "null";
    regime += ",\"low_gamma_threshold\":" + json_number(rq.low_gamma_threshold);
    if (degree_given) {
        const auto fh = rq.f_hat(static_cast<double>(degree));
        regime += ",\"f_hat\":";
        regime += fh ? json_number(*fh) : "null";
    }
    regime += '}';

    std::string out = "{\"lambda\":" + json_number(lambda) + ",\"c\":" + json_number(c) +
                      ",\"gamma\":" + json_number(gamma) + ",\"d\":" + json_number(D) +
                      ",\"gamma_hat\":" + gh + ",\"gamma_max\":" + gm + ",\"c_max\":" + cm +
                      ",\"lambda_min\":" + lm + ",\"regime\":" + regime;
    if (hat_given) out += ",\"lambda_hat\":" + json_number(lambda_hat(l1, l2, lr, gamma));
    return out + "}\n";
}

std::string class_list_json(const std::vector<NetClass>& set) {
    std::string out = "[";
    for (size_t k = 0; k < set.size(); ++k) {
        if (k) out += ',';
        out += json_escape(to_string(set[k]));
    }
    return out + "]";
}

std::string sweep_json_payload(const std::vector<PhaseCell>& cells) {
    std::string body = "[";
    for (size_t k = 0; k < cells.size(); ++k) {
        const PhaseCell& cell = cells[k];
        if (k) body += ',';
        body += "{\"lambda\":" + json_number(cell.lambda) + ",\"gamma\":" +
                json_number(cell.gamma) + ",\"c\":" + json_number(cell.c) +
                ",\"predicted\":" + class_list_json(cell.predicted) +
                ",\"enumerated\":" + class_list_json(cell.enumerated) +
                ",\"agree\":" + bool_str(cell.agree) +
                ",\"in_domain\":" + bool_str(cell.in_domain) +
                ",\"boundary_distance\":" + json_number(cell.boundary_distance) + "}";
    }
    body += ']';

    const ReconcileReport rep = reconcile(cells);
    std::string findings = "[";
    for (size_t k = 0; k < rep.printed_findings.size(); ++k) {
        const PrintedFinding& f = rep.printed_findings[k];
        if (k) findings += ',';
        findings += "{\"threshold\":" + json_escape(f.threshold) +
                    ",\"cells_contradicted\":" + std::to_string(f.cells_contradicted) +
                    ",\"lambda_lo\":" + json_number(f.lambda_lo) +
                    ",\"lambda_hi\":" + json_number(f.lambda_hi) +
                    ",\"gamma_lo\":" + json_number(f.gamma_lo) +
                    ",\"gamma_hi\":" + json_number(f.gamma_hi) + "}";
    }
    findings += ']';
    const std::string rec = "{\"total_cells\":" + std::to_string(rep.total_cells) +
                            ",\"boundary_cells\":" + std::to_string(rep.boundary_cells) +
                            ",\"disagreements\":" + std::to_string(rep.disagreements.size()) +
                            ",\"indeterminate\":" + std::to_string(rep.indeterminate.size()) +
                            ",\"printed_findings\":" + findings + "}";
    return "{\"cells\":" + body + ",\"reconcile\":" + rec + "}\n";
}

std::string hetero_payload(const Network& net, const HeteroParams& h, const std::string& scan,
                           int supplier_1based, int scan_points, bool lo_given, double scan_lo,
                           bool hi_given, double scan_hi) {
    h.validate();
    std::vector<double> retailers, suppliers;
    for (int i = 0; i < net.retailers(); ++i)
        retailers.push_back(payoff_hetero_retailer(net, h, i));
    for (int j = 0; j < net.suppliers(); ++j)
        suppliers.push_back(payoff_hetero_supplier(net, h, j));

    std::string out =
        "{\"retailers\":" + arr_num(retailers) + ",\"suppliers\":" + arr_num(suppliers);

    if (h.m == 2) {
        std::vector<double> hats;
        for (int j = 0; j < 2; ++j)
            hats.push_back(lambda_hat(h.lambda_sup[0], h.lambda_sup[1], h.lambda_r,
                                      h.gamma_sup[static_cast<size_t>(j)]));
        out += ",\"lambda_hat\":" + arr_num(hats);
    }

    if (!scan.empty()) {
        const int j = supplier_1based - 1;
        if (j < 0 || j >= h.m) throw ValidationError("scan supplier index out of range");
        if (scan_points < 2) throw ValidationError("scan needs at least 2 points");
        const bool is_lambda = scan == "lambda";
        const double lo = lo_given ? scan_lo : (is_lambda ? 0.02 : 0.0);
        const double hi = hi_given ? scan_hi : (is_lambda ? 0.98 : 1.0);
        if (!(lo < hi)) throw ValidationError("scan needs lo < hi");
        std::string values = "[", payoffs = "[";
        for (int k = 0; k < scan_points; ++k) {
            const double v = lo + (hi - lo) * k / (scan_points - 1);
            HeteroParams hk = h;
            if (is_lambda)
                hk.lambda_sup[static_cast<size_t>(j)] = v;
            else
                hk.gamma_sup[static_cast<size_t>(j)] = v;
            std::vector<double> row;
            for (int i = 0; i < net.retailers(); ++i)
                row.push_back(payoff_hetero_retailer(net, hk, i));
            if (k) {
                values += ',';
                payoffs += ',';
            }
            values += json_number(v);
            payoffs += arr_num(row);
        }
        values += ']';
        payoffs += ']';
        out += ",\"scan\":{\"parameter\":" + json_escape(scan) +
               ",\"supplier\":" + std::to_string(supplier_1based) + ",\"values\":" + values +
               ",\"retailer_payoffs\":" + payoffs + "}";
    }
    return out + "}\n";
}

}  // namespace

CliResult dispatch(const std::vector<std::string>& args) {
    CliResult result;
    std::string out;

    CLI::App app{"two-tier supply network payoffs, equilibria and phase maps"};
    app.require_subcommand(1);

    // payoff
    auto* payoff = app.add_subcommand("payoff", "closed-form per-agent expected payoffs");
    std::string payoff_net, payoff_out;
    ParamFlags payoff_pf;
    payoff->add_option("--net", payoff_net, "network JSON file")->required();
    add_param_flags(payoff, payoff_pf);
    payoff->add_option("--out", payoff_out, "write the payload to a file");
    payoff->callback([&]() {
        const Network net = load_network_file(payoff_net);
        const ResolvedParams rp = resolve_params(payoff_pf, &net);
        deliver(payoff_payload(net, rp), payoff_out, out);
    });

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo payoff estimates");
    std::string sim_net, sim_out;
    ParamFlags sim_pf;
    std::uint64_t sim_samples = 100000, sim_seed = 1;
    int sim_jobs = 1;
    simulate->add_option("--net", sim_net, "network JSON file")->required();
    add_param_flags(simulate, sim_pf);
    simulate->add_option("--samples", sim_samples, "sample count");
    simulate->add_option("--seed", sim_seed, "RNG seed; reruns reproduce exactly");
    simulate->add_option("--jobs", sim_jobs, "worker threads; result independent of the count");
    simulate->add_option("--out", sim_out, "write the payload to a file");
    simulate->callback([&]() {
        const Network net = load_network_file(sim_net);
        const ResolvedParams rp = resolve_params(sim_pf, &net);
        deliver(simulate_payload(net, rp, sim_samples, sim_seed, sim_jobs), sim_out, out);
    });

    // equilibria
    auto* equilibria =
        app.add_subcommand("equilibria", "exhaustive enumeration, Nash checks, dynamics");
    std::string eq_mode = "enumerate", eq_net, eq_out;
    ParamFlags eq_pf;
    bool eq_canonical = false;
    int eq_max_rounds = 64;
    equilibria->add_option("--mode", eq_mode, "enumerate | nash | br")
        ->check(CLI::IsMember({"enumerate", "nash", "br"}));
    equilibria->add_option("--net", eq_net, "network JSON file (required for nash/br)");
    equilibria->add_flag("--canonical", eq_canonical,
                         "one representative per supplier-relabeling orbit");
    equilibria->add_option("--max-rounds", eq_max_rounds, "best-response round limit");
    add_param_flags(equilibria, eq_pf);
    equilibria->add_option("--out", eq_out, "write the payload to a file");
    equilibria->callback([&]() {
        std::unique_ptr<Network> net;
        if (!eq_net.empty()) net = std::make_unique<Network>(load_network_file(eq_net));
        const ResolvedParams rp = resolve_params(eq_pf, net.get());
        if (eq_mode == "enumerate") {
            deliver(enumerate_payload(rp, eq_canonical), eq_out, out);
            return;
        }
        if (!net) throw ValidationError("--net is required for nash/br modes");
        if (eq_mode == "nash")
            deliver(nash_payload(*net, rp), eq_out, out);
        else
            deliver(br_payload(*net, rp, eq_max_rounds), eq_out, out);
    });

    // thresholds
    auto* thresholds = app.add_subcommand("thresholds", "solved vs printed threshold curves");
    double th_lambda = 0.8, th_c = 0.0, th_gamma = 0.0, th_d = 1.0;
    double th_l1 = 0.0, th_l2 = 0.0, th_lr = 0.0;
    int th_n = 2, th_m = 2, th_degree = 1;
    std::string th_out;
    thresholds->add_option("--lambda", th_lambda, "production success probability");
    thresholds->add_option("--c", th_c, "linking cost per link");
    thresholds->add_option("--gamma", th_gamma, "congestion coefficient");
    thresholds->add_option("--d", th_d, "consumer demand per retailer");
    thresholds->add_option("--n", th_n, "retailer count (low-congestion bound)");
    thresholds->add_option("--m", th_m, "supplier count");
    auto* o_th_degree =
        thresholds->add_option("--degree", th_degree, "out-degree for the foreign-load optimum");
    auto* o_th_l1 = thresholds->add_option("--lambda1", th_l1, "own-supplier reliability");
    auto* o_th_l2 = thresholds->add_option("--lambda2", th_l2, "other-supplier reliability");
    auto* o_th_lr = thresholds->add_option("--lambda-r", th_lr, "retailer reliability");
    thresholds->add_option("--out", th_out, "write the payload to a file");
    thresholds->callback([&]() {
        ModelParams p;
        p.n = th_n;
        p.m = th_m;
        p.d = th_d;
        p.lambda = th_lambda;
        p.c = th_c;
        p.gamma = th_gamma;
        p.validate();
        const bool hat_given =
            o_th_l1->count() > 0 && o_th_l2->count() > 0 && o_th_lr->count() > 0;
        deliver(thresholds_payload(th_lambda, th_c, th_gamma, th_d, p, o_th_degree->count() > 0,
                                   th_degree, hat_given, th_l1, th_l2, th_lr),
                th_out, out);
    });

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "phase map: prediction vs enumeration grid");
    SweepSpec spec;
    std::string sweep_format = "csv", sweep_out;
    sweep_cmd->add_option("--lambda-lo", spec.lambda_lo, "lambda range start");
    sweep_cmd->add_option("--lambda-hi", spec.lambda_hi, "lambda range end");
    sweep_cmd->add_option("--lambda-points", spec.lambda_points, "lambda resolution");
    sweep_cmd->add_option("--gamma-lo", spec.gamma_lo, "gamma range start");
    sweep_cmd->add_option("--gamma-hi", spec.gamma_hi, "gamma range end");
    sweep_cmd->add_option("--gamma-points", spec.gamma_points, "gamma resolution");
    sweep_cmd->add_flag("--gamma-relative", spec.gamma_relative,
                        "per-column gamma grid inside (0, gamma_max(parallel))");
    sweep_cmd->add_option("--c", spec.c_values, "linking cost values")->delimiter(',');
    sweep_cmd->add_option("--jobs", spec.jobs, "worker threads; result independent of the count");
    sweep_cmd->add_option("--format", sweep_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", sweep_out, "write the payload to a file");
    sweep_cmd->callback([&]() {
        const std::vector<PhaseCell> cells = sweep(spec);
        deliver(sweep_format == "csv" ? cells_to_csv(cells) : sweep_json_payload(cells),
                sweep_out, out);
    });

    // hetero
    auto* hetero = app.add_subcommand("hetero", "per-supplier parameter payoffs and scans");
    std::string het_net, het_scan, het_out;
    ParamFlags het_pf;
    int het_supplier = 1, het_points = 50;
    double het_lo = 0.0, het_hi = 0.0;
    hetero->add_option("--net", het_net, "network JSON file")->required();
    add_param_flags(hetero, het_pf);
    hetero->add_option("--scan", het_scan, "grid-scan one supplier parameter: lambda | gamma")
        ->check(CLI::IsMember({"lambda", "gamma"}));
    hetero->add_option("--supplier", het_supplier, "1-based supplier to scan");
    hetero->add_option("--scan-points", het_points, "scan resolution");
    auto* o_het_lo = hetero->add_option("--scan-lo", het_lo, "scan range start");
    auto* o_het_hi = hetero->add_option("--scan-hi", het_hi, "scan range end");
    hetero->add_option("--out", het_out, "write the payload to a file");
    hetero->callback([&]() {
        const Network net = load_network_file(het_net);
        const ResolvedParams rp = resolve_params(het_pf, &net);
        deliver(hetero_payload(net, rp.hetero, het_scan, het_supplier, het_points,
                               o_het_lo->count() > 0, het_lo, o_het_hi->count() > 0, het_hi),
                het_out, out);
    });

    std::vector<const char*> argv;
    argv.push_back("scn");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        result.out = out;
        result.exit_code = 0;
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        result.exit_code = 0;
    } catch (const CLI::ParseError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    } catch (const ValidationError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    } catch (const SizeGuardError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    } catch (const std::exception& e) {
        result.err = std::string("internal error: ") + e.what() + "\n";
        result.exit_code = 1;
    }
    return result;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    const CliResult r = dispatch(args);
    if (!r.out.empty()) std::cout << r.out;
    if (!r.err.empty()) std::cerr << r.err;
    return r.exit_code;
}

}  // namespace scn
