#include "scc/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scc/experiments.hpp"

namespace scc::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string fmt_metric(const std::optional<double>& m) {
    return m ? fmt17(*m) : "undefined";
}

ordered_json json_metric(const std::optional<double>& m) {
    if (m) {
        return *m;
    }
    return nullptr;
}

std::vector<double> parse_number_list(const std::string& text,
                                      std::size_t count, const char* flag) {
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string piece = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        char* end = nullptr;
        const double v = std::strtod(piece.c_str(), &end);
        if (piece.empty() || end != piece.c_str() + piece.size()) {
            throw Error(std::string(flag) + ": cannot parse number '" + piece +
                        "'");
        }
        values.push_back(v);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (values.size() != count) {
        throw Error(std::string(flag) + ": expected " + std::to_string(count) +
                    " comma-separated numbers, got " +
                    std::to_string(values.size()));
    }
    return values;
}

CauseProbabilities parse_causes(const std::string& text, const char* flag) {
    const auto v = parse_number_list(text, 3, flag);
    return CauseProbabilities(v[0], v[1], v[2]);
}

ContingencyTable parse_table(const std::string& text, const char* flag) {
    const auto v = parse_number_list(text, 4, flag);
    return ContingencyTable(v[0], v[1], v[2], v[3]);
}

void print_causes(std::ostream& out, const CauseProbabilities& c) {
    out << "causes: p_t=" << fmt17(c.p_t) << " p_u=" << fmt17(c.p_u)
        << " p_v=" << fmt17(c.p_v) << "\n";
}

void print_table(std::ostream& out, const ContingencyTable& t) {
    out << "table: tp=" << fmt17(t.tp) << " fp=" << fmt17(t.fp)
        << " fn=" << fmt17(t.fn) << " tn=" << fmt17(t.tn) << "\n";
}

void print_metrics(std::ostream& out, const PerformanceMetrics& m) {
    out << "metrics: se=" << fmt_metric(m.se) << " sp=" << fmt_metric(m.sp)
        << " ppv=" << fmt_metric(m.ppv) << " npv=" << fmt_metric(m.npv)
        << " prevalence=" << fmt17(m.prevalence) << "\n";
}

ordered_json causes_json(const CauseProbabilities& c) {
    return ordered_json{{"p_t", c.p_t}, {"p_u", c.p_u}, {"p_v", c.p_v}};
}

ordered_json table_json(const ContingencyTable& t) {
    return ordered_json{{"tp", t.tp}, {"fp", t.fp}, {"fn", t.fn}, {"tn", t.tn}};
}

ordered_json metrics_json(const PerformanceMetrics& m) {
    return ordered_json{{"se", json_metric(m.se)},
                        {"sp", json_metric(m.sp)},
                        {"ppv", json_metric(m.ppv)},
                        {"npv", json_metric(m.npv)},
                        {"prevalence", m.prevalence}};
}

ScenarioKind parse_sweep_scenario(const std::string& token) {
    if (token == "t") return ScenarioKind::vary_t;
    if (token == "u") return ScenarioKind::vary_u;
    if (token == "v") return ScenarioKind::vary_v;
    if (token == "tu") return ScenarioKind::vary_tu;
    if (token == "tv") return ScenarioKind::vary_tv;
    if (token == "uv") return ScenarioKind::vary_uv;
    if (token == "tuv") return ScenarioKind::vary_all;
    throw Error("--scenario must be one of t|u|v|tu|tv|uv|tuv, got '" + token +
                "'");
}

ScenarioKind parse_sim_scenario(const std::string& token) {
    if (token == "all") return ScenarioKind::vary_all;
    if (token == "maxent") return ScenarioKind::max_entropy;
    if (token == "tuv") {
        throw Error("--scenario: use 'all' (with --rho) for the three-cause "
                    "scenario in simulate");
    }
    return parse_sweep_scenario(token);
}

// ---- subcommand argument bags -------------------------------------------

struct MapArgs {
    std::string from_causes;
    std::string from_table;
    std::string format = "text";
    CLI::Option* causes_opt = nullptr;
    CLI::Option* table_opt = nullptr;
};

struct TransportArgs {
    std::string method;
    std::string source_causes;
    std::string source_table;
    double target_pt = 0.0;
    double target_prev = 0.0;
    std::string format = "text";
    CLI::Option* causes_opt = nullptr;
    CLI::Option* table_opt = nullptr;
    CLI::Option* pt_opt = nullptr;
    CLI::Option* prev_opt = nullptr;
};

struct SweepArgs {
    std::string scenario;
    std::string base = "0.25,0.75,0.5";
    double or_min = 0.0625;
    double or_max = 16.0;
    int steps = 101;
};

struct SimulateArgs {
    std::string scenario;
    double rho = 0.0;
    std::int64_t n = 10000;
    std::uint64_t seed = 0;
    std::string out_mode = "summary";
    std::string format = "json";
    CLI::Option* rho_opt = nullptr;
};

// ---- subcommand bodies ---------------------------------------------------

int run_map(const MapArgs& a, std::ostream& out) {
    const bool have_causes = a.causes_opt->count() > 0;
    const bool have_table = a.table_opt->count() > 0;
    if (have_causes == have_table) {
        throw Error("map needs exactly one of --from-causes or --from-table");
    }

    CauseProbabilities causes =
        have_causes ? parse_causes(a.from_causes, "--from-causes")
                    : table_to_causes(parse_table(a.from_table, "--from-table"));
    const ContingencyTable table =
        have_causes ? causes_to_table(causes)
                    : parse_table(a.from_table, "--from-table");
    const PerformanceMetrics m = metrics(table);

    if (a.format == "json") {
        const ordered_json doc{{"causes", causes_json(causes)},
                               {"table", table_json(table)},
                               {"metrics", metrics_json(m)}};
        out << doc.dump(2) << "\n";
    } else {
        print_causes(out, causes);
        print_table(out, table);
        print_metrics(out, m);
    }
    return kExitOk;
}

int run_transport(const TransportArgs& a, std::ostream& out) {
    const bool have_causes = a.causes_opt->count() > 0;
    const bool have_table = a.table_opt->count() > 0;
    if (have_causes == have_table) {
        throw Error(
            "transport needs exactly one of --source-causes or --source-table");
    }

    std::optional<CauseProbabilities> source_causes;
    std::optional<ContingencyTable> source_table;
    if (have_causes) {
        source_causes = parse_causes(a.source_causes, "--source-causes");
        source_table = causes_to_table(*source_causes);
    } else {
        source_table = parse_table(a.source_table, "--source-table");
    }
    const PerformanceMetrics source_metrics = metrics(*source_table);

    std::optional<TransportResult> result;
    if (a.method == "pv") {
        if (a.pt_opt->count() == 0 || a.prev_opt->count() > 0) {
            throw Error("method pv takes --target-pt (and not --target-prev)");
        }
        result = transport_by_predictive_values(source_metrics, a.target_pt);
    } else if (a.method == "acc" || a.method == "po") {
        if (a.prev_opt->count() == 0 || a.pt_opt->count() > 0) {
            throw Error("methods acc and po take --target-prev (and not "
                        "--target-pt)");
        }
        if (a.method == "acc") {
            result = transport_by_accuracy(source_metrics, a.target_prev);
        } else {
            if (!source_causes) {
                source_causes = table_to_causes(*source_table);
            }
            result = transport_proportional_odds(*source_causes, a.target_prev);
        }
    } else {
        throw Error("--method must be one of pv|acc|po, got '" + a.method + "'");
    }

    const PerformanceMetrics implied = metrics(result->implied_table);
    if (a.format == "json") {
        ordered_json doc{{"method", method_token(result->method)}};
        doc[result->target_input.kind == TargetInput::Kind::marker_positivity
                ? "target_pt"
                : "target_prevalence"] = result->target_input.value;
        doc["fitted_odds_ratio"] = result->fitted_odds_ratio
                                       ? ordered_json(*result->fitted_odds_ratio)
                                       : ordered_json(nullptr);
        doc["table"] = table_json(result->implied_table);
        doc["metrics"] = metrics_json(implied);
        out << doc.dump(2) << "\n";
    } else {
        out << "method: " << method_token(result->method) << "\n";
        out << (result->target_input.kind == TargetInput::Kind::marker_positivity
                    ? "target_pt: "
                    : "target_prevalence: ")
            << fmt17(result->target_input.value) << "\n";
        if (result->fitted_odds_ratio) {
            out << "fitted_odds_ratio: " << fmt17(*result->fitted_odds_ratio)
                << "\n";
        }
        print_table(out, result->implied_table);
        print_metrics(out, implied);
    }
    return kExitOk;
}

int run_sweep(const SweepArgs& a, std::ostream& out) {
    Scenario scenario;
    scenario.kind = parse_sweep_scenario(a.scenario);
    scenario.base = parse_causes(a.base, "--base");
    const auto grid = log_spaced_grid(a.or_min, a.or_max, a.steps);
    const auto rows = prevalence_sweep(scenario, grid);

    out << "odds_ratio,prevalence,se,sp,ppv,npv\n";
    for (const auto& r : rows) {
        out << fmt17(r.odds_ratio) << ',' << fmt17(r.prevalence) << ','
            << fmt17(r.se) << ',' << fmt17(r.sp) << ',' << fmt17(r.ppv) << ','
            << fmt17(r.npv) << "\n";
    }
    return kExitOk;
}

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    Scenario scenario;
    scenario.kind = parse_sim_scenario(a.scenario);
    if (a.rho_opt->count() > 0 && scenario.kind != ScenarioKind::vary_all) {
        throw Error("--rho only applies to --scenario all");
    }
    scenario.rho = a.rho;
    if (a.n < 1) {
        throw Error("--n must be at least 1");
    }
    if (a.out_mode != "records" && a.out_mode != "summary") {
        throw Error("--out must be records or summary, got '" + a.out_mode + "'");
    }

    const SimResult result = information_loss_sim(scenario, a.n, a.seed);

    if (a.out_mode == "records") {
        out << "pair_index,method,d_kl_bits,target_prevalence,fitted_or\n";
        for (const auto& r : result.records) {
            out << r.pair_index << ',' << method_token(r.method) << ','
                << fmt17(r.d_kl_bits) << ',' << fmt17(r.target_prevalence) << ',';
            if (r.fitted_or) {
                out << fmt17(*r.fitted_or);
            }
            out << "\n";
        }
        return kExitOk;
    }

    if (a.format == "json") {
        ordered_json doc = ordered_json::array();
        for (const auto& s : result.summary) {
            doc.push_back(ordered_json{{"method", method_token(s.method)},
                                       {"n", s.n},
                                       {"n_infinite", s.n_infinite},
                                       {"mean_bits", s.mean_bits},
                                       {"median_bits", s.median_bits},
                                       {"p25_bits", s.p25_bits},
                                       {"p75_bits", s.p75_bits}});
        }
        out << doc.dump(2) << "\n";
    } else {
        out << std::left << std::setw(8) << "method" << std::setw(10) << "n"
            << std::setw(12) << "n_infinite" << std::setw(24) << "mean_bits"
            << std::setw(24) << "median_bits" << std::setw(24) << "p25_bits"
            << std::setw(24) << "p75_bits" << "\n";
        for (const auto& s : result.summary) {
            out << std::left << std::setw(8) << method_token(s.method)
                << std::setw(10) << s.n << std::setw(12) << s.n_infinite
                << std::setw(24) << fmt17(s.mean_bits) << std::setw(24)
                << fmt17(s.median_bits) << std::setw(24) << fmt17(s.p25_bits)
                << std::setw(24) << fmt17(s.p75_bits) << "\n";
        }
    }
    return kExitOk;
}

int run_example(std::ostream& out) {
    const auto rows = reproduce_worked_example();
    out << std::left << std::setw(22) << "description" << std::setw(22)
        << "p_t,p_u,p_v" << std::setw(28) << "tp,fp,fn,tn" << std::setw(7)
        << "se" << std::setw(7) << "sp" << std::setw(7) << "ppv" << std::setw(7)
        << "npv" << "\n";
    std::optional<double> fitted_or;
    for (const auto& r : rows) {
        const std::string causes = fmt3(r.causes.p_t) + "," + fmt3(r.causes.p_u) +
                                   "," + fmt3(r.causes.p_v);
        const std::string table = fmt3(r.table.tp) + "," + fmt3(r.table.fp) +
                                  "," + fmt3(r.table.fn) + "," + fmt3(r.table.tn);
        out << std::left << std::setw(22) << r.description << std::setw(22)
            << causes << std::setw(28) << table << std::setw(7)
            << fmt3(require_metric(r.performance.se, "se")) << std::setw(7)
            << fmt3(require_metric(r.performance.sp, "sp")) << std::setw(7)
            << fmt3(require_metric(r.performance.ppv, "ppv")) << std::setw(7)
            << fmt3(require_metric(r.performance.npv, "npv")) << "\n";
        if (r.fitted_odds_ratio) {
            fitted_or = r.fitted_odds_ratio;
        }
    }
    if (fitted_or) {
        out << "fitted common odds ratio (proportional odds): " << fmt3(*fitted_or)
            << "\n";
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Sufficient-component-cause model of a binary prognostic "
                 "marker: cause/table mapping, transportation methods, "
                 "sweeps and information-loss simulations",
                 "scc"};
    app.require_subcommand(1);

    MapArgs map_args;
    CLI::App* map_cmd = app.add_subcommand(
        "map", "Convert between cause probabilities and a contingency table");
    map_args.causes_opt = map_cmd->add_option("--from-causes",
                                              map_args.from_causes,
                                              "Cause probabilities pt,pu,pv");
    map_args.table_opt = map_cmd->add_option("--from-table", map_args.from_table,
                                             "Table cells tp,fp,fn,tn");
    map_cmd->add_option("--format", map_args.format, "Output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    TransportArgs tr_args;
    CLI::App* tr_cmd = app.add_subcommand(
        "transport", "Transport a marker to a target population");
    tr_cmd->add_option("--method", tr_args.method,
                       "Transportation method: pv|acc|po")
        ->required();
    tr_args.causes_opt = tr_cmd->add_option(
        "--source-causes", tr_args.source_causes, "Source causes pt,pu,pv");
    tr_args.table_opt = tr_cmd->add_option("--source-table", tr_args.source_table,
                                           "Source table tp,fp,fn,tn");
    tr_args.pt_opt = tr_cmd->add_option("--target-pt", tr_args.target_pt,
                                        "Target marker positivity (pv method)");
    tr_args.prev_opt =
        tr_cmd->add_option("--target-prev", tr_args.target_prev,
                           "Target outcome prevalence (acc and po methods)");
    tr_cmd->add_option("--format", tr_args.format, "Output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Odds-ratio sweep of metrics against prevalence (CSV)");
    sweep_cmd
        ->add_option("--scenario", sweep_args.scenario,
                     "Varying causes: t|u|v|tu|tv|uv|tuv")
        ->required();
    sweep_cmd->add_option("--base", sweep_args.base,
                          "Base causes pt,pu,pv (default 0.25,0.75,0.5)");
    sweep_cmd->add_option("--or-min", sweep_args.or_min,
                          "Smallest odds ratio (default 0.0625)");
    sweep_cmd->add_option("--or-max", sweep_args.or_max,
                          "Largest odds ratio (default 16)");
    sweep_cmd->add_option("--steps", sweep_args.steps,
                          "Number of log-spaced grid points (default 101)");

    SimulateArgs sim_args;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate",
        "Simulate source/target pairs and score transport information loss");
    sim_cmd
        ->add_option("--scenario", sim_args.scenario,
                     "Varying causes: t|u|v|tu|tv|uv|all|maxent")
        ->required();
    sim_args.rho_opt = sim_cmd->add_option(
        "--rho", sim_args.rho,
        "Latent equicorrelation for --scenario all (default 0)");
    sim_cmd->add_option("--n", sim_args.n,
                        "Number of population pairs (default 10000)");
    sim_cmd->add_option("--seed", sim_args.seed, "Master seed (required)")
        ->required();
    sim_cmd->add_option("--out", sim_args.out_mode,
                        "Output payload: records|summary (default summary)");
    sim_cmd
        ->add_option("--format", sim_args.format,
                     "Summary format: json|text (default json)")
        ->check(CLI::IsMember({"json", "text"}));

    CLI::App* example_cmd = app.add_subcommand(
        "example", "Reproduce the five-population worked example");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (map_cmd->parsed()) {
            return run_map(map_args, out);
        }
        if (tr_cmd->parsed()) {
            return run_transport(tr_args, out);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(sweep_args, out);
        }
        if (sim_cmd->parsed()) {
            return run_simulate(sim_args, out);
        }
        if (example_cmd->parsed()) {
            return run_example(out);
        }
    } catch (const SolverFailure& e) {
        err << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

} // namespace scc::cli
