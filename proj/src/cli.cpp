#include "coa/cli.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coa/assistance.hpp"
#include "coa/coherence.hpp"
#include "coa/entanglement.hpp"
#include "coa/io.hpp"
#include "coa/protocol.hpp"

namespace coa::cli {

namespace {

namespace fs = std::filesystem;

struct OptimizerFlags {
    OptimizerConfig values;
    std::string config_path;
    std::vector<std::pair<std::string, CLI::Option*>> options;
};

void add_optimizer_flags(CLI::App* sub, OptimizerFlags& f) {
    auto& v = f.values;
    auto add = [&](const std::string& name, auto& target, const std::string& help) {
        auto* opt = sub->add_option("--" + name, target, help)->capture_default_str();
        f.options.emplace_back(name, opt);
    };
    add("restarts", v.restarts, "Optimizer restarts");
    add("ensemble-size", v.ensemble_size, "Decomposition size, 0 for dim^2");
    add("max-iters", v.max_iters, "Iteration cap per restart");
    add("stall-tol", v.stall_tol, "Smallest improvement that resets the stall counter");
    add("stall-iters", v.stall_iters, "Iterations without improvement before stopping");
    add("seed", v.seed, "Random seed");
    add("jobs", v.jobs, "Worker threads for restarts");
    add("seed-budget", v.seed_budget, "Iteration budget of the qutrit equal-diagonal seed");
    sub->add_option("--config", f.config_path, "JSON file with optimizer settings; explicit flags win");
}

// Settings from --config, then explicit flags on top.
OptimizerConfig resolve(const OptimizerFlags& f) {
    OptimizerConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw Error(ErrorKind::ParseError, "cannot open " + f.config_path);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
            for (const auto& [key, value] : j.items()) {
                if (key == "restarts") cfg.restarts = value.get<std::size_t>();
                else if (key == "ensemble_size") cfg.ensemble_size = value.get<std::size_t>();
                else if (key == "max_iters") cfg.max_iters = value.get<std::size_t>();
                else if (key == "stall_tol") cfg.stall_tol = value.get<double>();
                else if (key == "stall_iters") cfg.stall_iters = value.get<std::size_t>();
                else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
                else if (key == "jobs") cfg.jobs = value.get<std::size_t>();
                else if (key == "seed_budget") cfg.seed_budget = value.get<std::size_t>();
                else throw Error(ErrorKind::ParseError, "unknown config key '" + key + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, f.config_path + ": " + e.what());
        }
    }
    const auto given = [&](const char* name) {
        for (const auto& [n, opt] : f.options)
            if (n == name) return opt->count() > 0;
        return false;
    };
    const auto& v = f.values;
    if (given("restarts")) cfg.restarts = v.restarts;
    if (given("ensemble-size")) cfg.ensemble_size = v.ensemble_size;
    if (given("max-iters")) cfg.max_iters = v.max_iters;
    if (given("stall-tol")) cfg.stall_tol = v.stall_tol;
    if (given("stall-iters")) cfg.stall_iters = v.stall_iters;
    if (given("seed")) cfg.seed = v.seed;
    if (given("jobs")) cfg.jobs = v.jobs;
    if (given("seed-budget")) cfg.seed_budget = v.seed_budget;
    return cfg;
}

class Printer {
public:
    Printer(std::ostream& out, int precision) : out_(out), precision_(precision) {}

    std::string num(double x) const {
        if (std::abs(x) < 1e-12) x = 0.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", precision_, x);
        return buf;
    }
    std::string cnum(Complex z) const {
        const double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
        const double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
        if (im == 0.0) return num(re);
        return num(re) + (im < 0 ? "-" : "+") + num(std::abs(im)) + "i";
    }
    void value(const std::string& key, double x) { out_ << key << " " << num(x) << "\n"; }
    void count(const std::string& key, std::size_t n) { out_ << key << " " << n << "\n"; }
    void flag(const std::string& key, bool b) { out_ << key << "=" << (b ? "true" : "false") << "\n"; }
    void text(const std::string& key, std::string_view s) { out_ << key << " " << s << "\n"; }

    void ensemble(const Ensemble& e) {
        for (std::size_t k = 0; k < e.size(); ++k) {
            out_ << "member " << k << " weight " << num(e[k].weight) << " amps [";
            const auto amps = e[k].state.amps();
            for (std::size_t i = 0; i < amps.size(); ++i) out_ << (i ? ", " : "") << cnum(amps[i]);
            out_ << "]\n";
        }
    }
    std::ostream& raw() { return out_; }

private:
    std::ostream& out_;
    int precision_;
};

std::string state_label(const io::MatrixDocument& doc, const fs::path& path) {
    return doc.label.empty() ? path.stem().string() : doc.label;
}

// Shell-style wildcards in the file-name part are expanded here too, in
// sorted order, so quoted patterns behave like unquoted ones.
std::vector<fs::path> expand_paths(const std::vector<std::string>& patterns) {
    std::vector<fs::path> out;
    for (const auto& pattern : patterns) {
        const fs::path p(pattern);
        const std::string name = p.filename().string();
        if (name.find_first_of("*?[") == std::string::npos) {
            out.push_back(p);
            continue;
        }
        const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
        std::vector<fs::path> hits;
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(dir, ec))
            if (entry.is_regular_file() && fnmatch(name.c_str(), entry.path().filename().c_str(), 0) == 0)
                hits.push_back(p.has_parent_path() ? entry.path() : entry.path().filename());
        if (hits.empty()) throw Error(ErrorKind::ParseError, "no files match " + pattern);
        std::sort(hits.begin(), hits.end());
        out.insert(out.end(), hits.begin(), hits.end());
    }
    return out;
}

DensityMatrix load_state(const std::string& path, std::string& context, const Tolerances& tol) {
    context = path;
    auto rho = DensityMatrix(io::load_matrix_document(path).entries, tol);
    context.clear();
    return rho;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coherence of assistance toolkit", "coa"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");
    int precision = 6;
    app.add_option("--precision", precision, "Significant digits in printed numbers")
        ->capture_default_str()
        ->check(CLI::Range(1, 17));
    app.footer("Tolerance profile: set " + std::string(kToleranceEnvVar) + " to default, strict or loose.");

    // measure
    std::string state_path;
    std::string which = "both";
    auto* measure = app.add_subcommand("measure", "Base coherence of a state");
    measure->add_option("state", state_path, "MatrixFile with a density matrix")->required();
    measure->add_option("--which", which, "Coherence measure")
        ->capture_default_str()
        ->check(CLI::IsMember({"l1", "relent", "both"}));

    // bound
    auto* bound = app.add_subcommand("bound", "Upper bounds on the coherence of assistance");
    bound->add_option("state", state_path, "MatrixFile with a density matrix")->required();

    // assist
    std::string assist_measure = "l1";
    std::string method = "search";
    bool show_witness = false;
    OptimizerFlags assist_flags;
    auto* assist = app.add_subcommand("assist", "Coherence of assistance by optimization over decompositions");
    assist->add_option("state", state_path, "MatrixFile with a density matrix")->required();
    assist->add_option("--measure", assist_measure, "Coherence measure")
        ->capture_default_str()
        ->check(CLI::IsMember({"l1", "relent"}));
    assist->add_option("--method", method, "search, or analytic for the l1 closed form (dim <= 3)")
        ->capture_default_str()
        ->check(CLI::IsMember({"search", "analytic"}));
    assist->add_flag("--witness", show_witness, "Print the witness decomposition (default: off)");
    add_optimizer_flags(assist, assist_flags);

    // saturate
    std::size_t budget = kDefaultSaturationBudget;
    std::uint64_t seed = kDefaultSeed;
    double sat_tol = kSatTol;
    bool sat_witness = false;
    auto* saturate = app.add_subcommand("saturate", "Search for a decomposition whose members share the diagonal");
    saturate->add_option("state", state_path, "MatrixFile with a density matrix")->required();
    saturate->add_option("--budget", budget, "Iteration budget")->capture_default_str();
    saturate->add_option("--seed", seed, "Random seed")->capture_default_str();
    saturate->add_option("--sat-tol", sat_tol, "Largest residual counted as saturated")->capture_default_str();
    saturate->add_flag("--witness", sat_witness, "Print the decomposition (default: off)");

    // strict
    auto* strict = app.add_subcommand("strict", "Decomposition with strictly larger average l1 coherence");
    strict->add_option("state", state_path, "MatrixFile with a mixed density matrix")->required();

    // classify
    OptimizerFlags classify_flags;
    auto* classify_cmd = app.add_subcommand("classify", "Pure incoherent, pure coherent or mixed");
    classify_cmd->add_option("state", state_path, "MatrixFile with a density matrix")->required();
    add_optimizer_flags(classify_cmd, classify_flags);

    // mc
    OptimizerFlags mc_flags;
    auto* mc = app.add_subcommand("mc", "Maximally correlated state and its negativities");
    mc->add_option("state", state_path, "MatrixFile with a density matrix")->required();
    add_optimizer_flags(mc, mc_flags);

    // protocol
    bool demo = false;
    std::string basis = "computational";
    bool proto_witness = false;
    OptimizerFlags proto_flags;
    auto* protocol = app.add_subcommand("protocol", "Assisted distillation with a measurement on the purifying side");
    auto* proto_state = protocol->add_option("state", state_path, "MatrixFile with a density matrix");
    auto* demo_opt = protocol->add_flag("--demo-dim4", demo,
                                        "Built-in 4-dimensional maximally mixed example (default: off)");
    proto_state->excludes(demo_opt);
    protocol->add_option("--basis", basis, "Measurement basis on the purifying side")
        ->capture_default_str()
        ->check(CLI::IsMember({"computational", "haar"}));
    protocol->add_flag("--witness", proto_witness, "Print the resulting ensemble (default: off)");
    add_optimizer_flags(protocol, proto_flags);

    // report
    std::vector<std::string> report_paths;
    std::string format = "table";
    bool no_footer = false;
    OptimizerFlags report_flags;
    auto* report = app.add_subcommand("report", "Compare both coherences of assistance over many states");
    report->add_option("states", report_paths, "MatrixFile paths or wildcard patterns")->required();
    report->add_option("--format", format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"table", "csv", "jsonl"}));
    report->add_flag("--no-footer", no_footer, "Omit the relation summary (default: off)");
    add_optimizer_flags(report, report_flags);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Printer p(out, precision);
    std::string context;
    try {
        const Tolerances tol = Tolerances::from_env();

        if (*measure) {
            const auto rho = load_state(state_path, context, tol);
            if (which != "relent") p.value("c_l1", c_l1(rho));
            if (which != "l1") p.value("c_rel_ent", c_rel_ent(rho, tol));
        } else if (*bound) {
            const auto rho = load_state(state_path, context, tol);
            p.value("upper_l1", upper_bound_l1(rho));
            p.value("upper_rel_ent", upper_bound_rel_ent(rho, tol));
            p.value("max_possible_l1", static_cast<double>(rho.dim()) - 1.0);
        } else if (*assist) {
            const auto rho = load_state(state_path, context, tol);
            const auto cfg = resolve(assist_flags);
            const Measure m = assist_measure == "l1" ? Measure::L1 : Measure::RelativeEntropy;
            AssistanceResult r;
            if (method == "analytic") {
                if (m != Measure::L1) throw Error(ErrorKind::BadDimension, "the closed form covers l1 only");
                r = analytic_ca_l1(rho, cfg.seed_budget, cfg.seed, tol);
            } else {
                r = optimize_ca(rho, m, cfg, tol);
            }
            p.text("measure", to_string(m));
            p.value("base", coherence(rho, m, tol));
            p.value("lower", r.lower_bound);
            p.value("upper", r.upper_bound);
            p.flag("exact", r.exact);
            p.flag("converged", r.converged);
            p.count("restarts", r.restarts_used);
            p.count("members", r.witness.size());
            if (r.residual) p.value("residual", *r.residual);
            if (show_witness) p.ensemble(r.witness);
        } else if (*saturate) {
            const auto rho = load_state(state_path, context, tol);
            const auto r = saturation_check(rho, budget, seed, sat_tol, tol);
            p.flag("saturated", r.saturated);
            p.value("residual", r.residual);
            p.value("average_l1", r.average_l1);
            p.value("upper_l1", upper_bound_l1(rho));
            p.count("members", r.ensemble.size());
            if (sat_witness) p.ensemble(r.ensemble);
        } else if (*strict) {
            const auto rho = load_state(state_path, context, tol);
            const auto e = strict_increase_ensemble(rho, tol);
            const double base = c_l1(rho);
            const double avg = e.average_coherence(Measure::L1);
            p.value("c_l1", base);
            p.value("average_l1", avg);
            p.value("increase", avg - base);
            p.ensemble(e);
        } else if (*classify_cmd) {
            const auto rho = load_state(state_path, context, tol);
            const auto c = classify(rho, resolve(classify_flags), tol);
            p.text("class", to_string(c.kind));
            p.value("accessible_l1", c.accessible_l1);
            p.value("accessible_rel_ent", c.accessible_rel_ent);
        } else if (*mc) {
            const auto rho = load_state(state_path, context, tol);
            const auto bip = to_maximally_correlated(rho);
            const auto noa = negativity_of_assistance_mc(rho, resolve(mc_flags), tol);
            p.raw() << "rho_mc " << io::write_matrix_document(bip.mat.mat(), "rho_mc");
            p.value("negativity", negativity(bip, tol));
            p.value("half_c_l1", c_l1(rho) / 2.0);
            p.value("negativity_of_assistance", noa.value);
            p.value("twice_negativity_of_assistance", 2.0 * noa.value);
            p.flag("exact", noa.coherence_side.exact);
        } else if (*protocol) {
            if (!demo && state_path.empty())
                throw CLI::RequiredError("state or --demo-dim4");
            const auto strategy = basis == "haar" ? BasisStrategy::HaarSearch : BasisStrategy::Computational;
            const auto cfg = resolve(proto_flags);
            ProtocolReport r;
            if (demo) {
                r = run_protocol(DensityMatrix::maximally_mixed(4), demo_dim4_purification(), strategy, cfg, tol);
            } else {
                r = run_protocol(load_state(state_path, context, tol), strategy, cfg, tol);
            }
            p.value("initial", r.initial_l1);
            p.value("final", r.final_average_l1);
            p.value("gain", r.gain);
            p.count("outcomes", r.ensemble.size());
            if (proto_witness) p.ensemble(r.ensemble);
        } else if (*report) {
            const auto cfg = resolve(report_flags);
            std::vector<io::ReportRecord> records;
            for (const auto& path : expand_paths(report_paths)) {
                context = path.string();
                const auto doc = io::load_matrix_document(path);
                const DensityMatrix rho(doc.entries, tol);
                records.push_back(io::build_report_record(rho, state_label(doc, path), cfg, tol));
                context.clear();
            }
            const auto fmt = format == "csv"     ? io::ReportFormat::Csv
                             : format == "jsonl" ? io::ReportFormat::JsonLines
                                                 : io::ReportFormat::HumanTable;
            out << io::write_report(records, fmt);
            if (!no_footer) out << io::write_report_footer(records);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        err << "error: " << (context.empty() ? "" : context + ": ") << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace coa::cli
