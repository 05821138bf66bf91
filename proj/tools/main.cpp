#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>

#include "frob/errors.hpp"
#include "frob/report.hpp"
#include "frob/stats.hpp"
#include "frob/verify.hpp"

namespace fs = std::filesystem;
using namespace frob;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCertificate = 4;
constexpr int kExitOracle = 5;

struct RunConfig {
    std::string command;
    std::string target;
    std::string spec_path;
    std::string net_path;
    int k = 0;
    double budget = 0.0;
    std::vector<double> budgets;
    std::vector<std::int64_t> n_grid;
    std::vector<std::uint64_t> seeds;
    std::int64_t probes = 0; // 0 = per-command default
    std::string probe_kind = "default";
    std::string out_dir;
    std::uint64_t seed = 1;
    int epochs = 500;
    int width = 0; // 0 = prescribed
    int depth = 0; // 0 = prescribed
    int batch = 32;
    double step = 1e-2;
    double decay = 0.97;
    int mc = 20000;
    double noise = 0.0;
    std::size_t cap = kDefaultWeightCap;
    std::string report_dir;
};

std::string out_root() {
    if (const char* env = std::getenv("FROBNET_OUT_ROOT")) return env;
    return ".";
}

fs::path ensure_out_dir(const RunConfig& cfg, const std::string& fallback) {
    fs::path dir = cfg.out_dir.empty() ? fs::path(out_root()) / fallback : fs::path(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

bool is_dag_target(const std::string& name) {
    const auto names = dag_gallery_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_holder_target(const std::string& name) {
    const auto names = holder_gallery_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

// reference oracle for the primitive gallery targets
ScalarFn primitive_reference(const std::string& name) {
    if (name == "square") return [](const Vec& x) { return x[0] * x[0]; };
    if (name == "product") return [](const Vec& x) { return x[0] * x[1]; };
    if (name == "monomial-d3") return [](const Vec& x) { return x[0] * x[1] * x[2]; };
    throw config_error("unknown primitive target: " + name);
}

ProbePlan default_plan_for(int dim, const Box& box, std::int64_t probes, std::uint64_t seed,
                           const std::string& kind) {
    std::int64_t count = probes;
    if (count == 0) count = dim == 1 ? 100001 : (dim == 2 ? 1089 : 32768);
    const bool grid = kind == "default" ? dim <= 2 : kind == "uniform_grid";
    return grid ? ProbePlan::grid(box, count) : ProbePlan::halton(box, count, seed);
}

int run_compile_holder(const RunConfig& cfg) {
    const fs::path dir = ensure_out_dir(cfg, "compile-" + cfg.target);
    Network net;
    FrobeniusCertificate cert;
    ScalarFn reference;
    Box box;
    double error_bound = 0.0;
    int k = cfg.k, N = 0;

    if (cfg.target == "square" || cfg.target == "product" || cfg.target == "monomial-d3") {
        if (cfg.k < 1) throw config_error("primitive targets need --k >= 1");
        CertifiedNet cn = cfg.target == "square"
                              ? build_square(cfg.k)
                              : (cfg.target == "product" ? build_product(cfg.k) : build_monomial(3, cfg.k));
        reference = primitive_reference(cfg.target);
        box = cfg.target == "square" ? unit_box(1) : symmetric_box(cn.net.input_dim, 1.0);
        error_bound = cfg.target == "square"
                          ? 1.0 / (2.0 * cfg.k * cfg.k)
                          : (cfg.target == "product" ? 3.0 / (double(cfg.k) * cfg.k)
                                                     : 6.0 * 3.0 / (double(cfg.k) * cfg.k));
        net = std::move(cn.net);
        cert = std::move(cn.cert);
    } else if (is_holder_target(cfg.target)) {
        const FunctionOracle oracle = holder_gallery_target(cfg.target);
        HolderCompileResult res;
        if (cfg.budget > 0.0)
            res = compile_holder_for_budget(oracle, cfg.budget, cfg.cap);
        else if (cfg.k >= 1)
            res = compile_holder(oracle, cfg.k, cfg.cap);
        else
            throw config_error("holder targets need --k or --budget");
        reference = oracle.eval;
        box = oracle.domain;
        error_bound = res.error_bound;
        k = res.chosen_k;
        N = res.chosen_N;
        net = std::move(res.network);
        cert = std::move(res.certificate);
    } else {
        throw config_error("unknown compile-holder target: " + cfg.target);
    }

    const ProbePlan plan = default_plan_for(net.input_dim, box, cfg.probes, cfg.seed, cfg.probe_kind);
    const SupErrorResult sup = sup_error(net, reference, plan);
    const NormAuditReport audit = audit_norms(net, cert);

    write_text_file((dir / "network.json").string(), serialize(net, cert));
    CsvTable table;
    table.header = {"target", "k",     "N",      "depth",       "width",
                    "weights", "kappa", "budget", "error_bound", "measured_sup_error"};
    table.rows.push_back({cfg.target, std::to_string(k), std::to_string(N),
                          std::to_string(net.depth()), std::to_string(net.width()),
                          std::to_string(net.weight_count()), format_real(cert.kappa),
                          format_real(cert.budget), format_real(error_bound),
                          format_real(sup.max_abs_error)});
    write_text_file((dir / "report.csv").string(), table.to_string());

    const bool error_ok = sup.max_abs_error <= error_bound;
    std::string summary;
    summary += "compile-holder " + cfg.target + "\n";
    summary += "k = " + std::to_string(k) + ", depth = " + std::to_string(net.depth()) +
               ", width = " + std::to_string(net.width()) + "\n";
    summary += "kappa = " + format_real(cert.kappa) + " within budget " + format_real(cert.budget) +
               (cert.satisfied ? " (satisfied)\n" : " (VIOLATED)\n");
    summary += "measured sup error = " + format_real(sup.max_abs_error) + " vs bound " +
               format_real(error_bound) + (error_ok ? " (ok)\n" : " (VIOLATED)\n");
    summary += std::string("norm audit: ") + (audit.pass ? "clean" : "violations found") + "\n";
    write_text_file((dir / "summary.txt").string(), summary);
    std::cout << summary;

    if (!audit.pass || !cert.satisfied || !error_ok) return kExitCertificate;
    return kExitOk;
}

int run_compile_dag(const RunConfig& cfg) {
    const fs::path dir = ensure_out_dir(cfg, "compile-" + (cfg.target.empty() ? "dag" : cfg.target));
    DagSpec spec = cfg.spec_path.empty() ? dag_gallery(cfg.target)
                                         : parse_dag_spec(read_text_file(cfg.spec_path));
    if (cfg.budget <= 0.0) throw config_error("compile-dag needs --budget");
    const DagCompileResult compiled = compile_dag(spec, cfg.budget, cfg.cap);

    const std::int64_t probes = cfg.probes == 0 ? 4096 : cfg.probes;
    const ProbePlan plan = ProbePlan::halton(symmetric_box(spec.input_dim, 1.0), probes, cfg.seed);
    const SupErrorResult sup =
        sup_error(compiled.net, [&](const Vec& x) { return spec.eval_exact(x); }, plan);
    const NormAuditReport audit = audit_norms(compiled.net, compiled.cert);
    const CriticalPathResult trace = trace_critical_path(compiled, plan);

    write_text_file((dir / "network.json").string(), serialize(compiled.net, compiled.cert));
    CsvTable table;
    table.header = {"node",  "level",  "d_in",   "alpha",        "alpha_star",
                    "exponent", "node_k", "node_K", "error_bound", "on_critical_path"};
    for (const auto& nr : compiled.rate.per_node) {
        const bool on_path = trace.path[nr.level - 1] == nr.index;
        table.rows.push_back({nr.id, std::to_string(nr.level), std::to_string(nr.d_in),
                              format_real(nr.alpha), format_real(nr.alpha_star),
                              format_real(nr.exponent), std::to_string(nr.node_k),
                              format_real(nr.node_K), format_real(nr.node_error_bound),
                              on_path ? "yes" : "no"});
    }
    write_text_file((dir / "rate_table.csv").string(), table.to_string());

    const bool error_ok = sup.max_abs_error <= compiled.rate.total_error_bound;
    const bool budget_ok = compiled.cert.kappa <= cfg.budget;
    std::string summary;
    summary += "compile-dag " + spec.name + "\n";
    summary += "depth = " + std::to_string(compiled.net.depth()) + " (theorem form " +
               std::to_string(spec.theorem_depth()) + "), width = " +
               std::to_string(compiled.net.width()) + "\n";
    summary += "kappa = " + format_real(compiled.cert.kappa) + " within K = " +
               format_real(cfg.budget) + (budget_ok ? " (ok)\n" : " (VIOLATED)\n");
    summary += "measured sup error = " + format_real(sup.max_abs_error) + " vs total bound " +
               format_real(compiled.rate.total_error_bound) + (error_ok ? " (ok)\n" : " (VIOLATED)\n");
    summary += "worst-case rate exponent = " + format_real(compiled.rate.worst_case_rate_exponent) + "\n";
    summary += "empirical critical path:";
    for (const auto& id : trace.path_ids) summary += " " + id;
    summary += "\n";
    summary += std::string("norm audit: ") + (audit.pass ? "clean" : "violations found") + "\n";
    write_text_file((dir / "summary.txt").string(), summary);
    std::cout << summary;

    if (!audit.pass || !budget_ok || !error_ok) return kExitCertificate;
    return kExitOk;
}

int run_verify(const RunConfig& cfg) {
    if (cfg.net_path.empty()) throw config_error("verify needs --net FILE");
    const fs::path dir = ensure_out_dir(cfg, "verify");
    const auto [net, cert] = deserialize(read_text_file(cfg.net_path));
    const NormAuditReport audit = audit_norms(net, cert);

    CsvTable table;
    table.header = {"field", "expected", "actual", "relative_error", "pass"};
    for (const auto& e : audit.entries)
        table.rows.push_back({e.field, format_real(e.expected), format_real(e.actual),
                              format_real(e.relative_error), e.pass ? "yes" : "no"});
    write_text_file((dir / "verify_report.csv").string(), table.to_string());

    double measured = -1.0;
    if (!cfg.target.empty()) {
        ScalarFn reference;
        Box box;
        if (is_holder_target(cfg.target)) {
            const auto oracle = holder_gallery_target(cfg.target);
            reference = oracle.eval;
            box = oracle.domain;
        } else if (is_dag_target(cfg.target)) {
            auto spec = std::make_shared<DagSpec>(dag_gallery(cfg.target));
            reference = [spec](const Vec& x) { return spec->eval_exact(x); };
            box = symmetric_box(spec->input_dim, 1.0);
        } else {
            reference = primitive_reference(cfg.target);
            box = cfg.target == "square" ? unit_box(1) : symmetric_box(net.input_dim, 1.0);
        }
        const ProbePlan plan = default_plan_for(net.input_dim, box, cfg.probes, cfg.seed, cfg.probe_kind);
        measured = sup_error(net, reference, plan).max_abs_error;
    }

    std::string summary;
    summary += "verify " + cfg.net_path + "\n";
    summary += "kappa stored = " + format_real(cert.kappa) + ", recomputed = " +
               format_real(kappa(net)) + "\n";
    summary += std::string("norm audit: ") + (audit.pass ? "clean" : "violations found") + "\n";
    if (measured >= 0.0) summary += "measured sup error vs " + cfg.target + " = " + format_real(measured) + "\n";
    write_text_file((dir / "summary.txt").string(), summary);
    std::cout << summary;
    return audit.pass ? kExitOk : kExitCertificate;
}

int run_rate_sweep(const RunConfig& cfg) {
    if (!is_holder_target(cfg.target))
        throw config_error("rate-sweep targets the smooth-oracle gallery");
    const fs::path dir = ensure_out_dir(cfg, "rate-sweep-" + cfg.target);
    const FunctionOracle oracle = holder_gallery_target(cfg.target);
    const ProbePlan plan = default_plan_for(oracle.dim, oracle.domain,
                                            cfg.probes == 0 ? 4001 : cfg.probes, cfg.seed,
                                            cfg.probe_kind);
    const SweepResult sweep = rate_sweep(oracle, cfg.budgets, plan, cfg.cap);

    CsvTable table;
    table.header = {"budget", "k", "N", "measured_error", "certified_bound"};
    for (const auto& p : sweep.points)
        table.rows.push_back({format_real(p.budget), std::to_string(p.k), std::to_string(p.N),
                              format_real(p.measured_error), format_real(p.certified_bound)});
    write_text_file((dir / "sweep.csv").string(), table.to_string());

    bool monotone = true, dominated = true;
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        if (i > 0 && sweep.points[i].measured_error > sweep.points[i - 1].measured_error * (1.0 + 1e-12))
            monotone = false;
        if (sweep.points[i].measured_error > sweep.points[i].certified_bound) dominated = false;
    }
    std::string summary;
    summary += "rate-sweep " + cfg.target + "\n";
    summary += "points = " + std::to_string(sweep.points.size()) + "\n";
    summary += "fitted log-log slope = " + format_real(sweep.fitted_slope) + "\n";
    summary += "theoretical exponent = " + format_real(sweep.theoretical_exponent) + "\n";
    summary += std::string("errors monotone nonincreasing: ") + (monotone ? "yes" : "no") + "\n";
    summary += std::string("certified bounds dominate: ") + (dominated ? "yes" : "no") + "\n";
    for (const auto& note : sweep.notes) summary += "note: " + note + "\n";
    write_text_file((dir / "summary.txt").string(), summary);
    std::cout << summary;
    return (monotone && dominated) ? kExitOk : kExitCertificate;
}

int run_erm_sweep(const RunConfig& cfg) {
    if (!is_dag_target(cfg.target)) throw config_error("erm-sweep targets the DAG gallery");
    if (cfg.n_grid.empty()) throw config_error("erm-sweep needs --n-grid");
    if (cfg.seeds.empty()) throw config_error("erm-sweep needs --seeds");
    const fs::path dir = ensure_out_dir(cfg, "erm-sweep-" + cfg.target);
    const DagSpec spec = dag_gallery(cfg.target);

    CsvTable table;
    table.header = {"n", "K", "seed", "empirical_risk", "test_risk", "excess", "stderr"};
    CsvTable timing;
    timing.header = {"n", "seed", "seconds"};
    std::string summary = "erm-sweep " + cfg.target + "\n";
    summary += "K schedule exponent = " + format_real(schedule_K_exponent(spec)) + "\n";

    std::vector<std::pair<std::int64_t, double>> medians;
    for (std::int64_t n : cfg.n_grid) {
        const double K = schedule_K(spec, n);
        const int depth = cfg.depth > 0 ? cfg.depth : prescribed_depth(spec);
        const int width = cfg.width > 0 ? cfg.width : prescribed_width(spec, K, 24);
        std::vector<double> excesses;
        for (std::uint64_t seed : cfg.seeds) {
            const auto t0 = std::chrono::steady_clock::now();
            const Dataset data = generate_data(spec, static_cast<int>(n), seed, cfg.noise);
            OptimizerConfig opt;
            opt.epochs = cfg.epochs;
            opt.batch_size = cfg.batch;
            opt.step = cfg.step;
            opt.decay_per_epoch = cfg.decay;
            opt.seed = seed;
            const ErmResult trained = erm_train(data, width, depth, K, opt);
            const ExcessRiskEstimate er =
                excess_risk(trained.trained, spec, cfg.mc, seed + 1000, cfg.noise);
            table.rows.push_back({std::to_string(n), format_real(K), std::to_string(seed),
                                  format_real(trained.empirical_risk), format_real(er.risk_trained),
                                  format_real(er.estimate), format_real(er.stderr_value)});
            excesses.push_back(er.estimate);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            timing.rows.push_back({std::to_string(n), std::to_string(seed), std::to_string(secs)});
        }
        std::sort(excesses.begin(), excesses.end());
        medians.emplace_back(n, excesses[excesses.size() / 2]);
    }
    write_text_file((dir / "erm.csv").string(), table.to_string());
    write_text_file((dir / "timings.csv").string(), timing.to_string());

    bool nonincreasing = true;
    for (std::size_t i = 1; i < medians.size(); ++i)
        if (medians[i].second > medians[i - 1].second) nonincreasing = false;
    for (const auto& [n, med] : medians)
        summary += "n = " + std::to_string(n) + ": median excess = " + format_real(med) + "\n";
    summary += std::string("medians nonincreasing: ") + (nonincreasing ? "yes" : "no") + "\n";
    write_text_file((dir / "summary.txt").string(), summary);
    std::cout << summary;
    return kExitOk;
}

int run_report(const RunConfig& cfg) {
    if (cfg.report_dir.empty()) throw config_error("report needs --dir");
    const fs::path dir(cfg.report_dir);
    std::string out;
    bool found = false;
    if (fs::exists(dir / "sweep.csv")) {
        found = true;
        out += "== rate sweep ==\n" + read_text_file((dir / "sweep.csv").string());
        if (fs::exists(dir / "summary.txt")) out += read_text_file((dir / "summary.txt").string());
    }
    if (fs::exists(dir / "erm.csv")) {
        found = true;
        out += "== erm sweep ==\n" + read_text_file((dir / "erm.csv").string());
        if (fs::exists(dir / "summary.txt")) out += read_text_file((dir / "summary.txt").string());
    }
    if (!found) throw config_error("report: no sweep.csv or erm.csv under " + dir.string());
    write_text_file((dir / "report.txt").string(), out);
    std::cout << out;
    return kExitOk;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(static_cast<T>(std::stod(cur)));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

RunConfig config_from_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("config: ") + e.what(), e.byte);
    }
    static const std::vector<std::string> known = {
        "command", "target", "spec",  "net",   "k",     "budget", "budgets", "n_grid",
        "seeds",   "probes", "probe_kind", "out", "seed", "epochs", "width",  "depth",
        "batch",   "step",   "decay", "mc",    "noise", "cap",    "dir"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw config_error("config: unknown key '" + key + "'");
    }
    RunConfig cfg;
    cfg.command = j.at("command").get<std::string>();
    cfg.target = j.value("target", "");
    cfg.spec_path = j.value("spec", "");
    cfg.net_path = j.value("net", "");
    cfg.k = j.value("k", 0);
    cfg.budget = j.value("budget", 0.0);
    if (j.contains("budgets")) cfg.budgets = j.at("budgets").get<std::vector<double>>();
    if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<std::int64_t>>();
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    cfg.probes = j.value("probes", 0);
    cfg.probe_kind = j.value("probe_kind", "default");
    cfg.out_dir = j.value("out", "");
    cfg.seed = j.value("seed", 1);
    cfg.epochs = j.value("epochs", 500);
    cfg.width = j.value("width", 0);
    cfg.depth = j.value("depth", 0);
    cfg.batch = j.value("batch", 32);
    cfg.step = j.value("step", 1e-2);
    cfg.decay = j.value("decay", 0.97);
    cfg.mc = j.value("mc", 20000);
    cfg.noise = j.value("noise", 0.0);
    cfg.cap = j.value("cap", kDefaultWeightCap);
    cfg.report_dir = j.value("dir", "");
    return cfg;
}

int dispatch(const RunConfig& cfg) {
    if (cfg.command == "compile-holder") return run_compile_holder(cfg);
    if (cfg.command == "compile-dag") return run_compile_dag(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "rate-sweep") return run_rate_sweep(cfg);
    if (cfg.command == "erm-sweep") return run_erm_sweep(cfg);
    if (cfg.command == "report") return run_report(cfg);
    throw config_error("unknown command: " + cfg.command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"norm-certified ReLU network compiler and verification lab"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "run configuration file (json)");

    RunConfig cfg;
    std::string budgets_text, n_grid_text, seeds_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--seed", cfg.seed, "probe/run seed");
        sub->add_option("--probes", cfg.probes, "probe count (0 = default)");
        sub->add_option("--probe-kind", cfg.probe_kind, "uniform_grid | low_discrepancy");
        sub->add_option("--cap", cfg.cap, "compiled weight cap");
    };

    CLI::App* ch = app.add_subcommand("compile-holder", "compile a gallery target with certificates");
    ch->add_option("--target", cfg.target)->required();
    ch->add_option("--k", cfg.k, "resolution parameter");
    ch->add_option("--budget", cfg.budget, "norm budget K (picks k)");
    add_common(ch);

    CLI::App* cd = app.add_subcommand("compile-dag", "compile a compositional DAG target");
    cd->add_option("--target", cfg.target);
    cd->add_option("--spec", cfg.spec_path, "DAG spec file");
    cd->add_option("--budget", cfg.budget)->required();
    add_common(cd);

    CLI::App* vf = app.add_subcommand("verify", "audit a serialized network file");
    vf->add_option("--net", cfg.net_path)->required();
    vf->add_option("--target", cfg.target, "optional reference target for sup error");
    add_common(vf);

    CLI::App* rs = app.add_subcommand("rate-sweep", "error-vs-budget sweep with slope fit");
    rs->add_option("--target", cfg.target)->required();
    rs->add_option("--budgets", budgets_text, "comma-separated budgets")->required();
    add_common(rs);

    CLI::App* es = app.add_subcommand("erm-sweep", "norm-scheduled training sweep");
    es->add_option("--target", cfg.target)->required();
    es->add_option("--n-grid", n_grid_text, "comma-separated sample sizes")->required();
    es->add_option("--seeds", seeds_text, "comma-separated seeds")->required();
    es->add_option("--epochs", cfg.epochs);
    es->add_option("--width", cfg.width, "0 = prescribed");
    es->add_option("--depth", cfg.depth, "0 = prescribed");
    es->add_option("--batch", cfg.batch);
    es->add_option("--step", cfg.step);
    es->add_option("--decay", cfg.decay);
    es->add_option("--mc", cfg.mc, "Monte Carlo draws for the risk estimate");
    es->add_option("--noise", cfg.noise, "uniform noise half-width");
    add_common(es);

    CLI::App* rp = app.add_subcommand("report", "render tables from a sweep directory");
    rp->add_option("--dir", cfg.report_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            return dispatch(config_from_json(config_path));
        }
        if (ch->parsed()) cfg.command = "compile-holder";
        if (cd->parsed()) cfg.command = "compile-dag";
        if (vf->parsed()) cfg.command = "verify";
        if (rs->parsed()) {
            cfg.command = "rate-sweep";
            cfg.budgets = parse_list<double>(budgets_text);
        }
        if (es->parsed()) {
            cfg.command = "erm-sweep";
            cfg.n_grid = parse_list<std::int64_t>(n_grid_text);
            cfg.seeds = parse_list<std::uint64_t>(seeds_text);
        }
        if (rp->parsed()) cfg.command = "report";
        if (cfg.command.empty()) {
            std::cerr << app.help() << "\n";
            return kExitConfig;
        }
        return dispatch(cfg);
    } catch (const budget_infeasible_error& e) {
        std::cerr << "budget infeasible: " << e.what() << "\n";
        return kExitBudget;
    } catch (const oracle_inconsistency_error& e) {
        std::cerr << "oracle inconsistency: " << e.what() << "\n";
        return kExitOracle;
    } catch (const certificate_violation_error& e) {
        std::cerr << "certificate violation: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const training_failure_error& e) {
        std::cerr << "training failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
