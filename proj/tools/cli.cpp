#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gsb/bound.hpp"
#include "gsb/capacity.hpp"
#include "gsb/core.hpp"
#include "gsb/membership.hpp"
#include "gsb/scenario_io.hpp"
#include "gsb/simulate.hpp"
#include "gsb/verify.hpp"
#include "json.hpp"

#ifndef GSB_VERSION
#define GSB_VERSION "dev"
#endif

namespace gsb::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string scenario_file;
    std::optional<double> power;
    std::string noises;
    std::optional<double> bandwidth;
    std::optional<double> source_var;
    double tolerance = kDefaultRelTolerance;
    std::uint64_t seed = 42;
    std::string out_dir;
    bool caption_literal = false;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw Error(ErrorCode::ParseError, "empty list element in '" + text + "'");
        parts.push_back(item.substr(b, e - b + 1));
    }
    if (parts.empty()) throw Error(ErrorCode::ParseError, "empty list");
    return parts;
}

double parse_real(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::ParseError, "not a finite number: '" + s + "'");
    }
    return v;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split_list(text)) out.push_back(parse_real(p));
    return out;
}

BroadcastScenario load_scenario(const GlobalOptions& g) {
    RawScenario raw;
    bool have_file = !g.scenario_file.empty();
    if (have_file) {
        std::ifstream in(g.scenario_file);
        if (!in) throw Error(ErrorCode::ParseError, "cannot open scenario file " + g.scenario_file);
        std::ostringstream buf;
        buf << in.rdbuf();
        raw = parse_raw_scenario(buf.str());
    } else if (!g.power || g.noises.empty()) {
        throw Error(ErrorCode::ParseError, "a scenario is required: --scenario FILE or --power and --noises");
    }
    if (g.power) raw.power = *g.power;
    if (!g.noises.empty()) raw.noises = parse_reals(g.noises);
    if (g.bandwidth) raw.bandwidth = *g.bandwidth;
    if (g.source_var) raw.source_var = *g.source_var;
    return validate_scenario(raw);
}

json tau_json(const TauSchedule& t) {
    json arr = json::array();
    for (auto x : t.taus()) arr.push_back(to_json(x));
    return arr;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out << content;
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw Error(ErrorCode::ParseError, "cannot create output directory " + p.string());
    return p;
}

void write_manifest(const fs::path& dir, const std::string& command, const std::optional<BroadcastScenario>& s,
                    const json& parameters, std::vector<std::string> outputs) {
    const fs::path manifest = dir / (command + ".manifest.json");
    json m = {
        {"command", command},
        {"scenario", s ? to_json(*s) : json(nullptr)},
        {"parameters", parameters},
        {"outputs", outputs},
        {"tool_version", GSB_VERSION},
    };
    write_file(manifest, m.dump(2) + "\n");
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// Payload commands print JSON and, with --out, also store it plus a manifest.
void emit_payload(const GlobalOptions& g, const std::string& command, const std::optional<BroadcastScenario>& s,
                  const json& parameters, const json& payload, std::ostream& out) {
    out << payload.dump(2) << "\n";
    if (g.out_dir.empty()) return;
    const fs::path dir = ensure_dir(g.out_dir);
    const std::string name = command + ".json";
    write_file(dir / name, payload.dump(2) + "\n");
    write_manifest(dir, command, s, parameters, {(dir / name).string()});
}

// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string distortions;
    std::string tau;
};

int cmd_eval(const GlobalOptions& g, const EvalArgs& a, std::ostream& out) {
    const auto s = load_scenario(g);
    const DistortionTuple d(parse_reals(a.distortions));
    std::vector<ExtReal> taus;
    for (const auto& p : split_list(a.tau)) taus.push_back(parse_ext_real(p));
    const TauSchedule tau(std::move(taus));
    const auto ev = check_inequality(s, d, tau, g.tolerance);
    json payload = {
        {"lhs", to_json(ev.lhs)},
        {"rhs", ev.rhs},
        {"slack", std::isinf(ev.slack) ? json("-inf") : json(ev.slack)},
        {"satisfied", ev.satisfied},
        {"extended", !tau.all_finite()},
        {"tolerance", g.tolerance},
    };
    emit_payload(g, "eval", s, {{"distortions", a.distortions}, {"tau", a.tau}, {"tolerance", g.tolerance}},
                 payload, out);
    return kExitOk;
}

struct MembershipArgs {
    std::string distortions;
    int grid = 0;
};

int cmd_membership(const GlobalOptions& g, const MembershipArgs& a, std::ostream& out) {
    const auto s = load_scenario(g);
    const DistortionTuple d(parse_reals(a.distortions));
    if (a.grid < 0) throw Error(ErrorCode::ParseError, "--grid must be >= 0");
    SupOptions opts;
    opts.grid = a.grid;
    const auto v = in_outer_region(s, d, g.tolerance, opts);
    json payload = {
        {"member", v.member},
        {"margin", v.margin},
        {"sup_value", v.sup.sup_value},
        {"rhs", s.rhs()},
        {"argmax_tau", tau_json(v.sup.argmax_tau)},
        {"argmax_t", v.sup.argmax_t},
        {"iterations", v.sup.iterations},
        {"certified_gap", v.sup.certified_gap},
        {"grid", a.grid > 0 ? a.grid : default_grid_resolution(s.users())},
        {"tolerance", g.tolerance},
    };
    emit_payload(g, "membership", s, {{"distortions", a.distortions}, {"grid", payload["grid"]}}, payload, out);
    return kExitOk;
}

struct TraceArgs {
    std::optional<double> from;
    std::optional<double> to;
    int points = 21;
};

int cmd_trace(const GlobalOptions& g, const TraceArgs& a, std::ostream& out) {
    const auto s = load_scenario(g);
    if (s.users() != 2) throw Error(ErrorCode::DimensionMismatch, "trace needs a two-receiver scenario");
    const double lo = a.from.value_or(trivial_distortion(s, 1));
    const double hi = a.to.value_or(s.source_var());
    if (a.points < 1 || !(lo > 0.0) || hi > s.source_var() || lo > hi || (a.points > 1 && lo == hi)) {
        throw Error(ErrorCode::InvalidDistortion, "invalid D_1 grid");
    }
    const double d2_star = trivial_distortion(s, 2);
    std::ostringstream csv;
    csv << "D1,D2_min,D2_trivial,gap,sup_value,margin\n";
    json rows = json::array();
    for (int i = 0; i < a.points; ++i) {
        const double d1 = a.points == 1 ? lo : lo + (hi - lo) * i / (a.points - 1);
        const double fixed[1] = {d1};
        const double d2 = trace_boundary(s, fixed, std::nullopt, 1e-10, g.tolerance);
        const auto v = in_outer_region(s, DistortionTuple({d1, d2}), g.tolerance);
        csv << fmt(d1) << "," << fmt(d2) << "," << fmt(d2_star) << "," << fmt(d2 - d2_star) << ","
            << fmt(v.sup.sup_value) << "," << fmt(v.margin) << "\n";
        rows.push_back({{"D1", d1}, {"D2_min", d2}, {"gap", d2 - d2_star}});
    }
    const fs::path dir = ensure_dir(g.out_dir);
    const fs::path file = dir / "trace.csv";
    write_file(file, csv.str());
    write_manifest(dir, "trace", s, {{"from", lo}, {"to", hi}, {"points", a.points}, {"tolerance", g.tolerance}},
                   {file.string()});
    out << json{{"csv", file.string()}, {"rows", rows}}.dump(2) << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::uint64_t trials = 1000;
    bool inject_fault = false;
};

int cmd_verify(const GlobalOptions& g, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    if (a.trials == 0) err << "warning: trials=0, every suite passes vacuously\n";
    const auto results = run_theorem_suites(
        a.trials, g.seed, a.inject_fault ? FaultInjection::NegateEqualityCheck : FaultInjection::None);
    bool all_ok = true;
    json suites = json::array();
    for (const auto& r : results) {
        all_ok = all_ok && r.ok();
        suites.push_back({{"name", r.name}, {"trials", r.trials}, {"passed", r.passed}, {"failures", r.failures}});
    }
    json payload = {{"seed", g.seed}, {"trials", a.trials}, {"all_passed", all_ok}, {"suites", suites}};
    emit_payload(g, "verify-theorems", std::nullopt, {{"trials", a.trials}, {"seed", g.seed}}, payload, out);
    for (const auto& r : results) {
        err << (r.ok() ? "PASS " : "FAIL ") << r.passed << "/" << r.trials << "  " << r.name << "\n";
    }
    return all_ok ? kExitOk : kExitVerification;
}

struct FigureArgs {
    double c1 = 1.0;
    double c2 = 5.0;
    std::string bandwidths = "0.5,1,2";
    std::size_t samples = 512;
};

int cmd_figure1(const GlobalOptions& g, const FigureArgs& a, std::ostream& out) {
    auto bs = parse_reals(a.bandwidths);
    for (double b : bs) {
        if (!(b > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "bandwidths must be > 0");
    }
    if (a.samples < 2) throw Error(ErrorCode::ParseError, "--samples must be >= 2");
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    const RegionForm form = g.caption_literal ? RegionForm::CaptionLiteral : RegionForm::Standard;

    const fs::path dir = ensure_dir(g.out_dir);
    std::vector<std::string> outputs;
    std::vector<GaussianBC> channels;
    json regions = json::array();
    for (double b : bs) {
        const auto s = scenario_from_capacities(a.c1, a.c2, b);
        const auto ch = physical_channel(s);
        channels.push_back(ch);
        std::ostringstream csv;
        csv << "alpha,R1,R2\n";
        const auto samples = sample_region(ch, b, a.samples, form);
        for (const auto& smp : samples) {
            csv << fmt(smp.split[1]) << "," << fmt(smp.rates.rates[0]) << "," << fmt(smp.rates.rates[1]) << "\n";
        }
        const fs::path file = dir / ("figure1_b" + fmt(b) + ".csv");
        write_file(file, csv.str());
        outputs.push_back(file.string());
        const auto& first = samples.front().rates.rates;
        const auto& last = samples.back().rates.rates;
        regions.push_back({{"b", b},
                           {"N1", ch.noises[0]},
                           {"N2", ch.noises[1]},
                           {"corner_R1", first[0]},
                           {"corner_R2", last[1]},
                           {"csv", file.string()}});
    }

    // Consecutive pairs (b_lo < b_hi): C_{b_hi} inside C_{b_lo} and not conversely.
    json pairs = json::array();
    bool strict = true;
    for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
        const auto hi_in_lo = containment(channels[i + 1], bs[i + 1], channels[i], bs[i], a.samples);
        const auto lo_in_hi = containment(channels[i], bs[i], channels[i + 1], bs[i + 1], a.samples);
        const bool nested = hi_in_lo.contained && !lo_in_hi.contained;
        strict = strict && nested;
        json witness = lo_in_hi.witness ? json(lo_in_hi.witness->rates) : json(nullptr);
        pairs.push_back({{"b_lo", bs[i]},
                         {"b_hi", bs[i + 1]},
                         {"hi_inside_lo", hi_in_lo.contained},
                         {"lo_inside_hi", lo_in_hi.contained},
                         {"witness", witness},
                         {"strictly_nested", nested}});
    }
    json summary = {{"C1", a.c1},
                    {"C2", a.c2},
                    {"caption_literal", g.caption_literal},
                    {"samples", a.samples},
                    {"regions", regions},
                    {"pairs", pairs},
                    {"strict_nesting", strict}};
    if (g.caption_literal) {
        summary["note"] =
            "caption-literal form evaluates R2 = (b/2) log2((alpha P + N2) / N1); corners and nesting "
            "are not expected to hold";
    }
    const fs::path sfile = dir / "figure1_summary.json";
    write_file(sfile, summary.dump(2) + "\n");
    outputs.push_back(sfile.string());
    write_manifest(dir, "figure1", std::nullopt,
                   {{"C1", a.c1}, {"C2", a.c2}, {"bandwidths", bs}, {"samples", a.samples},
                    {"caption_literal", g.caption_literal}},
                   outputs);
    out << summary.dump(2) << "\n";
    return kExitOk;
}

struct SimulateArgs {
    std::uint64_t samples = 1000000;
    unsigned threads = 1;
};

int cmd_simulate(const GlobalOptions& g, const SimulateArgs& a, std::ostream& out) {
    const auto s = load_scenario(g);
    if (a.samples < 1) throw Error(ErrorCode::NonPositiveParameter, "--samples must be >= 1");
    const auto report = run_analog(SimConfig{s, a.samples, g.seed}, a.threads);
    json payload = to_json(report);
    payload["scenario"] = to_json(s);
    emit_payload(g, "simulate", s, {{"samples", a.samples}, {"seed", g.seed}}, payload, out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Outer bounds on the Gaussian source broadcast distortion region"};
    app.set_version_flag("--version", GSB_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--scenario", g.scenario_file, "Scenario JSON file");
    app.add_option("--power", g.power, "Channel input power P (overrides the file)");
    app.add_option("--noises", g.noises, "Comma-separated N_1,...,N_K (overrides the file)");
    app.add_option("--bandwidth", g.bandwidth, "Bandwidth factor b (overrides the file)");
    app.add_option("--source-var", g.source_var, "Source variance N_S (overrides the file)");
    app.add_option("--tolerance", g.tolerance, "Relative comparison tolerance")->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--out", g.out_dir, "Output directory");
    app.add_flag("--caption-literal", g.caption_literal, "figure1: alternative R2 form with N_1 in the denominator");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate g against P + N_1 for one schedule");
    eval->add_option("-D,--distortions", eval_args.distortions, "D_1,...,D_K")->required();
    eval->add_option("--tau", eval_args.tau, "tau_1,...,tau_K; `inf` allowed")->required();

    MembershipArgs mem_args;
    auto* mem = app.add_subcommand("membership", "Decide outer-region membership via sup over schedules");
    mem->add_option("-D,--distortions", mem_args.distortions, "D_1,...,D_K")->required();
    mem->add_option("--grid", mem_args.grid, "Grid steps per axis (0 = default)");

    TraceArgs trace_args;
    auto* trace = app.add_subcommand("trace", "Trace the two-receiver region boundary D_2_min(D_1) to CSV");
    trace->add_option("--from", trace_args.from, "Smallest D_1 (default D_1*)");
    trace->add_option("--to", trace_args.to, "Largest D_1 (default N_S)");
    trace->add_option("--points", trace_args.points, "Number of D_1 values")->capture_default_str();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify-theorems", "Run the randomized theorem suites");
    verify->add_option("--trials", verify_args.trials, "Trials per suite")->capture_default_str();
    verify->add_flag("--inject-fault", verify_args.inject_fault, "Negate the b = 1 check (harness self-test)")
        ->group("");

    FigureArgs fig_args;
    auto* figure = app.add_subcommand("figure1", "Capacity regions at fixed point-to-point capacities");
    figure->add_option("--c1", fig_args.c1, "Capacity of receiver 1")->capture_default_str();
    figure->add_option("--c2", fig_args.c2, "Capacity of receiver 2")->capture_default_str();
    figure->add_option("--b", fig_args.bandwidths, "Comma-separated bandwidth factors")->capture_default_str();
    figure->add_option("--samples", fig_args.samples, "Boundary samples per region")->capture_default_str();

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo analog transmission at b = 1");
    sim->add_option("-m,--samples", sim_args.samples, "Source samples")->capture_default_str();
    sim->add_option("--threads", sim_args.threads, "Worker threads (result is independent)")->capture_default_str();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (eval->parsed()) return cmd_eval(g, eval_args, out);
        if (mem->parsed()) return cmd_membership(g, mem_args, out);
        if (trace->parsed()) return cmd_trace(g, trace_args, out);
        if (verify->parsed()) return cmd_verify(g, verify_args, out, err);
        if (figure->parsed()) return cmd_figure1(g, fig_args, out);
        if (sim->parsed()) return cmd_simulate(g, sim_args, out);
    } catch (const Error& e) {
        out << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace gsb::cli
