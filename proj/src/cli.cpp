#include "fgv/cli.hpp"

#include "fgv/arith.hpp"
#include "fgv/conjecture.hpp"
#include "fgv/deconv.hpp"
#include "fgv/diagnostics.hpp"
#include "fgv/dirichlet.hpp"
#include "fgv/io.hpp"
#include "fgv/oracle.hpp"
#include "fgv/theta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <thread>

namespace fgv {

namespace {

using json = nlohmann::json;

/// A usage problem detected after flag parsing (bad value combinations).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Context {
    std::vector<std::string> argv;
    std::string subcommand;
    std::string out_path;
    bool quiet = false;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void progress(const std::string& line) const {
        if (!quiet) *err << line << '\n';
    }
};

std::string format_double(double v) { return to_string_roundtrip(v); }

/// Writes `content` to --out, to $FGV_OUT_DIR/<default_name>, or to stdout.
/// File outputs get a JSON sidecar next to them.
void emit(const Context& ctx, const std::string& content, const std::string& default_name, json meta) {
    std::filesystem::path path;
    if (!ctx.out_path.empty()) {
        path = ctx.out_path;
    } else if (const char* dir = std::getenv("FGV_OUT_DIR"); dir && *dir) {
        path = std::filesystem::path(dir) / default_name;
    } else {
        *ctx.out << content;
        return;
    }
    write_text_file(path, content);
    meta["argv"] = ctx.argv;
    meta["subcommand"] = ctx.subcommand;
    meta["version"] = std::string(tool_version);
    meta["output"] = path.string();
    meta["sha256"] = sha256_hex(content);
    meta["elapsed"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
    write_text_file(path.string() + ".json", meta.dump(2) + "\n");
    ctx.progress("wrote " + path.string());
}

std::size_t theta_extent(std::size_t n) { return std::max<std::size_t>(n, 1024); }

ThetaFunction theta_from_flag(const std::string& spec, std::size_t extent) {
    return make_theta(parse_theta_spec(spec), extent);
}

std::vector<long> parse_int_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw UsageError("bad integer '" + item + "' in list");
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        auto v = parse_rational(item);
        if (!v) throw UsageError("bad number '" + item + "' in range");
        parts.push_back(to_double(*v));
    }
    if (parts.size() == 1) return parts;
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
        throw UsageError("range must be LO:HI:STEP with STEP > 0 and HI >= LO");
    }
    const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
}

std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    s += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
        s += '\n';
    }
    return s;
}

// Reads flat key=value lines; keys mirror long flag names without dashes.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(read_text_file(path));
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

// Splices config entries into argv after the subcommand, skipping keys given
// on the command line so that flags win.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end() || it + 1 == args.end()) return args;
    const std::string path = *(it + 1);
    args.erase(it, it + 2);
    static const std::vector<std::string> subcommands{"sieve", "deconv", "vd", "oracle", "scan", "check"};
    auto sub = std::find_first_of(args.begin() + 1, args.end(), subcommands.begin(), subcommands.end());
    std::vector<std::string> extra;
    for (const auto& [key, value] : read_config(path)) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        extra.push_back(flag);
        if (value != "true") extra.push_back(value);
    }
    auto pos = sub == args.end() ? args.end() : sub + 1;
    args.insert(pos, extra.begin(), extra.end());
    return args;
}

// --- sieve -------------------------------------------------------------------

struct SieveArgs {
    std::string kind;
    std::size_t n = 0;
    bool summatory = false;
};

int run_sieve(const Context& ctx, const SieveArgs& a) {
    Sequence s;
    if (a.kind == "mobius") {
        s = mobius_sieve(a.n);
    } else if (a.kind == "liouville") {
        s = liouville_sieve(a.n);
    } else if (a.kind == "tau") {
        s = ramanujan_tau(a.n);
    } else if (a.kind == "chi4") {
        s = chi4(a.n);
    } else if (a.kind == "dh") {
        s = dh_sequence(a.n);
    } else if (a.kind == "alt") {
        s = alternating_unit(a.n);
    } else {
        throw UsageError("unknown sieve kind '" + a.kind + "'");
    }
    if (a.summatory) s = summatory(s);
    emit(ctx, sequence_csv(s), "sieve_" + a.kind + ".csv",
         {{"kind", a.kind}, {"n", a.n}, {"summatory", a.summatory}, {"mode", s.is_exact() ? "exact" : "float"}});
    return 0;
}

// --- deconv ------------------------------------------------------------------

struct DeconvArgs {
    std::string theta;
    std::string target = "recip";
    std::size_t n = 0;
    std::string mode = "float";
    std::string emit = "a";
    double alpha = 0.5;
    std::string kernel_form;
    std::string path = "auto";
    std::size_t generic_cap = 20000;
    std::size_t exact_cap = 10000;
    std::size_t max_rows = 4096;
};

int run_deconv(const Context& ctx, const DeconvArgs& a) {
    const ThetaFunction theta = theta_from_flag(a.theta, theta_extent(a.n));
    const TargetSpec target = parse_target_spec(a.target);
    SolveOptions opt;
    opt.mode = a.mode == "exact" ? Mode::exact : Mode::floating;
    if (a.kernel_form.empty()) {
        opt.form = target.kind == TargetSpec::Kind::floorsqrt ? KernelForm::raw : KernelForm::normalized;
    } else {
        opt.form = a.kernel_form == "raw" ? KernelForm::raw : KernelForm::normalized;
    }
    opt.path = a.path == "generic" ? SolvePath::generic : (a.path == "fast" ? SolvePath::fast : SolvePath::automatic);
    opt.generic_cap = a.generic_cap;
    opt.exact_cap = a.exact_cap;

    const DeconvRun run = solve(theta, target, a.n, opt);
    ctx.progress("deconv: theta=" + theta.spec() + " target=" + target.text + " N=" + std::to_string(a.n) +
                 " mode=" + std::string(mode_name(run.mode)) + " path=" + run.path_used + " (" +
                 format_double(run.elapsed) + " s)");

    std::string content;
    if (a.emit == "a") {
        content = sequence_csv(run.a);
    } else if (a.emit == "A") {
        content = sequence_csv(run.A);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (auto [n, v] : scaled_trace(run, a.alpha, a.max_rows)) rows.push_back({std::to_string(n), format_double(v)});
        content = table_csv({"n", "value"}, rows);
    }
    json meta{{"theta", theta.spec()},
              {"target", target.text},
              {"n", a.n},
              {"mode", std::string(mode_name(run.mode))},
              {"kernel_form", std::string(kernel_form_name(run.kernel_form))},
              {"path", run.path_used},
              {"emit", a.emit},
              {"solve_seconds", run.elapsed}};
    if (a.emit == "scaled") meta["alpha"] = a.alpha;
    emit(ctx, content, "deconv_" + a.emit + ".csv", meta);
    return 0;
}

// --- vd ----------------------------------------------------------------------

struct VdArgs {
    std::string theta;
    std::size_t points = 1000;
    double tmin = 0.01;
};

int run_vd(const Context& ctx, const VdArgs& a) {
    if (!(a.tmin > 0 && a.tmin < 1)) throw UsageError("--tmin must lie in (0, 1)");
    const auto extent = static_cast<std::size_t>(std::ceil(1 / a.tmin)) + 2;
    const ThetaFunction theta = theta_from_flag(a.theta, theta_extent(extent));
    emit(ctx, pairs_csv("t", "theta_diamond", vd_sample(theta, a.points, a.tmin)), "vd.csv",
         {{"theta", theta.spec()}, {"points", a.points}, {"tmin", a.tmin}});
    return 0;
}

// --- oracle ------------------------------------------------------------------

struct OracleArgs {
    std::string kind;
    double lambda = 2, beta = 0.5, c1 = 0, c2 = 0;
    double r = 0.5, s = 1, a = 1, c = 0;
    double ymax = 100;
    std::size_t points = 200;
    std::size_t n = 1024;
    std::string target = "zero";
};

int run_oracle(const Context& ctx, const OracleArgs& o) {
    std::vector<double> ys;
    if (o.points < 2 || !(o.ymax > 1)) throw UsageError("--points must be >= 2 and --ymax > 1");
    for (std::size_t i = 0; i < o.points; ++i) {
        ys.push_back(std::pow(o.ymax, static_cast<double>(i) / static_cast<double>(o.points - 1)));
    }
    std::vector<std::pair<double, double>> rows;
    json meta{{"case", o.kind}};
    if (o.kind == "smooth") {
        for (double y : ys) rows.emplace_back(y, smooth_ode_solution(o.lambda, o.beta, o.c1, o.c2, y));
        meta.update({{"lambda", o.lambda}, {"beta", o.beta}, {"c1", o.c1}, {"c2", o.c2}});
        emit(ctx, pairs_csv("y", "F", rows), "oracle_smooth.csv", meta);
    } else if (o.kind == "linear") {
        for (double y : ys) rows.emplace_back(y, linear_theta_solution(o.r, o.s, o.beta, o.a, o.c, y));
        meta.update({{"r", o.r}, {"s", o.s}, {"beta", o.beta}, {"a", o.a}, {"c", o.c}});
        emit(ctx, pairs_csv("y", "F", rows), "oracle_linear.csv", meta);
    } else if (o.kind == "v23") {
        for (double y : ys) rows.emplace_back(y, v23_F(y));
        emit(ctx, pairs_csv("y", "F", rows), "oracle_v23.csv", meta);
    } else if (o.kind == "v23root") {
        const double s1 = v23_root_s1();
        emit(ctx, table_csv({"quantity", "value"}, {{"s1", format_double(s1)}}), "oracle_v23root.csv", meta);
    } else if (o.kind == "dirac") {
        if (!(o.r > 0 && o.r < 1)) throw UsageError("dirac oracle needs 0 < r < 1");
        const TargetSpec f = parse_target_spec(o.target);
        const auto u = dirac_U_table(o.r, f, o.n);
        std::vector<std::vector<std::string>> table;
        for (std::size_t k = 1; k <= o.n; ++k) table.push_back({std::to_string(k), format_double(u[k])});
        meta.update({{"r", o.r}, {"target", f.text}, {"n", o.n}});
        emit(ctx, table_csv({"n", "value"}, table), "oracle_dirac.csv", meta);
    } else if (o.kind == "pow2") {
        auto res = pow2_aprime(o.n);
        ctx.progress("pow2: asymptotic constant " + format_double(res.constant));
        meta.update({{"n", o.n}, {"constant", res.constant}});
        emit(ctx, sequence_csv(res.a), "oracle_pow2.csv", meta);
    } else {
        throw UsageError("unknown oracle case '" + o.kind + "'");
    }
    return 0;
}

// --- scan --------------------------------------------------------------------

struct ScanArgs {
    std::string suite;
    std::string theta;
    std::string target = "recip";
    std::size_t n = 1 << 14;
    std::string alphas = "0.3:0.7:0.01";
    std::string ms = "1,2,3,4,5";
    unsigned threads = 1;
    std::string trace;
};

int run_scan(const Context& ctx, const ScanArgs& a) {
    if (a.suite == "abc") {
        const auto ms = parse_int_list(a.ms);
        const AbcReport rep = conjecture_ABC_scan(ms, a.n, a.threads);
        json report{{"suite", "abc"},
                    {"n", rep.n},
                    {"n0", rep.n0},
                    {"ms", rep.ms},
                    {"c_slope", rep.c_slope},
                    {"c_positive", rep.c_positive},
                    {"thresholds", {{"abc_start", rep.n0}}}};
        json dom = json::array();
        bool all_hold = true;
        for (const auto& d : rep.domination) {
            json e{{"m", d.m}, {"violations", d.violations}, {"holds", d.holds()}};
            if (d.first_violation) e["first_violation"] = *d.first_violation;
            all_hold = all_hold && d.holds();
            dom.push_back(e);
        }
        report["domination"] = dom;
        if (!a.trace.empty()) {
            std::vector<std::string> header{"n"};
            for (long m : rep.ms) header.push_back("A" + std::to_string(2 * m) + "_sqrt_n");
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < rep.overlay_n.size(); ++i) {
                std::vector<std::string> row{std::to_string(rep.overlay_n[i])};
                for (const auto& col : rep.overlay) row.push_back(format_double(col[i]));
                rows.push_back(std::move(row));
            }
            write_text_file(a.trace, table_csv(header, rows));
        }
        ctx.progress("scan abc: N=" + std::to_string(a.n) + " (" + format_double(rep.elapsed) + " s)");
        emit(ctx, report.dump(2) + "\n", "scan_abc.json", {{"n", a.n}, {"ms", rep.ms}});
        return rep.ms.empty() || (all_hold && rep.c_positive) ? 0 : 1;
    }
    if (!a.suite.empty()) throw UsageError("unknown scan suite '" + a.suite + "'");
    if (a.theta.empty()) throw UsageError("scan needs --theta or --suite abc");

    const ThetaFunction theta = theta_from_flag(a.theta, theta_extent(a.n));
    const TargetSpec target = parse_target_spec(a.target);
    SolveOptions opt;
    opt.form = target.kind == TargetSpec::Kind::floorsqrt ? KernelForm::raw : KernelForm::normalized;
    const DeconvRun run = solve(theta, target, a.n, opt);
    const IndexEstimate est = estimate_index(run.A);
    json types = json::array();
    for (double alpha : parse_range(a.alphas)) {
        const TypeReport t = classify_type_report(run.A, alpha);
        types.push_back({{"alpha", alpha}, {"slope", t.slope}, {"type", std::string(type_name(t.type))}});
    }
    json report{{"theta", theta.spec()},
                {"target", target.text},
                {"n", a.n},
                {"alpha_hat", est.alpha_hat},
                {"slowly_varying_flag", est.slowly_varying_flag},
                {"log_coefficient", est.log_coefficient},
                {"confidence_note", est.confidence_note},
                {"types", types},
                {"thresholds", {{"type_slope", 0.05}, {"slowly_varying_coefficient", 0.25}}}};
    if (!a.trace.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (auto [n, v] : scaled_trace(run, 0.0)) rows.push_back({std::to_string(n), format_double(v)});
        write_text_file(a.trace, table_csv({"n", "value"}, rows));
    }
    emit(ctx, report.dump(2) + "\n", "scan.json", {{"theta", theta.spec()}, {"target", target.text}, {"n", a.n}});
    return 0;
}

// --- check -------------------------------------------------------------------

struct CheckArgs {
    std::string suite;
    std::string z = "chi4";
    std::size_t t = 100;
    std::string theta;
    std::size_t depth = 256;
    std::string theta1, theta2;
    std::size_t grid = 1000;
};

Sequence lemma1_z(const std::string& name, std::size_t n) {
    if (name == "chi4") return chi4(n);
    if (name == "tau") return ramanujan_tau(n);
    if (name == "alt") return alternating_unit(n);
    if (name == "dh") return dh_sequence(n);
    if (name == "ones") return ones(n);
    throw UsageError("unknown --z '" + name + "'");
}

// Prints the human-readable lines and a PASS/FAIL line; the JSON report goes
// to a file when an output location is configured.
int finish(const Context& ctx, bool pass, const json& report, const std::string& name, const std::string& human) {
    *ctx.out << human;
    if (!ctx.out_path.empty() || std::getenv("FGV_OUT_DIR")) emit(ctx, report.dump(2) + "\n", name, {{"pass", pass}});
    *ctx.out << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

int run_check(const Context& ctx, const CheckArgs& a) {
    if (a.suite == "lemma1") {
        if (a.t == 0) throw UsageError("--t must be positive");
        const Sequence z = lemma1_z(a.z, a.t);
        const Sequence x = invert(convolve(ones(a.t), z, a.t), a.t);
        const Lemma1Result r = lemma1_check(x, z, a.t);
        json report{{"suite", "lemma1"}, {"z", a.z}, {"t", a.t}, {"exact", r.exact}, {"pass", r.holds}};
        if (r.exact) {
            report["lhs"] = to_string(r.lhs);
            report["rhs"] = to_string(r.rhs);
        } else {
            report["lhs"] = r.lhs_value;
            report["rhs"] = r.rhs_value;
        }
        const std::string human = "lhs = " + (r.exact ? to_string(r.lhs) : format_double(r.lhs_value)) + "\nrhs = " +
                                  (r.exact ? to_string(r.rhs) : format_double(r.rhs_value)) + "\n";
        return finish(ctx, r.holds, report, "check_lemma1.json", human);
    }
    if (a.suite == "compensation") {
        if (a.theta.empty()) throw UsageError("compensation needs --theta");
        const ThetaFunction theta = theta_from_flag(a.theta, theta_extent(4 * a.depth + 64));
        const ConditionReport rep = check_compensation(extract_IJ(theta, a.depth));
        json conds = json::array();
        for (const auto& c : rep.conditions) {
            json e{{"index", c.index},
                   {"statement", c.statement},
                   {"limit", c.limit},
                   {"verdict", std::string(verdict_name(c.verdict))},
                   {"evidence", c.evidence}};
            if (c.witness) e["witness"] = *c.witness;
            conds.push_back(e);
        }
        json report{{"suite", "compensation"}, {"theta", theta.spec()}, {"depth", rep.depth},
                    {"conditions", conds},     {"divergence_slope", rep.divergence_slope},
                    {"pass", rep.all_pass()}};
        if (rep.predicted_index) report["predicted_index"] = *rep.predicted_index;
        return finish(ctx, rep.all_pass(), report, "check_compensation.json", report.dump(2) + "\n");
    }
    if (a.suite == "section7") {
        const Section7Report rep = check_section7(a.grid);
        json report{{"suite", "section7"},
                    {"sup_theta1", to_string(rep.sup_theta1)},
                    {"sup_theta2", to_string(rep.sup_theta2)},
                    {"inf_theta1", to_string(rep.inf_theta1)},
                    {"inf_theta2", to_string(rep.inf_theta2)},
                    {"area_theta1", rep.area_theta1},
                    {"area_theta2", rep.area_theta2},
                    {"zeta2_half", rep.zeta2_half},
                    {"max_jump", rep.max_jump},
                    {"jumps_checked", rep.jumps_checked},
                    {"pass", rep.pass()}};
        return finish(ctx, rep.pass(), report, "check_section7.json", report.dump(2) + "\n");
    }
    if (a.suite == "comparison") {
        if (a.theta1.empty() || a.theta2.empty()) throw UsageError("comparison needs --theta1 and --theta2");
        const ThetaFunction t1 = theta_from_flag(a.theta1, 1024);
        const ThetaFunction t2 = theta_from_flag(a.theta2, 1024);
        const ComparisonReport rep = check_comparison_smooth(t1, t2, a.grid);
        json report{{"suite", "comparison"}, {"theta1", t1.spec()},         {"theta2", t2.spec()},
                    {"ordered", rep.ordered}, {"same_pattern", rep.same_pattern}, {"reason", rep.reason},
                    {"pass", rep.pass}};
        if (rep.first_failure) report["first_failure"] = *rep.first_failure;
        return finish(ctx, rep.pass, report, "check_comparison.json", report.dump(2) + "\n");
    }
    throw UsageError("unknown check suite '" + a.suite + "'");
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv, argv + argc);
    if (args.empty()) args.push_back("fgv");
    try {
        args = apply_config(args);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"Deconvolution experiments for sums of a_k theta(n/k)", "fgv"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));
    Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    ctx.argv = args;
    std::string config_unused;
    app.add_option("--config", config_unused, "flat key=value file mirroring the flags");

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", ctx.out_path, "output path (default: $FGV_OUT_DIR/<name> or stdout)");
        sub->add_flag("--quiet", ctx.quiet, "suppress progress lines");
    };

    SieveArgs sieve_args;
    auto* sieve = app.add_subcommand("sieve", "arithmetic sequences as n,value CSV");
    sieve->add_option("--kind", sieve_args.kind)->required()->check(
        CLI::IsMember({"mobius", "liouville", "tau", "chi4", "dh", "alt"}));
    sieve->add_option("--n", sieve_args.n)->required()->check(CLI::PositiveNumber);
    sieve->add_flag("--summatory", sieve_args.summatory);
    common(sieve);

    DeconvArgs deconv_args;
    auto* deconv = app.add_subcommand("deconv", "solve the triangular recurrence for a");
    deconv->add_option("--theta", deconv_args.theta)->required();
    deconv->add_option("--target", deconv_args.target);
    deconv->add_option("--n", deconv_args.n)->required()->check(CLI::PositiveNumber);
    deconv->add_option("--mode", deconv_args.mode)->check(CLI::IsMember({"float", "exact"}));
    deconv->add_option("--emit", deconv_args.emit)->check(CLI::IsMember({"a", "A", "scaled"}));
    deconv->add_option("--alpha", deconv_args.alpha);
    deconv->add_option("--kernel-form", deconv_args.kernel_form)->check(CLI::IsMember({"normalized", "raw"}));
    deconv->add_option("--path", deconv_args.path)->check(CLI::IsMember({"auto", "generic", "fast"}));
    deconv->add_option("--generic-cap", deconv_args.generic_cap);
    deconv->add_option("--exact-cap", deconv_args.exact_cap);
    deconv->add_option("--max-rows", deconv_args.max_rows)->check(CLI::PositiveNumber);
    common(deconv);

    VdArgs vd_args;
    auto* vd = app.add_subcommand("vd", "sample the variational diagram");
    vd->add_option("--theta", vd_args.theta)->required();
    vd->add_option("--points", vd_args.points)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    vd->add_option("--tmin", vd_args.tmin);
    common(vd);

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "closed-form reference solutions");
    oracle->add_option("--case", oracle_args.kind)->required()->check(
        CLI::IsMember({"smooth", "linear", "v23", "v23root", "dirac", "pow2"}));
    oracle->add_option("--lambda", oracle_args.lambda);
    oracle->add_option("--beta", oracle_args.beta);
    oracle->add_option("--c1", oracle_args.c1);
    oracle->add_option("--c2", oracle_args.c2);
    oracle->add_option("--r", oracle_args.r);
    oracle->add_option("--s", oracle_args.s);
    oracle->add_option("--a", oracle_args.a);
    oracle->add_option("--c", oracle_args.c);
    oracle->add_option("--ymax", oracle_args.ymax);
    oracle->add_option("--points", oracle_args.points);
    oracle->add_option("--n", oracle_args.n)->check(CLI::PositiveNumber);
    oracle->add_option("--target", oracle_args.target);
    common(oracle);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "index and type scans, conjecture A/B/C scan");
    scan->add_option("--suite", scan_args.suite)->check(CLI::IsMember({"abc"}));
    scan->add_option("--theta", scan_args.theta);
    scan->add_option("--target", scan_args.target);
    scan->add_option("--n", scan_args.n)->check(CLI::PositiveNumber);
    scan->add_option("--alphas", scan_args.alphas);
    scan->add_option("--ms", scan_args.ms);
    scan->add_option("--threads", scan_args.threads)->check(CLI::Range(1u, 256u));
    scan->add_option("--trace", scan_args.trace, "CSV path for the trace / overlay table");
    common(scan);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "identity and conjecture checkers");
    check->add_option("--suite", check_args.suite)->required()->check(
        CLI::IsMember({"lemma1", "compensation", "section7", "comparison"}));
    check->add_option("--z", check_args.z);
    check->add_option("--t", check_args.t);
    check->add_option("--theta", check_args.theta);
    check->add_option("--depth", check_args.depth);
    check->add_option("--theta1", check_args.theta1);
    check->add_option("--theta2", check_args.theta2);
    check->add_option("--grid", check_args.grid);
    common(check);

    std::vector<std::string> parse_args(args.rbegin(), args.rend() - 1);  // CLI11 wants reversed, without argv[0]
    try {
        app.parse(parse_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sieve->parsed()) {
            ctx.subcommand = "sieve";
            return run_sieve(ctx, sieve_args);
        }
        if (deconv->parsed()) {
            ctx.subcommand = "deconv";
            return run_deconv(ctx, deconv_args);
        }
        if (vd->parsed()) {
            ctx.subcommand = "vd";
            return run_vd(ctx, vd_args);
        }
        if (oracle->parsed()) {
            ctx.subcommand = "oracle";
            return run_oracle(ctx, oracle_args);
        }
        if (scan->parsed()) {
            ctx.subcommand = "scan";
            return run_scan(ctx, scan_args);
        }
        if (check->parsed()) {
            ctx.subcommand = "check";
            return run_check(ctx, check_args);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ThetaSpecError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const TargetSpecError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const CapExceeded& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace fgv
