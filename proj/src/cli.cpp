#include "eulerprod/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "eulerprod/arith.hpp"
#include "eulerprod/constants.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/models.hpp"
#include "eulerprod/moments.hpp"
#include "eulerprod/parallel.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/serialize.hpp"
#include "eulerprod/tails.hpp"

#ifndef EULERPROD_VERSION
#define EULERPROD_VERSION "0.0.0"
#endif

namespace eulerprod {

using nlohmann::json;

void to_json(json& j, const RunConfig& v) { j = {{"command", v.command}, {"params", v.params}, {"seed", v.seed}}; }

void from_json(const json& j, RunConfig& v) {
    v.command = j.at("command").get<std::string>();
    v.params = j.value("params", json::object());
    v.seed = j.at("seed").get<std::uint64_t>();
}

std::pair<RunConfig, json> parse_run_output(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.contains("version")) throw InvalidArgument("run output lacks a version field");
    return {doc.get<RunConfig>(), doc.at("results")};
}

namespace {

struct Options {
    // global
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string format = "auto";
    std::string output;
    // shared by subcommands
    std::string model = "unit_circle";
    int k = 0;
    std::string name;
    std::size_t n = 0;
    double tol = 4.0;
    std::string method;
    std::string local_method = "exact";
    std::vector<double> r;
    double prime_limit = 0.0;
    double y = 0.0;
    std::string coeff;
    bool quadratic = false;
    double A = 0.0;
    int degree = 1;
    bool closed_form = false, bracket = false, empirical = false;
    std::vector<double> tau;
    double delta = 0.0;
    double T = 0.0;
    double x = 0.0;
    std::vector<std::uint64_t> l;
    double stride = 1.0;
};

struct Output {
    json results;
    std::vector<std::string> caveats;
    std::string csv;  // set when the command writes CSV
};

void add_caveats(std::vector<std::string>& to, const std::vector<std::string>& from) {
    for (const auto& c : from)
        if (std::find(to.begin(), to.end(), c) == to.end()) to.push_back(c);
}

std::string csv_line(std::initializer_list<double> xs) {
    std::string s;
    char buf[40];
    for (const double x : xs) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        if (!s.empty()) s += ',';
        s += buf;
    }
    return s + '\n';
}

RandomModel model_of(const Options& o) { return make_model(o.model, o.k); }

Output cmd_constants(const Options& o, json& params) {
    params["name"] = o.name;
    Output res;
    ConstantReport rep;
    if (o.name == "C1") {
        rep = constant_C1();
    } else if (o.name == "C2") {
        rep = constant_C2();
    } else if (o.name == "A_k") {
        params["k"] = o.k;
        rep = constant_A_k(o.k);
    } else if (o.name == "A_X") {
        params["model"] = o.model;
        params["k"] = o.k;
        rep = constant_A_X(model_of(o));
    } else {
        throw InvalidArgument("constants: --name must be C1, C2, A_k or A_X");
    }
    res.results = rep;
    return res;
}

Output cmd_validate(const Options& o, json& params) {
    const std::size_t n = o.n ? o.n : 100000;
    params["model"] = o.model;
    params["k"] = o.k;
    params["n"] = n;
    params["tol"] = o.tol;
    Output res;
    res.results = validate_conditions(model_of(o), n, o.tol, o.seed);
    res.caveats.push_back("Monte Carlo checks: a pass is evidence, not proof, that C1-C4 hold");
    return res;
}

Output cmd_moments(const Options& o, json& params, unsigned threads) {
    params["method"] = o.method;
    Output res;
    if (o.method == "diagonal") {
        if (o.coeff != "zeta") throw InvalidArgument("moments --method diagonal: --coeff must be 'zeta'");
        const double y = o.y > 0 ? o.y : 100.0;
        const int k = o.k > 0 ? o.k : 1;
        params.update({{"coeff", o.coeff}, {"y", y}, {"k", k}, {"quadratic", o.quadratic}});
        const CoefficientProvider ones = [](std::uint32_t, int) { return std::complex<double>(1.0, 0.0); };
        res.results = o.quadratic ? quadratic_diagonal_moment(ones, y, k) : diagonal_moment(ones, y, k);
        return res;
    }
    if (o.r.empty()) throw InvalidArgument("moments: --r is required");
    params["r"] = o.r;
    json rows = json::array();
    if (o.method == "exact") {
        const RandomModel m = model_of(o);
        params.update({{"model", o.model}, {"k", o.k}, {"local_method", o.local_method}});
        if (o.local_method != "exact" && o.local_method != "proof_split")
            throw InvalidArgument("moments: --local-method must be exact or proof_split");
        const LocalMethod lm = o.local_method == "exact" ? LocalMethod::exact : LocalMethod::proof_split;
        json limits = json::array();
        for (const double r : o.r) {
            const double L =
                o.prime_limit > 0 ? o.prime_limit : std::clamp(std::pow(r * m.degree, 1.5), 1000.0, 1e8);
            limits.push_back(L);
            const MomentEstimate e = exact_moment_log(m, r, L, lm, threads);
            add_caveats(res.caveats, e.caveats);
            json row = e;
            row["prime_limit"] = L;
            rows.push_back(row);
        }
        params["prime_limit"] = limits;
    } else if (o.method == "asymptotic") {
        const bool explicit_A = o.A != 0.0;
        params.update({{"model", o.model}, {"k", o.k}});
        if (explicit_A) params.update({{"A", o.A}, {"degree", o.degree}});
        for (const double r : o.r) {
            const MomentEstimate e =
                explicit_A ? asymptotic_moment_log(o.A, o.degree, r) : asymptotic_moment_log(model_of(o), r);
            add_caveats(res.caveats, e.caveats);
            rows.push_back(e);
        }
        res.caveats.push_back("o(r/log r) remainder of the moment asymptotic is unquantified; error_band is its scale");
    } else if (o.method == "empirical") {
        const double y = o.y > 0 ? o.y : 1e4;
        const std::size_t n = o.n ? o.n : 100000;
        const RandomModel m = model_of(o);
        params.update({{"model", o.model}, {"k", o.k}, {"y", y}, {"n", n}});
        const auto samples = sample_log_abs_batch(m, y, n, o.seed, threads);
        for (const double r : o.r) {
            const MomentEstimate e = empirical_moment(samples, r);
            add_caveats(res.caveats, e.caveats);
            rows.push_back(e);
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "product truncated at y = %g; log-moment bias up to about r * %.3g",
                      y, truncation_bias_bound(m, y));
        res.caveats.push_back(buf);
    } else {
        throw InvalidArgument("moments: --method must be exact, asymptotic, empirical or diagonal");
    }
    res.results = rows;
    for (const auto& row : rows) res.csv += csv_line({row["r"].get<double>(), row["log_moment"].get<double>(),
                                                      row["error_band"].get<double>()});
    return res;
}

Output cmd_tail(const Options& o, json& params, unsigned threads) {
    if (o.tau.empty()) throw InvalidArgument("tail: --tau is required");
    if (int(o.closed_form) + int(o.bracket) + int(o.empirical) != 1)
        throw InvalidArgument("tail: give exactly one of --closed-form, --bracket, --empirical");
    params["tau"] = o.tau;
    Output res;
    std::vector<TailEstimate> rows;
    json extra = json::array();
    auto model_A = [&]() {
        if (o.A != 0.0) return o.A;
        const RandomModel m = model_of(o);
        if (m.kind == ModelKind::rademacher) return C1_value();
        if (m.kind == ModelKind::unit_circle) return C2_value();
        return constant_A_X(m).value;
    };
    if (o.closed_form) {
        params["mode"] = "closed-form";
        if (o.A != 0.0)
            params["A"] = o.A;
        else
            params.update({{"model", o.model}, {"k", o.k}});
        const double A = model_A();
        for (const double tau : o.tau) {
            rows.push_back(tail_closed_form(A, tau));
            add_caveats(res.caveats, rows.back().caveats);
        }
    } else if (o.bracket) {
        const RandomModel m = model_of(o);
        const double L = o.prime_limit > 0 ? o.prime_limit : 1e5;
        params.update({{"mode", "bracket"}, {"model", o.model}, {"k", o.k}, {"prime_limit", L}});
        if (o.delta > 0) params["delta"] = o.delta;
        const double A = model_A();
        const LogMomentFn lm = [&](double r) { return exact_moment_log(m, r, L, LocalMethod::exact, threads).log_moment; };
        for (const double tau : o.tau) {
            const double delta = o.delta > 0 ? o.delta : default_delta(saddle_r_for_tau(A, m.degree, tau) * m.degree);
            const TailBracket b = tail_bracket_from_moments(lm, m.degree, tau, delta);
            TailEstimate t = tail_closed_form(A, tau);
            t.scale_exponent = m.degree;
            t.lower = b.lower;
            t.upper = b.upper;
            rows.push_back(t);
            extra.push_back(b);
        }
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "bounds are rigorous for the product over p <= %g given the computed moments; phi is the "
                      "closed-form main term for reference", L);
        res.caveats.push_back(buf);
    } else {
        const RandomModel m = model_of(o);
        const double y = o.y > 0 ? o.y : 1e4;
        const std::size_t n = o.n ? o.n : 100000;
        params.update({{"mode", "empirical"}, {"model", o.model}, {"k", o.k}, {"y", y}, {"n", n}});
        const auto samples = sample_log_abs_batch(m, y, n, o.seed, threads);
        for (const double tau : o.tau) {
            const EmpiricalTail e = empirical_tail(samples, m.degree, tau);
            TailEstimate t;
            t.tau = tau;
            t.scale_exponent = m.degree;
            t.phi = e.phi_hat;
            t.lower = e.lower;
            t.upper = e.upper;
            rows.push_back(t);
            extra.push_back(e);
        }
        res.caveats.push_back("lower/upper are a 3-sigma Wilson interval for the Monte Carlo frequency");
    }
    json out = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        json row = rows[i];
        if (!extra.empty()) row[o.bracket ? "bracket" : "empirical"] = extra[i];
        out.push_back(row);
    }
    res.results = out;
    std::ostringstream csv;
    write_tail_csv(csv, rows);
    res.csv = csv.str();
    return res;
}

Output cmd_sample(const Options& o, json& params, unsigned threads) {
    const double y = o.y > 0 ? o.y : 1e4;
    const std::size_t n = o.n ? o.n : 1000;
    params.update({{"model", o.model}, {"k", o.k}, {"y", y}, {"n", n}});
    const RandomModel m = model_of(o);
    const auto samples = sample_log_abs_batch(m, y, n, o.seed, threads);
    Output res;
    res.results = {{"y", y}, {"n", n}, {"truncation_bias_bound", truncation_bias_bound(m, y)}, {"log_abs", samples}};
    std::ostringstream csv;
    write_samples_csv(csv, samples);
    res.csv = csv.str();
    return res;
}

Output cmd_zeta(const Options& o, json& params, unsigned threads) {
    const double T = o.T > 0 ? o.T : 1e6, y = o.y > 0 ? o.y : 50.0;
    const int k = o.k > 0 ? o.k : 2;
    const std::size_t n = o.n ? o.n : 100000;
    params.update({{"T", T}, {"y", y}, {"k", k}, {"n", n}});
    const ZetaMomentSample s = zeta_empirical_moment(T, y, k, n, o.seed, threads);
    const CoefficientProvider ones = [](std::uint32_t, int) { return std::complex<double>(1.0, 0.0); };
    const DiagonalResult dm = diagonal_moment(ones, y, k);
    Output res;
    res.results = {{"empirical", s}, {"diagonal", dm}, {"relative_gap", std::abs(s.mean / dm.value - 1.0)}};
    res.caveats.push_back("t drawn by stratified sampling on [T, 2T], one uniform draw per stratum");
    res.caveats.push_back("off-diagonal terms are not bounded explicitly; the gap includes them");
    return res;
}

Output cmd_quadratic(const Options& o, json& params, unsigned threads) {
    const double x = o.x > 0 ? o.x : 1e6, y = o.y > 0 ? o.y : 1e4;
    std::vector<double> taus = o.tau.empty() ? std::vector<double>{2.7} : o.tau;
    params.update({{"x", x}, {"y", y}, {"tau", taus}, {"l", o.l}});
    const DiscriminantFamily fam = fundamental_discriminants(x);
    const auto logs = quadratic_family_log_values(fam, y, threads);
    Output res;
    json tails = json::array();
    for (const double tau : taus) {
        const EmpiricalTail e = empirical_tail(logs, 1, tau);
        const TailEstimate c = tail_closed_form(C1_value(), tau);
        add_caveats(res.caveats, c.caveats);
        tails.push_back({{"tau", tau},
                         {"empirical", e},
                         {"closed_form", c.phi},
                         {"log_ratio", e.hits ? json(std::log(e.phi_hat) / std::log(c.phi)) : json(nullptr)}});
    }
    json sums = json::array();
    for (const std::uint64_t l : o.l) sums.push_back(character_square_sum(fam, l));
    res.results = {{"count", fam.discs.size()},
                   {"density", character_square_sum(fam, 1)},
                   {"tails", tails},
                   {"square_sums", sums}};
    res.caveats.push_back("d = 1 excluded; both signs counted with |d| <= x");
    std::vector<std::pair<double, double>> rows(fam.discs.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = {static_cast<double>(fam.discs[i]), std::exp(logs[i])};
    std::ostringstream csv;
    write_family_csv(csv, rows);
    res.csv = csv.str();
    return res;
}

Output cmd_scan(const Options& o, json& params, unsigned threads) {
    const double T = o.T > 0 ? o.T : 1e6, y = o.y > 0 ? o.y : 1e4;
    const std::size_t count = o.n ? o.n : 10000;
    params.update({{"T", T}, {"y", y}, {"count", count}, {"stride", o.stride}});
    Output res;
    res.results = extreme_scan(T, count, y, o.stride, threads);
    res.caveats.push_back("benchmark e^gamma log log T is for comparison only; no pass/fail is implied");
    return res;
}

void write_error(std::ostream& err, const std::string& command, const char* kind, const std::string& msg) {
    const json e = {{"error", {{"kind", kind}, {"message", msg}}}, {"command", command}, {"version", EULERPROD_VERSION}};
    err << e.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Random Euler products at the edge of the critical strip"};
    app.set_version_flag("--version", EULERPROD_VERSION);
    app.require_subcommand(1);
    app.add_option("--seed", o.seed, "Seed for every random stream")->capture_default_str();
    app.add_option("--threads", o.threads, "Worker threads, 0 = available parallelism")->capture_default_str();
    app.add_option("--format", o.format, "json or csv (auto: csv for sample, json otherwise)")
        ->check(CLI::IsMember({"auto", "json", "csv"}));
    app.add_option("--output", o.output, "Write results to this file instead of stdout");

    auto model_opts = [&](CLI::App* s) {
        s->add_option("--model", o.model, "rademacher, unit_circle, quadratic_char, sato_tate_symk or symK");
        s->add_option("--k", o.k, "Symmetric power for sato_tate_symk");
    };
    auto* constants = app.add_subcommand("constants", "Distribution constants C1, C2, A_k, A_X");
    constants->add_option("--name", o.name, "C1, C2, A_k or A_X")->required();
    model_opts(constants);

    auto* validate = app.add_subcommand("validate-model", "Monte Carlo check of model conditions C1-C4");
    model_opts(validate);
    validate->add_option("--n", o.n, "Samples (default 1e5)");
    validate->add_option("--tol", o.tol, "Tolerance in standard errors");

    auto* moments = app.add_subcommand("moments", "log E|L|^r by exact product, asymptotic, Monte Carlo or diagonal");
    moments->add_option("--method", o.method, "exact, asymptotic, empirical or diagonal")->required();
    moments->add_option("--model", o.model, "Random model");
    moments->add_option("--k", o.k, "Symmetric power for the model; moment index for --method diagonal");
    moments->add_option("--r", o.r, "Moment orders")->expected(1, -1);
    moments->add_option("--prime-limit", o.prime_limit, "Primes used by --method exact");
    moments->add_option("--local-method", o.local_method, "exact or proof_split");
    moments->add_option("--y", o.y, "Truncation of the product (empirical, diagonal)");
    moments->add_option("--n", o.n, "Samples for --method empirical");
    moments->add_option("--coeff", o.coeff, "Coefficients for --method diagonal (zeta)");
    moments->add_flag("--quadratic", o.quadratic, "Quadratic-family diagonal form");
    moments->add_option("--A", o.A, "Explicit constant for --method asymptotic");
    moments->add_option("--degree", o.degree, "Degree d with --A");

    auto* tail = app.add_subcommand("tail", "Tail Phi(tau): closed form, moment bracket or Monte Carlo");
    tail->add_flag("--closed-form", o.closed_form, "exp(-e^{tau - A}/tau)");
    tail->add_flag("--bracket", o.bracket, "Rigorous bounds from exact moments");
    tail->add_flag("--empirical", o.empirical, "Monte Carlo frequency");
    model_opts(tail);
    tail->add_option("--A", o.A, "Constant for the closed form (default: the model's)");
    tail->add_option("--tau", o.tau, "Thresholds")->expected(1, -1);
    tail->add_option("--delta", o.delta, "Window width for --bracket (default 1/sqrt(log r))");
    tail->add_option("--prime-limit", o.prime_limit, "Primes used for bracket moments (default 1e5)");
    tail->add_option("--y", o.y, "Truncation for --empirical");
    tail->add_option("--n", o.n, "Samples for --empirical");

    auto* sample = app.add_subcommand("sample", "Dump log|L(1, X; y)| samples");
    model_opts(sample);
    sample->add_option("--y", o.y, "Truncation (default 1e4)");
    sample->add_option("--n", o.n, "Samples (default 1000)");

    auto* zeta = app.add_subcommand("zeta-empirical", "Mean of |zeta(1+it, y)|^{2k} over t in [T, 2T]");
    zeta->add_option("--T", o.T, "Height (default 1e6)");
    zeta->add_option("--y", o.y, "Truncation (default 50)");
    zeta->add_option("--k", o.k, "Moment index (default 2)");
    zeta->add_option("--n", o.n, "Samples (default 1e5)");

    auto* quad = app.add_subcommand("quadratic-empirical", "L(1, chi_d; y) over fundamental discriminants");
    quad->add_option("--x", o.x, "Bound on |d| (default 1e6)");
    quad->add_option("--y", o.y, "Truncation (default 1e4)");
    quad->add_option("--tau", o.tau, "Thresholds (default 2.7)")->expected(1, -1);
    quad->add_option("--l", o.l, "Also report sum of chi_d(l^2) for these l")->expected(1, -1);

    auto* scan = app.add_subcommand("extreme-scan", "Grid maximum of |zeta(1+it, y)| on [T, T + count stride)");
    scan->add_option("--T", o.T, "Start (default 1e6)");
    scan->add_option("--count", o.n, "Grid points (default 1e4)");
    scan->add_option("--y", o.y, "Truncation (default 1e4)");
    scan->add_option("--stride", o.stride, "Grid spacing (default 1)");

    for (auto* s : app.get_subcommands({})) s->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << EULERPROD_VERSION << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        write_error(err, "", "usage", e.what());
        return exit_usage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const unsigned threads = o.threads ? o.threads : default_threads();
        const std::string format = o.format == "auto" ? (command == "sample" ? "csv" : "json") : o.format;
        json params = {{"format", format}, {"threads", threads}};
        if (!o.output.empty()) params["output"] = o.output;

        Output res;
        if (command == "constants") res = cmd_constants(o, params);
        else if (command == "validate-model") res = cmd_validate(o, params);
        else if (command == "moments") res = cmd_moments(o, params, threads);
        else if (command == "tail") res = cmd_tail(o, params, threads);
        else if (command == "sample") res = cmd_sample(o, params, threads);
        else if (command == "zeta-empirical") res = cmd_zeta(o, params, threads);
        else if (command == "quadratic-empirical") res = cmd_quadratic(o, params, threads);
        else res = cmd_scan(o, params, threads);

        std::string text;
        if (format == "csv") {
            if (res.csv.empty()) throw InvalidArgument(command + ": csv output is not available, use --format json");
            text = res.csv;
        } else {
            json doc = {{"command", command},         {"params", params},   {"seed", o.seed},
                        {"version", EULERPROD_VERSION}, {"results", res.results}, {"caveats", res.caveats}};
            text = doc.dump(2) + '\n';
        }
        if (o.output.empty()) {
            out << text;
        } else {
            std::ofstream f(o.output, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open output file '" + o.output + "'");
            f << text;
            if (!f) throw std::runtime_error("write to '" + o.output + "' failed");
        }
        return exit_ok;
    } catch (const InvalidArgument& e) {
        write_error(err, command, "invalid_argument", e.what());
        return exit_usage;
    } catch (const DomainError& e) {
        write_error(err, command, "domain", e.what());
        return exit_domain;
    } catch (const BudgetExceeded& e) {
        write_error(err, command, "budget_exceeded", e.what());
        return exit_budget;
    } catch (const std::exception& e) {
        write_error(err, command, "internal", e.what());
        return exit_failure;
    }
}

}  // namespace eulerprod
