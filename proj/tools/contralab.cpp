#include "contralab/asymptotics/constants.hpp"
#include "contralab/asymptotics/expansion.hpp"
#include "contralab/gf_catalog/catalog.hpp"
#include "contralab/gf_catalog/threshold.hpp"
#include "contralab/kernel_enum/kernels.hpp"
#include "contralab/sat_lab/experiment.hpp"
#include "contralab/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

using namespace contralab;
using nlohmann::json;

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// "1/2", "-3", "0.5", "1e-3" -> exact rational
Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.find_first_of(".eE") == std::string::npos) {
        if (q.set_str(s, 10) != 0) throw ParamError("not a rational: " + s);
        q.canonicalize();
        if (q.get_den() == 0) throw ParamError("zero denominator: " + s);
        return q;
    }
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) {
        try {
            exp10 = std::stol(s.substr(epos + 1));
        } catch (const std::exception&) {
            throw ParamError("not a number: " + s);
        }
    }
    bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+');
    std::string body = neg ? mant.substr(1) : mant;
    bool minus = !mant.empty() && mant[0] == '-';
    std::size_t dot = body.find('.');
    std::string digits = body;
    if (dot != std::string::npos) {
        digits = body.substr(0, dot) + body.substr(dot + 1);
        exp10 -= static_cast<long>(body.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParamError("not a number: " + s);
    BigInt num(digits, 10), p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational r = exp10 >= 0 ? Rational(num * p) : ratio(num, p);
    return minus ? Rational(-r) : r;
}

json envelope(const std::string& command, json config, std::optional<std::uint64_t> seed = std::nullopt) {
    json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = std::move(config);
    j["seed"] = seed ? json(*seed) : json(nullptr);
    return j;
}

struct Output {
    std::string path;

    void write(const std::string& text) const {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path);
        f << text;
        if (!f) throw std::runtime_error("write failed: " + path);
    }
    void write(const json& j) const { write(j.dump(2) + "\n"); }
};

// Exactly one of mu, m; the other is derived.
CountingParams counting(Regime regime, long n, const std::optional<double>& mu, const std::optional<long>& m) {
    if (mu.has_value() == m.has_value()) throw ParamError("give exactly one of --mu and --m");
    return mu ? CountingParams::from_mu(regime, n, *mu) : CountingParams::from_m(regime, n, *m);
}

json counting_json(const CountingParams& p) {
    return {{"n", p.n}, {"m", p.m}, {"mu", p.mu}, {"regime", to_string(p.regime)}};
}

int default_workers() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

struct SimulateArgs {
    long n = 0;
    std::optional<double> mu;
    std::optional<long> m;
    long trials = 1;
    std::uint64_t seed = 0;
    int workers = default_workers();
    std::string model = "standard";
    std::string mode = "formula";
    bool spine = false;
    int k_cap = 8;
    long budget_factor = 64;
    bool per_trial = false;
    std::string format = "json";
    Output out;
};

void add_simulate_options(CLI::App* c, SimulateArgs& a, bool spine_flag) {
    c->add_option("--n", a.n, "variables")->required()->check(CLI::PositiveNumber);
    c->add_option("--mu", a.mu, "window parameter, m = n (1 + mu n^(-1/3))");
    c->add_option("--m", a.m, "clauses (or arcs in digraph mode)");
    c->add_option("--trials", a.trials, "number of trials")->check(CLI::PositiveNumber);
    c->add_option("--seed", a.seed, "base seed");
    c->add_option("--workers", a.workers, "worker threads")->envname("CONTRALAB_WORKERS")->check(CLI::PositiveNumber);
    c->add_option("--model", a.model, "standard | allow_repeats | allow_trivial");
    c->add_option("--mode", a.mode, "formula | digraph");
    if (spine_flag) c->add_flag("--spine", a.spine, "collect spine statistics");
    c->add_option("--k-cap", a.k_cap, "path multiplicity cap")->check(CLI::PositiveNumber);
    c->add_option("--budget-factor", a.budget_factor, "spine visit budget per trial, times n")->check(CLI::PositiveNumber);
    c->add_flag("--per-trial", a.per_trial, "keep per-trial records (CSV output)");
    c->add_option("--format", a.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--out", a.out.path, "output file (default stdout)");
}

void run_simulate(const std::string& command, const SimulateArgs& a) {
    auto cp = counting(Regime::twosat, a.n, a.mu, a.m);
    ExperimentParams p;
    p.n = cp.n;
    p.m = cp.m;
    p.mu = cp.mu;
    p.model = parse_model(a.model);
    p.mode = parse_sample_mode(a.mode);
    p.trials = a.trials;
    p.seed = a.seed;
    p.workers = a.workers;
    p.spine = a.spine;
    p.k_cap = a.k_cap;
    p.budget_factor = a.budget_factor;
    p.per_trial = a.per_trial || a.format == "csv";
    if (a.format == "csv" && p.mode == SampleMode::digraph) throw SatError("CSV output needs formula mode");
    auto r = run_experiment(p);
    std::cerr << "contralab " << kVersion << ": " << p.trials << " trials in " << fmt17(r.seconds) << " s\n";
    if (a.format == "csv") {
        std::ostringstream os;
        os << "# contralab " << kVersion << " n=" << p.n << " m=" << p.m << " mu=" << fmt17(p.mu)
           << " model=" << to_string(p.model) << " trials=" << p.trials << " seed=" << p.seed << "\n";
        write_trials_csv(r, os);
        a.out.write(os.str());
        return;
    }
    json config = counting_json(cp);
    config["model"] = a.model;
    config["mode"] = a.mode;
    config["trials"] = a.trials;
    config["workers"] = a.workers;
    config["spine"] = a.spine;
    config["k_cap"] = a.k_cap;
    config["budget_factor"] = a.budget_factor;
    json j = envelope(command, config, a.seed);
    j["report"] = to_json(r);
    if (p.mode == SampleMode::formula && cp.mu < 0) {
        auto law = law_predictions(cp);
        json pred{{"p_unsat", law.p_unsat_leading}, {"p_excess_1", law.p_excess(1)}, {"gamma_mean_1", law.gamma_mean(1)}};
        if (a.spine) pred["spine_mean"] = law.spine_mean;
        j["predictions"] = pred;
    }
    a.out.write(j);
}

json kernel_sums_json(int r) {
    auto s = contradictory_sums(r);
    return {{"C_all", rational_string(s.C_all)},
            {"C_minimal", rational_string(s.C_minimal)},
            {"C_canonical", rational_string(s.C_canonical)},
            {"C_all_double_factorial_kappa", rational_string(s.C_all_double_factorial)},
            {"C_minimal_double_factorial_kappa", rational_string(s.C_minimal_double_factorial)},
            {"labelled_kernels", s.labelled_kernels},
            {"minimal_kernels", s.minimal_kernels},
            {"classes", s.classes}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contralab: exact, asymptotic and Monte Carlo tools for random 2-SAT near its threshold"};
    app.set_version_flag("--version", std::string("contralab ") + kVersion);
    app.require_subcommand(1);
    std::function<void()> action;

    // series coeff
    auto* series = app.add_subcommand("series", "power series catalogue")->require_subcommand(1);
    auto* coeff = series->add_subcommand("coeff", "coefficient [z^n] of a catalogue series");
    std::string name = "T";
    int cn = 0;
    bool use_float = false;
    unsigned precision = kDefaultPrecision;
    coeff->add_option("--name", name, "T | U | V | T_dir | U_dir | V_dir");
    coeff->add_option("--n", cn, "coefficient index")->required()->check(CLI::NonNegativeNumber);
    coeff->add_flag("--float", use_float, "floating backend");
    coeff->add_option("--precision", precision, "float precision in bits")->check(CLI::Range(16u, 1u << 20));
    Output out;
    coeff->add_option("--out", out.path, "output file");
    coeff->callback([&] {
        action = [&] {
            Arithmetic a = use_float ? Arithmetic::real(precision) : Arithmetic::exact();
            auto S = catalog_series(parse_catalog_name(name), cn, a);
            Scalar c = S[cn];
            json j = envelope("series coeff", {{"name", name}, {"n", cn}, {"float", use_float}, {"precision", precision}});
            j["coefficient"] = c.str();
            BigInt f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(cn));
            if (c.is_exact()) {
                Rational scaled = c.rational() * f;
                j["times_factorial"] = rational_string(scaled);
            } else {
                j["times_factorial"] = (c.real(precision) * BigFloat(f, precision)).str(17);
            }
            out.write(j);
        };
    });

    // count
    auto* count = app.add_subcommand("count", "exact number of labelled objects");
    std::string kind = "formulas", regime_name = "twosat";
    long n = 0;
    std::optional<double> mu;
    std::optional<long> m;
    count->add_option("--kind", kind, "simple_graphs | simple_digraphs | formulas | sum_reps");
    count->add_option("--regime", regime_name, "graph | twosat");
    count->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    count->add_option("--mu", mu);
    count->add_option("--m", m);
    count->add_option("--out", out.path);
    count->callback([&] {
        action = [&] {
            auto p = counting(parse_regime(regime_name), n, mu, m);
            json j = envelope("count", counting_json(p));
            j["config"]["kind"] = kind;
            j["count"] = count_objects(parse_object_kind(kind), p).get_str();
            out.write(j);
        };
    });

    // prob exact
    auto* prob = app.add_subcommand("prob", "finite-n probabilities")->require_subcommand(1);
    auto* pexact = prob->add_subcommand("exact", "graph: P(trees and unicycles only); twosat: digraph window expression");
    std::string regime_prob = "graph";
    pexact->add_option("--regime", regime_prob, "graph | twosat");
    pexact->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    pexact->add_option("--mu", mu);
    pexact->add_option("--m", m);
    pexact->add_flag("--float", use_float, "floating backend");
    pexact->add_option("--precision", precision)->check(CLI::Range(16u, 1u << 20));
    pexact->add_option("--out", out.path);
    pexact->callback([&] {
        action = [&] {
            auto p = counting(parse_regime(regime_prob), n, mu, m);
            json j = envelope("prob exact", counting_json(p));
            j["config"]["float"] = use_float || p.regime == Regime::twosat;
            j["config"]["precision"] = precision;
            if (p.regime == Regime::graph) {
                Arithmetic a = use_float ? Arithmetic::real(precision) : Arithmetic::exact();
                Scalar v = prob_trees_unicycles(p, a);
                j["probability"] = v.str();
                j["probability_double"] = v.to_double();
                j["deficit_scaled"] = (1 - v.to_double()) * 24 * std::pow(std::abs(p.mu), 3) / 5;
            } else {
                Scalar v = digraph_window_expression(p, WindowPattern::identity(), Arithmetic::real(precision));
                Scalar c = digraph_window_expression(p, WindowPattern::contradictory_tree(), Arithmetic::real(precision));
                j["window_identity"] = v.str();
                j["contradictory_tree"] = c.str();
                j["contradictory_tree_scaled"] = c.to_double() * 2 * std::pow(std::abs(p.mu), 3);
                j["digraph_graph_ratio"] = digraph_graph_ratio(p.n, p.m, precision).str(17);
            }
            out.write(j);
        };
    });

    // asympt a
    auto* asympt = app.add_subcommand("asympt", "saddle-point expansion")->require_subcommand(1);
    auto* aa = asympt->add_subcommand("a", "A(y, mu) by the expansion, optionally against quadrature");
    std::string ys = "1/2";
    double amu = -3;
    int terms = 1;
    bool oracle = false;
    aa->add_option("--y", ys, "rational or decimal");
    aa->add_option("--mu", amu)->required();
    aa->add_option("--terms", terms, "highest r kept")->check(CLI::NonNegativeNumber);
    aa->add_flag("--oracle", oracle, "also evaluate the integral numerically");
    aa->add_option("--out", out.path);
    aa->callback([&] {
        action = [&] {
            Rational y = parse_rational(ys);
            if (amu >= 0) throw ParamError("mu must be negative");
            json j = envelope("asympt a", {{"y", rational_string(y)}, {"mu", amu}, {"terms", terms}, {"oracle", oracle}});
            json coeffs = json::array();
            for (int r = 0; r <= terms; ++r) coeffs.push_back(rational_string(c_coefficient(r, y)));
            j["c"] = coeffs;
            double s = a_series(y, amu, terms);
            j["series"] = s;
            if (oracle) {
                auto q = a_quadrature_detail(y, amu);
                j["quadrature"] = q.value;
                j["quadrature_imaginary"] = q.imaginary;
                j["relative_residual"] = std::abs(s - q.value) / std::abs(q.value);
            }
            out.write(j);
        };
    });

    // constants
    auto* consts = app.add_subcommand("constants", "graph constant e_r and 2-SAT constant C_r");
    std::optional<int> er, cr;
    consts->add_option("--e", er, "r for e_r")->check(CLI::PositiveNumber);
    consts->add_option("--c", cr, "r for C_r (r <= 2)")->check(CLI::PositiveNumber);
    consts->add_option("--out", out.path);
    consts->callback([&] {
        action = [&] {
            if (!er && !cr) throw ParamError("give --e and/or --c");
            json cfg;
            cfg["e"] = er ? json(*er) : json(nullptr);
            cfg["c"] = cr ? json(*cr) : json(nullptr);
            json j = envelope("constants", cfg);
            if (er) j["e"] = rational_string(graph_constant_e(*er));
            if (cr) {
                j["C"] = rational_string(twosat_constant_C(*cr, ComponentSum::all));
                j["C_minimal"] = rational_string(twosat_constant_C(*cr, ComponentSum::minimal));
            }
            out.write(j);
        };
    });

    // kernels enum
    auto* kernels = app.add_subcommand("kernels", "cubic kernel enumeration")->require_subcommand(1);
    auto* kenum = kernels->add_subcommand("enum", "enumerate labelled cubic kernels of a given excess");
    int excess = 1;
    std::string kkind = "contradictory";
    bool list = false;
    kenum->add_option("--excess", excess)->check(CLI::PositiveNumber);
    kenum->add_option("--kind", kkind, "multigraph | contradictory")->check(CLI::IsMember({"multigraph", "contradictory"}));
    kenum->add_flag("--list", list, "include every labelled kernel");
    kenum->add_option("--out", out.path);
    kenum->callback([&] {
        action = [&] {
            json j = envelope("kernels enum", {{"excess", excess}, {"kind", kkind}, {"list", list}});
            if (kkind == "multigraph") {
                auto s = cubic_multigraph_sums(excess);
                j["labelled_sum"] = rational_string(s.labelled);
                j["canonical_sum"] = rational_string(s.canonical);
                j["automorphism_sum"] = rational_string(s.automorphism);
                j["e"] = rational_string(graph_constant_e(excess));
                auto all = enumerate_cubic_multigraphs(excess);
                j["count"] = all.size();
                if (list) {
                    json a = json::array();
                    for (const auto& e : all) a.push_back(to_json(e));
                    j["kernels"] = a;
                }
            } else {
                j["sums"] = kernel_sums_json(excess);
                if (list) {
                    json a = json::array();
                    for (const auto& e : enumerate_cubic_contradictory_kernels(excess)) a.push_back(to_json(e));
                    j["kernels"] = a;
                }
            }
            out.write(j);
        };
    });

    // threshold
    auto* thr = app.add_subcommand("threshold", "degree-constrained threshold equations");
    std::vector<int> degrees;
    thr->add_option("--degrees", degrees, "allowed literal degrees (default: all)")->delimiter(',');
    thr->add_option("--out", out.path);
    thr->callback([&] {
        action = [&] {
            DegreeSet d = degrees.empty() ? DegreeSet::naturals() : DegreeSet::of(degrees);
            auto r = degree_threshold(d);
            json j = envelope("threshold", {{"degrees", degrees.empty() ? json("all") : json(degrees)}});
            j["z_star"] = r.z_star;
            j["r_star"] = r.r_star;
            j["z_bisection"] = r.z_bisection;
            out.write(j);
        };
    });

    // simulate, spine
    SimulateArgs sim, sp;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo over random formulas or digraphs");
    add_simulate_options(simulate, sim, true);
    simulate->callback([&] { action = [&] { run_simulate("simulate", sim); }; });
    auto* spine = app.add_subcommand("spine", "Monte Carlo spine statistics");
    add_simulate_options(spine, sp, false);
    spine->callback([&] {
        action = [&] {
            sp.spine = true;
            run_simulate("spine", sp);
        };
    });

    // exact enum
    auto* exact = app.add_subcommand("exact", "exhaustive small-n statistics")->require_subcommand(1);
    auto* eenum = exact->add_subcommand("enum", "every standard formula with n variables and m clauses");
    long en = 0, em = 0;
    double limit = 1e7;
    eenum->add_option("--n", en)->required()->check(CLI::NonNegativeNumber);
    eenum->add_option("--m", em)->required()->check(CLI::NonNegativeNumber);
    eenum->add_option("--limit", limit, "maximum number of formulas")->check(CLI::PositiveNumber);
    eenum->add_option("--out", out.path);
    eenum->callback([&] {
        action = [&] {
            auto st = exhaustive_statistics(en, em, static_cast<std::uint64_t>(limit));
            json j = envelope("exact enum", {{"n", en}, {"m", em}, {"limit", limit}});
            j["statistics"] = to_json(st);
            j["p_sat_double"] = st.p_sat.get_d();
            out.write(j);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (action) action();
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
