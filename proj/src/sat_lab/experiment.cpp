#include "contralab/sat_lab/experiment.hpp"
#include "contralab/version.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace contralab {

std::string to_string(SampleMode m) { return m == SampleMode::formula ? "formula" : "digraph"; }

SampleMode parse_sample_mode(const std::string& s) {
    if (s == "formula") return SampleMode::formula;
    if (s == "digraph") return SampleMode::digraph;
    throw SatError("unknown sample mode: " + s);
}

double Moments::variance() const {
    if (count < 2) return 0.0;
    long double c = count;
    return static_cast<double>((sum_sq - sum * sum / c) / (c - 1));
}

TrialRecord run_trial(const ExperimentParams& p, std::uint64_t trial) {
    Rng rng = trial_rng(p.seed, trial);
    TrialRecord t;
    if (p.mode == SampleMode::digraph) {
        auto c = conflict_pairs(sample_digraph(p.n, p.m, rng));
        t.conflicts = c.pairs;
        t.self_arcs = c.self_arcs;
        return t;
    }
    auto d = build_implication(sample_formula(p.n, p.m, p.model, rng));
    auto s = scc(d);
    t.sat = is_satisfiable(d, s);
    if (!t.sat) {
        auto r = contradiction_report(d, s);
        t.excess = r.excess.value_or(-1);
        t.contradictory = static_cast<long>(r.contradictory_variables.size());
        t.kernel_cubic = r.kernel_cubic;
    }
    if (p.spine) {
        SpineOptions opt;
        opt.k_cap = p.k_cap;
        opt.visit_budget = p.budget_factor * p.n;
        auto sp = spine_report(d, s, opt);
        if (sp.budget_exceeded) {
            t.spine_aborted = true;
        } else {
            t.spine_size = static_cast<long>(sp.literals.size());
            t.classes.assign(static_cast<std::size_t>(p.k_cap) + 1, 0);
            for (const auto& c : sp.multiplicity) {
                switch (c.kind) {
                case PathMultiplicity::Kind::exact: ++t.classes[static_cast<std::size_t>(c.k - 1)]; break;
                case PathMultiplicity::Kind::at_least: ++t.classes[static_cast<std::size_t>(p.k_cap - 1)]; break;
                case PathMultiplicity::Kind::cyclic: ++t.classes[static_cast<std::size_t>(p.k_cap)]; break;
                }
            }
        }
    }
    return t;
}

namespace {

void validate(const ExperimentParams& p) {
    if (p.trials < 1) throw SatError("trials must be at least 1");
    if (p.workers < 1) throw SatError("workers must be at least 1");
    if (p.n < 1) throw SatError("n must be at least 1");
    if (p.m < 0) throw SatError("m must be nonnegative");
    if (p.k_cap < 1) throw SatError("k_cap must be at least 1");
    if (p.mode == SampleMode::formula && p.model == Model::standard &&
        static_cast<std::uint64_t>(p.m) > standard_clause_count(p.n))
        throw SatError("m exceeds 2n(n-1) in the standard model");
    constexpr long kMaxNodes = std::numeric_limits<int>::max() / 4;
    if (2 * p.n > kMaxNodes || 2 * p.m > kMaxNodes) throw ResourceError("instance too large for 32-bit node indices");
    // per worker: adjacency, SCC and search arrays
    long double bytes = (64.0L * p.n + 48.0L * p.m) * p.workers;
    if (p.per_trial) bytes += 96.0L * p.trials;
    if (bytes > 8.0L * (1L << 30)) throw ResourceError("estimated memory above 8 GiB");
}

}  // namespace

ExperimentReport run_experiment(const ExperimentParams& p) {
    validate(p);
    auto start = std::chrono::steady_clock::now();
    std::vector<TrialRecord> records(static_cast<std::size_t>(p.trials));
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_lock;
    constexpr long kChunk = 16;
    auto work = [&] {
        try {
            while (!failed.load(std::memory_order_relaxed)) {
                long lo = next.fetch_add(kChunk);
                if (lo >= p.trials) break;
                long hi = std::min(p.trials, lo + kChunk);
                for (long t = lo; t < hi; ++t) records[static_cast<std::size_t>(t)] = run_trial(p, static_cast<std::uint64_t>(t));
            }
        } catch (...) {
            std::lock_guard<std::mutex> g(error_lock);
            if (!error) error = std::current_exception();
            failed = true;
        }
    };
    int workers = static_cast<int>(std::min<long>(p.workers, p.trials));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    ExperimentReport r;
    r.params = p;
    r.class_counts.assign(static_cast<std::size_t>(p.k_cap) + 1, 0);
    for (const auto& t : records) {
        if (p.mode == SampleMode::digraph) {
            ++r.conflict_histogram[t.conflicts];
            ++r.self_arc_histogram[t.self_arcs];
            r.conflicts.add(t.conflicts);
            continue;
        }
        if (!t.sat) {
            ++r.unsat;
            auto& bin = r.by_excess[t.excess];
            ++bin.count;
            if (t.kernel_cubic) ++bin.cubic;
            bin.contradictory.add(t.contradictory);
            ++bin.contradictory_histogram[t.contradictory];
            r.contradictory.add(t.contradictory);
        }
        if (p.spine) {
            if (t.spine_aborted) {
                ++r.spine_aborted;
            } else {
                r.spine.add(t.spine_size);
                for (std::size_t i = 0; i < t.classes.size(); ++i) r.class_counts[i] += t.classes[i];
            }
        }
    }
    if (p.per_trial) r.records = std::move(records);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

template <class K, class V>
nlohmann::json histogram(const std::map<K, V>& h) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [k, v] : h) {
        if constexpr (std::is_same_v<V, BigInt>) a.push_back({k, v.get_str()});
        else a.push_back({k, v});
    }
    return a;
}

nlohmann::json moments(const Moments& m) {
    return {{"count", m.count}, {"mean", m.mean()}, {"variance", m.variance()}};
}

}  // namespace

nlohmann::json to_json(const ExperimentReport& r) {
    const auto& p = r.params;
    nlohmann::json j;
    j["version"] = kVersion;
    j["seed"] = p.seed;
    j["params"] = {{"n", p.n},         {"m", p.m},           {"mu", p.mu},
                   {"model", to_string(p.model)}, {"mode", to_string(p.mode)}, {"trials", p.trials},
                   {"seed", p.seed},   {"spine", p.spine},   {"k_cap", p.k_cap},
                   {"budget_factor", p.budget_factor}};
    nlohmann::json counters, mom, hist;
    counters["trials"] = p.trials;
    if (p.mode == SampleMode::digraph) {
        long zero = r.conflict_histogram.count(0) ? r.conflict_histogram.at(0) : 0;
        counters["no_conflict"] = zero;
        mom["conflicts"] = moments(r.conflicts);
        hist["conflicts"] = histogram(r.conflict_histogram);
        hist["self_arcs"] = histogram(r.self_arc_histogram);
    } else {
        counters["unsat"] = r.unsat;
        counters["sat"] = p.trials - r.unsat;
        nlohmann::json ex = nlohmann::json::array(), cub = nlohmann::json::array();
        nlohmann::json cond = nlohmann::json::object();
        for (const auto& [e, bin] : r.by_excess) {
            ex.push_back({e, bin.count});
            cub.push_back({e, bin.cubic});
            cond[std::to_string(e)] = moments(bin.contradictory);
            hist["contradictory_excess_" + std::to_string(e)] = histogram(bin.contradictory_histogram);
        }
        hist["excess"] = ex;
        counters["cubic_kernel_by_excess"] = cub;
        mom["contradictory"] = moments(r.contradictory);
        mom["contradictory_by_excess"] = cond;
        if (p.spine) {
            counters["spine_aborted"] = r.spine_aborted;
            mom["spine"] = moments(r.spine);
            nlohmann::json cls = nlohmann::json::array();
            for (std::size_t i = 0; i < r.class_counts.size(); ++i) {
                std::string label = i + 1 < static_cast<std::size_t>(p.k_cap) ? std::to_string(i + 1)
                                    : i + 1 == static_cast<std::size_t>(p.k_cap) ? ">=" + std::to_string(p.k_cap)
                                                                                 : "cyclic";
                cls.push_back({label, r.class_counts[i]});
            }
            hist["spine_multiplicity"] = cls;
        }
    }
    j["counters"] = counters;
    j["moments"] = mom;
    j["histograms"] = hist;
    return j;
}

void write_trials_csv(const ExperimentReport& r, std::ostream& os) {
    os << "trial,sat,excess,n_contradictory,spine_size,kernel_cubic\n";
    for (std::size_t t = 0; t < r.records.size(); ++t) {
        const auto& x = r.records[t];
        os << t << ',' << (x.sat ? 1 : 0) << ',';
        if (x.excess >= 0) os << x.excess;
        os << ',' << x.contradictory << ',';
        if (x.spine_size >= 0) os << x.spine_size;
        os << ',' << (x.kernel_cubic ? 1 : 0) << '\n';
    }
}

ExhaustiveStats exhaustive_statistics(long n, long m, std::uint64_t limit) {
    if (n < 0 || m < 0) throw SatError("n and m must be nonnegative");
    std::uint64_t N = standard_clause_count(n);
    if (static_cast<std::uint64_t>(m) > N) throw SatError("m exceeds 2n(n-1)");
    BigInt total;
    mpz_bin_uiui(total.get_mpz_t(), N, static_cast<unsigned long>(m));
    if (total > BigInt(std::to_string(limit))) throw ResourceError("exhaustive enumeration over budget");

    ExhaustiveStats st;
    st.n = n;
    st.m = m;
    st.formulas = total;
    BigInt spine_total = 0;
    std::vector<std::uint64_t> idx(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i);
    SpineOptions opt;
    opt.multiplicities = false;
    while (true) {
        Formula f;
        f.n = static_cast<int>(n);
        for (auto x : idx) f.clauses.push_back(clause_from_index(x));
        auto d = build_implication(f);
        auto s = scc(d);
        if (is_satisfiable(d, s)) {
            st.satisfiable += 1;
            st.contradictory_histogram[0] += 1;
        } else {
            auto r = contradiction_report(d, s);
            st.excess_histogram[*r.excess] += 1;
            st.contradictory_histogram[static_cast<long>(r.contradictory_variables.size())] += 1;
        }
        spine_total += static_cast<unsigned long>(spine_report(d, s, opt).literals.size());
        // next m-combination of [0, N)
        long i = m - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == N - static_cast<std::uint64_t>(m - i)) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (long k = i + 1; k < m; ++k) idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
    }
    st.p_sat = ratio(st.satisfiable, st.formulas);
    st.spine_mean = ratio(spine_total, st.formulas);
    return st;
}

nlohmann::json to_json(const ExhaustiveStats& s) {
    nlohmann::json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["formulas"] = s.formulas.get_str();
    j["satisfiable"] = s.satisfiable.get_str();
    j["p_sat"] = rational_string(s.p_sat);
    j["excess"] = histogram(s.excess_histogram);
    j["contradictory"] = histogram(s.contradictory_histogram);
    j["spine_mean"] = rational_string(s.spine_mean);
    return j;
}

}  // namespace contralab
