#pragma once

#include "contralab/sat_lab/analysis.hpp"
#include "contralab/series_core/big_float.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <ostream>

namespace contralab {

// formula: random 2-CNF through the implication digraph; digraph: simple random digraph, conflicts only
enum class SampleMode { formula, digraph };

std::string to_string(SampleMode m);
SampleMode parse_sample_mode(const std::string& s);

struct ExperimentParams {
    long n = 0;
    long m = 0;
    double mu = 0;
    Model model = Model::standard;
    SampleMode mode = SampleMode::formula;
    long trials = 1;
    std::uint64_t seed = 0;
    int workers = 1;
    bool spine = false;
    int k_cap = 8;
    long budget_factor = 64;  // spine visits per trial, times n
    bool per_trial = false;
};

struct TrialRecord {
    bool sat = true;
    int excess = -1;  // -1 when satisfiable
    long contradictory = 0;
    bool kernel_cubic = false;
    long spine_size = -1;  // -1 when not computed or over budget
    bool spine_aborted = false;
    long conflicts = 0;
    long self_arcs = 0;
    std::vector<long> classes;  // spine multiplicity counts: 1..k_cap-1, >=k_cap, cyclic
};

// Runs one trial; deterministic in (params.seed, trial).
TrialRecord run_trial(const ExperimentParams& p, std::uint64_t trial);

struct Moments {
    long count = 0;
    long double sum = 0;
    long double sum_sq = 0;

    void add(long double x) {
        ++count;
        sum += x;
        sum_sq += x * x;
    }
    double mean() const { return count ? static_cast<double>(sum / count) : 0.0; }
    double variance() const;  // unbiased
};

struct ExcessBin {
    long count = 0;
    long cubic = 0;
    Moments contradictory;
    std::map<long, long> contradictory_histogram;
};

struct ExperimentReport {
    ExperimentParams params;
    long unsat = 0;
    std::map<int, ExcessBin> by_excess;
    std::map<long, long> conflict_histogram;
    std::map<long, long> self_arc_histogram;
    Moments conflicts;
    Moments contradictory;  // over unsatisfiable trials
    Moments spine;
    long spine_aborted = 0;
    std::vector<long> class_counts;  // 1..k_cap-1, >=k_cap, cyclic
    double seconds = 0;
    std::vector<TrialRecord> records;  // when per_trial
};

ExperimentReport run_experiment(const ExperimentParams& p);

// Wall time and worker count stay out of the JSON so reruns are byte-identical.
nlohmann::json to_json(const ExperimentReport& r);
void write_trials_csv(const ExperimentReport& r, std::ostream& os);

struct ExhaustiveStats {
    long n = 0;
    long m = 0;
    BigInt formulas;
    BigInt satisfiable;
    Rational p_sat;
    std::map<int, BigInt> excess_histogram;         // unsatisfiable formulas by excess
    std::map<long, BigInt> contradictory_histogram;  // formulas by contradictory-variable count
    Rational spine_mean;
};

// Every standard-model formula with n variables and m clauses; at most 10^7 of them.
ExhaustiveStats exhaustive_statistics(long n, long m, std::uint64_t limit = 10'000'000);

nlohmann::json to_json(const ExhaustiveStats& s);

}  // namespace contralab
