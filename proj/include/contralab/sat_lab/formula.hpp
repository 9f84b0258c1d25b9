#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace contralab {

class SatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Literal 2v is x_v, 2v+1 is its negation.
inline int literal(int var, bool negated) { return 2 * var + (negated ? 1 : 0); }
inline int negate(int lit) { return lit ^ 1; }
inline int variable(int lit) { return lit >> 1; }

// standard: distinct clauses, no (x v x), no (x v ~x)
// allow_repeats: clauses may repeat and may be (x v x); the sampler draws standard clauses with replacement
// allow_trivial: as allow_repeats, and (x v ~x) is admitted
enum class Model { standard, allow_repeats, allow_trivial };

std::string to_string(Model m);
Model parse_model(const std::string& s);

struct Clause {
    int a = 0;  // a <= b
    int b = 0;

    Clause() = default;
    Clause(int x, int y) : a(x < y ? x : y), b(x < y ? y : x) {}
    bool operator==(const Clause&) const = default;
    auto operator<=>(const Clause&) const = default;
};

struct Formula {
    int n = 0;
    std::vector<Clause> clauses;
    Model model = Model::standard;

    // Throws SatError if the clause list violates the model.
    void validate() const;
};

using Rng = std::mt19937_64;

// Independent stream for (seed, trial).
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

// Uniform in [0, range), range >= 1 (multiply-shift with rejection).
inline std::uint64_t bounded(Rng& rng, std::uint64_t range) {
    unsigned __int128 p = static_cast<unsigned __int128>(rng()) * range;
    auto low = static_cast<std::uint64_t>(p);
    if (low < range) {
        std::uint64_t floor = (0 - range) % range;
        while (low < floor) {
            p = static_cast<unsigned __int128>(rng()) * range;
            low = static_cast<std::uint64_t>(p);
        }
    }
    return static_cast<std::uint64_t>(p >> 64);
}

// Number of standard clauses, 2n(n-1).
std::uint64_t standard_clause_count(long n);
// Canonical bijection [0, 2n(n-1)) -> standard clauses: variable pair (i<j) by pair
// unranking of index/4, polarity pair by index mod 4.
Clause clause_from_index(std::uint64_t index);
std::uint64_t clause_index(const Clause& c);

Formula sample_formula(long n, long m, Model model, Rng& rng);

// Exhaustive evaluation over all 2^n assignments; n <= 24.
bool truth_table_sat(const Formula& f);

// Open-addressing set of 64-bit keys; cleared in O(capacity).
class KeySet {
public:
    void reset(std::size_t expected);
    bool insert(std::uint64_t key);  // false if already present
    bool contains(std::uint64_t key) const;

private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
    std::vector<std::uint64_t> slots_;
    std::uint64_t mask_ = 0;
};

// m distinct values in [0, N) in draw order, by rejection (or complement sampling when m > N/2).
std::vector<std::uint64_t> sample_distinct(std::uint64_t N, std::uint64_t m, Rng& rng, KeySet& scratch);

}  // namespace contralab
