#include "contralab/sat_lab/formula.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace contralab {

std::string to_string(Model m) {
    switch (m) {
    case Model::standard: return "standard";
    case Model::allow_repeats: return "allow_repeats";
    case Model::allow_trivial: return "allow_trivial";
    }
    return "?";
}

Model parse_model(const std::string& s) {
    if (s == "standard") return Model::standard;
    if (s == "allow_repeats") return Model::allow_repeats;
    if (s == "allow_trivial") return Model::allow_trivial;
    throw SatError("unknown model: " + s);
}

void Formula::validate() const {
    if (n < 0) throw SatError("negative variable count");
    std::set<Clause> seen;
    for (const auto& c : clauses) {
        if (c.a < 0 || c.b >= 2 * n) throw SatError("literal out of range");
        if (model == Model::allow_trivial) continue;
        if (c.a == negate(c.b)) throw SatError("clause (x v ~x) not allowed in this model");
        if (model == Model::allow_repeats) continue;
        if (c.a == c.b) throw SatError("clause (x v x) not allowed in the standard model");
        if (!seen.insert(c).second) throw SatError("repeated clause in the standard model");
    }
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), 0x2c5a7u};
    return Rng(seq);
}

std::uint64_t standard_clause_count(long n) {
    if (n < 0) throw SatError("negative variable count");
    auto u = static_cast<std::uint64_t>(n);
    return n < 2 ? 0 : 2 * u * (u - 1);
}

Clause clause_from_index(std::uint64_t index) {
    std::uint64_t p = index / 4;
    int pol = static_cast<int>(index % 4);
    // colex unranking: p = j(j-1)/2 + i, 0 <= i < j
    auto j = static_cast<std::uint64_t>((1 + std::sqrt(1 + 8.0 * static_cast<double>(p))) / 2);
    while (j * (j - 1) / 2 > p) --j;
    while ((j + 1) * j / 2 <= p) ++j;
    std::uint64_t i = p - j * (j - 1) / 2;
    return Clause(literal(static_cast<int>(i), pol & 1), literal(static_cast<int>(j), pol >> 1));
}

std::uint64_t clause_index(const Clause& c) {
    auto i = static_cast<std::uint64_t>(variable(c.a)), j = static_cast<std::uint64_t>(variable(c.b));
    if (i >= j) throw SatError("clause_index needs two distinct variables");
    return 4 * (j * (j - 1) / 2 + i) + static_cast<std::uint64_t>((c.a & 1) | ((c.b & 1) << 1));
}

void KeySet::reset(std::size_t expected) {
    std::size_t cap = std::bit_ceil(std::max<std::size_t>(16, 2 * expected));
    if (slots_.size() != cap) slots_.assign(cap, kEmpty);
    else std::fill(slots_.begin(), slots_.end(), kEmpty);
    mask_ = cap - 1;
}

namespace {

inline std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

}  // namespace

bool KeySet::insert(std::uint64_t key) {
    for (std::uint64_t h = mix(key) & mask_;; h = (h + 1) & mask_) {
        if (slots_[h] == key) return false;
        if (slots_[h] == kEmpty) {
            slots_[h] = key;
            return true;
        }
    }
}

bool KeySet::contains(std::uint64_t key) const {
    for (std::uint64_t h = mix(key) & mask_;; h = (h + 1) & mask_) {
        if (slots_[h] == key) return true;
        if (slots_[h] == kEmpty) return false;
    }
}

std::vector<std::uint64_t> sample_distinct(std::uint64_t N, std::uint64_t m, Rng& rng, KeySet& scratch) {
    if (m > N) throw SatError("cannot draw more distinct values than available");
    std::vector<std::uint64_t> out;
    out.reserve(m);
    if (m == 0) return out;
    if (2 * m <= N) {
        scratch.reset(m);
        while (out.size() < m) {
            std::uint64_t x = bounded(rng, N);
            if (scratch.insert(x)) out.push_back(x);
        }
        return out;
    }
    scratch.reset(N - m);
    for (std::uint64_t k = 0; k < N - m;) k += scratch.insert(bounded(rng, N)) ? 1 : 0;
    for (std::uint64_t x = 0; x < N; ++x)
        if (!scratch.contains(x)) out.push_back(x);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

Formula sample_formula(long n, long m, Model model, Rng& rng) {
    if (n < 0 || m < 0) throw SatError("n and m must be nonnegative");
    std::uint64_t N = standard_clause_count(n);
    Formula f;
    f.n = static_cast<int>(n);
    f.model = model;
    f.clauses.reserve(static_cast<std::size_t>(m));
    if (model == Model::standard) {
        if (static_cast<std::uint64_t>(m) > N) throw SatError("m exceeds 2n(n-1) in the standard model");
        thread_local KeySet scratch;
        for (std::uint64_t x : sample_distinct(N, static_cast<std::uint64_t>(m), rng, scratch))
            f.clauses.push_back(clause_from_index(x));
        return f;
    }
    if (model == Model::allow_repeats) {
        if (m > 0 && N == 0) throw SatError("no admissible clauses for n < 2");
        for (long k = 0; k < m; ++k) f.clauses.push_back(clause_from_index(bounded(rng, N)));
        return f;
    }
    // allow_trivial: every unordered literal pair, with repetition
    if (m > 0 && n == 0) throw SatError("no admissible clauses for n = 0");
    std::uniform_int_distribution<int> lit(0, static_cast<int>(2 * n - 1));
    std::bernoulli_distribution half(0.5);
    for (long k = 0; k < m; ++k) {
        // ordered draws hit {a,b} twice when a != b; thin those by 1/2
        while (true) {
            int a = lit(rng), b = lit(rng);
            if (a == b || half(rng)) {
                f.clauses.emplace_back(a, b);
                break;
            }
        }
    }
    return f;
}

bool truth_table_sat(const Formula& f) {
    if (f.n > 24) throw SatError("truth_table_sat needs n <= 24");
    const std::uint32_t total = 1u << f.n;
    for (std::uint32_t x = 0; x < total; ++x) {
        bool ok = true;
        for (const auto& c : f.clauses) {
            // literal 2v true iff bit v set; 2v+1 true iff bit v clear
            bool ta = ((x >> variable(c.a)) & 1u) != static_cast<std::uint32_t>(c.a & 1);
            bool tb = ((x >> variable(c.b)) & 1u) != static_cast<std::uint32_t>(c.b & 1);
            if (!ta && !tb) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace contralab
