#pragma once

#include <utility>
#include <vector>

namespace contralab {

// Literal degree set Delta with weights: omega(z) = sum_d w_d z^d / d!.
struct DegreeSet {
    std::vector<std::pair<int, double>> terms;
    bool all_naturals = false;  // omega = e^z

    static DegreeSet naturals();
    static DegreeSet of(std::vector<int> degrees);

    double omega(double z, int derivative = 0) const;
};

struct ThresholdResult {
    double z_star = 0;
    double r_star = 0;
    double z_bisection = 0;  // independent bisection root, for cross-checking
};

// Solves z omega''(z) / omega'(z) = 1, then r = z omega'(z) / omega(z).
ThresholdResult degree_threshold(const DegreeSet& delta, double z_max = 1e6);

}  // namespace contralab
