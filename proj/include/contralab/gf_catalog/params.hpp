#pragma once

#include <stdexcept>
#include <string>

namespace contralab {

enum class Regime { graph, twosat };

std::string to_string(Regime r);
Regime parse_regime(const std::string& s);

class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// graph:  m = n/2 (1 + mu n^(-1/3))
// twosat: m = n   (1 + mu n^(-1/3))
struct CountingParams {
    long n = 0;
    long m = 0;
    double mu = 0;
    Regime regime = Regime::twosat;

    // m rounded half-to-even, mu recomputed from the integer m.
    static CountingParams from_mu(Regime regime, long n, double mu);
    static CountingParams from_m(Regime regime, long n, long m);
};

double window_mu(Regime regime, long n, long m);
long window_m(Regime regime, long n, double mu);

}  // namespace contralab
