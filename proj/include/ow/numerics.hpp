#pragma once
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace ow {

struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss-Hermite rule for weight e^{-x^2}. Weights are kept in log space so
// high orders (m ~ 300+) do not underflow; nodes are exactly symmetric.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> log_weights;
};

// Ai / Ai': double-double Maclaurin series on the core window, the standard
// asymptotic expansions (oscillatory form on the left) beyond it. Relative
// accuracy ~2e-13 through |x| ~ 120; underflows cleanly to 0 on the right.
double airy_ai(double x);
double airy_ai_prime(double x);

// log Gamma(x), x > 0.
double log_gamma(double x);

// Rule of order m (1 <= m <= 1024). Cached; the returned reference stays
// valid for the program lifetime and is safe to share across threads.
const QuadratureRule& gauss_hermite(int m);

// Kahan-compensated sum of a complex sequence.
std::complex<double> compensated_sum(std::span<const std::complex<double>> terms);

// Streaming variant used by the evaluators.
template <class T>
class KahanAccumulator {
    // Neumaier variant: unlike textbook Kahan it survives a large head term
    // cancelling against a later one ({1e16, 1, -1e16} sums to 1, not 0).
    T sum_{}, carry_{};
public:
    void add(T v) {
        T t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + carry_; }
};

}  // namespace ow
