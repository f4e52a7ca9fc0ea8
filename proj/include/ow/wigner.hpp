#pragma once

#include <string>
#include <vector>

#include "ow/phase_space.hpp"

namespace ow {

enum class WignerMethod { contour_shifted_exact, direct_oracle };

// Precision policy for the exact evaluator. automatic runs the double kernel
// and re-evaluates in extended precision when the measured sign-cancellation
// depth says doubles cannot deliver ~1e-10 relative accuracy; fast never
// escalates (integrity checks stay armed); wide always escalates.
enum class WignerPrecision { automatic, fast, wide };

struct WignerEvaluator {
    QuantumNumbers qn;
    int m = 0;  // Gauss-Hermite order per axis
    WignerMethod method = WignerMethod::contour_shifted_exact;
    WignerPrecision precision = WignerPrecision::automatic;

    explicit WignerEvaluator(QuantumNumbers qn_, int m_ = -1,
                             WignerMethod method_ = WignerMethod::contour_shifted_exact,
                             WignerPrecision precision_ = WignerPrecision::automatic);
};

struct EvalDetail {
    double value = 0;    // Re W
    double log_abs = 0;  // ln|W|; -inf when the value is exactly zero
    double im_ratio = 0; // |Im W| / (|Re W| + N^2/E^2); 0 on the wide path
    double depth = 0;    // ln(largest quadrature term / |sum|)
    bool wide = false;
};

double wigner_gamma0_2d(const WignerEvaluator& ev, const PhasePoint& p);
EvalDetail wigner_gamma0_2d_detail(const WignerEvaluator& ev, const PhasePoint& p);

// Slow independent oracle: nested adaptive quadrature of the defining
// integral, no contour shift. Absolute error <= tol * (N+1)^2 / E^2.
double wigner_gamma0_direct(const QuantumNumbers& qn, const PhasePoint& p, double tol);

// W of the state centered on the U-image orbit: evaluates at U-dagger p.
double wigner_orbit(const WignerEvaluator& ev, const UnitaryMap& U, const PhasePoint& p);

// d > 2: transverse Gaussian factor times the planar evaluator, both taken
// at the common hbar = E/(N + d/2).
double wigner_d(const WignerEvaluator& ev, const PhasePoint& p);

// Brute-force tensor-quadrature oracle for the d-dimensional integral
// (no contour shift; oscillatory integrand), d = 3 only, small N.
double wigner_d_direct(const QuantumNumbers& qn, const PhasePoint& p, int nodes_per_axis);

struct Observable {
    enum class Kind { unit, energy, gaussian };
    Kind kind = Kind::unit;
    double sigma = 1.0;
    PhasePoint center;

    static Observable one();
    static Observable energy();
    static Observable gaussian(double sigma, PhasePoint center);
};

// integral of observable * W over T*R^2, exact (merged Gaussian weight,
// m = N + 6 nodes per axis)
double wigner_moment(const WignerEvaluator& ev, const Observable& obs);

struct GridSlice {
    PhasePoint origin;
    PhasePoint span1, span2;  // directions; lattice runs extent * [-1, 1] along each
    double extent1 = 1.0, extent2 = 1.0;
};

struct WignerField {
    GridSlice slice;
    int n1 = 0, n2 = 0;
    std::vector<double> values;  // row-major, index i * n2 + j
    QuantumNumbers qn;
    std::string method;
    int m = 0;

    std::string to_csv() const;
    std::string to_json() const;
};

WignerField wigner_grid(const WignerEvaluator& ev, const GridSlice& slice, int n1, int n2);

namespace detail {

// Extended-precision core sum, defined in its own translation unit.
// Returns ln|Re S|, sign of Re S and the term/sum depth for
// S = sum_{jk} w_j w_k (A B)^N over the shifted tensor rule.
struct WideSum {
    double log_re = 0;
    int sign_re = 0;  // 0 when Re S == 0
    double depth = 0;
};
WideSum wigner_sum_wide(int N, double E, double a0r, double a0i, int m);

}  // namespace detail
}  // namespace ow
