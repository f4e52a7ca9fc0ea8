#pragma once

#include <complex>
#include <span>

#include "ow/phase_space.hpp"

namespace ow {

// Edge-profile data at radial offset u from the orbit circle: the cube-root
// coordinate a (same sign as u), the quadratic invariant b = u(u+2), and the
// leading transverse amplitude mu00.
struct EdgeProfile {
    double u = 0;
    double a = 0;
    double b = 0;
    double mu00 = 0;
};

struct SaddleData {
    double u = 0;
    std::complex<double> v_plus, v_minus;
    std::complex<double> phi_plus, phi_minus;
};

// Phase of the transverse frequency integral, principal logarithm.
// Throws domain_error when the log argument sits within 1e-9 of its cut.
std::complex<double> phi_of(std::complex<double> v2, double u);
std::complex<double> phi_derivative(std::complex<double> v2, double u);

// The stationary pair of phi(. , u) with their phase values.
SaddleData saddle_data(double u);

// Closed-form profile on -0.95 <= u <= 2 with a Maclaurin guard around the
// removable point u = 0.
EdgeProfile edge_profile(double u);

// Leading amplitude, real by saddle pairing; the evaluation runs through
// complex square roots whose signs are tracked by continuity from u = 0.
// Domain |u| <= 0.95. Throws integrity_error if the imaginary residue
// exceeds 1e-9 of the value.
double mu00(double u);

// Independent closed form, valid for u > 0 only (cross-check route).
double mu00_closed(double u);

struct ScalingPrediction {
    double value = 0;        // leading term for N^{-(d - 1/3)} W
    double error_scale = 0;  // size of the first correction, not a bound
};

// Prediction at the frame point (1 + u) base + sum w_i normals_i.
// w must have 2(d-1) entries.
ScalingPrediction predict_scaling(double u, std::span<const double> w,
                                  const QuantumNumbers& qn);

// Pointwise limit in edge coordinates: u, w held fixed while the evaluation
// point contracts toward the orbit like (2N)^{-2/3} and (2N)^{-1/2}.
double predict_limit(double u, std::span<const double> w, double E, int d);

enum class Regime { on_orbit, interior, off_shell, origin };

// Either a limiting value (on_orbit, origin), a decay exponent for the
// oscillation envelope on the N^{-(d-1/3)} scale (interior), or the
// rapid-decay marker exponent -inf (off_shell). Unused fields are NaN.
struct PointwisePrediction {
    double value;
    double exponent;
};

PointwisePrediction predict_pointwise(Regime regime, const QuantumNumbers& qn,
                                      double t = 0.5);

// |(2E/3) a^{3/2}| against the circular-segment area cut off by the chord
// through (1+u) sqrt(2E); u in [-0.9, 0). Under principal branches the
// transform value carries the opposite sign, which is reported, and the
// comparison is made between absolute values.
struct SegmentAreaCheck {
    double transform_value = 0;
    double geometric_area = 0;
    bool sign_flip = false;
};

SegmentAreaCheck segment_area_check(double u, double E);

// Limit profile of the spectral-projector average on the N^{-(d-1/3)} scale;
// exactly half of predict_limit(u, 0, E, 2).
double projector_limit(double u, double E);

}  // namespace ow
