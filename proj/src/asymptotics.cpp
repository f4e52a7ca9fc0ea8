#include "ow/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "ow/numerics.hpp"

namespace ow {
namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTaylorWindow = 1e-3;

// Maclaurin coefficients of a(u)/u; the closed form loses relative accuracy
// near the removable point faster than 1e-9 once |u| < 1e-3.
constexpr double kACoef[7] = {
    3.1748021039363989949,  // 2^{5/3}
    0.31748021039363999036,
    -0.036283452616416097959,
    0.0074582652599557378973,
    -0.0019361646143062116547,
    0.00057380939246537765066,
    -0.00018553640172728064184,
};

// Maclaurin coefficients of mu00(u) about the removable point.
constexpr double kMuCoef[9] = {
    9.9739349663280101334,  // 2^{5/3} pi
    23.93744391918722432,
    89.67042484012991964,
    209.82626106305542068,
    382.65153852178749123,
    629.44743217687136572,
    914.95722112206760819,
    1201.4780053627233629,
    1450.9831702537437629,
};

double a_series(double u) {
    double s = kACoef[6];
    for (int k = 5; k >= 0; --k) s = kACoef[k] + u * s;
    return u * s;
}

double mu_series(double u) {
    double s = kMuCoef[8];
    for (int k = 7; k >= 0; --k) s = kMuCoef[k] + u * s;
    return s;
}

// a(u) by the closed case split; sign(a) = sign(u)
double a_closed(double u) {
    if (std::abs(u) < kTaylorWindow) return a_series(u);
    if (u > 0) {
        const double s = std::sqrt(u * (u + 2.0));
        const double a32 = 3.0 * ((u + 1.0) * s - std::acosh(1.0 + u));
        return std::cbrt(a32 * a32);
    }
    const double s = std::sqrt(-u * (u + 2.0));
    const double a32 = 3.0 * (std::acos(1.0 + u) - (u + 1.0) * s);
    return -std::cbrt(a32 * a32);
}

// a^{1/2} on the branch that keeps the saddle pair exactly conjugate for
// u < 0 (pure imaginary), plain real root for u > 0
cd sqrt_a_branch(double u) {
    const double a = a_closed(u);
    if (u >= 0) return {std::sqrt(a), 0.0};
    return {0.0, std::sqrt(-a)};
}

cd saddle_z(double uu, int sign) {
    const cd s = std::sqrt(cd(uu * (uu + 2.0), 0.0));
    const cd v = (sign > 0 ? 2.0 : -2.0) * cd(0.0, 1.0) * s;
    return 1.0 + uu + cd(0.0, 0.5) * v;
}

// (dT/dv)^2 at the sign-labelled saddle
cd dT2(double uu, int sign) {
    const cd z = saddle_z(uu, sign);
    return (1.0 / (z * z) - 1.0) / (-4.0 * double(sign) * sqrt_a_branch(uu));
}

// Square root of dT2 with the sign carried by continuity from the u = 0
// seed i 2^{-2/3}. The walk only selects signs, so no stepping error
// accumulates in the returned value.
cd tracked_dT(double u, int sign) {
    constexpr int kSteps = 400;
    cd prev(0.0, 0.62996052494743658238);  // 2^{-2/3} i
    for (int k = 1; k <= kSteps; ++k) {
        const double uu = u * k / kSteps;
        cd c = std::sqrt(dT2(uu, sign));
        if (std::abs(c - prev) > std::abs(-c - prev)) c = -c;
        prev = c;
    }
    return prev;
}

cd g_of(const cd& v, double u) {
    const cd z = 1.0 + u + cd(0.0, 0.5) * v;
    return std::sqrt(2.0) * std::exp(-v * v / 4.0 - cd(0.0, 1.0) * v * (1.0 + u)) /
           std::sqrt(1.0 / (z * z) + 1.0);
}

}  // namespace

cd phi_of(cd v2, double u) {
    const cd z = 1.0 + u + cd(0.0, 0.5) * v2;
    const cd z2 = z * z;
    if (z2.real() < 0.0 && std::abs(z2.imag()) <= 1e-9 * std::abs(z2))
        throw domain_error("phase argument sits on the logarithm's cut");
    return -cd(0.0, 1.0) * std::log(z2) + cd(0.0, 0.25) * v2 * v2 -
           v2 * (1.0 + u);
}

cd phi_derivative(cd v2, double u) {
    const cd z = 1.0 + u + cd(0.0, 0.5) * v2;
    return 1.0 / z + cd(0.0, 0.5) * v2 - (1.0 + u);
}

SaddleData saddle_data(double u) {
    if (u < -0.95 || u > 2.0)
        throw domain_error("saddle data supported on [-0.95, 2]");
    SaddleData s;
    s.u = u;
    const cd r = std::sqrt(cd(u * (u + 2.0), 0.0));
    s.v_plus = 2.0 * cd(0.0, 1.0) * r;
    s.v_minus = -s.v_plus;
    s.phi_plus = phi_of(s.v_plus, u);
    s.phi_minus = phi_of(s.v_minus, u);
    return s;
}

EdgeProfile edge_profile(double u) {
    if (u < -0.95 || u > 2.0)
        throw domain_error("edge profile supported on [-0.95, 2]");
    EdgeProfile e;
    e.u = u;
    e.a = a_closed(u);
    e.b = u * (u + 2.0);
    e.mu00 = mu00(u);
    return e;
}

double mu00(double u) {
    if (u < -0.95 || u > 2.0)
        throw domain_error("mu00 supported on [-0.95, 2]");
    if (std::abs(u) < kTaylorWindow) return mu_series(u);

    const cd r = std::sqrt(cd(u * (u + 2.0), 0.0));
    const cd vp = 2.0 * cd(0.0, 1.0) * r;
    const cd vm = -vp;
    const cd val = cd(0.0, kPi) * (g_of(vp, u) / tracked_dT(u, +1) +
                                   g_of(vm, u) / tracked_dT(u, -1));
    if (std::abs(val.imag()) > 1e-9 * std::abs(val))
        throw integrity_error("mu00 imaginary residue out of tolerance");
    return val.real();
}

double mu00_closed(double u) {
    if (!(u > 0.0)) throw domain_error("closed-form mu00 requires u > 0");
    if (u > 2.0) throw domain_error("closed-form mu00 supported on (0, 2]");
    const double s = std::sqrt(u * (u + 2.0));
    const double a = a_closed(u);
    const double gp = std::sqrt(2.0) * std::exp(s * s + 2.0 * s * (1.0 + u)) /
                      std::sqrt((1.0 + u + s) * (1.0 + u + s) + 1.0);
    const double gm = std::sqrt(2.0) * std::exp(s * s - 2.0 * s * (1.0 + u)) /
                      std::sqrt((1.0 + u - s) * (1.0 + u - s) + 1.0);
    const double rp = std::sqrt((s * s + (1.0 + u) * s) / (2.0 * std::sqrt(a)));
    const double rm = std::sqrt((-s * s + (1.0 + u) * s) / (2.0 * std::sqrt(a)));
    return kPi * (gp / rp + gm / rm);
}

ScalingPrediction predict_scaling(double u, std::span<const double> w,
                                  const QuantumNumbers& qn) {
    if (static_cast<int>(w.size()) != 2 * (qn.d - 1))
        throw domain_error("normal offset must have 2(d-1) components");
    const EdgeProfile e = edge_profile(u);
    double w2 = 0.0;
    for (double wi : w) w2 += wi * wi;
    const double pref = e.mu00 * std::exp(-2.0 * (qn.N + 1.0) * w2) /
                        (4.0 * std::pow(kPi, qn.d + 1) * std::pow(qn.E, qn.d));
    const double x = e.a * std::pow(qn.N, 2.0 / 3.0);
    ScalingPrediction p;
    p.value = pref * airy_ai(x);
    p.error_scale =
        pref * std::abs(airy_ai_prime(x)) * std::pow(qn.N, -2.0 / 3.0);
    return p;
}

double predict_limit(double u, std::span<const double> w, double E, int d) {
    if (d < 2) throw domain_error("dimension must be >= 2");
    if (!(E > 0)) throw domain_error("energy must be positive");
    double w2 = 0.0;
    for (double wi : w) w2 += wi * wi;
    return std::exp(-w2) * airy_ai(2.0 * u) /
           (std::cbrt(2.0) * std::pow(kPi, d) * std::pow(E, d));
}

PointwisePrediction predict_pointwise(Regime regime, const QuantumNumbers& qn,
                                      double t) {
    PointwisePrediction p{kNan, kNan};
    switch (regime) {
        case Regime::on_orbit:
            p.value = predict_limit(0.0, {}, qn.E, qn.d);
            p.exponent = -2.0 / 3.0;  // order of the first correction
            break;
        case Regime::interior:
            if (!(t > 0.0 && t < 1.0))
                throw domain_error("interior point parameter must lie in (0, 1)");
            p.exponent = -1.0 / 6.0;
            break;
        case Regime::off_shell:
            p.value = 0.0;
            p.exponent = -kInf;
            break;
        case Regime::origin:
            p.value = ((qn.N % 2) ? -1.0 : 1.0) *
                      std::pow(qn.N + 0.5 * qn.d, qn.d) /
                      (std::pow(kPi, qn.d) * std::pow(qn.E, qn.d));
            break;
    }
    return p;
}

SegmentAreaCheck segment_area_check(double u, double E) {
    if (!(u >= -0.9 && u < 0.0))
        throw domain_error("segment comparison defined for u in [-0.9, 0)");
    if (!(E > 0)) throw domain_error("energy must be positive");
    SegmentAreaCheck c;
    const double a = a_closed(u);
    c.transform_value = (2.0 * E / 3.0) * std::pow(-a, 1.5);
    c.sign_flip = true;  // -(2E/3) i a^{3/2} is minus the area on this branch
    const double R = std::sqrt(2.0 * E);
    const double h = -u * R;
    c.geometric_area =
        R * R * std::acos(1.0 - h / R) - (R - h) * std::sqrt(2.0 * R * h - h * h);
    return c;
}

double projector_limit(double u, double E) {
    return 0.5 * predict_limit(u, {}, E, 2);
}

}  // namespace ow
