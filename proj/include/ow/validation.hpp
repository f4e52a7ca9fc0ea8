#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ow/asymptotics.hpp"
#include "ow/wigner.hpp"

namespace ow {

// Log-log least-squares fit of an error sequence against N.
struct ConvergenceReport {
    std::vector<double> Ns;
    std::vector<double> errors;
    double fitted_exponent = 0;
    double residual = 0;  // RMS of the log-space fit

    std::string to_csv() const;
    std::string to_json(const std::string& claim, double target_exponent,
                        bool pass) const;
};

// >= 3 pairs, errors strictly positive
ConvergenceReport rate_fit(std::span<const double> Ns,
                           std::span<const double> errors);

struct ScalingRow {
    double u = 0;
    std::array<double, 2> w{0.0, 0.0};
    double exact = 0;      // N^{-5/3} W at the frame point
    double predicted = 0;  // leading hybrid Airy x Gaussian profile
    double error_scale = 0;
};

// Cross product of the u and w grids, frame anchored at gamma0(0).
// |u| <= 0.5 and |w| <= 0.3 (Euclidean).
std::vector<ScalingRow> scaling_scan(const QuantumNumbers& qn,
                                     std::span<const double> u_grid,
                                     std::span<const std::array<double, 2>> w_grid);

std::string scaling_csv(std::span<const ScalingRow> rows);

// Decay-rate scan of N^{-5/3} W against the regime prediction. The interior
// regime fits the sliding-window envelope because the raw values oscillate
// through zero; the origin regime is rejected (exact identity, not a rate).
ConvergenceReport pointwise_scan(std::span<const QuantumNumbers> qn_list,
                                 Regime regime, double t = 0.5);

struct WeakLimitResult {
    double lhs = 0;  // phase-space moment of the observable
    double rhs = 0;  // classical orbit average
    double error = 0;
};

WeakLimitResult weak_limit_test(const Observable& obs, const QuantumNumbers& qn);

// (N+1) x Fubini-Study average of the orbit-state Wigner value at p over a
// deterministic K-sample lattice. d = 2, N <= 50, 2 <= K <= 8192.
double projector_average(const PhasePoint& p, const QuantumNumbers& qn, long K);

struct ProjectorEstimate {
    double value = 0;       // K-sample average
    double value_half = 0;  // K/2-sample average
    double est_error = 0;   // 2 |value - value_half|
};

ProjectorEstimate projector_average_est(const PhasePoint& p,
                                        const QuantumNumbers& qn, long K);

}  // namespace ow
