#include "ow/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "ow/parallel.hpp"

namespace ow {
namespace {

constexpr double kPi = 3.14159265358979323846;

void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

double classical_value(const Observable& obs, const PhasePoint& p) {
    switch (obs.kind) {
        case Observable::Kind::unit:
            return 1.0;
        case Observable::Kind::energy:
            return hamiltonian(p);
        case Observable::Kind::gaussian: {
            double q = 0;
            for (int a = 0; a < p.dim(); ++a) {
                const double dx = p.x[a] - obs.center.x[a];
                const double dxi = p.xi[a] - obs.center.xi[a];
                q += dx * dx + dxi * dxi;
            }
            return std::exp(-q / (2.0 * obs.sigma * obs.sigma));
        }
    }
    return 0.0;
}

double mean_over_samples(const std::vector<double>& slots) {
    KahanAccumulator<double> acc;
    for (double v : slots) acc.add(v);
    return acc.value() / static_cast<double>(slots.size());
}

}  // namespace

std::string ConvergenceReport::to_csv() const {
    std::string out = "N,error\n";
    for (size_t i = 0; i < Ns.size(); ++i) {
        append_g17(out, Ns[i]);
        out += ',';
        append_g17(out, errors[i]);
        out += '\n';
    }
    return out;
}

std::string ConvergenceReport::to_json(const std::string& claim,
                                       double target_exponent,
                                       bool pass) const {
    nlohmann::json j;
    j["claim"] = claim;
    j["target_exponent"] = target_exponent;
    j["fitted_exponent"] = fitted_exponent;
    j["residual"] = residual;
    j["pass"] = pass;
    return j.dump();
}

ConvergenceReport rate_fit(std::span<const double> Ns,
                           std::span<const double> errors) {
    const size_t n = Ns.size();
    if (n != errors.size() || n < 3)
        throw domain_error("rate fit needs at least three (N, error) pairs");
    for (size_t i = 0; i < n; ++i) {
        if (!(Ns[i] > 0)) throw domain_error("rate fit requires positive N");
        if (!(errors[i] > 0))
            throw domain_error("rate fit requires strictly positive errors");
    }

    ConvergenceReport r;
    r.Ns.assign(Ns.begin(), Ns.end());
    r.errors.assign(errors.begin(), errors.end());

    double mx = 0, my = 0;
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        lx[i] = std::log(Ns[i]);
        ly[i] = std::log(errors[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0) throw domain_error("rate fit needs distinct N values");
    r.fitted_exponent = sxy / sxx;
    const double b0 = my - r.fitted_exponent * mx;
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double res = ly[i] - (b0 + r.fitted_exponent * lx[i]);
        ss += res * res;
    }
    r.residual = std::sqrt(ss / n);
    return r;
}

std::vector<ScalingRow> scaling_scan(const QuantumNumbers& qn,
                                     std::span<const double> u_grid,
                                     std::span<const std::array<double, 2>> w_grid) {
    if (qn.d != 2) throw domain_error("scaling scan is planar (d = 2)");
    for (double u : u_grid)
        if (std::abs(u) > 0.5 + 1e-12)
            throw domain_error("scaling scan supported on |u| <= 0.5");
    for (const auto& w : w_grid)
        if (std::hypot(w[0], w[1]) > 0.3 + 1e-12)
            throw domain_error("scaling scan supported on |w| <= 0.3");

    const OrbitFrame frame = build_frame(gamma0(0.0, qn.E), qn.E);
    const WignerEvaluator ev(qn);
    const double scale = std::pow(static_cast<double>(qn.N), -5.0 / 3.0);

    std::vector<ScalingRow> rows(u_grid.size() * w_grid.size());
    parallel_for(rows.size(), [&](size_t idx) {
        const double u = u_grid[idx / w_grid.size()];
        const auto& w = w_grid[idx % w_grid.size()];
        ScalingRow& r = rows[idx];
        r.u = u;
        r.w = w;
        const PhasePoint p = scaling_point(frame, u, w);
        r.exact = scale * wigner_gamma0_2d(ev, p);
        const ScalingPrediction sp = predict_scaling(u, w, qn);
        r.predicted = sp.value;
        r.error_scale = sp.error_scale;
    });
    return rows;
}

std::string scaling_csv(std::span<const ScalingRow> rows) {
    std::string out = "u,w1,w2,exact,predicted,error_scale\n";
    for (const auto& r : rows) {
        append_g17(out, r.u);
        out += ',';
        append_g17(out, r.w[0]);
        out += ',';
        append_g17(out, r.w[1]);
        out += ',';
        append_g17(out, r.exact);
        out += ',';
        append_g17(out, r.predicted);
        out += ',';
        append_g17(out, r.error_scale);
        out += '\n';
    }
    return out;
}

ConvergenceReport pointwise_scan(std::span<const QuantumNumbers> qn_list,
                                 Regime regime, double t) {
    if (regime == Regime::origin)
        throw domain_error("the origin value is an exact identity, not a rate");
    if (qn_list.size() < 3)
        throw domain_error("pointwise scan needs at least three levels");
    for (const auto& qn : qn_list)
        if (qn.d != 2) throw domain_error("pointwise scan is planar (d = 2)");

    // scaled values, one per level
    std::vector<double> vals(qn_list.size());
    parallel_for(qn_list.size(), [&](size_t i) {
        const QuantumNumbers& qn = qn_list[i];
        PhasePoint p = gamma0(0.0, qn.E);
        if (regime == Regime::interior) {
            for (auto& c : p.x) c *= t;
            for (auto& c : p.xi) c *= t;
        } else if (regime == Regime::off_shell) {
            p = PhasePoint({std::sqrt(qn.E), 0.0}, {0.0, 0.0});
        }
        const WignerEvaluator ev(qn_list[i]);
        vals[i] = std::pow(static_cast<double>(qn.N), -5.0 / 3.0) *
                  wigner_gamma0_2d(ev, p);
    });

    std::vector<double> Ns, errs;
    if (regime == Regime::interior) {
        // Window-max envelope: the two interfering critical points make the
        // raw sequence oscillate through zero, so individual values carry no
        // rate. Windows of 12 levels, stride 6, abscissa at the center.
        int nmin = qn_list[0].N, nmax = qn_list[0].N;
        for (const auto& qn : qn_list) {
            nmin = std::min(nmin, qn.N);
            nmax = std::max(nmax, qn.N);
        }
        for (int lo = nmin; lo + 12 <= nmax + 1; lo += 6) {
            double env = 0;
            bool any = false;
            for (size_t i = 0; i < qn_list.size(); ++i)
                if (qn_list[i].N >= lo && qn_list[i].N < lo + 12) {
                    env = std::max(env, std::abs(vals[i]));
                    any = true;
                }
            if (!any) continue;
            Ns.push_back(lo + 6);
            errs.push_back(env);
        }
        if (Ns.size() < 3)
            throw domain_error("interior envelope needs at least three windows");
    } else {
        for (size_t i = 0; i < qn_list.size(); ++i) {
            const QuantumNumbers& qn = qn_list[i];
            Ns.push_back(qn.N);
            if (regime == Regime::on_orbit)
                errs.push_back(std::abs(vals[i] - predict_limit(0.0, {}, qn.E, 2)));
            else
                errs.push_back(std::abs(vals[i]));
        }
    }
    return rate_fit(Ns, errs);
}

WeakLimitResult weak_limit_test(const Observable& obs, const QuantumNumbers& qn) {
    if (qn.d != 2) throw domain_error("weak-limit test is planar (d = 2)");
    if (qn.N > 20)
        throw domain_error("weak-limit test capped at N = 20 (4D node budget)");
    if (obs.kind == Observable::Kind::gaussian && obs.center.dim() != 2)
        throw domain_error("gaussian observable center must be planar");

    WeakLimitResult r;
    const WignerEvaluator ev(qn, qn.N + 6);
    r.lhs = wigner_moment(ev, obs);

    constexpr int kNodes = 512;  // periodic trapezoid, spectrally accurate
    KahanAccumulator<double> acc;
    for (int i = 0; i < kNodes; ++i)
        acc.add(classical_value(obs, gamma0(2.0 * kPi * i / kNodes, qn.E)));
    r.rhs = acc.value() / kNodes;
    r.error = std::abs(r.lhs - r.rhs);
    return r;
}

namespace {

double projector_mean(const WignerEvaluator& ev, const PhasePoint& p, long K) {
    std::vector<double> slots(static_cast<size_t>(K));
    parallel_for(slots.size(), [&](size_t k) {
        slots[k] = wigner_orbit(ev, sample_cp1(static_cast<long>(k), K), p);
    });
    return mean_over_samples(slots);
}

WignerEvaluator projector_evaluator(const QuantumNumbers& qn) {
    // The double kernel's noise is far below the K-sampling error here, and
    // single-sample integrity stays armed, so skip the escalation machinery.
    return WignerEvaluator(qn, -1, WignerMethod::contour_shifted_exact,
                           WignerPrecision::fast);
}

void projector_guards(const PhasePoint& p, const QuantumNumbers& qn, long K) {
    if (qn.d != 2 || p.dim() != 2)
        throw domain_error("projector average is planar (d = 2)");
    if (qn.N > 50) throw domain_error("projector average capped at N = 50");
    if (K < 2 || K > 8192)
        throw domain_error("projector sample count must lie in [2, 8192]");
}

}  // namespace

double projector_average(const PhasePoint& p, const QuantumNumbers& qn, long K) {
    projector_guards(p, qn, K);
    return (qn.N + 1) * projector_mean(projector_evaluator(qn), p, K);
}

ProjectorEstimate projector_average_est(const PhasePoint& p,
                                        const QuantumNumbers& qn, long K) {
    projector_guards(p, qn, K);
    const WignerEvaluator ev = projector_evaluator(qn);
    ProjectorEstimate e;
    e.value = (qn.N + 1) * projector_mean(ev, p, K);
    e.value_half = (qn.N + 1) * projector_mean(ev, p, K / 2);
    e.est_error = 2.0 * std::abs(e.value - e.value_half);
    return e;
}

}  // namespace ow
