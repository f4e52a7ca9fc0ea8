#include "ow/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

#include "ow/validation.hpp"

namespace ow {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---- 1: exact origin value --------------------------------------------------

CriterionResult c1() {
    CriterionResult r{1, "origin closed form", true, ""};
    double worst = 0;
    for (double E : {0.5, 1.0, 2.0})
        for (int N = 0; N <= 60; ++N) {
            WignerEvaluator ev(QuantumNumbers(N, 2, E));
            const double got = wigner_gamma0_2d(ev, PhasePoint::zero(2));
            const double want =
                ((N % 2) ? -1.0 : 1.0) * (N + 1.0) * (N + 1.0) / (kPi * kPi * E * E);
            worst = std::max(worst, std::abs(got - want) / std::abs(want));
        }
    r.pass = worst <= 1e-9;
    r.detail = fmt("max rel dev %.2e over N<=60, E in {0.5,1,2} (tol 1e-9)", worst);
    return r;
}

// ---- 2: unit and energy moments --------------------------------------------

CriterionResult c2() {
    CriterionResult r{2, "unit and energy moments", true, ""};
    double worst1 = 0, worstH = 0;
    for (int N : {0, 5, 10, 20}) {
        WignerEvaluator ev(QuantumNumbers(N, 2, 1.0));
        worst1 = std::max(worst1, std::abs(wigner_moment(ev, Observable::one()) - 1.0));
        worstH = std::max(worstH,
                          std::abs(wigner_moment(ev, Observable::energy()) - 1.0));
    }
    r.pass = worst1 <= 1e-8 && worstH <= 1e-8;
    r.detail = fmt("normalization dev %.2e, energy dev %.2e (tol 1e-8)", worst1, worstH);
    return r;
}

// ---- 3: rotation invariance -------------------------------------------------

CriterionResult c3() {
    CriterionResult r{3, "planar rotation invariance", true, ""};
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> box(-1.2, 1.2), ang(0.0, 2.0 * kPi);
    WignerEvaluator ev(QuantumNumbers(100, 2, 1.0));
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        const PhasePoint p({box(rng), box(rng)}, {box(rng), box(rng)});
        const double theta = ang(rng);
        const double w0 = wigner_gamma0_2d(ev, p);
        const double w1 = wigner_gamma0_2d(ev, rotate_in_orbit_plane(theta, p));
        worst = std::max(worst, std::abs(w1 - w0) / std::abs(w0));
    }
    r.pass = worst <= 1e-9;
    r.detail = fmt("max rel dev %.2e over 100 draws at N=100 (tol 1e-9)", worst);
    return r;
}

// ---- 4: contour-shifted evaluator vs direct integration ---------------------

CriterionResult c4() {
    CriterionResult r{4, "quadrature vs direct integration", true, ""};
    std::mt19937 rng(4321);
    std::uniform_real_distribution<double> box(-1.5, 1.5);
    std::uniform_int_distribution<int> level(0, 16);
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
        const int N = level(rng);
        const PhasePoint p({box(rng), box(rng)}, {box(rng), box(rng)});
        const QuantumNumbers qn(N, 2, 1.0);
        WignerEvaluator ev(qn);
        const double got = wigner_gamma0_2d(ev, p);
        const double ref = wigner_gamma0_direct(qn, p, 1e-9);
        const double scale = (N + 1.0) * (N + 1.0);
        worst = std::max(worst, std::abs(got - ref) / scale);
    }
    r.pass = worst <= 1e-7;
    r.detail = fmt("max scaled dev %.2e over 50 draws, N<=16 (tol 1e-7)", worst);
    return r;
}

// ---- 5: on-orbit error decay rate -------------------------------------------

CriterionResult c5() {
    CriterionResult r{5, "on-orbit error decay rate", true, ""};
    std::vector<QuantumNumbers> qns;
    for (int N : {25, 50, 100, 200}) qns.emplace_back(N, 2, 1.0);
    const ConvergenceReport rep = pointwise_scan(qns, Regime::on_orbit);
    r.pass = rep.fitted_exponent >= -0.85 && rep.fitted_exponent <= -0.5 &&
             rep.residual <= 0.15;
    r.detail = fmt("fitted %.4f (band [-0.85,-0.5]), residual %.3f (tol 0.15)",
                   rep.fitted_exponent, rep.residual);
    return r;
}

// ---- 6: edge profile sup norm and its N-rate --------------------------------

double sup_edge_error(int N, double& sup_pred) {
    const QuantumNumbers qn(N, 2, 1.0);
    std::vector<double> ug(40);
    for (int i = 0; i < 40; ++i) ug[i] = -0.4 + 0.8 * i / 39.0;
    const std::vector<std::array<double, 2>> wg{{0.0, 0.0}};
    double sup_err = 0;
    sup_pred = 0;
    for (const ScalingRow& row : scaling_scan(qn, ug, wg)) {
        sup_err = std::max(sup_err, std::abs(row.exact - row.predicted));
        sup_pred = std::max(sup_pred, std::abs(row.predicted));
    }
    return sup_err;
}

CriterionResult c6() {
    CriterionResult r{6, "edge profile sup norm and rate", true, ""};
    double pred200 = 0, pred50 = 0;
    const double e200 = sup_edge_error(200, pred200);
    const double e50 = sup_edge_error(50, pred50);
    const double ratio = e50 / e200;
    const double lo = std::pow(4.0, 2.0 / 3.0) / 3.0;
    const double hi = 3.0 * std::pow(4.0, 2.0 / 3.0);
    const bool sup_ok = e200 <= 0.05 * pred200;
    const bool ratio_ok = ratio >= lo && ratio <= hi;
    r.pass = sup_ok && ratio_ok;
    r.detail = fmt("N=200 sup err %.3e vs budget %.3e; N50/N200 ratio %.2f in [%.2f,%.2f]",
                   e200, 0.05 * pred200, ratio, lo, hi);
    return r;
}

// ---- 7: transverse Gaussian factor ------------------------------------------

CriterionResult c7() {
    CriterionResult r{7, "transverse Gaussian factor", true, ""};
    const QuantumNumbers qn(200, 2, 1.0);
    const double wmax = std::sqrt(2.0 / 201.0);  // 2(N+1)w^2 = 4
    std::vector<double> ug{0.0};
    std::vector<std::array<double, 2>> wg;
    for (int k = 0; k <= 10; ++k) wg.push_back({k * wmax / 10.0, 0.0});
    const auto rows = scaling_scan(qn, ug, wg);
    const double base = rows[0].exact;
    double worst = 0;
    for (const auto& row : rows) {
        const double g = std::exp(-2.0 * 201.0 * row.w[0] * row.w[0]);
        worst = std::max(worst, std::abs(row.exact / base - g) / g);
    }
    r.pass = worst <= 0.05;
    r.detail = fmt("max rel profile dev %.2e over 2(N+1)w1^2 <= 4 (tol 0.05)", worst);
    return r;
}

// ---- 8: rescaled approach to the edge limit ---------------------------------

CriterionResult c8() {
    CriterionResult r{8, "rescaled edge limit", true, ""};
    const double target = std::exp(-1.0) * airy_ai(2.0) / (std::cbrt(2.0) * kPi * kPi);
    const OrbitFrame frame = build_frame(gamma0(0.0, 1.0), 1.0);
    std::vector<double> rel;
    for (int N : {50, 100, 200}) {
        const QuantumNumbers qn(N, 2, 1.0);
        WignerEvaluator ev(qn);
        const double u = std::pow(2.0 * N, -2.0 / 3.0);
        const double w[2] = {1.0 / std::sqrt(2.0 * N), 0.0};
        const double exact = std::pow(double(N), -5.0 / 3.0) *
                             wigner_gamma0_2d(ev, scaling_point(frame, u, w));
        rel.push_back(std::abs(exact - target) / std::abs(target));
    }
    const bool decreasing = rel[0] > rel[1] && rel[1] > rel[2];
    r.pass = decreasing && rel[2] <= 0.05;
    r.detail = fmt("rel errors %.3f -> %.3f -> %.3f (%s, final tol 0.05)", rel[0],
                   rel[1], rel[2], decreasing ? "decreasing" : "NOT decreasing");
    return r;
}

// ---- 9: interior envelope decay ---------------------------------------------

CriterionResult c9() {
    CriterionResult r{9, "interior envelope decay", true, ""};
    std::vector<QuantumNumbers> qns;
    for (int N = 25; N <= 200; ++N) qns.emplace_back(N, 2, 1.0);
    const ConvergenceReport rep = pointwise_scan(qns, Regime::interior);
    r.pass = rep.fitted_exponent <= -0.10;
    r.detail = fmt("envelope exponent %.4f over %zu windows (tol <= -0.10)",
                   rep.fitted_exponent, rep.Ns.size());
    return r;
}

// ---- 10: off-shell superpolynomial decay ------------------------------------

CriterionResult c10() {
    CriterionResult r{10, "off-shell superpolynomial decay", true, ""};
    std::vector<QuantumNumbers> qns;
    for (int N : {20, 40, 60, 80}) qns.emplace_back(N, 2, 1.0);
    const ConvergenceReport rep = pointwise_scan(qns, Regime::off_shell);
    r.pass = rep.fitted_exponent <= -4.0;
    r.detail = fmt("fitted exponent %.2f (tol <= -4)", rep.fitted_exponent);
    return r;
}

// ---- 11: weak limit against the orbit average -------------------------------

CriterionResult c11() {
    CriterionResult r{11, "orbit-average weak limit", true, ""};
    const Observable g = Observable::gaussian(0.7, gamma0(0.0, 1.0));
    std::vector<double> Ns, errs;
    double worst_unit = 0;
    for (int N : {4, 8, 16}) {
        const QuantumNumbers qn(N, 2, 1.0);
        worst_unit =
            std::max(worst_unit, weak_limit_test(Observable::one(), qn).error);
        Ns.push_back(N);
        errs.push_back(weak_limit_test(g, qn).error);
    }
    const ConvergenceReport rep = rate_fit(Ns, errs);
    const bool unit_ok = worst_unit <= 1e-9;
    const bool rate_ok = rep.fitted_exponent <= -0.8;
    r.pass = unit_ok && rate_ok;
    r.detail = fmt("gaussian exponent %.4f (tol <= -0.8); constant dev %.2e (tol 1e-9)",
                   rep.fitted_exponent, worst_unit);
    return r;
}

// ---- 12: edge coefficients vs the phase's saddle values ---------------------

CriterionResult c12() {
    CriterionResult r{12, "edge coefficients vs phase saddles", true, ""};
    double worst_a = 0, worst_b = 0;
    for (int i = 0; i < 40; ++i) {
        const double u = -0.9 + 2.9 * i / 39.0;
        const SaddleData s = saddle_data(u);
        const EdgeProfile e = edge_profile(u);
        const std::complex<double> a32 =
            std::complex<double>(0, 0.75) * (s.phi_plus - s.phi_minus);
        const std::complex<double> b =
            std::complex<double>(0, 0.5) * (s.phi_plus + s.phi_minus);
        // for u > 0 the saddle route gives a^{3/2} directly; for u < 0 it
        // gives -i |a|^{3/2}
        const double a32_closed =
            (u > 0 ? 1.0 : -1.0) * std::pow(std::abs(e.a), 1.5);
        const double a32_saddle = (u > 0) ? a32.real() : -a32.imag();
        const double a32_off = (u > 0) ? std::abs(a32.imag()) : std::abs(a32.real());
        worst_a = std::max(worst_a, std::abs(a32_saddle - std::abs(a32_closed)) +
                                        a32_off);
        worst_b = std::max(
            worst_b, std::abs(b.real() - e.b) + std::abs(b.imag()));
        if (e.b != u * (u + 2.0)) worst_b = std::max(worst_b, 1.0);
    }
    const double slope = edge_profile(1e-4).a / 1e-4;
    const double slope_dev = std::abs(slope - std::pow(2.0, 5.0 / 3.0));
    r.pass = worst_a <= 1e-10 && worst_b <= 1e-10 && slope_dev <= 1e-3;
    r.detail = fmt("saddle dev a %.2e, b %.2e (tol 1e-10); slope dev %.2e (tol 1e-3)",
                   worst_a, worst_b, slope_dev);
    return r;
}

// ---- 13: edge amplitude, complex route vs closed form -----------------------

CriterionResult c13() {
    CriterionResult r{13, "edge amplitude closed form", true, ""};
    double worst = 0;
    for (double u : {0.1, 0.25, 0.5, 1.0, 2.0})
        worst = std::max(worst,
                         std::abs(mu00(u) - mu00_closed(u)) / mu00_closed(u));
    const double limit_dev = std::abs(mu00(1e-8) - std::pow(2.0, 5.0 / 3.0) * kPi);
    r.pass = worst <= 1e-8 && limit_dev <= 1e-6;
    r.detail = fmt("max rel dev %.2e (tol 1e-8); u->0 limit dev %.2e (tol 1e-6)",
                   worst, limit_dev);
    return r;
}

// ---- 14: tunneling exponent equals the circular-segment area ----------------

CriterionResult c14() {
    CriterionResult r{14, "tunneling exponent vs segment area", true, ""};
    double worst = 0;
    for (double E : {1.0, 2.0})
        for (double u : {-0.1, -0.3, -0.5, -0.7, -0.9}) {
            const SegmentAreaCheck c = segment_area_check(u, E);
            worst = std::max(worst,
                             std::abs(c.transform_value - c.geometric_area));
        }
    r.pass = worst <= 1e-10;
    r.detail = fmt("max area dev %.2e over 10 cases (tol 1e-10)", worst);
    return r;
}

// ---- 15: Airy oracle checks -------------------------------------------------

CriterionResult c15() {
    CriterionResult r{15, "Airy ODE residual and gamma identity", true, ""};
    const double h = 1e-4;
    double worst = 0;
    for (int i = 0; i <= 150; ++i) {
        const double x = -10.0 + 15.0 * i / 150.0;
        const double dd =
            (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        worst = std::max(worst, std::abs(dd - x * airy_ai(x)));
    }
    const double gamma13 = std::exp(log_gamma(1.0 / 3.0));
    const double identity = gamma13 * std::pow(3.0, -1.0 / 6.0) / (2.0 * kPi);
    const double id_dev = std::abs(airy_ai(0.0) - identity);
    r.pass = worst <= 1e-6 && id_dev <= 1e-12;
    r.detail = fmt("max ODE residual %.2e (tol 1e-6); gamma identity dev %.2e (tol 1e-12)",
                   worst, id_dev);
    return r;
}

// ---- 16: projector average --------------------------------------------------

CriterionResult c16() {
    CriterionResult r{16, "projector average", true, ""};
    const QuantumNumbers qn(50, 2, 1.0);

    // on-shell value at K = 4096 against the scaled edge constant
    const double scaled = std::pow(50.0, -5.0 / 3.0) *
                          projector_average(gamma0(0.0, 1.0), qn, 4096);
    const double target = airy_ai(0.0) / (std::pow(2.0, 4.0 / 3.0) * kPi * kPi);
    const double rel = std::abs(scaled - target) / target;

    // K-independence at the origin
    const PhasePoint origin = PhasePoint::zero(2);
    const double o1 = projector_average(origin, qn, 2);
    const double o2 = projector_average(origin, qn, 512);
    const double o3 = projector_average(origin, qn, 4096);
    const double kdev = std::max(std::abs(o1 - o3), std::abs(o2 - o3)) / std::abs(o3);

    // radiality on five frozen equal-energy pairs
    static const double pts[10][4] = {
        {0.00097376203142302616, 0.23648032150896464, -0.21700142775186151,
         -0.7049726871873665},
        {-0.20367869748274628, -0.44422752741557409, 0.026942506619024469,
         0.60037571021408009},
        {-0.62429476081761115, -0.78698516695086251, 0.62129576515733553,
         0.45266098883443179},
        {0.11428802020626254, -1.0087948423083943, -0.031714240802676028,
         0.75383381557185714},
        {-0.80255710800944779, -0.27321738371433552, -1.1351162854308576,
         -0.76991257176997507},
        {-1.3115085410512768, -0.16740954589186444, -0.90255484726613444,
         0.19316867854348255},
        {0.1150404631880506, -0.13718962284428815, -1.8470634500920309,
         -0.39534960547273146},
        {-0.057238964583806194, 0.13372294051668041, -1.8058078284025079,
         -0.56382618154282671},
        {-1.1399634815251642, -0.9422860893770314, 1.2359347051897189,
         -0.94076861717596194},
        {-0.065435205710159539, 1.7794341654947428, -1.1742316226368674,
         -0.22474959604699626},
    };
    bool radial_ok = true;
    double worst_excess = 0;
    for (int pair = 0; pair < 5; ++pair) {
        const double* a = pts[2 * pair];
        const double* b = pts[2 * pair + 1];
        const PhasePoint pa({a[0], a[1]}, {a[2], a[3]});
        const PhasePoint pb({b[0], b[1]}, {b[2], b[3]});
        const ProjectorEstimate ea = projector_average_est(pa, qn, 1024);
        const ProjectorEstimate eb = projector_average_est(pb, qn, 1024);
        const double dev = std::abs(ea.value - eb.value);
        const double budget = ea.est_error + eb.est_error +
                              1e-12 * std::max(std::abs(ea.value), 1.0);
        if (dev > budget) radial_ok = false;
        worst_excess = std::max(worst_excess, dev / budget);
    }

    r.pass = rel <= 0.10 && kdev <= 1e-12 && radial_ok;
    r.detail = fmt("on-shell rel %.3f (tol 0.10); origin K-dev %.1e (tol 1e-12); "
                   "radiality worst dev/budget %.2f",
                   rel, kdev, worst_excess);
    return r;
}

// ---- 17: three-dimensional product form -------------------------------------

CriterionResult c17() {
    CriterionResult r{17, "three-dimensional product form", true, ""};
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> box(-0.8, 0.8);
    std::uniform_int_distribution<int> level(0, 8);
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
        const int N = level(rng);
        const QuantumNumbers qn(N, 3, 1.0);
        const PhasePoint p({box(rng), box(rng), box(rng)},
                           {box(rng), box(rng), box(rng)});
        WignerEvaluator ev(qn);
        const double got = wigner_d(ev, p);
        const double ref = wigner_d_direct(qn, p, 64);
        worst = std::max(worst, std::abs(got - ref));
    }

    // stated origin constant for d = 3
    double worst_origin = 0;
    for (int N = 0; N <= 4; ++N) {
        const QuantumNumbers qn(N, 3, 1.0);
        WignerEvaluator ev(qn);
        const double got = wigner_d(ev, PhasePoint::zero(3));
        const double want =
            ((N % 2) ? -1.0 : 1.0) * std::pow(N + 1.0, 3) / (kPi * kPi);
        worst_origin = std::max(worst_origin, std::abs(got - want));
    }

    r.pass = worst <= 1e-6 && worst_origin <= 1e-6;
    r.detail = fmt("oracle dev %.2e (tol 1e-6); stated origin constant dev %.2e",
                   worst, worst_origin);
    return r;
}

}  // namespace

int criterion_count() { return 17; }

CriterionResult run_criterion(int id) {
    try {
        switch (id) {
            case 1: return c1();
            case 2: return c2();
            case 3: return c3();
            case 4: return c4();
            case 5: return c5();
            case 6: return c6();
            case 7: return c7();
            case 8: return c8();
            case 9: return c9();
            case 10: return c10();
            case 11: return c11();
            case 12: return c12();
            case 13: return c13();
            case 14: return c14();
            case 15: return c15();
            case 16: return c16();
            case 17: return c17();
        }
    } catch (const std::exception& e) {
        return CriterionResult{id, "criterion", false, fmt("exception: %s", e.what())};
    }
    throw domain_error("criterion id must lie in 1..17");
}

std::vector<CriterionResult> run_all_criteria() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= criterion_count(); ++id) out.push_back(run_criterion(id));
    return out;
}

}  // namespace ow
