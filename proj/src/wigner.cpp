#include "ow/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <vector>

#include <json.hpp>

#include "ow/numerics.hpp"
#include "ow/parallel.hpp"

namespace ow {
namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Escalation threshold for automatic precision. The double kernel's relative
// error is roughly the phase roundoff (~ N ulp sqrt(nodes)) amplified by
// e^depth; 5 keeps fast-final values near 1e-9 through N = 400.
constexpr double kDepthFastLimit = 5.0;

inline cd ipow(cd b, int n) {
    cd r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline cd cis(double t) { return {std::cos(t), std::sin(t)}; }

inline double logaddexp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// ln of the point prefactor of the tensor representation,
// W = e^{pref} sum_{jk} w_j w_k (A_{jk} B_{jk})^N
double log_prefactor(int N, double E, double H) {
    return (N + 2.0) * std::log(N + 1.0) - (N + 2.0) * std::log(E) -
           3.0 * std::log(kPi) - log_gamma(N + 1.0) - 2.0 * (N + 1.0) * H / E;
}

struct FastSum {
    double re = 0, im = 0;  // scaled tensor sum, max term magnitude 1
    double mlog = -kInf;    // ln of the largest |term|
};

// Double-precision core: work with A/sqrt(E), B/sqrt(E) so the E-dependence
// moves into a single N ln E shift, keep every term in log-polar form, and
// sum e^{lt - M} cis(theta) with Neumaier compensation. The imaginary part
// would vanish in exact arithmetic (terms come in conjugate pairs), so the
// summed Im is a direct readout of the kernel's own noise floor.
FastSum fast_core(int N, double a0r_s, double a0i_s, const QuadratureRule& q) {
    const int m = q.order;
    const double chat = 1.0 / std::sqrt(N + 1.0);
    static thread_local std::vector<double> lt, th;
    lt.resize(static_cast<size_t>(m) * m);
    th.resize(static_cast<size_t>(m) * m);

    double M = -kInf;
    for (int j = 0; j < m; ++j) {
        const double ar = a0r_s + chat * q.nodes[j];
        const double br = a0r_s - chat * q.nodes[j];
        const double lwj = q.log_weights[j];
        for (int k = 0; k < m; ++k) {
            const double ai = a0i_s + chat * q.nodes[k];
            const double bi = -a0i_s + chat * q.nodes[k];
            const double ra = ar * ar + ai * ai;
            const double rb = br * br + bi * bi;
            const size_t idx = static_cast<size_t>(j) * m + k;
            // N = 0 short-circuits so a node sitting on a zero of A or B
            // (log 0 = -inf) cannot produce 0 * inf
            const double l =
                lwj + q.log_weights[k] +
                (N ? 0.5 * N * (std::log(ra) + std::log(rb)) : 0.0);
            lt[idx] = l;
            th[idx] = N ? N * (std::atan2(ai, ar) + std::atan2(bi, br)) : 0.0;
            if (l > M) M = l;
        }
    }

    KahanAccumulator<double> sre, sim;
    const size_t n = static_cast<size_t>(m) * m;
    for (size_t idx = 0; idx < n; ++idx) {
        const double e = std::exp(lt[idx] - M);
        sre.add(e * std::cos(th[idx]));
        sim.add(e * std::sin(th[idx]));
    }
    return {sre.value(), sim.value(), M};
}

EvalDetail assemble_wide(int N, double E, double a0r, double a0i, double lp,
                         int m) {
    const detail::WideSum ws = detail::wigner_sum_wide(N, E, a0r, a0i, m);
    EvalDetail out;
    out.log_abs = lp + ws.log_re;
    out.value = ws.sign_re * std::exp(out.log_abs);
    out.im_ratio = 0.0;
    out.depth = ws.depth;
    out.wide = true;
    return out;
}

PhasePoint grid_point(const GridSlice& s, int n1, int n2, int i, int j) {
    const double t1 = (n1 == 1) ? 0.0 : s.extent1 * (2.0 * i / (n1 - 1.0) - 1.0);
    const double t2 = (n2 == 1) ? 0.0 : s.extent2 * (2.0 * j / (n2 - 1.0) - 1.0);
    const int d = s.origin.dim();
    PhasePoint p = PhasePoint::zero(d);
    for (int a = 0; a < d; ++a) {
        p.x[a] = s.origin.x[a] + t1 * s.span1.x[a] + t2 * s.span2.x[a];
        p.xi[a] = s.origin.xi[a] + t1 * s.span1.xi[a] + t2 * s.span2.xi[a];
    }
    return p;
}

void append_g17(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}

nlohmann::json point_json(const PhasePoint& p) {
    return {{"x", p.x}, {"xi", p.xi}};
}

double obs_factor_at_node(const Observable& obs, double p1, double p2,
                          double p3, double p4) {
    // the gaussian case is folded into the quadrature weight, so only the
    // polynomial observables contribute a node factor here
    if (obs.kind == Observable::Kind::energy)
        return 0.5 * (p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4);
    return 1.0;
}

// sum_{jk} w_j w_k Re[(A B)^N] in plain double, enumerated over conjugate
// pairs (j,k) <-> (m-1-j, m-1-k) so the result is exactly real
double core_real(int N, double c, double a0r, double a0i,
                 const QuadratureRule& q, const std::vector<double>& w) {
    const int m = q.order;
    KahanAccumulator<double> acc;
    auto term_re = [&](int j, int k) {
        const cd A(a0r + c * q.nodes[j], a0i + c * q.nodes[k]);
        const cd B(a0r - c * q.nodes[j], -a0i + c * q.nodes[k]);
        return w[j] * w[k] * ipow(A * B, N).real();
    };
    const int half = m / 2;
    for (int j = 0; j < half; ++j)
        for (int k = 0; k < m; ++k) acc.add(2.0 * term_re(j, k));
    if (m & 1) {
        for (int k = 0; k < half; ++k) acc.add(2.0 * term_re(half, k));
        acc.add(term_re(half, half));
    }
    return acc.value();
}

// adaptive Simpson with Richardson /15 acceptance, complex integrand
template <class F>
cd simpson_rec(const F& f, double a, double b, cd fa, cd fm, cd fb, cd s1,
               double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const cd flm = f(0.5 * (a + mid));
    const cd frm = f(0.5 * (mid + b));
    const cd sl = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cd sr = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
    const cd s2 = sl + sr;
    if (depth <= 0 || std::abs(s2 - s1) <= 15.0 * tol)
        return s2 + (s2 - s1) / 15.0;
    return simpson_rec(f, a, mid, fa, flm, fm, sl, 0.5 * tol, depth - 1) +
           simpson_rec(f, mid, b, fm, frm, fb, sr, 0.5 * tol, depth - 1);
}

// splits [a, b] into ~freq-resolved panels first so the oscillatory phase
// cannot alias through the 3-point bootstrap
template <class F>
cd integrate_1d(const F& f, double a, double b, double tol, double freq) {
    const int nseg =
        std::max(8, static_cast<int>(std::ceil((b - a) * freq / 3.0)));
    const double h = (b - a) / nseg;
    KahanAccumulator<double> re, im;
    for (int s = 0; s < nseg; ++s) {
        const double lo = a + s * h, hi = a + (s + 1) * h;
        const cd fa = f(lo), fm = f(0.5 * (lo + hi)), fb = f(hi);
        const cd s1 = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        const cd v = simpson_rec(f, lo, hi, fa, fm, fb, s1, tol / nseg, 30);
        re.add(v.real());
        im.add(v.imag());
    }
    return {re.value(), im.value()};
}

}  // namespace

WignerEvaluator::WignerEvaluator(QuantumNumbers qn_, int m_,
                                 WignerMethod method_,
                                 WignerPrecision precision_)
    : qn(qn_), m(m_ < 0 ? qn_.N + 4 : m_), method(method_),
      precision(precision_) {
    if (qn.N > 400) throw domain_error("level N > 400 is unsupported");
    if (method == WignerMethod::contour_shifted_exact) {
        if (m < qn.N + 2)
            throw domain_error(
                "quadrature order m below the exactness threshold N + 2");
        if (m > 1024) throw domain_error("quadrature order m > 1024");
    }
}

EvalDetail wigner_gamma0_2d_detail(const WignerEvaluator& ev,
                                   const PhasePoint& p) {
    if (ev.qn.d != 2) throw domain_error("planar evaluator requires d = 2");
    if (p.dim() != 2) throw domain_error("phase point must have d = 2");

    if (ev.method == WignerMethod::direct_oracle) {
        EvalDetail out;
        out.value = wigner_gamma0_direct(ev.qn, p, 1e-9);
        out.log_abs = out.value == 0.0 ? -kInf : std::log(std::abs(out.value));
        return out;
    }

    const int N = ev.qn.N;
    const double E = ev.qn.E;
    const double H = hamiltonian(p);
    const double a0r = p.x[0] + p.xi[1];
    const double a0i = p.x[1] - p.xi[0];
    const double lp = log_prefactor(N, E, H);

    if (ev.precision == WignerPrecision::wide)
        return assemble_wide(N, E, a0r, a0i, lp, ev.m);

    const double se = std::sqrt(E);
    const QuadratureRule& q = gauss_hermite(ev.m);
    const FastSum fs = fast_core(N, a0r / se, a0i / se, q);

    const double abs_re = std::abs(fs.re);
    const double depth = abs_re > 0.0 ? -std::log(abs_re) : kInf;
    const bool unusable = !std::isfinite(fs.re) || !std::isfinite(fs.im);

    if (ev.precision == WignerPrecision::automatic &&
        (unusable || depth > kDepthFastLimit))
        return assemble_wide(N, E, a0r, a0i, lp, ev.m);
    if (unusable) throw integrity_error("tensor sum is not finite");

    const double log_scale = lp + N * std::log(E) + fs.mlog;
    EvalDetail out;
    out.depth = depth;
    out.log_abs = abs_re > 0.0 ? log_scale + std::log(abs_re) : -kInf;
    out.value = (fs.re < 0.0 ? -1.0 : 1.0) * std::exp(out.log_abs);

    // |Im W| must stay below 1e-8 (|Re W| + N^2/E^2); the additive floor
    // tolerates noise on values that are exponentially small relative to
    // the distribution's sup scale
    const double re_ln = out.log_abs;
    const double floor_ln =
        N > 0 ? 2.0 * (std::log(static_cast<double>(N)) - std::log(E)) : -kInf;
    const double denom_ln = logaddexp(re_ln, floor_ln);
    if (fs.im != 0.0) {
        const double im_ln = log_scale + std::log(std::abs(fs.im));
        out.im_ratio = std::exp(im_ln - denom_ln);
        if (im_ln > std::log(1e-8) + denom_ln)
            throw integrity_error(
                "imaginary residue exceeds the double-kernel noise budget");
    }
    return out;
}

double wigner_gamma0_2d(const WignerEvaluator& ev, const PhasePoint& p) {
    return wigner_gamma0_2d_detail(ev, p).value;
}

double wigner_gamma0_direct(const QuantumNumbers& qn, const PhasePoint& p,
                            double tol) {
    if (qn.d != 2 || p.dim() != 2)
        throw domain_error("direct oracle requires d = 2");
    if (qn.N > 32)
        throw domain_error("direct oracle supports N <= 32");
    if (!(tol > 0)) throw domain_error("tolerance must be positive");

    const int N = qn.N;
    const double E = qn.E;
    const double hbar = E / (N + 1.0);
    const double x1 = p.x[0], x2 = p.x[1];
    const double k1 = p.xi[0] / hbar, k2 = p.xi[1] / hbar;
    const double logC2 =
        (N + 1.0) * (std::log(N + 1.0) - std::log(E)) - std::log(kPi) -
        log_gamma(N + 1.0);
    const double gx = logC2 - (N + 1.0) * (x1 * x1 + x2 * x2) / E;

    auto f = [&](double v1, double v2) -> cd {
        const cd zp(x1 + 0.5 * v1, x2 + 0.5 * v2);
        const cd zm(x1 - 0.5 * v1, x2 - 0.5 * v2);
        const double g = gx - (N + 1.0) * (v1 * v1 + v2 * v2) / (4.0 * E);
        return std::exp(g) * ipow(zp * std::conj(zm), N) *
               cis(-(v1 * k1 + v2 * k2));
    };

    const double prefW = 1.0 / (4.0 * kPi * kPi * hbar * hbar);
    const double target = tol * (N + 1.0) * (N + 1.0) / (E * E);

    // grow the box until a ring estimate bounds the discarded tail:
    // max |f| on the circle times circumference times the radial decay length
    double R = 2.0 * std::hypot(x1, x2) +
               std::sqrt(4.0 * E * (25.0 + 3.0 * N) / (N + 1.0));
    for (int it = 0; it < 100; ++it) {
        double M = 0.0;
        for (int a = 0; a < 32; ++a) {
            const double t = 2.0 * kPi * a / 32.0;
            M = std::max(M, std::abs(f(R * std::cos(t), R * std::sin(t))));
        }
        const double sigma = 2.0 * E / ((N + 1.0) * R);
        if (prefW * M * 2.0 * kPi * R * sigma <= 0.1 * target) break;
        R *= 1.3;
    }

    const double tol_out = 0.5 * target / prefW;
    const double tol_in = 0.3 * tol_out / (2.0 * R);
    auto g = [&](double v1) {
        return integrate_1d([&](double v2) { return f(v1, v2); }, -R, R,
                            tol_in, std::abs(k2));
    };
    const cd I = integrate_1d(g, -R, R, tol_out, std::abs(k1));
    return prefW * I.real();
}

double wigner_orbit(const WignerEvaluator& ev, const UnitaryMap& U,
                    const PhasePoint& p) {
    if (U.dim() != 2) throw domain_error("orbit evaluator requires d = 2");
    return wigner_gamma0_2d(ev, apply_unitary(U, p, /*adjoint=*/true));
}

double wigner_d(const WignerEvaluator& ev, const PhasePoint& p) {
    const int d = ev.qn.d;
    if (p.dim() != d) throw domain_error("phase point dimension mismatch");
    if (d == 2) return wigner_gamma0_2d(ev, p);

    const int N = ev.qn.N;
    const double hbar = ev.qn.hbar();
    const double E2 = (N + 1.0) * hbar;  // planar energy at the shared hbar
    const QuantumNumbers qn2(N, 2, E2);
    const WignerEvaluator ev2(qn2, ev.m, ev.method, ev.precision);
    PhasePoint q({p.x[0], p.x[1]}, {p.xi[0], p.xi[1]});
    double trans_ln = -(d - 2.0) * std::log(kPi * hbar);
    for (int a = 2; a < d; ++a)
        trans_ln -= (p.x[a] * p.x[a] + p.xi[a] * p.xi[a]) / hbar;
    return wigner_gamma0_2d(ev2, q) * std::exp(trans_ln);
}

double wigner_d_direct(const QuantumNumbers& qn, const PhasePoint& p,
                       int nodes_per_axis) {
    if (qn.d != 3 || p.dim() != 3)
        throw domain_error("tensor oracle requires d = 3");
    if (qn.N > 16) throw domain_error("tensor oracle supports N <= 16");
    if (nodes_per_axis < 8 || nodes_per_axis > 1024)
        throw domain_error("nodes per axis out of range");

    const int N = qn.N;
    const double E = qn.E;
    const double kap = (N + 1.5) / E;
    const double sq = std::sqrt(kap);
    const QuadratureRule& q = gauss_hermite(nodes_per_axis);
    const int m = q.order;
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) w[i] = std::exp(q.log_weights[i]);

    const double x1 = p.x[0], x2 = p.x[1], x3 = p.x[2];
    // (2 pi hbar)^{-3} (2/sqrt(kap))^3 C^2 e^{-kap |x|^2}, all in logs
    const double log_pref =
        3.0 * (std::log(kap) - std::log(2.0 * kPi)) +
        3.0 * std::log(2.0 / sq) + (N + 1.0) * std::log(kap) - std::log(kPi) -
        log_gamma(N + 1.0) + 0.5 * (std::log(kap) - std::log(kPi)) -
        kap * (x1 * x1 + x2 * x2 + x3 * x3);

    KahanAccumulator<double> gr, gi;
    for (int l = 0; l < m; ++l) {
        const cd t = w[l] * cis(-2.0 * q.nodes[l] * p.xi[2] * sq);
        gr.add(t.real());
        gi.add(t.imag());
    }
    const cd G(gr.value(), gi.value());

    KahanAccumulator<double> sr, si;
    for (int j = 0; j < m; ++j) {
        const double v1h = q.nodes[j] / sq;  // v1 / 2
        for (int k = 0; k < m; ++k) {
            const double v2h = q.nodes[k] / sq;
            const cd zp(x1 + v1h, x2 + v2h);
            const cd zm(x1 - v1h, x2 - v2h);
            const cd t = w[j] * w[k] * ipow(zp * std::conj(zm), N) *
                         cis(-2.0 * (q.nodes[j] * p.xi[0] +
                                     q.nodes[k] * p.xi[1]) * sq);
            sr.add(t.real());
            si.add(t.imag());
        }
    }
    const cd S(sr.value(), si.value());
    return std::exp(log_pref) * (G * S).real();
}

Observable Observable::one() { return {}; }

Observable Observable::energy() {
    Observable o;
    o.kind = Kind::energy;
    return o;
}

Observable Observable::gaussian(double sigma, PhasePoint center) {
    Observable o;
    o.kind = Kind::gaussian;
    o.sigma = sigma;
    o.center = std::move(center);
    return o;
}

double wigner_moment(const WignerEvaluator& ev, const Observable& obs) {
    const QuantumNumbers& qn = ev.qn;
    if (qn.d != 2) throw domain_error("moment integrator requires d = 2");
    if (qn.N > 24) throw domain_error("moment integrator supports N <= 24");
    if (ev.method != WignerMethod::contour_shifted_exact)
        throw domain_error("moment integrator needs the exact method");
    const bool gauss = obs.kind == Observable::Kind::gaussian;
    if (gauss) {
        if (obs.center.dim() != 2)
            throw domain_error("gaussian observable center must have d = 2");
        if (!(obs.sigma > 0)) throw domain_error("sigma must be positive");
    }

    const int N = qn.N;
    const double E = qn.E;
    const int mo = N + 6;
    const QuadratureRule& qo = gauss_hermite(mo);
    const QuadratureRule& qi = gauss_hermite(ev.m);
    std::vector<double> wo(mo), wi(ev.m);
    for (int i = 0; i < mo; ++i) wo[i] = std::exp(qo.log_weights[i]);
    for (int i = 0; i < ev.m; ++i) wi[i] = std::exp(qi.log_weights[i]);

    // merge the state's Gaussian envelope with the observable's into one
    // centered weight per axis; the residual polynomial has per-axis degree
    // 2N + 2, so mo = N + 6 nodes integrate it exactly
    const double lam0 = (N + 1.0) / E;
    const double B = gauss ? 1.0 / (2.0 * obs.sigma * obs.sigma) : 0.0;
    const double lam = lam0 + B;
    const double isl = 1.0 / std::sqrt(lam);
    double c4[4] = {0, 0, 0, 0};
    double mu[4] = {0, 0, 0, 0};
    double const_ln = 0.0;
    if (gauss) {
        c4[0] = obs.center.x[0];
        c4[1] = obs.center.x[1];
        c4[2] = obs.center.xi[0];
        c4[3] = obs.center.xi[1];
        double ssq = 0.0;
        for (int a = 0; a < 4; ++a) {
            mu[a] = B * c4[a] / lam;
            ssq += c4[a] * c4[a];
        }
        const_ln = -(lam0 * B / lam) * ssq;
    }
    const double pref_ln = (N + 2.0) * std::log(N + 1.0) -
                           (N + 2.0) * std::log(E) - 3.0 * std::log(kPi) -
                           log_gamma(N + 1.0) + const_ln - 2.0 * std::log(lam);
    const double c = std::sqrt(E / (N + 1.0));

    std::vector<double> slot(mo, 0.0);
    parallel_for(mo, [&](int i1) {
        KahanAccumulator<double> acc;
        const double p1 = mu[0] + qo.nodes[i1] * isl;
        for (int i2 = 0; i2 < mo; ++i2) {
            const double p2 = mu[1] + qo.nodes[i2] * isl;
            const double w12 = wo[i1] * wo[i2];
            for (int i3 = 0; i3 < mo; ++i3) {
                const double p3 = mu[2] + qo.nodes[i3] * isl;
                const double w123 = w12 * wo[i3];
                for (int i4 = 0; i4 < mo; ++i4) {
                    const double p4 = mu[3] + qo.nodes[i4] * isl;
                    const double a0r = p1 + p4;
                    const double a0i = p2 - p3;
                    const double of = obs_factor_at_node(obs, p1, p2, p3, p4);
                    acc.add(w123 * wo[i4] * of *
                            core_real(N, c, a0r, a0i, qi, wi));
                }
            }
        }
        slot[i1] = acc.value();
    });
    KahanAccumulator<double> tot;
    for (double v : slot) tot.add(v);
    return std::exp(pref_ln) * tot.value();
}

WignerField wigner_grid(const WignerEvaluator& ev, const GridSlice& slice,
                        int n1, int n2) {
    const int d = ev.qn.d;
    if (slice.origin.dim() != d || slice.span1.dim() != d ||
        slice.span2.dim() != d)
        throw domain_error("slice dimension mismatch");
    if (n1 < 1 || n2 < 1) throw domain_error("grid resolution must be >= 1");
    if (!(slice.extent1 > 0) || !(slice.extent2 > 0))
        throw domain_error("grid extent must be positive");

    WignerField f;
    f.slice = slice;
    f.n1 = n1;
    f.n2 = n2;
    f.qn = ev.qn;
    f.method = ev.method == WignerMethod::contour_shifted_exact
                   ? "contour_shifted_exact"
                   : "direct_oracle";
    f.m = ev.m;
    f.values.assign(static_cast<size_t>(n1) * n2, 0.0);
    parallel_for(n1, [&](int i) {
        for (int j = 0; j < n2; ++j) {
            const PhasePoint p = grid_point(slice, n1, n2, i, j);
            f.values[static_cast<size_t>(i) * n2 + j] = wigner_d(ev, p);
        }
    });
    return f;
}

std::string WignerField::to_csv() const {
    const int d = qn.d;
    std::string s = "# qn=";
    s += std::to_string(qn.N) + "," + std::to_string(d) + ",";
    append_g17(s, qn.E);
    s += " method=" + method + " m=" + std::to_string(m);
    auto coords = [&](const PhasePoint& p) {
        std::string t;
        for (int a = 0; a < d; ++a) {
            if (a) t += ",";
            append_g17(t, p.x[a]);
        }
        for (int a = 0; a < d; ++a) {
            t += ",";
            append_g17(t, p.xi[a]);
        }
        return t;
    };
    s += " origin=" + coords(slice.origin);
    s += " span1=" + coords(slice.span1);
    s += " span2=" + coords(slice.span2);
    s += " extent=";
    append_g17(s, slice.extent1);
    s += ",";
    append_g17(s, slice.extent2);
    s += " res=" + std::to_string(n1) + "," + std::to_string(n2) + "\n";

    s += "i,j";
    for (int a = 1; a <= d; ++a) s += ",x" + std::to_string(a);
    for (int a = 1; a <= d; ++a) s += ",xi" + std::to_string(a);
    s += ",W\n";
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const PhasePoint p = grid_point(slice, n1, n2, i, j);
            s += std::to_string(i) + "," + std::to_string(j) + ",";
            s += coords(p);
            s += ",";
            append_g17(s, values[static_cast<size_t>(i) * n2 + j]);
            s += "\n";
        }
    return s;
}

std::string WignerField::to_json() const {
    nlohmann::json j;
    j["qn"] = {{"N", qn.N}, {"d", qn.d}, {"E", qn.E}};
    j["method"] = method;
    j["m"] = m;
    j["slice"] = {{"origin", point_json(slice.origin)},
                  {"span1", point_json(slice.span1)},
                  {"span2", point_json(slice.span2)},
                  {"extent", {slice.extent1, slice.extent2}}};
    j["res"] = {n1, n2};
    j["values"] = values;
    return j.dump();
}

}  // namespace ow
