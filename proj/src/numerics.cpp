#include "ow/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace ow {
namespace {

// ---------------------------------------------------------------------------
// double-double helpers (only what the Airy series needs)

struct dd {
    double hi = 0, lo = 0;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div_d(dd a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    double q2 = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return quick_two_sum(q1, q2);
}

inline dd dd_from(double x) { return {x, 0.0}; }

// Ai(0), Ai'(0) split to double-double.
const dd kAi0 = {0.35502805388781722, 2.0523363243621199e-17};
const dd kAip0 = {-0.25881940379280682, 2.5222431116108321e-17};

// Maclaurin evaluation of Ai, Ai'. The series converges everywhere; the
// alternating cancellation on the negative axis costs ~e^{(2/3)|x|^{3/2}}
// in relative terms, which double-double absorbs for |x| <= 12 (about 12
// of 32 digits burned at the switchover).
void airy_series(double x, double& ai, double& aip) {
    const dd x3 = dd_mul(dd_from(x), dd_mul(dd_from(x), dd_from(x)));
    dd tf = dd_from(1.0);                                  // f term, index 0
    dd tg = dd_from(x);                                    // g term, index 0
    dd tfp = dd_mul_d(dd_mul(dd_from(x), dd_from(x)), 0.5);  // f' term, index 1
    dd tgp = dd_from(1.0);                                 // g' term, index 0
    dd f = tf, g = tg, fp = tfp, gp = tgp;
    for (int j = 0; j < 220; ++j) {
        double b = 3.0 * j;
        tf = dd_div_d(dd_mul(tf, x3), (b + 2) * (b + 3));
        tg = dd_div_d(dd_mul(tg, x3), (b + 3) * (b + 4));
        tgp = dd_div_d(dd_mul(tgp, x3), (b + 1) * (b + 3));
        double i = j + 1.0;  // f' series index before this update
        tfp = dd_div_d(dd_mul_d(dd_mul(tfp, x3), i + 1), i * (3 * i + 2) * (3 * i + 3));
        f = dd_add(f, tf);
        g = dd_add(g, tg);
        fp = dd_add(fp, tfp);
        gp = dd_add(gp, tgp);
        double scale = std::abs(f.hi) + std::abs(g.hi) + 1.0;
        if (std::abs(tf.hi) < 1e-38 * scale && std::abs(tg.hi) < 1e-38 * scale &&
            std::abs(tfp.hi) < 1e-38 * scale && std::abs(tgp.hi) < 1e-38 * scale)
            break;
    }
    dd A = dd_add(dd_mul(kAi0, f), dd_mul(kAip0, g));
    dd Ap = dd_add(dd_mul(kAi0, fp), dd_mul(kAip0, gp));
    ai = A.hi + A.lo;
    aip = Ap.hi + Ap.lo;
}

// Asymptotic coefficients u_k and the primed companions v_k.
struct AiryAsym {
    double u[41], v[41];
    AiryAsym() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k <= 40; ++k) {
            double a = 6.0 * k;
            u[k] = u[k - 1] * (a - 5) * (a - 3) * (a - 1) / (216.0 * k * (2.0 * k - 1));
            v[k] = u[k] * (a + 1) / (1 - a);
        }
    }
};
const AiryAsym kAsym;

void airy_asym_right(double x, double& ai, double& aip) {
    double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double S = 0, Sp = 0, t = 1, prev = HUGE_VAL;
    for (int k = 0; k <= 40; ++k) {
        double term = kAsym.u[k] * t;
        if (std::abs(term) > prev) break;  // past optimal truncation
        S += (k % 2 ? -term : term);
        Sp += (k % 2 ? -kAsym.v[k] * t : kAsym.v[k] * t);
        prev = std::abs(term);
        t /= zeta;
        if (prev < 1e-20) break;
    }
    double x14 = std::pow(x, 0.25);
    double pre = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    ai = pre * S / x14;
    aip = -pre * Sp * x14;
}

void airy_asym_left(double x, double& ai, double& aip) {
    double z = -x;
    double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    // even/odd split of the u- and v-series
    double P = 0, Q = 0, R = 0, S = 0, t = 1, prev = HUGE_VAL;
    for (int k = 0; 2 * k + 1 <= 40; ++k) {
        double sign = (k % 2 ? -1.0 : 1.0);
        if (kAsym.u[2 * k] * t > prev) break;
        P += sign * kAsym.u[2 * k] * t;
        R += sign * kAsym.v[2 * k] * t;
        prev = kAsym.u[2 * k] * t;
        double t1 = t / zeta;
        Q += sign * kAsym.u[2 * k + 1] * t1;
        S += sign * kAsym.v[2 * k + 1] * t1;
        t = t1 / zeta;
        if (prev < 1e-20) break;
    }
    double ph = zeta - M_PI / 4;
    double c = std::cos(ph), s = std::sin(ph);
    double z14 = std::pow(z, 0.25);
    ai = (c * P + s * Q) / (std::sqrt(M_PI) * z14);
    aip = z14 / std::sqrt(M_PI) * (s * R - c * S);
}

void airy_both(double x, double& ai, double& aip) {
    if (!std::isfinite(x)) throw domain_error("airy: non-finite argument");
    // The series window is asymmetric: for x > 0 the two Maclaurin branches
    // agree to e^{(4/3)x^{3/2}} before the e^{-...} remainder emerges, twice
    // the exponent of the oscillatory side, so the series is abandoned there
    // as soon as the asymptotic error e^{-(4/3)x^{3/2}} clears 1e-13.
    if (x >= -12.0 && x <= 8.0)
        airy_series(x, ai, aip);
    else if (x > 0)
        airy_asym_right(x, ai, aip);
    else
        airy_asym_left(x, ai, aip);
}

// ---------------------------------------------------------------------------
// Gauss-Hermite

// log(sum_{k<m} p_k(x)^2) for the orthonormal Hermite family (weight e^{-x^2}),
// with power-ladder rescaling: raw p_k values reach e^{x^2/2} near the largest
// node, far outside double range for m ~ 1000.
double log_sum_pk2(double x, int m) {
    const double BIG = 1e150, SCALE = 1e-300;
    const double LOG_SCALE2 = 600.0 * std::log(10.0);  // -2*log(SCALE)
    double p_prev = 0.7511255444649425;  // pi^{-1/4}
    double s = p_prev * p_prev;
    long nresc = 0;
    if (m > 1) {
        double p = std::sqrt(2.0) * x * p_prev;
        s += p * p;
        for (int k = 1; k < m - 1; ++k) {
            double pn = x * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(k / (k + 1.0)) * p_prev;
            p_prev = p;
            p = pn;
            s += p * p;
            if (std::abs(p) > BIG) {
                p *= SCALE;
                p_prev *= SCALE;
                s *= SCALE * SCALE;
                ++nresc;
            }
        }
    }
    return std::log(s) + nresc * LOG_SCALE2;
}

// ratio p_m(x) / p_m'(x) = p_m(x) / (sqrt(2m) p_{m-1}(x)); scale-invariant.
double newton_step(double x, int m) {
    const double BIG = 1e150, SCALE = 1e-300;
    double p_prev = 0.7511255444649425;
    double p = std::sqrt(2.0) * x * p_prev;
    for (int k = 1; k < m; ++k) {
        double pn = x * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(k / (k + 1.0)) * p_prev;
        p_prev = p;
        p = pn;
        if (std::abs(p) > BIG) {
            p *= SCALE;
            p_prev *= SCALE;
        }
    }
    return p / (std::sqrt(2.0 * m) * p_prev);
}

QuadratureRule build_rule(int m) {
    // symmetric Jacobi matrix: zero diagonal, off-diagonal sqrt(k/2)
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd sub(std::max(m - 1, 1));
    for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(std::max(m - 1, 0)), Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    std::vector<double> nodes(ev.data(), ev.data() + m);
    std::sort(nodes.begin(), nodes.end());

    QuadratureRule r;
    r.order = m;
    r.nodes.assign(m, 0.0);
    r.log_weights.assign(m, 0.0);
    for (int i = 0; i < m / 2; ++i) {
        double x = 0.5 * (std::abs(nodes[i]) + std::abs(nodes[m - 1 - i]));
        x -= newton_step(x, m);
        x -= newton_step(x, m);
        double lw = -log_sum_pk2(x, m);
        r.nodes[i] = -x;
        r.nodes[m - 1 - i] = x;
        r.log_weights[i] = lw;
        r.log_weights[m - 1 - i] = lw;
    }
    if (m % 2) {
        r.nodes[m / 2] = 0.0;
        r.log_weights[m / 2] = -log_sum_pk2(0.0, m);
    }
    return r;
}

}  // namespace

double airy_ai(double x) {
    double a, ap;
    airy_both(x, a, ap);
    return a;
}

double airy_ai_prime(double x) {
    double a, ap;
    airy_both(x, a, ap);
    return ap;
}

double log_gamma(double x) {
    if (!(x > 0) || !std::isfinite(x)) throw domain_error("log_gamma: need x > 0");
    return std::lgamma(x);
}

const QuadratureRule& gauss_hermite(int m) {
    if (m < 1 || m > 1024) throw domain_error("gauss_hermite: order out of [1,1024]");
    static std::mutex mu;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, build_rule(m)).first;
    return it->second;
}

std::complex<double> compensated_sum(std::span<const std::complex<double>> terms) {
    KahanAccumulator<double> re, im;
    for (const auto& t : terms) {
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

}  // namespace ow
