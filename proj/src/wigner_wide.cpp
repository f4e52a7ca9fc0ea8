#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ow/numerics.hpp"
#include "ow/wigner.hpp"

namespace ow::detail {
namespace {

// 110 decimal digits: enough that the worst cancellation depth the library
// ever accepts (the guard below) still leaves ~12 good digits. The deepest
// in-scope evaluation is the decaying Airy tail of the N = 200 edge scan,
// around 205 nats.
using wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<110>,
                                           boost::multiprecision::et_off>;

constexpr double kDepthWideLimit = 225.0;

// hand-rolled complex on wide reals; std::complex over a multiprecision
// type is formally unsupported
struct wc {
    wide r, i;
};

inline wc mul(const wc& a, const wc& b) {
    return {a.r * b.r - a.i * b.i, a.r * b.i + a.i * b.r};
}

wc ipow(wc b, int n) {
    wc r{wide(1), wide(0)};
    while (n > 0) {
        if (n & 1) r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

struct WideRule {
    std::vector<wide> nodes;
    std::vector<wide> weights;
};

// Refine the double rule's nodes by Newton on the orthonormal Hermite
// recurrence, then take weights as 1 / sum_k p_k(x)^2. Quadratic Newton
// convergence turns the 1e-15 seeds into full working precision in three
// steps; mirrored entries are exact negations so the conjugate-pair
// enumeration in the tensor sum stays valid.
WideRule build_wide_rule(int m) {
    const QuadratureRule& dq = gauss_hermite(m);
    std::vector<wide> ak(m), bk(m);
    for (int k = 1; k < m; ++k) {
        ak[k] = sqrt(wide(2) / (k + 1));
        bk[k] = sqrt(wide(k) / (k + 1));
    }
    const wide p0 = pow(boost::math::constants::pi<wide>(), wide(-0.25));
    const wide sqrt2 = sqrt(wide(2));
    const wide dnorm = sqrt(wide(2) * m);

    // returns p_m and p_{m-1}
    auto eval = [&](const wide& x, wide& pm, wide& pm1) {
        wide prev = p0, cur = sqrt2 * x * p0;
        for (int k = 1; k < m; ++k) {
            const wide next = x * ak[k] * cur - bk[k] * prev;
            prev = cur;
            cur = next;
        }
        pm = cur;
        pm1 = prev;
    };

    WideRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    for (int i = m / 2; i < m; ++i) {
        wide x = dq.nodes[i];
        for (int it = 0; it < 3; ++it) {
            wide pm, pm1;
            eval(x, pm, pm1);
            x -= pm / (dnorm * pm1);
        }
        wide sumsq = p0 * p0;
        {
            wide prev = p0, cur = sqrt2 * x * p0;
            for (int k = 1; k < m; ++k) {
                sumsq += cur * cur;
                const wide next = x * ak[k] * cur - bk[k] * prev;
                prev = cur;
                cur = next;
            }
        }
        const wide w = 1 / sumsq;
        r.nodes[i] = x;
        r.nodes[m - 1 - i] = -x;
        r.weights[i] = w;
        r.weights[m - 1 - i] = w;
    }
    return r;
}

const WideRule& wide_rule(int m) {
    static std::mutex mtx;
    static std::map<int, WideRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, build_wide_rule(m)).first;
    return it->second;
}

}  // namespace

WideSum wigner_sum_wide(int N, double E, double a0r, double a0i, int m) {
    const WideRule& q = wide_rule(m);
    const wide c = sqrt(wide(E) / (N + 1));
    const wide zr(a0r), zi(a0i);

    // per-axis linear factors, hoisted from the inner loop
    std::vector<wide> Ar(m), Br(m), Ai(m), Bi(m);
    for (int j = 0; j < m; ++j) {
        const wide cs = c * q.nodes[j];
        Ar[j] = zr + cs;
        Br[j] = zr - cs;
        Ai[j] = zi + cs;
        Bi[j] = -zi + cs;
    }

    wide acc(0), maxabs(0);
    auto add_term = [&](int j, int k, bool paired) {
        const wc ab{Ar[j] * Br[j] - Ai[k] * Bi[k],
                    Ar[j] * Bi[k] + Ai[k] * Br[j]};
        wide t = q.weights[j] * q.weights[k] * ipow(ab, N).r;
        if (paired) t += t;
        acc += t;
        const wide a = abs(t);
        if (a > maxabs) maxabs = a;
    };
    const int half = m / 2;
    for (int j = 0; j < half; ++j)
        for (int k = 0; k < m; ++k) add_term(j, k, true);
    if (m & 1) {
        for (int k = 0; k < half; ++k) add_term(half, k, true);
        add_term(half, half, false);
    }

    WideSum out;
    if (acc == 0) {
        out.log_re = -std::numeric_limits<double>::infinity();
        out.sign_re = 0;
        out.depth = std::numeric_limits<double>::infinity();
    } else {
        out.log_re = static_cast<double>(log(abs(acc)));
        out.sign_re = acc > 0 ? 1 : -1;
        out.depth = static_cast<double>(log(maxabs) - log(abs(acc)));
    }
    if (out.depth >= kDepthWideLimit)
        throw integrity_error(
            "cancellation depth exceeds the wide kernel's digit budget");
    return out;
}

}  // namespace ow::detail
