#include "ow/phase_space.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace ow {
namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd as_eigen(const UnitaryMap& U) {
    int d = U.dim();
    Eigen::MatrixXcd M(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) M(r, c) = U.at(r, c);
    return M;
}

}  // namespace

PhasePoint::PhasePoint(std::vector<double> x_, std::vector<double> xi_)
    : x(std::move(x_)), xi(std::move(xi_)) {
    if (x.size() != xi.size() || x.size() < 2)
        throw domain_error("PhasePoint: need matching x/xi blocks, d >= 2");
}

PhasePoint PhasePoint::zero(int d) {
    return PhasePoint(std::vector<double>(d, 0.0), std::vector<double>(d, 0.0));
}

QuantumNumbers::QuantumNumbers(int N_, int d_, double E_) : N(N_), d(d_), E(E_) {
    if (N < 0) throw domain_error("QuantumNumbers: N must be nonnegative");
    if (d < 2) throw domain_error("QuantumNumbers: d must be at least 2");
    if (!(E > 0) || !std::isfinite(E)) throw domain_error("QuantumNumbers: E must be positive");
}

UnitaryMap::UnitaryMap(std::vector<cd> row_major, int d) : d_(d), a_(std::move(row_major)) {
    if (d_ < 1 || a_.size() != static_cast<size_t>(d_) * d_)
        throw domain_error("UnitaryMap: entry count does not match dimension");
    Eigen::MatrixXcd M(d_, d_);
    for (int r = 0; r < d_; ++r)
        for (int c = 0; c < d_; ++c) M(r, c) = a_[r * d_ + c];
    Eigen::MatrixXcd G = M.adjoint() * M - Eigen::MatrixXcd::Identity(d_, d_);
    if (G.cwiseAbs().maxCoeff() > 1e-12)
        throw domain_error("UnitaryMap: U-dagger U deviates from identity");
    if (std::abs(M.determinant() - cd(1.0, 0.0)) > 1e-12)
        throw domain_error("UnitaryMap: determinant is not 1");
}

UnitaryMap UnitaryMap::identity(int d) {
    std::vector<cd> e(static_cast<size_t>(d) * d, cd(0, 0));
    for (int i = 0; i < d; ++i) e[i * d + i] = cd(1, 0);
    return UnitaryMap(std::move(e), d);
}

UnitaryMap UnitaryMap::adjoint() const {
    std::vector<cd> b(a_.size());
    for (int r = 0; r < d_; ++r)
        for (int c = 0; c < d_; ++c) b[r * d_ + c] = std::conj(a_[c * d_ + r]);
    return UnitaryMap(std::move(b), d_);
}

std::vector<cd> to_complex(const PhasePoint& p) {
    std::vector<cd> z(p.dim());
    for (int i = 0; i < p.dim(); ++i) z[i] = cd(p.x[i], p.xi[i]);
    return z;
}

PhasePoint from_complex(std::span<const cd> z) {
    std::vector<double> x(z.size()), xi(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        x[i] = z[i].real();
        xi[i] = z[i].imag();
    }
    return PhasePoint(std::move(x), std::move(xi));
}

double hamiltonian(const PhasePoint& p) {
    double s = 0;
    for (int i = 0; i < p.dim(); ++i) s += p.x[i] * p.x[i] + p.xi[i] * p.xi[i];
    return 0.5 * s;
}

PhasePoint gamma0(double t, double E) {
    if (!(E > 0) || !std::isfinite(E)) throw domain_error("gamma0: E must be positive");
    double r = std::sqrt(E), c = std::cos(t), s = std::sin(t);
    return PhasePoint({r * c, r * s}, {-r * s, r * c});
}

PhasePoint apply_unitary(const UnitaryMap& U, const PhasePoint& p, bool adjoint) {
    if (U.dim() != p.dim()) throw domain_error("apply_unitary: dimension mismatch");
    Eigen::MatrixXcd M = as_eigen(U);
    if (adjoint) M = M.adjoint().eval();
    auto z = to_complex(p);
    Eigen::Map<const Eigen::VectorXcd> zv(z.data(), z.size());
    Eigen::VectorXcd w = M * zv;
    std::vector<cd> out(w.data(), w.data() + w.size());
    return from_complex(out);
}

PhasePoint rotate_in_orbit_plane(double theta, const PhasePoint& p) {
    if (p.dim() != 2) throw domain_error("rotate_in_orbit_plane: d must be 2");
    double c = std::cos(theta), s = std::sin(theta);
    return PhasePoint({c * p.x[0] - s * p.x[1], s * p.x[0] + c * p.x[1]},
                      {c * p.xi[0] - s * p.xi[1], s * p.xi[0] + c * p.xi[1]});
}

OrbitFrame build_frame(const PhasePoint& p, double E) {
    if (!(E > 0)) throw domain_error("build_frame: E must be positive");
    if (std::abs(hamiltonian(p) - E) > 1e-9 * E)
        throw domain_error("build_frame: point is not on the energy shell");
    int d = p.dim();
    auto zv = to_complex(p);
    Eigen::Map<const Eigen::VectorXcd> z(zv.data(), d);

    // Hermitian Gram-Schmidt of the standard basis against z, keeping the
    // d-1 complement directions; each contributes the normal pair
    // from_complex(i w), from_complex(w).
    std::vector<Eigen::VectorXcd> kept;
    kept.reserve(d);
    Eigen::VectorXcd z0 = z / z.norm();
    for (int j = 0; j < d && static_cast<int>(kept.size()) < d - 1; ++j) {
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(d);
        w(j) = 1.0;
        w -= z0 * (z0.dot(w));
        for (const auto& k : kept) w -= k * (k.dot(w));
        double n = w.norm();
        if (n < 1e-8) continue;  // basis vector lies in the span already
        kept.push_back(w / n);
    }

    OrbitFrame f;
    f.base = p;
    f.E = E;
    double scale = std::sqrt(2.0 * E);
    for (const auto& k : kept) {
        Eigen::VectorXcd w = k * scale;
        std::vector<cd> iw(d), wv(d);
        for (int i = 0; i < d; ++i) {
            iw[i] = cd(0, 1) * w(i);
            wv[i] = w(i);
        }
        f.normals.push_back(from_complex(iw));
        f.normals.push_back(from_complex(wv));
    }
    return f;
}

PhasePoint scaling_point(const OrbitFrame& f, double u, std::span<const double> w) {
    if (w.size() != f.normals.size())
        throw domain_error("scaling_point: w length must match normal count");
    int d = f.base.dim();
    PhasePoint p = PhasePoint::zero(d);
    for (int i = 0; i < d; ++i) {
        p.x[i] = (1 + u) * f.base.x[i];
        p.xi[i] = (1 + u) * f.base.xi[i];
    }
    for (size_t k = 0; k < w.size(); ++k) {
        for (int i = 0; i < d; ++i) {
            p.x[i] += w[k] * f.normals[k].x[i];
            p.xi[i] += w[k] * f.normals[k].xi[i];
        }
    }
    return p;
}

UnitaryMap sample_cp1(long index, long count) {
    if (index < 0 || index >= count) throw domain_error("sample_cp1: index out of range");
    // spherical Fibonacci lattice on S^2 = CP^1
    const double golden = 0.5 * (std::sqrt(5.0) + 1.0);
    double zc = -1.0 + (2.0 * index + 1.0) / count;
    double th = std::acos(std::clamp(zc, -1.0, 1.0));
    double ph = 2.0 * M_PI * std::fmod(index * golden, 1.0);
    cd z1 = std::cos(0.5 * th);
    cd z2 = std::polar(std::sin(0.5 * th), ph);

    // Anchored lift: column pair (zeta, zeta-tilde) composed with the inverse
    // of the same pair at the gamma0 class [1 : i]. Anchoring keeps the map
    // CP^1 -> SU(2) -> CP^1 of degree one; the naive a,b block form traverses
    // the sphere twice and skews lattice averages.
    const double r2 = 1.0 / std::sqrt(2.0);
    cd ze1 = z1, ze2 = z2;
    cd zt1 = -std::conj(ze2), zt2 = std::conj(ze1);
    // [zeta zeta~] * [zeta0 zeta0~]^dagger with zeta0 = (1, i)/sqrt(2)
    cd m11 = r2, m12 = cd(0, -1) * r2;  // adjoint entries
    cd m21 = cd(0, -1) * r2, m22 = r2;
    std::vector<cd> u = {
        ze1 * m11 + zt1 * m21, ze1 * m12 + zt1 * m22,
        ze2 * m11 + zt2 * m21, ze2 * m12 + zt2 * m22,
    };
    return UnitaryMap(std::move(u), 2);
}

}  // namespace ow
