#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ow/numerics.hpp"

namespace ow {

// A point (x, xi) of T*R^d, d >= 2.
struct PhasePoint {
    std::vector<double> x;
    std::vector<double> xi;

    PhasePoint() = default;
    PhasePoint(std::vector<double> x_, std::vector<double> xi_);
    static PhasePoint zero(int d);
    int dim() const { return static_cast<int>(x.size()); }
};

struct QuantumNumbers {
    int N = 0;       // level
    int d = 2;       // spatial dimension
    double E = 1.0;  // orbit energy

    QuantumNumbers() = default;
    QuantumNumbers(int N_, int d_, double E_);
    // hbar fixed by pinning the state's mean energy to E
    double hbar() const { return E / (N + 0.5 * d); }
};

// Special unitary d x d matrix; entries validated at construction
// (U-dagger U = I and det U = 1, both to 1e-12).
class UnitaryMap {
public:
    UnitaryMap(std::vector<std::complex<double>> row_major, int d);
    static UnitaryMap identity(int d);

    int dim() const { return d_; }
    std::complex<double> at(int r, int c) const { return a_[r * d_ + c]; }
    UnitaryMap adjoint() const;

private:
    int d_;
    std::vector<std::complex<double>> a_;
};

// On-orbit base point plus the 2(d-1) normal directions, each of norm
// sqrt(2E), spanning the orthogonal complement of the orbit plane.
struct OrbitFrame {
    PhasePoint base;
    std::vector<PhasePoint> normals;
    double E = 0.0;
};

std::vector<std::complex<double>> to_complex(const PhasePoint& p);
PhasePoint from_complex(std::span<const std::complex<double>> z);

double hamiltonian(const PhasePoint& p);

// the reference great-circle orbit in d = 2
PhasePoint gamma0(double t, double E);

// chart conjugation z -> U z (or U-dagger z)
PhasePoint apply_unitary(const UnitaryMap& U, const PhasePoint& p, bool adjoint = false);

// simultaneous SO(2) rotation of the x and xi blocks (d = 2)
PhasePoint rotate_in_orbit_plane(double theta, const PhasePoint& p);

// Normal frame at an on-shell point; throws domain_error when
// |H(p) - E| > 1e-9 E.
OrbitFrame build_frame(const PhasePoint& p, double E);

// (1+u) base + sum_i w_i normals_i
PhasePoint scaling_point(const OrbitFrame& f, double u, std::span<const double> w);

// Deterministic Fubini-Study sample lattice on CP^1, lifted to SU(2)
// elements carrying the class of gamma0 to the sample.
UnitaryMap sample_cp1(long index, long count);

}  // namespace ow
