#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ow/phase_space.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;
using cd = std::complex<double>;

ow::PhasePoint random_point(std::mt19937& gen, int d, double box) {
    std::uniform_real_distribution<double> coord(-box, box);
    std::vector<double> x(d), xi(d);
    for (int a = 0; a < d; ++a) {
        x[a] = coord(gen);
        xi[a] = coord(gen);
    }
    return ow::PhasePoint(std::move(x), std::move(xi));
}

double distance(const ow::PhasePoint& a, const ow::PhasePoint& b) {
    double s = 0;
    for (size_t i = 0; i < a.x.size(); ++i) {
        s += (a.x[i] - b.x[i]) * (a.x[i] - b.x[i]);
        s += (a.xi[i] - b.xi[i]) * (a.xi[i] - b.xi[i]);
    }
    return std::sqrt(s);
}

double dot(const ow::PhasePoint& a, const ow::PhasePoint& b) {
    double s = 0;
    for (size_t i = 0; i < a.x.size(); ++i)
        s += a.x[i] * b.x[i] + a.xi[i] * b.xi[i];
    return s;
}

// orthogonal projector onto the real span of two 4-vectors, as a flat 4x4
std::array<double, 16> projector_onto(const ow::PhasePoint& p1,
                                      const ow::PhasePoint& p2) {
    std::array<std::array<double, 4>, 2> q{};
    auto flat = [](const ow::PhasePoint& p) {
        return std::array<double, 4>{p.x[0], p.x[1], p.xi[0], p.xi[1]};
    };
    q[0] = flat(p1);
    double n0 = 0;
    for (double v : q[0]) n0 += v * v;
    for (double& v : q[0]) v /= std::sqrt(n0);
    q[1] = flat(p2);
    double proj = 0;
    for (int i = 0; i < 4; ++i) proj += q[1][i] * q[0][i];
    for (int i = 0; i < 4; ++i) q[1][i] -= proj * q[0][i];
    double n1 = 0;
    for (double v : q[1]) n1 += v * v;
    for (double& v : q[1]) v /= std::sqrt(n1);
    std::array<double, 16> P{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            P[4 * i + j] = q[0][i] * q[0][j] + q[1][i] * q[1][j];
    return P;
}

}  // namespace

TEST_CASE("complex chart") {
    const ow::PhasePoint p({1.0, 0.0}, {0.0, 1.0});
    const auto z = ow::to_complex(p);
    REQUIRE(z.size() == 2);
    CHECK(z[0] == cd(1.0, 0.0));
    CHECK(z[1] == cd(0.0, 1.0));

    std::mt19937 gen(11);
    for (int rep = 0; rep < 100; ++rep) {
        const auto q = random_point(gen, rep % 2 ? 2 : 3, 2.0);
        const auto back = ow::from_complex(ow::to_complex(q));
        CHECK(distance(q, back) == 0.0);
        double z2 = 0;
        for (const auto& c : ow::to_complex(q)) z2 += std::norm(c);
        CHECK(z2 == doctest::Approx(2 * ow::hamiltonian(q)).epsilon(1e-14));
    }
}

TEST_CASE("hamiltonian and the reference orbit") {
    CHECK(ow::hamiltonian(ow::PhasePoint::zero(2)) == 0.0);
    CHECK(ow::hamiltonian(ow::PhasePoint({1, 0}, {0, 1})) == 1.0);

    const double E = 2.5;
    const auto g = ow::gamma0(0.0, E);
    CHECK(g.x[0] == doctest::Approx(std::sqrt(E)).epsilon(1e-15));
    CHECK(std::abs(g.x[1]) <= 1e-15);
    CHECK(std::abs(g.xi[0]) <= 1e-15);
    CHECK(g.xi[1] == doctest::Approx(std::sqrt(E)).epsilon(1e-15));

    const auto h = ow::gamma0(kPi / 2, E);
    CHECK(std::abs(h.x[0]) <= 1e-12);
    CHECK(h.x[1] == doctest::Approx(std::sqrt(E)).epsilon(1e-14));
    CHECK(h.xi[0] == doctest::Approx(-std::sqrt(E)).epsilon(1e-14));
    CHECK(std::abs(h.xi[1]) <= 1e-12);

    for (double t : {0.3, 1.7, 4.0})
        CHECK(ow::hamiltonian(ow::gamma0(t, E)) == doctest::Approx(E).epsilon(1e-14));
}

TEST_CASE("quantum numbers fix hbar") {
    const ow::QuantumNumbers qn(10, 2, 3.0);
    CHECK(qn.hbar() == doctest::Approx(3.0 / 11.0).epsilon(1e-15));
    const ow::QuantumNumbers qd(4, 3, 1.0);
    CHECK(qd.hbar() == doctest::Approx(1.0 / 5.5).epsilon(1e-15));
    CHECK_THROWS_AS(ow::QuantumNumbers(-1, 2, 1.0), ow::domain_error);
    CHECK_THROWS_AS(ow::QuantumNumbers(3, 1, 1.0), ow::domain_error);
    CHECK_THROWS_AS(ow::QuantumNumbers(3, 2, 0.0), ow::domain_error);
}

TEST_CASE("unitary maps") {
    CHECK_THROWS_AS(ow::UnitaryMap({cd(1, 0), cd(0.1, 0), cd(0, 0), cd(1, 0)}, 2),
                    ow::domain_error);
    // unitary but det = -1, not special
    CHECK_THROWS_AS(ow::UnitaryMap({cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0)}, 2),
                    ow::domain_error);

    std::mt19937 gen(22);
    const auto I = ow::UnitaryMap::identity(2);
    for (int rep = 0; rep < 40; ++rep) {
        const auto p = random_point(gen, 2, 1.5);
        CHECK(distance(ow::apply_unitary(I, p), p) == 0.0);

        const auto U = ow::sample_cp1(rep, 40);
        const auto q = ow::apply_unitary(U, p);
        CHECK(ow::hamiltonian(q) ==
              doctest::Approx(ow::hamiltonian(p)).epsilon(1e-12));
        const auto back = ow::apply_unitary(U, ow::apply_unitary(U, p, true));
        CHECK(distance(back, p) <= 1e-13 * (1 + distance(p, ow::PhasePoint::zero(2))));
    }
}

TEST_CASE("planar rotations stay on the orbit") {
    std::mt19937 gen(33);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    const double E = 1.3;
    for (int rep = 0; rep < 30; ++rep) {
        const auto p = random_point(gen, 2, 1.5);
        CHECK(distance(ow::rotate_in_orbit_plane(0.0, p), p) == 0.0);
        CHECK(distance(ow::rotate_in_orbit_plane(2 * kPi, p), p) <= 1e-12);

        // the rotated base point traces the reference orbit itself
        const double th = ang(gen);
        const auto r = ow::rotate_in_orbit_plane(th, ow::gamma0(0.0, E));
        double best = 1e300;
        for (int k = 0; k < 4096; ++k)
            best = std::min(best, distance(r, ow::gamma0(2 * kPi * k / 4096, E)));
        CHECK(best <= 2 * kPi * std::sqrt(2 * E) / 4096);
        CHECK(distance(r, ow::gamma0(th, E)) <= 1e-12);
    }
}

TEST_CASE("orbit frames") {
    const double E = 1.7;
    const auto f = ow::build_frame(ow::gamma0(0.0, E), E);
    REQUIRE(f.normals.size() == 2);

    // same plane pair as the reference normal vectors sqrt(E)(i,1), sqrt(E)(1,-i)
    const std::vector<cd> v1{cd(0, std::sqrt(E)), cd(std::sqrt(E), 0)};
    const std::vector<cd> v2{cd(std::sqrt(E), 0), cd(0, -std::sqrt(E))};
    const auto P = projector_onto(ow::from_complex(v1), ow::from_complex(v2));
    const auto Q = projector_onto(f.normals[0], f.normals[1]);
    for (int i = 0; i < 16; ++i) CHECK(std::abs(P[i] - Q[i]) <= 1e-10);

    CHECK_THROWS_AS(ow::build_frame(ow::PhasePoint({1.0, 0.0}, {0.0, 0.9}), E),
                    ow::domain_error);
}

TEST_CASE("frame invariants at random on-shell points") {
    std::mt19937 gen(44);
    std::uniform_real_distribution<double> ui(-1.0, 1.0);
    const double E = 0.9;
    for (int rep = 0; rep < 1000; ++rep) {
        // random on-shell point: unitary image of the base point
        const auto U = ow::sample_cp1(rep % 513, 513);
        auto p = ow::apply_unitary(U, ow::gamma0(ui(gen) * kPi, E));
        const auto f = ow::build_frame(p, E);
        std::vector<ow::PhasePoint> all{f.base};
        all.insert(all.end(), f.normals.begin(), f.normals.end());
        for (size_t i = 0; i < all.size(); ++i) {
            CHECK(std::abs(dot(all[i], all[i]) - 2 * E) <= 1e-11);
            for (size_t j = i + 1; j < all.size(); ++j)
                CHECK(std::abs(dot(all[i], all[j])) <= 1e-11);
        }
        // tangent of the flow through the base is -i z in the chart
        auto z = ow::to_complex(f.base);
        for (auto& c : z) c *= cd(0, -1);
        const auto tangent = ow::from_complex(z);
        for (const auto& n : f.normals) CHECK(std::abs(dot(n, tangent)) <= 1e-11);
    }
}

TEST_CASE("scaling points") {
    const double E = 2.0;
    const auto f = ow::build_frame(ow::gamma0(0.0, E), E);
    const std::vector<double> w0{0.0, 0.0};
    CHECK(distance(ow::scaling_point(f, 0.0, w0), f.base) == 0.0);
    CHECK(distance(ow::scaling_point(f, -1.0, w0), ow::PhasePoint::zero(2)) == 0.0);
    for (double u : {-0.3, 0.0, 0.25, 0.6})
        CHECK(ow::hamiltonian(ow::scaling_point(f, u, w0)) ==
              doctest::Approx((1 + u) * (1 + u) * E).epsilon(1e-13));
}

TEST_CASE("sphere sampling") {
    CHECK_THROWS_AS(ow::sample_cp1(-1, 10), ow::domain_error);
    CHECK_THROWS_AS(ow::sample_cp1(10, 10), ow::domain_error);

    const long K = 1000;
    double mean_abs2 = 0;
    for (long k = 0; k < K; ++k) {
        const auto U = ow::sample_cp1(k, K);
        // unitarity and unit determinant, entrywise
        const auto Ud = U.adjoint();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                cd s = 0;
                for (int l = 0; l < 2; ++l) s += Ud.at(i, l) * U.at(l, j);
                CHECK(std::abs(s - (i == j ? cd(1, 0) : cd(0, 0))) <= 1e-12);
            }
        const cd det = U.at(0, 0) * U.at(1, 1) - U.at(0, 1) * U.at(1, 0);
        CHECK(std::abs(det - cd(1, 0)) <= 1e-12);
        mean_abs2 += std::norm(U.at(0, 0));
    }
    CHECK(std::abs(mean_abs2 / K - 0.5) <= 0.02);
}
