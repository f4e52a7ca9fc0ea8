#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "ow/validation.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("rate fitting") {
    std::vector<double> Ns, errs;
    for (int N : {10, 20, 40, 80, 160}) {
        Ns.push_back(N);
        errs.push_back(3.7 * std::pow(N, -2.0 / 3.0));
    }
    const auto clean = ow::rate_fit(Ns, errs);
    CHECK(clean.fitted_exponent == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(clean.residual <= 1e-12);

    std::vector<double> wobble = errs;
    for (size_t i = 0; i < wobble.size(); ++i)
        wobble[i] = errs[i] * (1.0 + (i % 2 ? -0.2 : 0.2));
    const auto noisy = ow::rate_fit(Ns, wobble);
    CHECK(std::abs(noisy.fitted_exponent + 2.0 / 3.0) <= 0.15);

    const std::vector<double> two_n{10, 20}, two_e{1.0, 0.5};
    CHECK_THROWS_AS(ow::rate_fit(two_n, two_e), ow::domain_error);
    const std::vector<double> bad_e{1.0, 0.5, 0.0};
    const std::vector<double> three_n{10, 20, 40};
    CHECK_THROWS_AS(ow::rate_fit(three_n, bad_e), ow::domain_error);
    const std::vector<double> same_n{10, 10, 10};
    const std::vector<double> pos_e{1.0, 0.5, 0.25};
    CHECK_THROWS_AS(ow::rate_fit(same_n, pos_e), ow::domain_error);

    const std::string csv = clean.to_csv();
    CHECK(csv.rfind("N,error\n", 0) == 0);
    const std::string js = clean.to_json("decay", -2.0 / 3.0, true);
    for (const char* key :
         {"\"claim\"", "\"target_exponent\"", "\"fitted_exponent\"",
          "\"residual\"", "\"pass\""})
        CHECK(js.find(key) != std::string::npos);
}

TEST_CASE("weak limits") {
    for (int N : {4, 10, 20}) {
        const auto r = ow::weak_limit_test(ow::Observable::one(),
                                           ow::QuantumNumbers(N, 2, 1.0));
        CHECK(r.error <= 1e-9);
    }

    const double E = 1.3;
    const auto h =
        ow::weak_limit_test(ow::Observable::energy(), ow::QuantumNumbers(6, 2, E));
    CHECK(h.lhs == doctest::Approx(E).epsilon(1e-9));
    CHECK(h.rhs == doctest::Approx(E).epsilon(1e-12));

    CHECK_THROWS_AS(ow::weak_limit_test(ow::Observable::one(),
                                        ow::QuantumNumbers(21, 2, 1.0)),
                    ow::domain_error);

    // localized observable: moment converges to the orbit average like 1/N
    const auto obs = ow::Observable::gaussian(0.7, ow::gamma0(0.0, 1.0));
    std::vector<double> Ns, errs;
    for (int N : {4, 8, 16}) {
        const auto r = ow::weak_limit_test(obs, ow::QuantumNumbers(N, 2, 1.0));
        CHECK(r.error > 0);
        Ns.push_back(N);
        errs.push_back(r.error);
    }
    const auto fit = ow::rate_fit(Ns, errs);
    CHECK(fit.fitted_exponent <= -0.75);
    CHECK(fit.fitted_exponent >= -1.3);
}

TEST_CASE("scaling scan against the edge prediction") {
    const std::vector<std::array<double, 2>> w0{{0.0, 0.0}};

    const ow::QuantumNumbers big(200, 2, 1.0);
    const std::vector<double> u_center{0.0};
    const auto rows = ow::scaling_scan(big, u_center, w0);
    REQUIRE(rows.size() == 1);
    const double limit = ow::airy_ai(0.0) / (std::cbrt(2.0) * kPi * kPi);
    CHECK(std::abs(rows[0].exact - limit) <=
          3 * std::abs(ow::airy_ai_prime(0.0)) * std::pow(200.0, -2.0 / 3.0));
    CHECK(rows[0].predicted == doctest::Approx(limit).epsilon(1e-12));

    // transverse falloff follows the squeezed Gaussian within 5%
    const ow::QuantumNumbers mid(100, 2, 1.0);
    std::vector<std::array<double, 2>> wg;
    for (double w1 : {0.0, 0.07, 0.14}) wg.push_back({w1, 0.0});
    const auto wrows = ow::scaling_scan(mid, u_center, wg);
    for (size_t i = 1; i < wrows.size(); ++i) {
        const double ratio = wrows[i].exact / wrows[0].exact;
        const double gauss =
            std::exp(-2 * 101 * wrows[i].w[0] * wrows[i].w[0]);
        CHECK(ratio == doctest::Approx(gauss).epsilon(0.05));
    }

    // fixed rescaled coordinates converge to the displayed limit from above
    const double target = std::exp(-1.0) * ow::airy_ai(2.0) / (std::cbrt(2.0) * kPi * kPi);
    double prev = 1e300;
    for (int N : {50, 100, 200}) {
        const ow::QuantumNumbers qn(N, 2, 1.0);
        const std::vector<double> ug{std::pow(2.0 * N, -2.0 / 3.0)};
        const std::vector<std::array<double, 2>> wgl{
            {std::pow(2.0 * N, -0.5), 0.0}};
        const auto r = ow::scaling_scan(qn, ug, wgl);
        const double err = std::abs(r[0].exact - target);
        CHECK(err < prev);
        prev = err;
    }

    CHECK_THROWS_AS(ow::scaling_scan(big, std::vector<double>{0.6}, w0),
                    ow::domain_error);
    const std::vector<std::array<double, 2>> wbad{{0.4, 0.0}};
    CHECK_THROWS_AS(ow::scaling_scan(big, u_center, wbad), ow::domain_error);
    CHECK_THROWS_AS(
        ow::scaling_scan(ow::QuantumNumbers(10, 3, 1.0), u_center, w0),
        ow::domain_error);

    const std::string csv = ow::scaling_csv(rows);
    CHECK(csv.rfind("u,w1,w2,exact,predicted,error_scale\n", 0) == 0);
}

TEST_CASE("pointwise regime scans") {
    std::vector<ow::QuantumNumbers> offs;
    for (int N : {20, 40, 60, 80}) offs.emplace_back(N, 2, 1.0);
    const auto off = ow::pointwise_scan(offs, ow::Regime::off_shell);
    CHECK(off.fitted_exponent <= -4.0);

    // the on-orbit error is dominated by the first correction, which decays
    // like the cube root; the fit across 25..200 reflects that, not the
    // square of it
    std::vector<ow::QuantumNumbers> ons;
    for (int N : {25, 50, 100, 200}) ons.emplace_back(N, 2, 1.0);
    const auto on = ow::pointwise_scan(ons, ow::Regime::on_orbit);
    CHECK(on.fitted_exponent <= -0.10);
    CHECK(on.fitted_exponent >= -0.45);
    CHECK(on.residual <= 0.05);

    std::vector<ow::QuantumNumbers> inner;
    for (int N = 25; N <= 100; ++N) inner.emplace_back(N, 2, 1.0);
    const auto env = ow::pointwise_scan(inner, ow::Regime::interior);
    CHECK(env.fitted_exponent <= -0.10);
    CHECK(env.fitted_exponent >= -0.60);

    CHECK_THROWS_AS(ow::pointwise_scan(ons, ow::Regime::origin), ow::domain_error);
    std::vector<ow::QuantumNumbers> short_list{ow::QuantumNumbers(10, 2, 1.0),
                                               ow::QuantumNumbers(20, 2, 1.0)};
    CHECK_THROWS_AS(ow::pointwise_scan(short_list, ow::Regime::on_orbit),
                    ow::domain_error);
}

TEST_CASE("projector averages") {
    const ow::QuantumNumbers qn(9, 2, 1.0);
    const auto p0 = ow::PhasePoint::zero(2);
    const double want = -10.0 * 10.0 * 10.0 / (kPi * kPi);
    const double v2 = ow::projector_average(p0, qn, 2);
    const double v512 = ow::projector_average(p0, qn, 512);
    CHECK(v2 == doctest::Approx(want).epsilon(1e-12));
    CHECK(std::abs(v512 - v2) <= 1e-12 * std::abs(v2));

    // equal-energy points see the same average within the sampling estimate
    const ow::QuantumNumbers qr(20, 2, 1.0);
    const auto pa = ow::gamma0(0.0, 0.8);
    const auto pb = ow::apply_unitary(ow::sample_cp1(7, 37), ow::gamma0(1.1, 0.8));
    const auto ea = ow::projector_average_est(pa, qr, 1024);
    const auto eb = ow::projector_average_est(pb, qr, 1024);
    CHECK(ea.est_error == 2 * std::abs(ea.value - ea.value_half));
    CHECK(std::abs(ea.value - eb.value) <=
          ea.est_error + eb.est_error + 1e-10 * std::abs(ea.value));
    CHECK(std::abs(ea.value - eb.value) <= 1e-4 * std::abs(ea.value));

    CHECK_THROWS_AS(ow::projector_average(p0, qn, 1), ow::domain_error);
    CHECK_THROWS_AS(ow::projector_average(p0, qn, 9000), ow::domain_error);
    CHECK_THROWS_AS(ow::projector_average(p0, ow::QuantumNumbers(60, 2, 1.0), 64),
                    ow::domain_error);
}

TEST_CASE("scans are deterministic across thread counts") {
    const ow::QuantumNumbers qn(40, 2, 1.0);
    std::vector<double> ug;
    for (int i = 0; i < 7; ++i) ug.push_back(-0.3 + 0.1 * i);
    const std::vector<std::array<double, 2>> wg{{0.0, 0.0}, {0.1, 0.05}};

    setenv("ORBIT_WIGNER_THREADS", "1", 1);
    const auto serial = ow::scaling_csv(ow::scaling_scan(qn, ug, wg));
    setenv("ORBIT_WIGNER_THREADS", "5", 1);
    const auto parallel = ow::scaling_csv(ow::scaling_scan(qn, ug, wg));
    unsetenv("ORBIT_WIGNER_THREADS");
    CHECK(serial == parallel);
}
