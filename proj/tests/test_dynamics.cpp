#include <cmath>
#include <random>

#include "doctest.h"
#include "nhlab/analytic.hpp"
#include "nhlab/dynamics.hpp"
#include "nhlab/eigen.hpp"

using namespace nhlab;

namespace {

std::vector<complexd> random_state(int n, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<complexd> v(n);
    for (auto& x : v) x = complexd(dist(gen), dist(gen));
    return v;
}

}  // namespace

TEST_CASE("hermitian evolution preserves the norm") {
    const auto h = build_hamiltonian({ModelKind::HatanoNelson, 16, 1.0});
    const auto res = evolve(h, random_state(16, 1), 10.0, 1e-10, 51);
    for (double ln : res.lognorm) CHECK(std::abs(ln) < 1e-8);
}

TEST_CASE("exact eigenstate only picks up a phase") {
    // gauged chain eigenvector, ungauged by the scale factors:
    // psi_j = gamma^{(j-1)/2} sin(j n pi / (N+1))
    const int n = 12, mode = 3;
    const double gamma = 0.5;
    std::vector<complexd> psi0(n);
    for (int j = 1; j <= n; ++j)
        psi0[j - 1] = std::pow(gamma, 0.5 * (j - 1)) * std::sin(j * mode * M_PI / (n + 1));
    const auto h = build_hamiltonian({ModelKind::HatanoNelson, n, gamma});
    const auto res = evolve(h, psi0, 10.0, 1e-10, 51);
    for (double d : res.deviation) CHECK(d < 1e-6);
    CHECK_FALSE(res.lifetime.has_value());
}

TEST_CASE("log-norm slope matches the most amplified mode") {
    ModelSpec s{ModelKind::GainLoss, 8, 0.5, 0.5, 0.0, Boundary::PBC};
    const auto h = build_hamiltonian(s);
    const auto res = evolve(h, random_state(8, 5), 60.0, 1e-10, 121);
    // modal oracle: growth rate is the largest Im E of the spectrum
    const Spectrum sp = eigenvalues_qr(h);
    double max_im = -1e9;
    for (const auto& e : sp.eigenvalues) max_im = std::max(max_im, e.imag());
    const double slope =
        (res.lognorm.back() - res.lognorm[60]) / (res.times.back() - res.times[60]);
    CHECK(slope == doctest::Approx(max_im).epsilon(0.01));
}

TEST_CASE("stationarity deviation metric") {
    const auto psi0 = random_state(10, 9);
    SUBCASE("phase and scale invariance") {
        auto scaled = psi0;
        for (auto& v : scaled) v *= 3.0 * std::polar(1.0, 0.7);
        // sqrt(1-F^2) floors at sqrt(eps) when F is 1 up to roundoff
        CHECK(stationarity_deviation(scaled, psi0) < 1e-7);
    }
    SUBCASE("orthogonal states are maximally deviated") {
        std::vector<complexd> a = {1.0, 0.0}, b = {0.0, 1.0};
        CHECK(stationarity_deviation(b, a) == doctest::Approx(1.0));
    }
    SUBCASE("first-order response to a small orthogonal component") {
        std::vector<complexd> a(10, 0.0), chi(10, 0.0);
        a[0] = 1.0;
        chi[3] = 1.0;
        const double eps = 1e-3;
        std::vector<complexd> mixed(10);
        for (int i = 0; i < 10; ++i) mixed[i] = a[i] + eps * chi[i];
        CHECK(stationarity_deviation(mixed, a) == doctest::Approx(eps).epsilon(1e-3));
    }
    SUBCASE("zero vectors rejected") {
        std::vector<complexd> z(10, 0.0);
        CHECK_THROWS_AS(stationarity_deviation(z, psi0), std::invalid_argument);
    }
}

TEST_CASE("lifetime of the quasi-stationary ssh zero mode") {
    const int n = 40;
    const auto zm = ssh_zero_mode(n, 0.2, -0.4);
    const auto h = build_hamiltonian({ModelKind::NonReciprocalSSH, n, 0.2, 0.0, -0.4});
    const auto res = evolve(h, zm.amplitudes, 60.0, 1e-9, 241);
    REQUIRE(res.lifetime.has_value());
    CHECK(*res.lifetime > 10.0);
    CHECK(*res.lifetime < 50.0);
}

TEST_CASE("topological zero mode outlives the observation window") {
    const int n = 40;
    const auto zm = ssh_zero_mode(n, 0.2, 0.4);
    const auto h = build_hamiltonian({ModelKind::NonReciprocalSSH, n, 0.2, 0.0, 0.4});
    const auto res = evolve(h, zm.amplitudes, 40.0, 1e-9, 81);
    CHECK_FALSE(res.lifetime.has_value());
}

TEST_CASE("early deviation growth is bounded by the boundary leak") {
    const int n = 40;
    const auto zm = ssh_zero_mode(n, 0.2, -0.4);
    const auto h = build_hamiltonian({ModelKind::NonReciprocalSSH, n, 0.2, 0.0, -0.4});
    const auto hpsi = h.apply(zm.amplitudes);
    double leak2 = 0.0;
    for (const auto& v : hpsi) leak2 += std::norm(v);
    const double leak = std::sqrt(leak2);  // ~5e-7 at these parameters
    const auto res = evolve(h, zm.amplitudes, 1.0, 1e-10, 11);
    CHECK(res.deviation.back() <= 10.0 * 1.0 * leak);
}

TEST_CASE("lifetime grows with N inside the quasi-stationary window") {
    double prev = 0.0;
    for (int n : {20, 30, 40, 60}) {
        const auto zm = ssh_zero_mode(n, 0.2, -0.4);
        const auto h = build_hamiltonian({ModelKind::NonReciprocalSSH, n, 0.2, 0.0, -0.4});
        const auto res = evolve(h, zm.amplitudes, 80.0, 1e-8, 161);
        REQUIRE(res.lifetime.has_value());
        CHECK(*res.lifetime > prev);
        prev = *res.lifetime;
    }
}

TEST_CASE("integrator error scales with the tolerance") {
    const auto h = build_hamiltonian({ModelKind::HatanoNelson, 12, 0.5});
    const auto psi0 = random_state(12, 21);
    const auto ref = evolve(h, psi0, 5.0, 1e-12, 11);
    double prev_err = -1.0;
    for (double tol : {1e-5, 1e-7, 1e-9}) {
        const auto res = evolve(h, psi0, 5.0, tol, 11);
        const double err = stationarity_deviation(res.final_state, ref.final_state);
        if (prev_err > 0.0) CHECK(err < prev_err / 10.0);
        prev_err = std::max(err, 1e-15);
    }
}

TEST_CASE("dynamics commute with the gauge transform") {
    const auto h = build_hamiltonian({ModelKind::NonReciprocalSSH, 20, 0.4, 0.0, 0.3});
    auto [g, hb] = gauge_transform(h);
    const auto psi0 = random_state(20, 33);
    std::vector<complexd> tilde0(20);
    for (int i = 0; i < 20; ++i) tilde0[i] = psi0[i] / g.scale[i];

    const auto direct = evolve(h, psi0, 4.0, 1e-11, 9);
    const auto gauged = evolve(hb, tilde0, 4.0, 1e-11, 9);
    std::vector<complexd> mapped(20);
    for (int i = 0; i < 20; ++i) mapped[i] = gauged.final_state[i] * g.scale[i];
    CHECK(stationarity_deviation(mapped, direct.final_state) < 1e-6);
}

TEST_CASE("evolution is linear in the initial state") {
    const auto h = build_hamiltonian({ModelKind::HatanoNelson, 10, 0.3});
    const auto psi0 = random_state(10, 44);
    std::vector<complexd> scaled(10);
    const complexd alpha{2.0, -1.0};
    for (int i = 0; i < 10; ++i) scaled[i] = alpha * psi0[i];
    const auto a = evolve(h, psi0, 3.0, 1e-10, 7);
    const auto b = evolve(h, scaled, 3.0, 1e-10, 7);
    for (size_t i = 0; i < a.deviation.size(); ++i)
        CHECK(a.deviation[i] == doctest::Approx(b.deviation[i]).epsilon(1e-6));
    CHECK(b.lognorm.back() - a.lognorm.back() == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("zero-width disorder robustness is trivially clean") {
    ModelSpec s{ModelKind::NonReciprocalSSH, 40, 0.2, 0.0, -0.4};
    DisorderSpec d{0.0, 0.0, 1, 4};
    const auto rep = disorder_robustness(s, d);
    const Spectrum clean = spectrum_of(build_hamiltonian(s));
    double clean_nearest = 1e9;
    for (const auto& e : clean.eigenvalues)
        clean_nearest = std::min(clean_nearest, std::abs(e));
    CHECK(rep.zero_energy_spread == doctest::Approx(clean_nearest).epsilon(1e-12));
    for (double ov : rep.survival_overlap) CHECK(ov == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.verdict == RobustnessVerdict::Robust);
}

TEST_CASE("disorder robustness preconditions") {
    DisorderSpec d{0.05, 0.0, 1, 2};
    CHECK_THROWS_AS(disorder_robustness({ModelKind::HatanoNelson, 20, 0.2}, d),
                    std::invalid_argument);
    // delta outside the existence window
    CHECK_THROWS_AS(disorder_robustness({ModelKind::NonReciprocalSSH, 20, 0.2, 0.0, -0.9}, d),
                    std::invalid_argument);
}

TEST_CASE("evolve input validation") {
    const auto h = build_hamiltonian({ModelKind::HatanoNelson, 8, 0.5});
    const auto psi0 = random_state(8, 2);
    CHECK_THROWS_AS(evolve(h, psi0, -1.0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(evolve(h, psi0, 1.0, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(evolve(h, random_state(7, 2), 1.0, 1e-9), std::invalid_argument);
}
