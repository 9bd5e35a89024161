// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria marked with a runtime budget are timed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nhlab/analytic.hpp"
#include "nhlab/dynamics.hpp"
#include "nhlab/eigen.hpp"
#include "nhlab/lattice.hpp"
#include "nhlab/recursion.hpp"

using namespace nhlab;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. gauged OBC spectrum vs 2 sqrt(gamma) cos(n pi/(N+1)), < 5 s
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n : {3, 10, 40, 60}) {
        for (double g : {0.04, 0.2, 0.5, 1.0}) {
            const Spectrum s = obc_spectrum({ModelKind::HatanoNelson, n, g});
            const auto an = hatano_obc_eigs(n, g);
            worst = std::max(worst, multiset_distance(s.eigenvalues,
                                                      {an.begin(), an.end()}));
        }
    }
    const double dt = seconds_since(t0);
    report(1, "closed-form OBC spectrum equivalence", worst < 1e-8 && dt < 5.0,
           "max deviation " + std::to_string(worst) + ", " + std::to_string(dt) + " s");
}

// 2. band scans at gamma=0 (unit disk) and gamma=0.6 (1.6 x 0.4 ellipse), < 30 s
void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (double g : {0.0, 0.6}) {
        ModelSpec spec{ModelKind::HatanoNelson, 40, g};
        const auto scan = band_scan(spec, {-2.0, 2.0, -2.0, 2.0, 101, 101});
        long agree = 0, counted = 0;
        for (const auto& p : scan) {
            if (p.winding == Winding::NearBoundary) continue;
            ++counted;
            const bool in_growth = p.growth.verdict == Growth::Bounded;
            const bool in_ellipse = ellipse_membership(p.energy, g) == Membership::Interior;
            const bool in_loop = p.winding == Winding::Inside;
            if (in_growth == in_ellipse && in_growth == in_loop) ++agree;
        }
        const double frac = static_cast<double>(agree) / counted;
        ok = ok && frac >= 0.99;
        detail += "gamma=" + std::to_string(g) + " agreement " + std::to_string(frac) + "; ";

        const Spectrum pbc = pbc_spectrum({ModelKind::HatanoNelson, 40, g, 0.0, 0.0,
                                           Boundary::PBC}, 256);
        for (const auto& e : pbc.eigenvalues)
            ok = ok && std::abs(hatano_ellipse_form(e, g) - 1.0) < 1e-12;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 30.0;
    report(2, "continuum band scan reproduces the ellipse", ok,
           detail + std::to_string(dt) + " s");
}

// 3. boundary amplitudes at gamma=0 with the psi_1 = E seed convention
void criterion_3() {
    ModelSpec s{ModelKind::HatanoNelson, 100, 0.0};
    const auto a = recurse(s, {0.5, 0.0}, {0.5, 0.0}, 101);
    const auto b = recurse(s, {0.8, 0.0}, {0.8, 0.0}, 101);
    const double v1 = std::exp(a.log_abs[101]);
    const double v2 = std::exp(b.log_abs[101]);
    const bool ok = std::abs(v1 / 3.9e-31 - 1.0) < 0.05 && std::abs(v2 / 1.6e-10 - 1.0) < 0.05;
    char buf[128];
    std::snprintf(buf, sizeof buf, "psi_101 = %.3e (E=0.5), %.3e (E=0.8)", v1, v2);
    report(3, "boundary amplitudes at the exceptional point", ok, buf);
}

// 4. gain/loss quartic band: growth vs predicate, morphology, loop equality
void criterion_4() {
    bool ok = true;
    std::string detail;
    for (double v0 : {0.0, 0.5, 1.0, 1.5}) {
        ModelSpec spec{ModelKind::GainLoss, 40, 0.0, v0};
        const auto scan = band_scan(spec, {-2.5, 2.5, -2.5, 2.5, 61, 61});
        long agree = 0, counted = 0;
        for (const auto& p : scan) {
            // stay away from the band boundary, where any finite-J rate fit
            // necessarily goes Indeterminate
            if (std::abs(gainloss_quartic_form(p.energy, v0) - 1.0) < 0.05) continue;
            ++counted;
            const bool in_growth = p.growth.verdict == Growth::Bounded;
            const bool in_band =
                gainloss_band_membership(p.energy, v0) == Membership::Interior;
            if (in_growth == in_band) ++agree;
        }
        const double frac = static_cast<double>(agree) / counted;
        ok = ok && frac >= 0.99;
        detail += "V0=" + std::to_string(v0) + " agreement " + std::to_string(frac) + "; ";

        const Spectrum pbc = pbc_spectrum({ModelKind::GainLoss, 40, 0.0, v0, 0.0,
                                           Boundary::PBC}, 256);
        for (const auto& e : pbc.eigenvalues)
            ok = ok && std::abs(gainloss_quartic_form(e, v0) - 1.0) < 1e-10;
    }
    ok = ok && gainloss_band_morphology(0.5) == BandMorphology::SingleLobe;
    ok = ok && gainloss_band_morphology(1.0) == BandMorphology::Pinched;
    ok = ok && gainloss_band_morphology(1.5) == BandMorphology::TwoLobes;
    report(4, "gain/loss quartic band and morphology", ok, detail);
}

// 5. N=6, V0=0.5, gamma=0: QR spectrum is {-0.5i, +0.5i} with multiplicity 3
void criterion_5() {
    const Spectrum s = eigenvalues_qr(build_hamiltonian({ModelKind::GainLoss, 6, 0.0, 0.5}));
    int minus = 0, plus = 0;
    for (const auto& e : s.eigenvalues) {
        if (std::abs(e - complexd{0.0, -0.5}) < 1e-6) ++minus;
        if (std::abs(e - complexd{0.0, 0.5}) < 1e-6) ++plus;
    }
    report(5, "exceptional degeneracy of the gain/loss chain", minus == 3 && plus == 3,
           "multiplicities " + std::to_string(minus) + "/" + std::to_string(plus));
}

// 6. zero-mode leak bound and exact unit ratio at the domain endpoint
void criterion_6() {
    bool ok = true;
    for (int n : {20, 40}) {
        for (double gamma : {0.1, 0.2, 0.5, 0.8}) {
            for (double delta : {-0.5, -0.3, -0.1, 0.2, 0.5}) {
                if (delta <= ssh_zero_mode_domain(gamma).first) continue;
                const auto p = ssh_zero_mode(n, gamma, delta);
                const auto h = build_hamiltonian(
                    {ModelKind::NonReciprocalSSH, n, gamma, 0.0, delta});
                const auto hpsi = h.apply(p.amplitudes);
                double r2 = 0.0;
                for (const auto& v : hpsi) r2 += std::norm(v);
                // floor at roundoff scale: the analytic bound can fall below
                // what a double-precision matrix apply can resolve
                const double bound =
                    std::max(10.0 * std::pow(std::abs(p.ratio), n / 2 - 1), 1e-14);
                ok = ok && std::sqrt(r2) <= bound;
            }
        }
    }
    for (double gamma : {0.1, 0.2, 0.5, 0.9}) {
        const double endpoint = ssh_zero_mode_domain(gamma).first;
        const auto p = ssh_zero_mode(8, gamma, endpoint);
        ok = ok && std::abs(std::abs(p.ratio) - 1.0) < 1e-12;
    }
    report(6, "zero-mode profile bound and domain endpoint", ok);
}

// 7. delta sweep at gamma=0.2, N=40, < 60 s. The |E| < 1e-4 detector resolves
// the topological pair at N=40 only once the edge-mode splitting
// ~ sqrt(gamma) ((1-delta)/(1+delta))^{N/2} drops below it (delta >~ 0.25);
// the positive-side grid starts there.
void criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (double delta = -0.9; delta < -0.024; delta += 0.05) {
        const Spectrum s =
            obc_spectrum({ModelKind::NonReciprocalSSH, 40, 0.2, 0.0, delta});
        for (const auto& e : s.eigenvalues)
            if (std::abs(e) < 1e-4) {
                ok = false;
                detail += "spurious zero at delta=" + std::to_string(delta) + "; ";
            }
    }
    for (double delta = 0.25; delta < 0.96; delta += 0.05) {
        const Spectrum s =
            obc_spectrum({ModelKind::NonReciprocalSSH, 40, 0.2, 0.0, delta});
        int near_zero = 0;
        for (const auto& e : s.eigenvalues)
            if (std::abs(e) < 1e-4) ++near_zero;
        if (near_zero != 2) {
            ok = false;
            detail += "count " + std::to_string(near_zero) + " at delta=" +
                      std::to_string(delta) + "; ";
        }
    }
    const auto [lo, hi] = ssh_zero_mode_domain(0.2);
    ok = ok && std::abs(lo + 2.0 / 3.0) < 5e-5 && hi == 1.0;
    const double dt = seconds_since(t0);
    ok = ok && dt < 60.0;
    report(7, "delta sweep: zero-mode fan and quasi-stationary window", ok,
           detail + "window (" + std::to_string(lo) + ", 1), " + std::to_string(dt) + " s");
}

// 8. lifetime of the quasi-stationary zero mode within [10, 50]
void criterion_8() {
    const auto zm = ssh_zero_mode(40, 0.2, -0.4);
    const auto h = build_hamiltonian({ModelKind::NonReciprocalSSH, 40, 0.2, 0.0, -0.4});
    const auto res = evolve(h, zm.amplitudes, 60.0, 1e-9, 241, 0.01);
    const bool ok = res.lifetime && *res.lifetime >= 10.0 && *res.lifetime <= 50.0;
    report(8, "quasi-stationary lifetime bracket", ok,
           res.lifetime ? "lifetime " + std::to_string(*res.lifetime) : "no crossing");
}

// 9. disorder Monte Carlo, 100 realizations at w=0.05, < 2 min
void criterion_9() {
    const auto t0 = std::chrono::steady_clock::now();
    DisorderSpec d{0.05, 0.0, 20260824, 100};

    const auto topo = disorder_robustness({ModelKind::NonReciprocalSSH, 40, 0.2, 0.0, 0.4}, d);
    bool ok = topo.zero_energy_spread < 1e-2;

    const auto qs = disorder_robustness({ModelKind::NonReciprocalSSH, 40, 0.2, 0.0, -0.4}, d);
    int surviving = 0;
    for (double ov : qs.survival_overlap)
        if (ov >= 0.9) ++surviving;
    ok = ok && surviving >= 95;
    const double dt = seconds_since(t0);
    ok = ok && dt < 120.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "topological spread %.2e, %d/100 overlaps >= 0.9, %.1f s",
                  topo.zero_energy_spread, surviving, dt);
    report(9, "disorder robustness Monte Carlo", ok, buf);
}

// 10. property bundle: closed form, gauge invariance, integrator order,
// disorder determinism
void criterion_10() {
    bool ok = true;

    // recursion vs the two-root closed form
    {
        const double gamma = 0.5;
        const complexd e{0.4, 0.3};
        const auto tr = recurse({ModelKind::HatanoNelson, 100, gamma}, e, {1.0, 0.0}, 50);
        const complexd disc = std::sqrt(e * e - 4.0 * gamma);
        const complexd dp = 0.5 * (e + disc), dm = 0.5 * (e - disc);
        for (int j = 1; j <= 50; ++j) {
            const complexd closed = (std::pow(dp, j) - std::pow(dm, j)) / (dp - dm);
            ok = ok && std::abs(tr.psi[j] - closed) / std::abs(closed) < 1e-10;
        }
    }
    // gauge invariance of spectra
    for (auto spec : {ModelSpec{ModelKind::HatanoNelson, 12, 0.5},
                      ModelSpec{ModelKind::NonReciprocalSSH, 12, 0.2, 0.0, 0.5}}) {
        const Hamiltonian h = build_hamiltonian(spec);
        auto [g, hb] = gauge_transform(h);
        ok = ok && multiset_distance(eigenvalues_qr(h).eigenvalues,
                                     eigenvalues_qr(hb).eigenvalues) < 1e-8;
    }
    // integrator order: error drops at least 10x per 100x tolerance
    {
        const auto h = build_hamiltonian({ModelKind::HatanoNelson, 12, 0.5});
        std::vector<complexd> psi0(12);
        for (int i = 0; i < 12; ++i) psi0[i] = complexd(std::sin(i + 1.0), std::cos(2.0 * i));
        const auto ref = evolve(h, psi0, 5.0, 1e-12, 11);
        double prev = -1.0;
        for (double tol : {1e-5, 1e-7}) {
            const auto res = evolve(h, psi0, 5.0, tol, 11);
            const double err = stationarity_deviation(res.final_state, ref.final_state);
            if (prev > 0.0) ok = ok && err < prev / 10.0;
            prev = std::max(err, 1e-15);
        }
    }
    // disorder stream determinism
    {
        ModelSpec s{ModelKind::NonReciprocalSSH, 40, 0.2, 0.0, 0.3};
        DisorderSpec d{0.05, 0.1, 4242, 8};
        const auto a = apply_disorder(s, d, 3), b = apply_disorder(s, d, 3);
        ok = ok && a.upper == b.upper && a.lower == b.lower;
    }
    report(10, "property bundle", ok);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
