#include "nhlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "nhlab/analytic.hpp"
#include "nhlab/eigen.hpp"
#include "nhlab/recursion.hpp"

namespace nhlab {

namespace {

using Vec = std::vector<complexd>;

double norm_of(const Vec& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// Dormand-Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,     0.0,           500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84,     0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,         7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

double stationarity_deviation(std::span<const complexd> psi_t,
                              std::span<const complexd> psi0) {
    if (psi_t.size() != psi0.size())
        throw std::invalid_argument("stationarity_deviation: size mismatch");
    double n0 = 0.0, nt = 0.0;
    complexd dot{0.0, 0.0};
    for (size_t i = 0; i < psi0.size(); ++i) {
        n0 += std::norm(psi0[i]);
        nt += std::norm(psi_t[i]);
        dot += std::conj(psi0[i]) * psi_t[i];
    }
    if (n0 == 0.0 || nt == 0.0)
        throw std::invalid_argument("stationarity_deviation: zero vector");
    const double f = std::abs(dot) / std::sqrt(n0 * nt);
    return std::sqrt(std::max(0.0, 1.0 - f * f));
}

EvolutionResult evolve(const Hamiltonian& h, std::span<const complexd> psi0_in,
                       double t_final, double tol, int num_samples, double eps_life) {
    if (t_final <= 0.0) throw std::invalid_argument("evolve: t_final must be > 0");
    if (tol < 1e-12 || tol > 1e-4)
        throw std::invalid_argument("evolve: tol must lie in [1e-12, 1e-4]");
    if (num_samples < 2) throw std::invalid_argument("evolve: need >= 2 samples");
    if (static_cast<int>(psi0_in.size()) != h.n)
        throw std::invalid_argument("evolve: state size mismatch");

    Vec psi0(psi0_in.begin(), psi0_in.end());
    const double norm0 = norm_of(psi0);
    if (norm0 == 0.0) throw std::invalid_argument("evolve: zero initial state");

    const int n = h.n;
    auto rhs = [&](const Vec& y, Vec& dy) {
        const auto hy = h.apply(y);
        dy.resize(n);
        for (int i = 0; i < n; ++i) dy[i] = complexd{0.0, -1.0} * hy[i];
    };

    EvolutionResult res;
    res.times.reserve(num_samples);
    res.deviation.reserve(num_samples);
    res.lognorm.reserve(num_samples);

    Vec y = psi0;
    double lognorm_acc = 0.0;
    {
        // work in unit norm; accumulated log restores the amplitude
        for (auto& v : y) v /= norm0;
    }
    double t = 0.0;
    double hstep = std::min(t_final / 100.0, 0.1);
    Vec k[7], ytmp(n), y5(n), y4(n);
    rhs(y, k[0]);

    const double dt_out = t_final / (num_samples - 1);
    int next_sample = 0;
    auto record = [&](double tm) {
        res.times.push_back(tm);
        res.deviation.push_back(stationarity_deviation(y, psi0));
        res.lognorm.push_back(lognorm_acc + std::log(norm_of(y)));
    };
    record(0.0);
    next_sample = 1;

    const double hmin = 1e-14 * t_final;
    while (next_sample < num_samples) {
        const double t_target = next_sample * dt_out;
        bool hit = false;
        if (t + hstep >= t_target) {
            hstep = t_target - t;
            hit = true;
        }
        // one DP54 step
        for (int s = 1; s < 7; ++s) {
            for (int i = 0; i < n; ++i) {
                complexd acc = y[i];
                for (int q = 0; q < s; ++q) acc += hstep * kA[s][q] * k[q][i];
                ytmp[i] = acc;
            }
            rhs(ytmp, k[s]);
        }
        double err2 = 0.0, ynorm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            complexd v5 = y[i], v4 = y[i];
            for (int s = 0; s < 7; ++s) {
                v5 += hstep * kB5[s] * k[s][i];
                v4 += hstep * kB4[s] * k[s][i];
            }
            y5[i] = v5;
            y4[i] = v4;
            err2 += std::norm(v5 - v4);
            ynorm2 += std::norm(v5);
        }
        const double err = std::sqrt(err2);
        const double sc = tol * (1.0 + std::sqrt(ynorm2));
        res.stats.max_error_estimate = std::max(res.stats.max_error_estimate, err);
        if (err <= sc) {
            t += hstep;
            y.swap(y5);
            const double nrm = norm_of(y);
            lognorm_acc += std::log(nrm);
            for (auto& v : y) v /= nrm;
            rhs(y, k[0]);  // FSAL not exploited after renormalization
            ++res.stats.steps_accepted;
            if (hit) {
                record(t);
                ++next_sample;
            }
        } else {
            ++res.stats.steps_rejected;
        }
        const double fac = std::clamp(
            0.9 * std::pow(sc / std::max(err, 1e-300), 0.2), 0.2, 5.0);
        hstep = std::max(hstep * fac, hmin);
        if (hstep <= hmin && err > sc)
            throw std::runtime_error("evolve: step size underflow at t=" +
                                     std::to_string(t));
    }
    const double nrm = norm_of(y);
    for (auto& v : y) v /= nrm;
    res.final_state = std::move(y);
    res.lifetime = lifetime(res, eps_life);
    return res;
}

std::optional<double> lifetime(const EvolutionResult& result, double eps_life) {
    if (eps_life <= 0.0 || eps_life >= 1.0)
        throw std::invalid_argument("lifetime: eps_life must lie in (0,1)");
    for (size_t i = 1; i < result.deviation.size(); ++i) {
        const double d0 = result.deviation[i - 1], d1 = result.deviation[i];
        if (d1 > eps_life) {
            if (d1 == d0) return result.times[i];
            const double frac = std::clamp((eps_life - d0) / (d1 - d0), 0.0, 1.0);
            return result.times[i - 1] + frac * (result.times[i] - result.times[i - 1]);
        }
    }
    return std::nullopt;
}

RobustnessReport disorder_robustness(const ModelSpec& spec, const DisorderSpec& d,
                                     RobustnessThresholds thresholds) {
    spec.validate();
    if (spec.kind != ModelKind::NonReciprocalSSH || spec.bc != Boundary::OBC)
        throw std::invalid_argument("disorder_robustness: SSH chain under OBC only");
    const auto [dmin, dmax] = ssh_zero_mode_domain(spec.gamma);
    if (spec.delta <= dmin || spec.delta >= dmax)
        throw std::invalid_argument(
            "disorder_robustness: delta outside the zero-mode existence window");

    const int r_total = d.realizations;
    RobustnessReport rep;
    rep.realizations = r_total;
    rep.thresholds = thresholds;
    rep.nearest_eigs.resize(r_total);
    rep.survival_overlap.resize(r_total);

    const ZeroModeProfile clean = ssh_zero_mode(spec.n, spec.gamma, spec.delta);

    auto work = [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            const Hamiltonian h = apply_disorder(spec, d, r);
            const Spectrum sp = spectrum_of(h);
            complexd nearest = sp.eigenvalues.front();
            for (const auto& e : sp.eigenvalues)
                if (std::abs(e) < std::abs(nearest)) nearest = e;
            rep.nearest_eigs[r] = nearest;

            const EvolutionResult ev =
                evolve(h, clean.amplitudes, thresholds.probe_time, 1e-8, 9);
            const double dv = ev.deviation.back();
            rep.survival_overlap[r] = std::sqrt(std::max(0.0, 1.0 - dv * dv));
        }
    };
    const int workers = std::min(worker_count(), r_total);
    if (workers <= 1) {
        work(0, r_total);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (r_total + workers - 1) / workers;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work, w * chunk, std::min(r_total, (w + 1) * chunk));
        for (auto& t : pool) t.join();
    }

    for (const auto& e : rep.nearest_eigs)
        rep.zero_energy_spread = std::max(rep.zero_energy_spread, std::abs(e));
    int ok = 0;
    for (double ov : rep.survival_overlap)
        if (ov >= thresholds.overlap_min) ++ok;
    const double frac = static_cast<double>(ok) / r_total;
    if (spec.delta > 0.0)
        rep.verdict = rep.zero_energy_spread < thresholds.spread_max
                          ? RobustnessVerdict::Robust
                          : RobustnessVerdict::Fragile;
    else
        rep.verdict = frac >= thresholds.overlap_fraction ? RobustnessVerdict::Robust
                                                          : RobustnessVerdict::Fragile;
    return rep;
}

}  // namespace nhlab
