#include "nhlab/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "nhlab/eigen.hpp"

namespace nhlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRescaleLimit = 0x1.0p512;
constexpr double kRescaleStep = 512.0 * M_LN2;

// Row coefficients of the recurrence at 1-based site j, continued
// periodically past spec.n (semi-infinite lattice).
struct RowCoeffs {
    complexd diag;
    complexd fwd;    // multiplies psi_{j+1}
    complexd back;   // multiplies psi_{j-1}
};

RowCoeffs row_coeffs(const ModelSpec& spec, long j) {
    switch (spec.kind) {
        case ModelKind::HatanoNelson:
            return {complexd{0.0, 0.0}, 1.0, spec.gamma};
        case ModelKind::GainLoss:
            return {complexd{0.0, (j % 2 == 1) ? -spec.v0 : spec.v0}, 1.0, spec.gamma};
        case ModelKind::NonReciprocalSSH: {
            const double tj = ssh_hopping(static_cast<int>(j % 2), spec.delta);
            const double tprev = ssh_hopping(static_cast<int>((j + 1) % 2), spec.delta);
            return {complexd{0.0, 0.0}, tj, spec.gamma * tprev};
        }
    }
    return {};
}

}  // namespace

RecursionTrace recurse(const ModelSpec& spec, complexd energy, complexd seed, int j_max) {
    spec.validate();
    if (seed == complexd{0.0, 0.0})
        throw std::invalid_argument("recurse: seed must be nonzero");
    if (j_max < 1 || j_max > 1'000'000)
        throw std::invalid_argument("recurse: j_max out of range");

    RecursionTrace tr;
    tr.energy = energy;
    tr.seed = seed;
    tr.psi.assign(j_max + 1, complexd{0.0, 0.0});
    tr.log_abs.assign(j_max + 1, -kInf);
    tr.psi[1] = seed;
    tr.log_abs[1] = std::log(std::abs(seed));

    double log_scale = 0.0;  // true psi_j = stored psi_j * exp(log_scale at j)
    complexd prev{0.0, 0.0}, cur = seed;
    for (int j = 1; j < j_max; ++j) {
        const RowCoeffs rc = row_coeffs(spec, j);
        complexd next = ((energy - rc.diag) * cur - rc.back * prev) / rc.fwd;
        prev = cur;
        cur = next;

        double mag = std::max(std::abs(prev), std::abs(cur));
        if (mag > kRescaleLimit) {
            prev *= 0x1.0p-512;
            cur *= 0x1.0p-512;
            log_scale += kRescaleStep;
            if (!tr.overflow_at) tr.overflow_at = j + 1;
        } else if (mag != 0.0 && mag < 0x1.0p-512) {
            prev *= 0x1.0p512;
            cur *= 0x1.0p512;
            log_scale -= kRescaleStep;
        }
        tr.psi[j + 1] = cur;
        const double a = std::abs(cur);
        tr.log_abs[j + 1] = (a == 0.0) ? -kInf : std::log(a) + log_scale;
    }

    double max_log = -kInf;
    for (double v : tr.log_abs) max_log = std::max(max_log, v);
    tr.residual = (tr.log_abs[j_max] == -kInf)
                      ? 0.0
                      : std::exp(tr.log_abs[j_max] - max_log);
    return tr;
}

GrowthClass classify_growth(const ModelSpec& spec, complexd energy, int j_max,
                            double rate_tol) {
    if (j_max < 32) throw std::invalid_argument("classify_growth: j_max too small");
    const RecursionTrace tr = recurse(spec, energy, complexd{1.0, 0.0}, j_max);

    // Envelope over adjacent pairs: two consecutive amplitudes cannot both
    // vanish unless the whole tail is zero, so log dips at near-nodes drop out.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long count = 0;
    for (int j = j_max / 2; j < j_max; ++j) {
        const double y = std::max(tr.log_abs[j], tr.log_abs[j + 1 <= j_max ? j + 1 : j]);
        if (y == -kInf) continue;
        const double x = static_cast<double>(j);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    GrowthClass g;
    if (count < 8) {
        // tail is identically zero: maximally bounded
        g.decay_rate = -kInf;
        g.verdict = Growth::Bounded;
        return g;
    }
    const double denom = sxx - sx * sx / count;
    g.decay_rate = (sxy - sx * sy / count) / denom;
    if (g.decay_rate < -rate_tol)
        g.verdict = Growth::Bounded;
    else if (g.decay_rate > rate_tol)
        g.verdict = Growth::Divergent;
    else
        g.verdict = Growth::Indeterminate;
    return g;
}

QuasiStationaryState quasi_stationary_state(const ModelSpec& spec, complexd energy) {
    const GrowthClass g = classify_growth(spec, energy);
    if (g.verdict == Growth::Divergent)
        throw std::domain_error(
            "quasi_stationary_state: E lies outside the continuum band; the "
            "recursion diverges and the right boundary is grossly violated");

    const int n = spec.n;
    const RecursionTrace tr = recurse(spec, energy, complexd{1.0, 0.0}, n + 1);
    double max_log = -kInf;
    for (int j = 1; j <= n; ++j) max_log = std::max(max_log, tr.log_abs[j]);

    QuasiStationaryState qs;
    qs.psi.assign(n, complexd{0.0, 0.0});
    double norm2 = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (tr.log_abs[j] == -kInf) continue;
        const double a = std::exp(tr.log_abs[j] - max_log);
        const complexd phase = tr.psi[j] / std::abs(tr.psi[j]);
        qs.psi[j - 1] = a * phase;
        norm2 += a * a;
    }
    const double norm = std::sqrt(norm2);
    for (auto& v : qs.psi) v /= norm;
    qs.boundary_residual =
        (tr.log_abs[n + 1] == -kInf) ? 0.0 : std::exp(tr.log_abs[n + 1] - max_log) / norm;
    return qs;
}

namespace {

double loop_area(const std::vector<complexd>& loop) {
    double a = 0.0;
    const size_t m = loop.size();
    for (size_t i = 0; i < m; ++i) {
        const complexd p = loop[i], q = loop[(i + 1) % m];
        a += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * a;
}

double loop_perimeter(const std::vector<complexd>& loop) {
    double p = 0.0;
    const size_t m = loop.size();
    for (size_t i = 0; i < m; ++i) p += std::abs(loop[(i + 1) % m] - loop[i]);
    return p;
}

}  // namespace

LoopPolygon pbc_loop_polygon(const ModelSpec& spec, int num_k) {
    if (num_k < 64) throw std::invalid_argument("pbc_loop_polygon: num_k must be >= 64");
    const Spectrum s = pbc_spectrum(spec, num_k);
    LoopPolygon poly;
    if (spec.kind == ModelKind::HatanoNelson) {
        poly.loops.push_back(s.eigenvalues);
    } else {
        std::vector<complexd> a(s.eigenvalues.begin(), s.eigenvalues.begin() + num_k);
        std::vector<complexd> b(s.eigenvalues.begin() + num_k, s.eigenvalues.end());
        // When E^2(k) winds around zero the two branches join into one closed
        // loop traversed over 4pi; detect via the branch-A closure gap.
        double step = 0.0;
        for (int i = 0; i + 1 < num_k; ++i) step = std::max(step, std::abs(a[i + 1] - a[i]));
        if (std::abs(a.back() - a.front()) > 4.0 * step + 1e-12) {
            a.insert(a.end(), b.begin(), b.end());
            poly.loops.push_back(std::move(a));
        } else {
            poly.loops.push_back(std::move(a));
            poly.loops.push_back(std::move(b));
        }
    }
    poly.degenerate = true;
    for (const auto& loop : poly.loops) {
        const double per = loop_perimeter(loop);
        if (per > 0.0 && std::abs(loop_area(loop)) > 1e-9 * per * per)
            poly.degenerate = false;
    }
    return poly;
}

Winding winding_membership(const LoopPolygon& poly, complexd e, double guard) {
    int enclosing = 0;
    double min_dist = kInf;
    for (const auto& loop : poly.loops) {
        const size_t m = loop.size();
        if (m < 3) continue;
        double angle = 0.0;
        for (size_t i = 0; i < m; ++i) {
            const complexd u = loop[i] - e, v = loop[(i + 1) % m] - e;
            if (std::abs(u) == 0.0 || std::abs(v) == 0.0) {
                min_dist = 0.0;
                continue;
            }
            // distance to segment
            const complexd d = v - u;
            const double len2 = std::norm(d);
            double t = len2 > 0.0
                           ? std::clamp((-u.real() * d.real() - u.imag() * d.imag()) / len2,
                                        0.0, 1.0)
                           : 0.0;
            min_dist = std::min(min_dist, std::abs(u + t * d));
            angle += std::arg(v / u);
        }
        if (std::lround(angle / (2.0 * M_PI)) != 0) ++enclosing;
    }
    if (min_dist <= guard) return Winding::NearBoundary;
    if (poly.degenerate) return Winding::Outside;
    return enclosing == 1 ? Winding::Inside : Winding::Outside;
}

int worker_count() {
    if (const char* env = std::getenv("NHLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<BandScanPoint> band_scan(const ModelSpec& spec, const GridSpec& grid,
                                     int num_k, int j_max) {
    if (grid.nx < 2 || grid.ny < 2 || grid.re_max <= grid.re_min ||
        grid.im_max <= grid.im_min)
        throw std::invalid_argument("band_scan: malformed grid");
    const LoopPolygon poly = pbc_loop_polygon(spec, num_k);
    const double dx = (grid.re_max - grid.re_min) / (grid.nx - 1);
    const double dy = (grid.im_max - grid.im_min) / (grid.ny - 1);
    const double guard = std::max(1e-4, 0.5 * std::hypot(dx, dy));

    const long total = static_cast<long>(grid.nx) * grid.ny;
    std::vector<BandScanPoint> out(total);
    auto work = [&](long begin, long end) {
        for (long idx = begin; idx < end; ++idx) {
            const long ix = idx % grid.nx, iy = idx / grid.nx;
            const complexd e{grid.re_min + ix * dx, grid.im_min + iy * dy};
            BandScanPoint p;
            p.energy = e;
            p.growth = classify_growth(spec, e, j_max);
            p.winding = winding_membership(poly, e, guard);
            out[idx] = p;
        }
    };
    const int workers = std::min<long>(worker_count(), total);
    if (workers <= 1) {
        work(0, total);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (total + workers - 1) / workers;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work, w * chunk, std::min(total, (w + 1) * chunk));
        for (auto& t : pool) t.join();
    }
    return out;
}

}  // namespace nhlab
