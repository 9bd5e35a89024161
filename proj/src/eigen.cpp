#include "nhlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nhlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void sort_spectrum(std::vector<complexd>& v) {
    std::sort(v.begin(), v.end(), [](complexd a, complexd b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

struct Givens {
    double c;      // real cosine
    complexd s;
};

// Rotation with [c, s; -conj(s), c] [a; b] = [r; 0].
Givens make_givens(complexd a, complexd b) {
    const double aa = std::abs(a), bb = std::abs(b);
    if (bb == 0.0) return {1.0, complexd{0.0, 0.0}};
    if (aa == 0.0) return {0.0, complexd{1.0, 0.0}};
    const double r = std::hypot(aa, bb);
    return {aa / r, (a / aa) * std::conj(b) / r};
}

// Householder reduction to upper Hessenberg form, in place, row-major.
void hessenberg_reduce(std::vector<complexd>& a, int n) {
    auto at = [&](int i, int j) -> complexd& { return a[static_cast<size_t>(i) * n + j]; };
    std::vector<complexd> v(n);
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm += std::norm(at(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        complexd x0 = at(k + 1, k);
        complexd phase = (std::abs(x0) == 0.0) ? complexd{1.0, 0.0} : x0 / std::abs(x0);
        complexd alpha = -phase * xnorm;
        double vnorm = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = at(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm += std::norm(v[i]);
        }
        if (vnorm == 0.0) continue;
        vnorm = std::sqrt(vnorm);
        for (int i = k + 1; i < n; ++i) v[i] /= vnorm;
        // A := (I - 2 v v^H) A
        for (int j = k; j < n; ++j) {
            complexd dot{0.0, 0.0};
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * at(i, j);
            dot *= 2.0;
            for (int i = k + 1; i < n; ++i) at(i, j) -= dot * v[i];
        }
        // A := A (I - 2 v v^H)
        for (int i = 0; i < n; ++i) {
            complexd dot{0.0, 0.0};
            for (int j = k + 1; j < n; ++j) dot += at(i, j) * v[j];
            dot *= 2.0;
            for (int j = k + 1; j < n; ++j) at(i, j) -= dot * std::conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) at(i, k) = complexd{0.0, 0.0};
    }
}

complexd wilkinson_shift(complexd a, complexd b, complexd c, complexd d) {
    const complexd mid = 0.5 * (a + d);
    const complexd disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const complexd r1 = mid + disc, r2 = mid - disc;
    return (std::abs(r1 - d) < std::abs(r2 - d)) ? r1 : r2;
}

}  // namespace

std::vector<complexd> dense_qr_eigenvalues(std::vector<complexd> a, int n) {
    if (n <= 0 || static_cast<size_t>(n) * n != a.size())
        throw std::invalid_argument("dense_qr_eigenvalues: bad dimensions");
    if (n > kQrDimensionLimit)
        throw std::invalid_argument("dense_qr_eigenvalues: dimension above limit");
    auto at = [&](int i, int j) -> complexd& { return a[static_cast<size_t>(i) * n + j]; };

    hessenberg_reduce(a, n);

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 1); j < n; ++j) anorm += std::abs(at(i, j));
    if (anorm == 0.0) anorm = 1.0;

    std::vector<complexd> eigs;
    eigs.reserve(n);
    const long iter_cap = 30L * n;
    long iter_total = 0;
    int hi = n - 1;
    int block_iters = 0;
    std::vector<Givens> rot(n);

    while (hi >= 0) {
        // deflate negligible subdiagonals
        int lo = hi;
        while (lo > 0) {
            double small = kEps * (std::abs(at(lo - 1, lo - 1)) + std::abs(at(lo, lo)));
            if (small == 0.0) small = kEps * anorm;
            if (std::abs(at(lo, lo - 1)) <= small) {
                at(lo, lo - 1) = complexd{0.0, 0.0};
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eigs.push_back(at(hi, hi));
            --hi;
            block_iters = 0;
            continue;
        }
        if (++iter_total > iter_cap)
            throw std::runtime_error("dense_qr_eigenvalues: QR iteration failed to converge");

        complexd shift;
        if (++block_iters % 15 == 0) {
            shift = at(hi, hi) + 0.75 * std::abs(at(hi, hi - 1));  // exceptional shift
        } else {
            shift = wilkinson_shift(at(hi - 1, hi - 1), at(hi - 1, hi),
                                    at(hi, hi - 1), at(hi, hi));
        }

        for (int i = lo; i <= hi; ++i) at(i, i) -= shift;
        for (int i = lo; i < hi; ++i) {
            rot[i] = make_givens(at(i, i), at(i + 1, i));
            const double c = rot[i].c;
            const complexd s = rot[i].s;
            for (int j = i; j <= hi; ++j) {
                const complexd t1 = at(i, j), t2 = at(i + 1, j);
                at(i, j) = c * t1 + s * t2;
                at(i + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        for (int i = lo; i < hi; ++i) {
            const double c = rot[i].c;
            const complexd s = rot[i].s;
            const int rmax = std::min(i + 2, hi);
            for (int j = lo; j <= rmax; ++j) {
                const complexd t1 = at(j, i), t2 = at(j, i + 1);
                at(j, i) = c * t1 + std::conj(s) * t2;
                at(j, i + 1) = -s * t1 + c * t2;
            }
        }
        for (int i = lo; i <= hi; ++i) at(i, i) += shift;
    }
    return eigs;
}

std::vector<double> symmetric_tridiagonal_eigenvalues(std::vector<double> d,
                                                      std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return d;
    if (static_cast<int>(e.size()) != n - 1)
        throw std::invalid_argument("symmetric_tridiagonal_eigenvalues: size mismatch");
    e.push_back(0.0);

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error("symmetric_tridiagonal_eigenvalues: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

Spectrum eigenvalues_qr(const Hamiltonian& h) {
    Spectrum s;
    s.method = SpectrumMethod::QR;
    s.eigenvalues = dense_qr_eigenvalues(h.dense(), h.n);
    sort_spectrum(s.eigenvalues);
    return s;
}

std::pair<GaugeTransform, Hamiltonian> gauge_transform(const Hamiltonian& h) {
    if (std::abs(h.corner_lower) != 0.0 || std::abs(h.corner_upper) != 0.0)
        throw std::invalid_argument("gauge_transform: OBC matrices only");
    const int nb = h.n - 1;
    GaugeTransform g;
    g.scale.assign(h.n, 1.0);
    g.symmetrized_offdiag.resize(nb);
    Hamiltonian out = h;
    for (int k = 0; k < nb; ++k) {
        const complexd p = h.upper[k] * h.lower[k];
        if (std::abs(p) == 0.0)
            throw std::domain_error(
                "gauge undefined; spectrum degenerates to exceptional point");
        if (std::abs(p.imag()) > 1e-12 * std::abs(p) || p.real() <= 0.0)
            throw std::domain_error("gauge_transform: bond product not real positive");
        const double ratio = std::abs(h.lower[k]) / std::abs(h.upper[k]);
        g.scale[k + 1] = g.scale[k] * std::sqrt(ratio);
        const complexd b = std::sqrt(p);
        g.symmetrized_offdiag[k] = b;
        out.upper[k] = b;
        out.lower[k] = b;
    }
    return {std::move(g), std::move(out)};
}

Spectrum spectrum_of(const Hamiltonian& h) {
    if (std::abs(h.corner_lower) != 0.0 || std::abs(h.corner_upper) != 0.0)
        return eigenvalues_qr(h);
    try {
        auto [gauge, balanced] = gauge_transform(h);
        Spectrum s;
        s.method = SpectrumMethod::GaugedQR;
        const auto [smin, smax] =
            std::minmax_element(gauge.scale.begin(), gauge.scale.end());
        if (*smax / *smin > 1e8)
            s.conditioning_note = "gauge scale ratio exceeds 1e8; ungauged QR would be unreliable";

        double max_im_diag = 0.0;
        for (const auto& dv : balanced.diag)
            max_im_diag = std::max(max_im_diag, std::abs(dv.imag()));
        if (max_im_diag <= 1e-14) {
            std::vector<double> d(h.n), e(h.n - 1);
            for (int i = 0; i < h.n; ++i) d[i] = balanced.diag[i].real();
            for (int i = 0; i + 1 < h.n; ++i) e[i] = balanced.upper[i].real();
            auto vals = symmetric_tridiagonal_eigenvalues(std::move(d), std::move(e));
            s.eigenvalues.reserve(h.n);
            for (double v : vals) s.eigenvalues.emplace_back(v, 0.0);
        } else {
            s.eigenvalues = dense_qr_eigenvalues(balanced.dense(), h.n);
            if (!s.conditioning_note.empty()) s.conditioning_note += "; ";
            s.conditioning_note += "complex diagonal: balanced matrix sent through dense QR";
        }
        sort_spectrum(s.eigenvalues);
        return s;
    } catch (const std::domain_error&) {
        return eigenvalues_qr(h);
    }
}

Spectrum obc_spectrum(const ModelSpec& spec) {
    spec.validate();
    if (spec.bc != Boundary::OBC)
        throw std::invalid_argument("obc_spectrum: spec must be OBC");
    if (spec.gamma == 0.0) {
        // Exceptional point: the matrix is upper triangular, the spectrum is
        // its diagonal exactly. QR would grind on the defective structure.
        Spectrum s;
        s.method = SpectrumMethod::Analytic;
        const Hamiltonian h = build_hamiltonian(spec);
        s.eigenvalues = h.diag;
        sort_spectrum(s.eigenvalues);
        return s;
    }
    return spectrum_of(build_hamiltonian(spec));
}

namespace {

// Branch-tracked pair of square roots of f(k): keeps each band a continuous
// loop instead of a sign-flipping jumble.
void two_band_loops(const std::vector<complexd>& e2, std::vector<complexd>& band_a,
                    std::vector<complexd>& band_b) {
    const size_t m = e2.size();
    band_a.resize(m);
    band_b.resize(m);
    complexd prev = std::sqrt(e2[0]);
    for (size_t i = 0; i < m; ++i) {
        complexd r = std::sqrt(e2[i]);
        if (std::abs(r - prev) > std::abs(-r - prev)) r = -r;
        band_a[i] = r;
        band_b[i] = -r;
        prev = r;
    }
}

}  // namespace

Spectrum pbc_spectrum(const ModelSpec& spec, int num_k) {
    spec.validate();
    if (num_k < 8) throw std::invalid_argument("pbc_spectrum: num_k must be >= 8");
    Spectrum s;
    s.method = SpectrumMethod::Bloch;
    const double g = spec.gamma;
    if (spec.kind == ModelKind::HatanoNelson) {
        s.eigenvalues.reserve(num_k);
        for (int m = 0; m < num_k; ++m) {
            const double k = 2.0 * M_PI * m / num_k;
            s.eigenvalues.push_back(std::polar(1.0, k) + g * std::polar(1.0, -k));
        }
        return s;
    }
    std::vector<complexd> e2(num_k);
    for (int m = 0; m < num_k; ++m) {
        const double k = 2.0 * M_PI * m / num_k;
        const complexd eik = std::polar(1.0, k), emik = std::polar(1.0, -k);
        if (spec.kind == ModelKind::GainLoss) {
            e2[m] = eik + g * g * emik + 2.0 * g - spec.v0 * spec.v0;
        } else {
            const double t1 = 1.0 - spec.delta, t2 = 1.0 + spec.delta;
            e2[m] = (t1 + g * t2 * emik) * (g * t1 + t2 * eik);
        }
    }
    std::vector<complexd> a, b;
    two_band_loops(e2, a, b);
    s.eigenvalues = std::move(a);
    s.eigenvalues.insert(s.eigenvalues.end(), b.begin(), b.end());
    return s;
}

double multiset_distance(std::vector<complexd> a, std::vector<complexd> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("multiset_distance: size mismatch");
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (const complexd& x : a) {
        double best = std::numeric_limits<double>::infinity();
        size_t best_j = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(x - b[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        used[best_j] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace nhlab
