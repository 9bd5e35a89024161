#include "nhlab/lattice.hpp"

#include <stdexcept>
#include <string>

#include "nhlab/rng.hpp"

namespace nhlab {

void ModelSpec::validate() const {
    if (n < 2) throw std::invalid_argument("ModelSpec: N must be >= 2");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("ModelSpec: gamma must lie in [0,1]");
    if (kind == ModelKind::GainLoss && v0 < 0.0)
        throw std::invalid_argument("ModelSpec: V0 must be >= 0");
    if (kind == ModelKind::NonReciprocalSSH) {
        if (n % 2 != 0)
            throw std::invalid_argument("ModelSpec: SSH chain needs even N");
        if (delta <= -1.0 || delta >= 1.0)
            throw std::invalid_argument("ModelSpec: delta must lie in (-1,1)");
    }
}

std::vector<complexd> Hamiltonian::apply(std::span<const complexd> psi) const {
    if (static_cast<int>(psi.size()) != n)
        throw std::invalid_argument("Hamiltonian::apply: size mismatch");
    std::vector<complexd> out(n);
    for (int j = 0; j < n; ++j) {
        complexd v = diag[j] * psi[j];
        if (j + 1 < n) v += upper[j] * psi[j + 1];
        if (j > 0) v += lower[j - 1] * psi[j - 1];
        out[j] = v;
    }
    out[0] += corner_upper * psi[n - 1];
    out[n - 1] += corner_lower * psi[0];
    return out;
}

std::vector<complexd> Hamiltonian::dense() const {
    std::vector<complexd> a(static_cast<size_t>(n) * n, complexd{0.0, 0.0});
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(j) * n + j] = diag[j];
    for (int j = 0; j + 1 < n; ++j) {
        a[static_cast<size_t>(j) * n + j + 1] = upper[j];
        a[static_cast<size_t>(j + 1) * n + j] = lower[j];
    }
    a[static_cast<size_t>(n - 1)] = corner_upper;
    a[static_cast<size_t>(n - 1) * n + 0] = corner_lower;
    return a;
}

Hamiltonian build_hamiltonian(const ModelSpec& spec) {
    spec.validate();
    const int n = spec.n;
    Hamiltonian h;
    h.n = n;
    h.diag.assign(n, complexd{0.0, 0.0});
    h.upper.assign(n - 1, complexd{0.0, 0.0});
    h.lower.assign(n - 1, complexd{0.0, 0.0});

    switch (spec.kind) {
        case ModelKind::HatanoNelson:
            for (int k = 0; k + 1 < n; ++k) {
                h.upper[k] = 1.0;
                h.lower[k] = spec.gamma;
            }
            if (spec.bc == Boundary::PBC) {
                h.corner_lower = 1.0;          // forward hop N -> 1
                h.corner_upper = spec.gamma;   // backward hop 1 -> N
            }
            break;
        case ModelKind::GainLoss:
            // diag[j] = i(-1)^(j+1) V0 with sites j = 1..N: site 1 gets -iV0.
            for (int j = 0; j < n; ++j)
                h.diag[j] = complexd{0.0, (j % 2 == 0) ? -spec.v0 : spec.v0};
            for (int k = 0; k + 1 < n; ++k) {
                h.upper[k] = 1.0;
                h.lower[k] = spec.gamma;
            }
            if (spec.bc == Boundary::PBC) {
                h.corner_lower = 1.0;
                h.corner_upper = spec.gamma;
            }
            break;
        case ModelKind::NonReciprocalSSH:
            // bond k (1-based) joins sites k, k+1 with forward T_k and
            // backward gamma*T_k, T_k = 1+(-1)^k delta.
            for (int k = 0; k + 1 < n; ++k) {
                const double t = ssh_hopping(k + 1, spec.delta);
                h.upper[k] = t;
                h.lower[k] = spec.gamma * t;
            }
            if (spec.bc == Boundary::PBC) {
                const double t = ssh_hopping(n, spec.delta);
                h.corner_lower = t;
                h.corner_upper = spec.gamma * t;
            }
            break;
    }
    return h;
}

Hamiltonian apply_disorder(const ModelSpec& spec, const DisorderSpec& d,
                           int realization) {
    spec.validate();
    if (spec.kind != ModelKind::NonReciprocalSSH)
        throw std::invalid_argument("apply_disorder: SSH chain only");
    if (spec.bc != Boundary::OBC)
        throw std::invalid_argument("apply_disorder: OBC only");
    if (d.forward_width < 0.0 || d.gamma_width < 0.0)
        throw std::invalid_argument("apply_disorder: widths must be >= 0");
    if (realization < 0 || realization >= d.realizations)
        throw std::out_of_range("apply_disorder: realization " +
                                std::to_string(realization) + " out of range");

    Hamiltonian h = build_hamiltonian(spec);
    CounterRng rng(d.seed, static_cast<std::uint64_t>(realization));
    for (int k = 0; k + 1 < spec.n; ++k) {
        const double t = ssh_hopping(k + 1, spec.delta) + rng.next_symmetric(d.forward_width);
        const double g = spec.gamma * (1.0 + rng.next_symmetric(d.gamma_width));
        h.upper[k] = t;
        h.lower[k] = g * t;
    }
    return h;
}

}  // namespace nhlab
