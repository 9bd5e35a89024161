#ifndef NHLAB_LATTICE_HPP
#define NHLAB_LATTICE_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace nhlab {

using complexd = std::complex<double>;

enum class ModelKind { HatanoNelson, GainLoss, NonReciprocalSSH };
enum class Boundary { OBC, PBC };

// Parametric description of one of the three lattice models.
//   HatanoNelson:      psi_{j+1} + gamma psi_{j-1} = E psi_j
//   GainLoss:          psi_{j+1} + gamma psi_{j-1} + i(-1)^j V0 psi_j = E psi_j
//   NonReciprocalSSH:  alternating hoppings T_n = 1+(-1)^n delta, forward T_n
//                      and backward gamma*T_n on bond n (sites n <-> n+1).
struct ModelSpec {
    ModelKind kind = ModelKind::HatanoNelson;
    int n = 2;             // number of sites
    double gamma = 1.0;    // non-Hermitian degree, in [0,1]
    double v0 = 0.0;       // gain/loss strength (GainLoss only)
    double delta = 0.0;    // dimerization (SSH only), in (-1,1)
    Boundary bc = Boundary::OBC;

    // Throws std::invalid_argument on violation.
    void validate() const;
};

// Uniform hopping disorder overlay for the non-reciprocal SSH chain.
// Same (seed, realization) always reproduces the identical draw.
struct DisorderSpec {
    double forward_width = 0.0;  // half-width of uniform delta-t_n
    double gamma_width = 0.0;    // half-width of per-bond relative gamma noise
    std::uint64_t seed = 0;
    int realizations = 1;
};

// Banded complex matrix: diagonal plus one sub/superdiagonal, with the two
// PBC wrap entries stored explicitly (zero for OBC).
// upper[k] = H(k, k+1), lower[k] = H(k+1, k), 0-based.
// corner_lower = H(n-1, 0), corner_upper = H(0, n-1).
struct Hamiltonian {
    int n = 0;
    std::vector<complexd> diag;
    std::vector<complexd> lower;
    std::vector<complexd> upper;
    complexd corner_lower{0.0, 0.0};
    complexd corner_upper{0.0, 0.0};

    std::vector<complexd> apply(std::span<const complexd> psi) const;
    std::vector<complexd> dense() const;  // row-major n*n
};

Hamiltonian build_hamiltonian(const ModelSpec& spec);

// Disordered SSH chain (OBC). upper_k = T_k + dt_k, lower_k = gamma_k*(T_k + dt_k)
// with dt_k uniform in [-forward_width, forward_width] and
// gamma_k = gamma*(1+u_k), u_k uniform in [-gamma_width, gamma_width].
Hamiltonian apply_disorder(const ModelSpec& spec, const DisorderSpec& d,
                           int realization);

// T_n = 1 + (-1)^n delta
inline double ssh_hopping(int bond, double delta) {
    return 1.0 + ((bond % 2 == 0) ? delta : -delta);
}

}  // namespace nhlab

#endif
