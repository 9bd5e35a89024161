#ifndef NHLAB_EIGEN_HPP
#define NHLAB_EIGEN_HPP

#include <string>
#include <utility>
#include <vector>

#include "nhlab/lattice.hpp"

namespace nhlab {

enum class SpectrumMethod { Analytic, QR, GaugedQR, Bloch };

struct Spectrum {
    std::vector<complexd> eigenvalues;  // sorted by (re, im)
    SpectrumMethod method = SpectrumMethod::QR;
    double max_residual = 0.0;
    std::string conditioning_note;
};

// Diagonal similarity S with S^-1 H S having equal sub/superdiagonals
// sqrt(upper_k * lower_k) bond by bond.
struct GaugeTransform {
    std::vector<double> scale;
    std::vector<complexd> symmetrized_offdiag;
};

// Largest dense dimension accepted by the QR solver.
inline constexpr int kQrDimensionLimit = 512;

// All eigenvalues of the dense matrix: Householder Hessenberg reduction
// followed by Wilkinson-shifted QR on the complex Hessenberg form.
// Throws std::runtime_error on non-convergence (cap 30*n iterations).
Spectrum eigenvalues_qr(const Hamiltonian& h);

// Eigenvalues of a dense row-major complex matrix (same solver core).
std::vector<complexd> dense_qr_eigenvalues(std::vector<complexd> a, int n);

// Eigenvalues of a real symmetric tridiagonal matrix, QL with implicit shifts.
std::vector<double> symmetric_tridiagonal_eigenvalues(std::vector<double> diag,
                                                      std::vector<double> offdiag);

// Balancing transform for OBC banded matrices. Requires every product
// upper_k*lower_k real and positive; throws std::domain_error otherwise
// (the gamma=0 chains degenerate to exceptional points and have no gauge).
std::pair<GaugeTransform, Hamiltonian> gauge_transform(const Hamiltonian& h);

// Dispatch for an OBC Hamiltonian: gauge + symmetric solve when the gauge is
// valid and the diagonal real, gauge + complex QR when only the gauge is
// valid, plain QR otherwise.
Spectrum spectrum_of(const Hamiltonian& h);

// OBC spectrum of a model. gamma=0 bypasses QR and returns the known
// exceptional-point spectrum with method=Analytic.
Spectrum obc_spectrum(const ModelSpec& spec);

// PBC spectrum sampled on num_k Bloch momenta over [0, 2pi): one value per k
// for Hatano-Nelson, two per k (branch-tracked) for the two-band models.
Spectrum pbc_spectrum(const ModelSpec& spec, int num_k);

// Greedy nearest-neighbor multiset match; returns the largest pair distance.
double multiset_distance(std::vector<complexd> a, std::vector<complexd> b);

}  // namespace nhlab

#endif
