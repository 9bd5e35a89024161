#ifndef NHLAB_ANALYTIC_HPP
#define NHLAB_ANALYTIC_HPP

#include <utility>
#include <vector>

#include "nhlab/lattice.hpp"

namespace nhlab {

enum class Membership { Interior, Boundary, Exterior };
enum class BandMorphology { SingleLobe, Pinched, TwoLobes };

// Zero-energy profile of the non-reciprocal SSH chain: geometric amplitudes
// on odd sites with ratio r = -gamma*(1-delta)/(1+delta), zero on even sites.
struct ZeroModeProfile {
    double ratio = 0.0;
    std::vector<complexd> amplitudes;  // length N, unit norm
    double normalization = 1.0;
};

// OBC eigenvalues 2*sqrt(gamma)*cos(n*pi/(N+1)), n = 1..N.
std::vector<double> hatano_obc_eigs(int n, double gamma);

// E_R^2/(1+gamma)^2 + E_I^2/(1-gamma)^2 against 1. At gamma=1 the ellipse
// degenerates to the interval [-2, 2] on the real axis.
Membership ellipse_membership(complexd e, double gamma, double eps_b = 1e-9);

// 4 E_R^2 E_I^2 + (E_R^2 - E_I^2 + V0^2)^2 against 1 (gamma=0 gain/loss band).
Membership gainloss_band_membership(complexd e, double v0, double eps_b = 1e-9);

// Band shape versus V0, decided by where E=0 sits (the form there is V0^4).
BandMorphology gainloss_band_morphology(double v0, double tol = 1e-9);

ZeroModeProfile ssh_zero_mode(int n, double gamma, double delta);

// Existence window of the zero-energy modes: (-(1-gamma)/(1+gamma), 1).
std::pair<double, double> ssh_zero_mode_domain(double gamma);

// Coalesced eigenvalues of the gamma=0 gain/loss chain: E_-/+ = -/+ i V0.
std::pair<complexd, complexd> gainloss_exceptional_data(double v0);

// Quadratic / quartic forms themselves, handy for equality checks.
double hatano_ellipse_form(complexd e, double gamma);
double gainloss_quartic_form(complexd e, double v0);

}  // namespace nhlab

#endif
