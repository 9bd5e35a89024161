#include "nhlab/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nhlab {

std::vector<double> hatano_obc_eigs(int n, double gamma) {
    if (n < 1) throw std::invalid_argument("hatano_obc_eigs: N must be >= 1");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("hatano_obc_eigs: gamma must lie in [0,1]");
    std::vector<double> e(n);
    const double scale = 2.0 * std::sqrt(gamma);
    for (int m = 1; m <= n; ++m)
        e[m - 1] = scale * std::cos(m * M_PI / (n + 1));
    return e;
}

double hatano_ellipse_form(complexd e, double gamma) {
    const double a = 1.0 + gamma, b = 1.0 - gamma;
    if (b == 0.0) {
        // Degenerate Hermitian limit: interval [-2, 2] on the real axis.
        // Report the form as the larger of the two constraint ratios so the
        // usual <1 / =1 / >1 classification still applies.
        const double along = e.real() * e.real() / (a * a);
        if (e.imag() == 0.0) return along;
        return std::numeric_limits<double>::infinity();
    }
    const double x = e.real() / a, y = e.imag() / b;
    return x * x + y * y;
}

static Membership classify_form(double q, double eps_b) {
    if (std::abs(q - 1.0) <= eps_b) return Membership::Boundary;
    return q < 1.0 ? Membership::Interior : Membership::Exterior;
}

Membership ellipse_membership(complexd e, double gamma, double eps_b) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("ellipse_membership: gamma must lie in [0,1]");
    return classify_form(hatano_ellipse_form(e, gamma), eps_b);
}

double gainloss_quartic_form(complexd e, double v0) {
    const double er = e.real(), ei = e.imag();
    const double a = er * er - ei * ei + v0 * v0;
    return 4.0 * er * er * ei * ei + a * a;
}

Membership gainloss_band_membership(complexd e, double v0, double eps_b) {
    return classify_form(gainloss_quartic_form(e, v0), eps_b);
}

BandMorphology gainloss_band_morphology(double v0, double tol) {
    if (v0 < 0.0) throw std::invalid_argument("gainloss_band_morphology: V0 must be >= 0");
    const double at_origin = v0 * v0 * v0 * v0;  // quartic form at E=0
    if (std::abs(at_origin - 1.0) <= tol) return BandMorphology::Pinched;
    return at_origin < 1.0 ? BandMorphology::SingleLobe : BandMorphology::TwoLobes;
}

ZeroModeProfile ssh_zero_mode(int n, double gamma, double delta) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("ssh_zero_mode: N must be even and >= 2");
    if (delta <= -1.0 || delta >= 1.0)
        throw std::invalid_argument("ssh_zero_mode: delta must lie in (-1,1)");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("ssh_zero_mode: gamma must lie in [0,1]");
    ZeroModeProfile p;
    p.ratio = -gamma * (1.0 - delta) / (1.0 + delta);
    p.amplitudes.assign(n, complexd{0.0, 0.0});
    double norm2 = 0.0;
    double amp = 1.0;
    for (int cell = 0; cell < n / 2; ++cell) {
        p.amplitudes[2 * cell] = amp;  // site 2*cell+1, odd in 1-based counting
        norm2 += amp * amp;
        amp *= p.ratio;
    }
    p.normalization = 1.0 / std::sqrt(norm2);
    for (auto& v : p.amplitudes) v *= p.normalization;
    return p;
}

std::pair<double, double> ssh_zero_mode_domain(double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("ssh_zero_mode_domain: gamma must lie in [0,1]");
    return {-(1.0 - gamma) / (1.0 + gamma), 1.0};
}

std::pair<complexd, complexd> gainloss_exceptional_data(double v0) {
    if (v0 < 0.0)
        throw std::invalid_argument("gainloss_exceptional_data: V0 must be >= 0");
    return {complexd{0.0, -v0}, complexd{0.0, v0}};
}

}  // namespace nhlab
