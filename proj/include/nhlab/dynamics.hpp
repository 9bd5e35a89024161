#ifndef NHLAB_DYNAMICS_HPP
#define NHLAB_DYNAMICS_HPP

#include <optional>
#include <vector>

#include "nhlab/lattice.hpp"

namespace nhlab {

struct IntegratorStats {
    long steps_accepted = 0;
    long steps_rejected = 0;
    double max_error_estimate = 0.0;
};

// Time series of the projective deviation D(t) = sqrt(1 - F^2) from the
// initial state, plus log-norm growth (kept in log form so amplifying
// spectra cannot overflow).
struct EvolutionResult {
    std::vector<double> times;
    std::vector<double> deviation;
    std::vector<double> lognorm;
    std::optional<double> lifetime;  // first D(t) > eps_life crossing, if any
    std::vector<complexd> final_state;  // unit norm; true amplitude is exp(lognorm.back())
    IntegratorStats stats;
};

struct RobustnessThresholds {
    double overlap_min = 0.9;
    double overlap_fraction = 0.95;
    double spread_max = 1e-2;
    double probe_time = 5.0;
};

enum class RobustnessVerdict { Robust, Fragile };

struct RobustnessReport {
    int realizations = 0;
    double zero_energy_spread = 0.0;          // max |E nearest zero| over draws
    std::vector<complexd> nearest_eigs;       // per realization
    std::vector<double> survival_overlap;     // per realization, in [0,1]
    RobustnessVerdict verdict = RobustnessVerdict::Fragile;
    RobustnessThresholds thresholds;
};

// Solves i dpsi/dt = H psi with an adaptive Dormand-Prince 5(4) pair,
// sampling num_samples points on a uniform grid over [0, t_final].
// Throws std::runtime_error on step-size underflow.
EvolutionResult evolve(const Hamiltonian& h, std::span<const complexd> psi0,
                       double t_final, double tol = 1e-9, int num_samples = 201,
                       double eps_life = 0.01);

// D = sqrt(1 - F^2), F = |<psi0, psi_t>| / (||psi0|| ||psi_t||).
double stationarity_deviation(std::span<const complexd> psi_t,
                              std::span<const complexd> psi0);

// First crossing of D(t) above eps_life, linearly interpolated.
std::optional<double> lifetime(const EvolutionResult& result, double eps_life);

// Monte Carlo over disorder realizations: eigenvalue nearest zero per draw,
// plus survival overlap of the clean zero mode after a brief evolution under
// the disordered Hamiltonian.
RobustnessReport disorder_robustness(const ModelSpec& spec, const DisorderSpec& d,
                                     RobustnessThresholds thresholds = {});

}  // namespace nhlab

#endif
