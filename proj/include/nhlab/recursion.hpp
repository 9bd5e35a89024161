#ifndef NHLAB_RECURSION_HPP
#define NHLAB_RECURSION_HPP

#include <optional>
#include <vector>

#include "nhlab/lattice.hpp"

namespace nhlab {

// Forward recursion amplitudes psi_0..psi_J for a trial energy E.
// psi holds rescaled values (overflow guard rescales the rolling pair by a
// power of 2 past 2^512); log_abs carries the exact log magnitudes.
struct RecursionTrace {
    complexd energy;
    complexd seed;
    std::vector<complexd> psi;      // indices 0..J, psi[0] = 0
    std::vector<double> log_abs;    // log|psi_j|, -inf for exact zeros
    double residual = 0.0;          // |psi_J| / max_j |psi_j|
    std::optional<int> overflow_at;
};

enum class Growth { Bounded, Divergent, Indeterminate };

struct GrowthClass {
    Growth verdict = Growth::Indeterminate;
    double decay_rate = 0.0;  // fitted exponential rate of |psi_j| per site
};

enum class Winding { Inside, Outside, NearBoundary };

// Sampled PBC loop(s): one loop for Hatano-Nelson, one per band for the
// two-band models. degenerate marks a zero-area (Hermitian) contour.
struct LoopPolygon {
    std::vector<std::vector<complexd>> loops;
    bool degenerate = false;
};

struct BandScanPoint {
    complexd energy;
    GrowthClass growth;
    Winding winding = Winding::Outside;
};

struct GridSpec {
    double re_min, re_max, im_min, im_max;
    int nx = 101, ny = 101;
};

// psi_{j+1} = ((E - diag_j) psi_j - back_{j-1} psi_{j-1}) / fwd_j, seeded with
// psi_0 = 0, psi_1 = seed. Site pattern continues past spec.n (semi-infinite).
RecursionTrace recurse(const ModelSpec& spec, complexd energy, complexd seed, int j_max);

// Normalized length-N state from the trace; throws std::domain_error when E
// classifies Divergent (the right boundary would be grossly violated).
struct QuasiStationaryState {
    std::vector<complexd> psi;  // length N, unit norm
    double boundary_residual;   // |psi_{N+1}| / ||psi||
};
QuasiStationaryState quasi_stationary_state(const ModelSpec& spec, complexd energy);

// Exponential rate fitted to log|psi_j| over the trailing half of a length-J
// run. rate_tol is per site; |rate| below it reports Indeterminate.
GrowthClass classify_growth(const ModelSpec& spec, complexd energy, int j_max = 4000,
                            double rate_tol = 1e-3);

LoopPolygon pbc_loop_polygon(const ModelSpec& spec, int num_k);

// Winding-number point-in-polygon with a distance-to-edge guard; points
// inside exactly one loop count as Inside.
Winding winding_membership(const LoopPolygon& poly, complexd e, double guard = 1e-4);

// Growth verdict and winding verdict on every grid point. Parallel over
// points; ordering fixed by grid index. Thread count honors NHLAB_THREADS.
std::vector<BandScanPoint> band_scan(const ModelSpec& spec, const GridSpec& grid,
                                     int num_k = 256, int j_max = 4000);

// NHLAB_THREADS override, else hardware concurrency.
int worker_count();

}  // namespace nhlab

#endif
