#pragma once

#include <cstddef>
#include <vector>

#include "slowlight/bloch.hpp"
#include "slowlight/detuning_grid.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/pulse.hpp"

namespace slowlight {

// Field profile over z at one retarded-frame instant.
struct Snapshot {
    double time = 0.0;          // s, retarded frame
    std::vector<double> z;      // m
    std::vector<cplx> omega;    // rad/s
};

// Field time series at one depth, on the input time grid.
struct ProbeSeries {
    double z = 0.0;             // m
    std::vector<cplx> omega;
};

// Running energy account, all terms in the same units (rad^2/s^2 * m):
//   entered(t) = em_inside(t) + at_inside(t) + emitted(t)
// up to discretization error. em_inside integrates |Omega|^2 over z;
// at_inside is the atomic share 2*c*alpha0 * int dz sum_j w_j p_ee,j;
// entered/emitted are c times the cumulative boundary flux integrals.
struct EnergyLedger {
    std::vector<double> times;
    std::vector<double> em_inside;
    std::vector<double> at_inside;
    std::vector<double> entered;
    std::vector<double> emitted;
};

struct LedgerSummary {
    double best_time = 0.0;          // instant with least energy outside
    double em_inside_best = 0.0;
    double at_inside_best = 0.0;
    double partition_ratio = 0.0;    // at/em at best_time
    double expected_ratio = 0.0;     // c/v_g - 1
    double outside_fraction = 0.0;   // (not yet entered + emitted)/W at best_time
    double drift = 0.0;              // max |entered - (em+at+emitted)| / W
                                     // after the pulse has fully entered
    bool partial_containment = false; // outside_fraction above 1 percent;
                                      // the partition check is meaningless then
};

// Reduce the raw ledger series to the containment summary. The expected
// partition follows the depth-scaled group velocity of medium.hole.
LedgerSummary summarize_ledger(const EnergyLedger& ledger, const Medium& medium);

struct TdConfig {
    std::size_t z_steps = 0;             // intervals; 0 -> minimum admissible
    BlochMode mode = BlochMode::weak;
    GridConfig grid;                     // record_length is filled in if 0
    double snapshot_interval = 0.0;      // s; 0 -> no z-profile snapshots
    std::vector<double> probe_fractions; // z/L for time-series probes
    std::size_t ledger_z_stride = 0;     // subsample z for the atomic sums;
                                         // 0 -> auto, 1 -> every step
};

struct TdResult {
    Pulse output;                 // Omega(L, t), retarded frame
    std::vector<Snapshot> snapshots;
    std::vector<ProbeSeries> probes;
    EnergyLedger ledger;
    LedgerSummary summary;
    DetuningGrid grid;
    std::size_t z_steps = 0;
};

// March the retarded-frame field equation
//   dOmega/dz = i*alpha0 * sum_j w_j' * sigma_j,   w_j' = (1 - hole_j)*q_j/pi
// with one Bloch class per grid node, Heun in z, and the exact
// integrating-factor update in t (weak mode) or RK4 (full mode).
// Throws NumericalError when z_steps leaves the absorption length
// unresolved (needs z_steps >= 100*alpha0*L/(2*pi)) or, in full mode,
// when dt violates the class step bound; the message names the limit.
// With alpha0 = 0 the field passes through unchanged.
TdResult propagate_time_domain(const Pulse& input, const Medium& medium,
                               const TdConfig& config = {});

// Same, with a caller-supplied quadrature grid.
TdResult propagate_time_domain(const Pulse& input, const Medium& medium,
                               const DetuningGrid& grid, const TdConfig& config = {});

} // namespace slowlight
