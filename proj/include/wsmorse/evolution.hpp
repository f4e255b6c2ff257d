#pragma once

#include <memory>
#include <vector>

#include "wsmorse/worldsheet.hpp"

namespace wsmorse {

/// One sigma-slice of an evolving closed string: embedding X and its tau
/// velocity V, both (nsigma x n) in chart components.
struct EvolutionState {
    Mat X, V;
    double tau = 0.0;
    double dt = 0.0;
    double dsigma = 0.0;

    int nsigma() const { return static_cast<int>(X.rows()); }
    int dim() const { return static_cast<int>(X.cols()); }
};

/// Per-step monitor record written to the simulate CSV.
struct StepStats {
    double tau = 0.0;
    double gauge_xi_zeta = 0.0; // max |xi.zeta|
    double gauge_trace = 0.0;   // max |xi.xi + zeta.zeta|
    double geodesic_res = 0.0;  // max residual on the rolling 3-slice window
    double energy = 0.0;        // sum (|V|^2 + |dX/dsigma|^2) dsigma
};

struct EvolveOptions {
    /// abort when the gauge residual grows by more than this over its
    /// initial value
    double gauge_drift_ceiling = 0.5;
    /// keep every k-th slice in the assembled grid
    int output_every = 1;
};

/// One explicit step of the gauge-fixed string wave equation
///   d2X^b/dtau2 = d2X^b/dsigma2 + Gamma^b_cd (zeta^c zeta^d - xi^c xi^d)
/// in velocity-Verlet (leapfrog) form. The velocity-dependent force is
/// evaluated at the half-step velocity. Requires dt <= dsigma and f > 0 on
/// the slice.
EvolutionState step(const EvolutionState& s, const MetricChart& chart);

struct EvolutionResult {
    WorldsheetGrid grid;
    std::vector<StepStats> stats;
};

/// Repeated stepping to tau = T, assembling the tube for the downstream
/// operators and recording per-step monitors.
EvolutionResult evolve(EvolutionState initial, std::shared_ptr<const MetricChart> chart, double T,
                       const EvolveOptions& opt = {});

/// Componentwise discrete wave energy of a slice (conserved by the flat
/// evolution; a monitoring quantity elsewhere).
double wave_energy(const EvolutionState& s, const MetricChart& chart);

/// Resamples the sigma parameterization of a slice to uniform metric arc
/// length, which makes |zeta| constant along the string where the curve is
/// smooth. Velocities are resampled with the same map.
EvolutionState resample_to_arclength(const EvolutionState& s, const MetricChart& chart);

} // namespace wsmorse
