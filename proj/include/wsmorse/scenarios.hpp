#pragma once

#include "wsmorse/evolution.hpp"
#include "wsmorse/worldsheet.hpp"

/// Analytic scenario constructions shared by the tests, the CLI and the
/// acceptance suite. Gauge-compatible parameterizations are built directly
/// rather than searched for.
namespace wsmorse::scenarios {

std::shared_ptr<const MetricChart> flat_chart(int dim = 4);

/// Flat chart whose coordinate `axis` is an angle of period 2 pi with
/// constant metric coefficient g_axis (a flat cylinder direction).
std::shared_ptr<const MetricChart> flat_periodic_chart(int dim, int axis, double g_axis);

std::shared_ptr<const MetricChart> product_chart(int dim, double K);

/// X = (tau, R cos sigma, R sin sigma, 0) on the flat chart. A timelike
/// tube that is not a geodesic surface; f = R everywhere.
WorldsheetGrid static_cylinder(double R, double T, int ntau, int nsigma);

/// Oscillating ring X = (R tau, R cos tau cos sigma, R cos tau sin sigma, 0):
/// a geodesic surface of the flat chart in orthonormal gauge. Collapses at
/// tau = pi/2, so T must stay below that.
WorldsheetGrid breathing_ring(double R, double T, int ntau, int nsigma);

/// X = (tau, sigma, 0, 0) on a flat chart whose axis 1 is periodic with
/// g_11 = R^2: a totally geodesic flat cylinder (straight tube).
WorldsheetGrid straight_tube(double R, double T, int ntau, int nsigma);

/// Great-circle tube X = (r tau, pi/2, sigma) on the product chart,
/// r = 1/sqrt(K). Static geodesic surface in orthonormal gauge.
WorldsheetGrid equator_tube(double K, double T, int ntau, int nsigma);

/// Small-circle tube at polar angle theta0 (not a geodesic surface).
WorldsheetGrid latitude_tube(double K, double theta0, double T, int ntau, int nsigma);

/// X = (tau, R cos(sigma + eps tau), R sin(sigma + eps tau), 0); the shear
/// produces xi.zeta = eps R^2.
WorldsheetGrid sheared_cylinder(double R, double eps, double T, int ntau, int nsigma);

/// Center worldline of the equator tube (the sigma = 0 generator) with its
/// sigma tangent attached, plus the single transverse frame leg.
Worldline equator_center(double K);
std::vector<Vec> equator_frame(double K);

// initial slices for the evolution module
EvolutionState breathing_ring_state(double R, int nsigma, double dt);
EvolutionState static_circle_state(double R, int nsigma, double dt);
EvolutionState equator_state(double K, int nsigma, double dt);
EvolutionState traveling_wave_state(double amplitude, int nsigma, double dt);

} // namespace wsmorse::scenarios
