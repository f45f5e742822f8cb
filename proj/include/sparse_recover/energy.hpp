#pragma once

#include <cstddef>
#include <vector>

#include "sparse_recover/measures.hpp"

namespace sparse_recover {

struct EnergyValue {
    double value = 0.0;
};

struct TrajectorySnapshot {
    std::size_t iteration = 0;
    std::vector<double> positions;
    double winf = 0.0;  // W-infinity to the target measure
};

// Per-iteration record of a particle descent run.
struct Trajectory {
    std::vector<TrajectorySnapshot> snapshots;
    double gamma = 0.0;
    std::size_t iterations = 0;  // steps actually performed
};

// Energy distance between equal-size uniform empirical measures:
//   (1/n^2) * ( 2 sum_{ij} |v_i - w_j| - sum_{ij} |v_i - v_j|
//                                      - sum_{ij} |w_i - w_j| ).
// Nonnegative, zero exactly when the supports coincide as multisets.
EnergyValue energy_distance(const SparseMeasure1D& nu, const SparseMeasure1D& mu);

// Integer part of the subgradient at particle i:
//   sum_j sign(v_i - w_j) - sum_j sign(v_i - v_j),  sign(0) := 0.
// Exact, so the descent direction is decided without floating-point
// ambiguity.
long long subgradient_direction(const SparseMeasure1D& nu, const SparseMeasure1D& mu,
                                std::size_t i);

// dE/dv_i = (2/n^2) * subgradient_direction(nu, mu, i).
double subgradient(const SparseMeasure1D& nu, const SparseMeasure1D& mu, std::size_t i);

// One synchronous normalized step: v_i <- v_i - gamma * sign(dE/dv_i).
// Particles with a zero direction stay put. All particles read the
// pre-step configuration.
SparseMeasure1D gd_step(const SparseMeasure1D& nu, const SparseMeasure1D& mu, double gamma);

// Iterated gd_step from a distinct initialization. Stops after max_iters
// steps or as soon as W-infinity to the target is <= gamma. Records one
// snapshot per iteration, starting with the initial configuration.
Trajectory particle_gd(const SparseMeasure1D& init, const SparseMeasure1D& mu,
                       double gamma, std::size_t max_iters);

namespace detail {
// Direction kernel, serial reference and OpenMP version. Directions are
// integers so the parallel result is identical to the serial one.
void gd_directions_serial(const std::vector<double>& v, const std::vector<double>& w,
                          std::vector<long long>& out);
void gd_directions_parallel(const std::vector<double>& v, const std::vector<double>& w,
                            std::vector<long long>& out, int threads);
}  // namespace detail

}  // namespace sparse_recover
