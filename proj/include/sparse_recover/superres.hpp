#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sparse_recover/energy.hpp"
#include "sparse_recover/fourier.hpp"
#include "sparse_recover/measures.hpp"
#include "sparse_recover/rng.hpp"

namespace sparse_recover {

// Parameter bundle of the moment-descent recovery.
struct RecoveryConfig {
    double gamma = 0.0;   // stepsize
    std::size_t m = 0;    // moment count
    std::size_t k = 0;    // iteration count
    double ell = 0.0;     // known minimum separation of the target
    double eps = 0.0;     // target accuracy
};

enum class RecoveryMode { theory, empirical };

struct RecoveryOptions {
    bool record_trajectory = true;
    std::size_t trajectory_stride = 0;          // 0 -> ceil(k / 500)
    const SparseMeasure1D* truth = nullptr;     // enables winf tracking + matched error
};

struct RecoveryResult {
    SparseMeasure1D final;
    Trajectory trajectory;
    std::optional<double> matched_error;  // winf against truth, when supplied
};

// Schedule with the guarantee: gamma = min(eps/3, ell),
// m = ceil(800 n / gamma), k = floor(200 pi / gamma) + 1.
RecoveryConfig default_params(std::size_t n, double ell, double eps);

// True when the config meets the guaranteed schedule for n particles.
RecoveryMode classify_config(const RecoveryConfig& config, std::size_t n);

// n points uniform on [0, pi], redrawn until pairwise distinct.
// Deterministic given the generator state; at most 100 attempts.
SparseMeasure1D init_particles(std::size_t n, Xoshiro256PlusPlus& rng);

// Moment-descent recovery: k synchronous iterations of
//   dE_i = approx_cross_subgradient(v_i) - sum_j sign(v_i - v_j),
//   v_i <- clamp_{[0,pi]}( v_i - gamma * sign(dE_i) ).
// Particles with |dE_i| below the zero tolerance stay put.
RecoveryResult recover_1d(const MomentVector& phimu, std::size_t n,
                          const SparseMeasure1D& init, const RecoveryConfig& config,
                          const RecoveryOptions& opts = {});

// One synchronous update step (exposed for property tests).
std::vector<double> recovery_step(const std::vector<double>& positions,
                                  const CrossTermKernel& cross, double gamma);

namespace detail {
void recovery_step_serial(const std::vector<double>& cur, std::vector<double>& next,
                          const CrossTermKernel& cross, double gamma);
void recovery_step_parallel(const std::vector<double>& cur, std::vector<double>& next,
                            const CrossTermKernel& cross, double gamma, int threads);
}  // namespace detail

}  // namespace sparse_recover
