#pragma once

#include <cstddef>
#include <vector>

#include "sparse_recover/energy.hpp"
#include "sparse_recover/rng.hpp"
#include "sparse_recover/superres.hpp"

namespace sparse_recover {

// n points in d dimensions, the support of a d-dimensional sparse measure.
struct PointCloudND {
    std::vector<std::vector<double>> points;

    PointCloudND() = default;
    explicit PointCloudND(std::vector<std::vector<double>> pts);

    std::size_t size() const { return points.size(); }
    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
};

// Coordinate-separation constant: minimum over coordinate-wise pairwise
// gaps and over (first + r-th)-coordinate sum gaps. Zero signals a
// violated separation assumption.
struct Assumption2Params {
    double beta = 0.0;
};

// Affine transport of scalar recovery instances onto [0, pi].
struct AffineMap {
    double scale = 1.0;
    double shift = 0.0;

    double apply(double t) const { return scale * t + shift; }
    double invert(double t) const { return (t - shift) / scale; }

    // The fixed map A(t) = (t + 2) * pi/5 taking [-2, 2] into [0, 4pi/5].
    static AffineMap recovery_domain();
};

// Square Gaussian matrix with its spectral norm and inverse.
struct GaussianProjection {
    std::vector<std::vector<double>> Z;
    std::vector<std::vector<double>> inverse;
    double spectral_norm = 0.0;

    std::size_t dim() const { return Z.size(); }

    // Z x / ||Z||
    std::vector<double> project(const std::vector<double>& x) const;
    // ||Z|| Z^{-1} x  (round trip of project)
    std::vector<double> unproject(const std::vector<double>& x) const;

    PointCloudND project(const PointCloudND& cloud) const;
    PointCloudND unproject(const PointCloudND& cloud) const;
};

Assumption2Params beta_of(const PointCloudND& cloud);

// i.i.d. standard normal Z with spectral norm from power iteration on
// Z^T Z and inverse from partial-pivot elimination. Resamples (up to 5
// times) when a pivot falls below 1e-12.
GaussianProjection random_projection(std::size_t d, Xoshiro256PlusPlus& rng);

struct GlueResult {
    PointCloudND points;
    // sources[i][q-1] = index j of the coordinate list entry assigned to
    // point i in dimension q (match provenance)
    std::vector<std::vector<std::size_t>> sources;
};

// Reassemble d-dimensional points from per-coordinate recoveries using
// recovered pairwise sums as witnesses. coords and sums hold the lists
// for q = 2..d; first_coords anchors dimension 1. Exactly one candidate
// per (i, q) may pass the beta/5 threshold; zero or several raise
// AssumptionViolation naming the offending pair.
GlueResult glue(const std::vector<double>& first_coords,
                const std::vector<std::vector<double>>& coords,
                const std::vector<std::vector<double>>& sums, double beta);

struct NdRecoveryOptions {
    bool record_trajectories = false;
    std::size_t trajectory_stride = 0;
};

struct NdRecoveryResult {
    PointCloudND points;
    GlueResult assembly;
    double beta_used = 0.0;
    // shared config of the scalar recovery instances (affine-scaled units)
    RecoveryConfig scalar_config;
    // diagnostics (randomized pipeline): measured norms of Z and Z^{-1}
    double spectral_norm = 0.0;
    double inverse_norm = 0.0;
    // 2d scalar-instance trajectories in original coordinates:
    // d coordinate instances, then d pairwise-sum instances
    std::vector<Trajectory> instance_trajectories;
};

// Coordinate-wise recovery + gluing under the coordinate-separation
// assumption. Every scalar instance runs the 1-D recovery on the
// affine-transported values with stepsize min(eps'/2, beta'/10).
// Requires coordinates in [-1, 1].
NdRecoveryResult recover_nd_deterministic(const PointCloudND& truth, double beta, double eps,
                                          Xoshiro256PlusPlus& rng,
                                          const NdRecoveryOptions& opts = {});

enum class BetaSource {
    exact,    // beta_of on the projected cloud (simulation mode)
    formula,  // c * ell * kappa / (d n (-ln kappa))
};

struct RandomizedOptions {
    BetaSource beta_source = BetaSource::exact;
    double formula_constant = 0.125;
    NdRecoveryOptions nd;
};

// Random-projection reduction: project unit-sphere points through
// Z/||Z||, recover deterministically with accuracy eps/d, map back with
// ||Z|| Z^{-1}. An AssumptionViolation out of this pipeline is the
// probability <= kappa failure event, reported to the caller.
NdRecoveryResult recover_nd_randomized(const PointCloudND& truth, double ell, double kappa,
                                       double eps, Xoshiro256PlusPlus& rng,
                                       const RandomizedOptions& opts = {});

// Brute-force matched errors over all permutations (n <= 8).
double matched_error_inf(const PointCloudND& a, const PointCloudND& b);
double matched_error_euclidean(const PointCloudND& a, const PointCloudND& b);

}  // namespace sparse_recover
