#include "sparse_recover/highdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sparse_recover/errors.hpp"
#include "sparse_recover/parallel.hpp"
#include "sparse_recover/superres.hpp"

namespace sparse_recover {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPivotTol = 1e-12;

using Matrix = std::vector<std::vector<double>>;

std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& x) {
    std::vector<double> y(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += m[i][j] * x[j];
        y[i] = acc;
    }
    return y;
}

double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double t : x) s += t * t;
    return std::sqrt(s);
}

// largest singular value via power iteration on Z^T Z
double power_iteration_norm(const Matrix& z) {
    const std::size_t d = z.size();
    Matrix zt(d, std::vector<double>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) zt[i][j] = z[j][i];

    std::vector<double> x(d, 1.0 / std::sqrt(static_cast<double>(d)));
    double lambda = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        std::vector<double> y = mat_vec(zt, mat_vec(z, x));
        const double ny = norm2(y);
        if (ny == 0.0) {
            // started orthogonal to everything that matters; nudge
            x.assign(d, 0.0);
            x[iter % d] = 1.0;
            continue;
        }
        for (auto& t : y) t /= ny;
        const double next = ny;  // Rayleigh quotient of the normalized iterate
        x.swap(y);
        if (std::abs(next - lambda) <= 1e-10 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

// inverse by Gauss elimination with partial pivoting; empty on pivot failure
Matrix invert(const Matrix& z, bool& ok) {
    const std::size_t d = z.size();
    Matrix a = z;
    Matrix inv(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < kPivotTol) {
            ok = false;
            return {};
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double diag = a[col][col];
        for (std::size_t j = 0; j < d; ++j) {
            a[col][j] /= diag;
            inv[col][j] /= diag;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    ok = true;
    return inv;
}

}  // namespace

PointCloudND::PointCloudND(std::vector<std::vector<double>> pts) : points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("empty point cloud");
    const std::size_t d = points.front().size();
    if (d == 0) throw std::invalid_argument("zero-dimensional point cloud");
    for (const auto& p : points) {
        if (p.size() != d) throw std::invalid_argument("ragged point cloud");
        for (double x : p)
            if (!std::isfinite(x)) throw std::invalid_argument("coordinate not finite");
    }
}

AffineMap AffineMap::recovery_domain() {
    return {kPi / 5.0, 2.0 * kPi / 5.0};
}

Assumption2Params beta_of(const PointCloudND& cloud) {
    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dim();
    if (n < 2) throw std::invalid_argument("beta_of needs n >= 2");
    if (d < 2) throw std::invalid_argument("beta_of needs d >= 2");
    double beta = std::numeric_limits<double>::infinity();
    const auto& p = cloud.points;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t q = 0; q < d; ++q)
                beta = std::min(beta, std::abs(p[i][q] - p[j][q]));
            for (std::size_t r = 1; r < d; ++r)
                beta = std::min(beta, std::abs(p[i][0] + p[i][r] - p[j][0] - p[j][r]));
        }
    }
    return {beta};
}

std::vector<double> GaussianProjection::project(const std::vector<double>& x) const {
    auto y = mat_vec(Z, x);
    for (auto& t : y) t /= spectral_norm;
    return y;
}

std::vector<double> GaussianProjection::unproject(const std::vector<double>& x) const {
    auto y = mat_vec(inverse, x);
    for (auto& t : y) t *= spectral_norm;
    return y;
}

PointCloudND GaussianProjection::project(const PointCloudND& cloud) const {
    PointCloudND out = cloud;
    for (auto& p : out.points) p = project(p);
    return out;
}

PointCloudND GaussianProjection::unproject(const PointCloudND& cloud) const {
    PointCloudND out = cloud;
    for (auto& p : out.points) p = unproject(p);
    return out;
}

GaussianProjection random_projection(std::size_t d, Xoshiro256PlusPlus& rng) {
    if (d < 1) throw std::invalid_argument("random_projection needs d >= 1");
    NormalSampler normal(rng);
    for (int attempt = 0; attempt < 5; ++attempt) {
        GaussianProjection proj;
        proj.Z.assign(d, std::vector<double>(d, 0.0));
        for (auto& row : proj.Z)
            for (auto& x : row) x = normal.next();
        bool ok = false;
        proj.inverse = invert(proj.Z, ok);
        if (!ok) continue;
        proj.spectral_norm = power_iteration_norm(proj.Z);
        return proj;
    }
    throw NumericalError("random_projection: singular sample 5 times in a row");
}

GlueResult glue(const std::vector<double>& first_coords,
                const std::vector<std::vector<double>>& coords,
                const std::vector<std::vector<double>>& sums, double beta) {
    const std::size_t n = first_coords.size();
    if (coords.size() != sums.size())
        throw std::invalid_argument("glue: coords/sums list count mismatch");
    for (const auto& list : coords)
        if (list.size() != n) throw std::invalid_argument("glue: list size mismatch");
    for (const auto& list : sums)
        if (list.size() != n) throw std::invalid_argument("glue: list size mismatch");
    if (!(beta > 0.0)) throw AssumptionViolation("glue: beta must be positive");

    const double threshold = beta / 5.0;
    const std::size_t d = coords.size() + 1;
    GlueResult result;
    result.points.points.assign(n, std::vector<double>(d, 0.0));
    result.sources.assign(n, std::vector<std::size_t>(d - 1, 0));
    for (std::size_t i = 0; i < n; ++i) result.points.points[i][0] = first_coords[i];

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t q = 1; q < d; ++q) {
            const auto& cq = coords[q - 1];
            const auto& yq = sums[q - 1];
            // candidate j values passing the witness threshold for any r
            std::vector<std::size_t> hits;
            for (std::size_t j = 0; j < n; ++j) {
                bool match = false;
                for (std::size_t r = 0; r < n && !match; ++r)
                    match = std::abs(first_coords[i] + cq[j] - yq[r]) < threshold;
                if (match) hits.push_back(j);
            }
            if (hits.size() != 1) {
                std::ostringstream msg;
                msg << "glue: " << (hits.empty() ? "no" : "multiple")
                    << " sum witness for point " << i << " in dimension " << q + 1 << " ("
                    << hits.size() << " candidates)";
                throw AssumptionViolation(msg.str());
            }
            result.points.points[i][q] = cq[hits.front()];
            result.sources[i][q - 1] = hits.front();
        }
    }
    return result;
}

namespace {

struct ScalarInstance {
    std::vector<double> targets;  // original (unscaled) values
    std::uint64_t seed = 0;
};

// run one scalar recovery through the affine transport; returns the
// recovered values mapped back to the original coordinates
std::vector<double> run_scalar_instance(const ScalarInstance& inst, const RecoveryConfig& config,
                                        const AffineMap& map, bool record, std::size_t stride,
                                        Trajectory* traj_out) {
    const std::size_t n = inst.targets.size();
    std::vector<double> scaled(n);
    for (std::size_t j = 0; j < n; ++j) scaled[j] = map.apply(inst.targets[j]);
    SparseMeasure1D scaled_truth(scaled);

    Xoshiro256PlusPlus rng(inst.seed);
    const SparseMeasure1D init = init_particles(n, rng);
    const MomentVector phimu = moments(scaled_truth, config.m);

    RecoveryOptions opts;
    opts.record_trajectory = record;
    opts.trajectory_stride = stride;
    opts.truth = &scaled_truth;
    RecoveryResult res = recover_1d(phimu, n, init, config, opts);

    if (traj_out != nullptr) {
        *traj_out = std::move(res.trajectory);
        // report trajectories in original coordinates
        for (auto& snap : traj_out->snapshots) {
            for (auto& p : snap.positions) p = map.invert(p);
            snap.winf /= map.scale;
        }
        traj_out->gamma = config.gamma / map.scale;
    }
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = map.invert(res.final.support[j]);
    return out;
}

}  // namespace

NdRecoveryResult recover_nd_deterministic(const PointCloudND& truth, double beta, double eps,
                                          Xoshiro256PlusPlus& rng, const NdRecoveryOptions& opts) {
    const std::size_t n = truth.size();
    const std::size_t d = truth.dim();
    if (d < 2) throw std::invalid_argument("recover_nd_deterministic needs d >= 2");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    // slack covers projected points whose norm division rounds a hair
    // above 1; the affine transport still lands inside [0, pi]
    for (const auto& p : truth.points)
        for (double x : p)
            if (std::abs(x) > 1.0 + 1e-9)
                throw std::invalid_argument(
                    "recover_nd_deterministic needs coordinates in [-1, 1]");
    if (!(beta > 0.0)) throw AssumptionViolation("coordinate separation beta must be positive");
    if (n >= 2 && beta_of(truth).beta < beta) {
        std::ostringstream msg;
        msg << "truth violates the coordinate-separation assumption: actual beta "
            << beta_of(truth).beta << " < " << beta;
        throw AssumptionViolation(msg.str());
    }

    const AffineMap map = AffineMap::recovery_domain();
    const double beta_scaled = beta * map.scale;
    const double eps_scaled = eps * map.scale;
    const double gamma = std::min(eps_scaled / 2.0, beta_scaled / 10.0);

    RecoveryConfig config;
    config.gamma = gamma;
    config.ell = beta_scaled;  // coordinate gaps are exactly beta-separated
    config.eps = eps_scaled;
    config.m = static_cast<std::size_t>(std::ceil(800.0 * static_cast<double>(n) / gamma));
    config.k = static_cast<std::size_t>(std::floor(200.0 * kPi / gamma)) + 1;

    // d coordinate instances then d pairwise-sum instances; the q = 1 sum
    // instance recovers 2 * first coordinate and is kept for fidelity with
    // the written procedure even though gluing never consults it
    std::vector<ScalarInstance> instances(2 * d);
    for (std::size_t q = 0; q < d; ++q) {
        instances[q].targets.resize(n);
        for (std::size_t j = 0; j < n; ++j) instances[q].targets[j] = truth.points[j][q];
    }
    for (std::size_t q = 0; q < d; ++q) {
        auto& inst = instances[d + q];
        inst.targets.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            inst.targets[j] = truth.points[j][0] + truth.points[j][q];
    }
    for (auto& inst : instances) inst.seed = rng.next_seed();

    NdRecoveryResult result;
    result.beta_used = beta;
    result.scalar_config = config;
    result.instance_trajectories.assign(opts.record_trajectories ? instances.size() : 0,
                                        Trajectory{});

    std::vector<std::vector<double>> recovered(instances.size());
    const int threads = parallel::max_threads();
    const auto count = static_cast<std::ptrdiff_t>(instances.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
        try {
            const auto u = static_cast<std::size_t>(idx);
            Trajectory* traj =
                opts.record_trajectories ? &result.instance_trajectories[u] : nullptr;
            recovered[u] = run_scalar_instance(instances[u], config, map,
                                               opts.record_trajectories, opts.trajectory_stride,
                                               traj);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<std::vector<double>> coords(recovered.begin() + 1, recovered.begin() + d);
    std::vector<std::vector<double>> sums(recovered.begin() + d + 1, recovered.end());
    result.assembly = glue(recovered[0], coords, sums, beta);
    result.points = result.assembly.points;
    return result;
}

NdRecoveryResult recover_nd_randomized(const PointCloudND& truth, double ell, double kappa,
                                       double eps, Xoshiro256PlusPlus& rng,
                                       const RandomizedOptions& opts) {
    const std::size_t n = truth.size();
    const std::size_t d = truth.dim();
    if (!(kappa > 0.0 && kappa < 1.0)) throw std::invalid_argument("kappa must be in (0, 1)");
    if (!(ell > 0.0)) throw std::invalid_argument("ell must be positive");
    for (const auto& p : truth.points) {
        if (std::abs(norm2(p) - 1.0) > 1e-12)
            throw std::invalid_argument("recover_nd_randomized needs unit-norm points");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t q = 0; q < d; ++q) {
                const double t = truth.points[i][q] - truth.points[j][q];
                s += t * t;
            }
            if (std::sqrt(s) < ell)
                throw AssumptionViolation("truth violates the minimum-separation assumption");
        }
    }

    const GaussianProjection proj = random_projection(d, rng);
    const PointCloudND projected = proj.project(truth);

    double beta = 0.0;
    if (opts.beta_source == BetaSource::exact && n >= 2) {
        beta = beta_of(projected).beta;
        if (beta <= 0.0)
            throw AssumptionViolation("projected cloud has coinciding coordinates (beta = 0)");
    } else if (opts.beta_source == BetaSource::formula || n < 2) {
        beta = opts.formula_constant * ell * kappa /
               (static_cast<double>(d) * static_cast<double>(n) * (-std::log(kappa)));
    }

    NdRecoveryResult inner =
        recover_nd_deterministic(projected, beta, eps / static_cast<double>(d), rng, opts.nd);

    NdRecoveryResult result = std::move(inner);
    result.points = proj.unproject(result.points);
    result.spectral_norm = proj.spectral_norm;
    result.inverse_norm = power_iteration_norm(proj.inverse);
    return result;
}

double matched_error_inf(const PointCloudND& a, const PointCloudND& b) {
    const std::size_t n = a.size();
    if (n != b.size() || a.dim() != b.dim())
        throw std::invalid_argument("matched_error: shape mismatch");
    if (n > 8) throw std::invalid_argument("matched_error refuses n > 8");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t q = 0; q < a.dim(); ++q)
                worst = std::max(worst, std::abs(a.points[i][q] - b.points[perm[i]][q]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double matched_error_euclidean(const PointCloudND& a, const PointCloudND& b) {
    const std::size_t n = a.size();
    if (n != b.size() || a.dim() != b.dim())
        throw std::invalid_argument("matched_error: shape mismatch");
    if (n > 8) throw std::invalid_argument("matched_error refuses n > 8");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t q = 0; q < a.dim(); ++q) {
                const double t = a.points[i][q] - b.points[perm[i]][q];
                s += t * t;
            }
            worst = std::max(worst, std::sqrt(s));
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace sparse_recover
