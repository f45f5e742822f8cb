#include "sparse_recover/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparse_recover/parallel.hpp"

namespace sparse_recover {

namespace {

void require_same_size(const SparseMeasure1D& a, const SparseMeasure1D& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("measures must have the same support size");
}

inline long long sgn(double x) {
    return (x > 0.0) - (x < 0.0);
}

long long direction_at(const std::vector<double>& v, const std::vector<double>& w, std::size_t i) {
    const double vi = v[i];
    long long cross = 0;
    for (double wj : w) cross += sgn(vi - wj);
    long long self = 0;
    for (double vj : v) self += sgn(vi - vj);  // sign(0) = 0 drops j = i
    return cross - self;
}

}  // namespace

EnergyValue energy_distance(const SparseMeasure1D& nu, const SparseMeasure1D& mu) {
    require_same_size(nu, mu);
    // canonical (sorted) summation order makes the value exactly invariant
    // under permutations of either support
    std::vector<double> v = nu.support;
    std::vector<double> w = mu.support;
    std::sort(v.begin(), v.end());
    std::sort(w.begin(), w.end());
    const std::size_t n = v.size();
    double cross = 0.0, self_v = 0.0, self_w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cross += std::abs(v[i] - w[j]);
            self_v += std::abs(v[i] - v[j]);
            self_w += std::abs(w[i] - w[j]);
        }
    }
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    return {(2.0 * cross - self_v - self_w) / n2};
}

long long subgradient_direction(const SparseMeasure1D& nu, const SparseMeasure1D& mu,
                                std::size_t i) {
    require_same_size(nu, mu);
    if (i >= nu.size()) throw std::invalid_argument("particle index out of range");
    return direction_at(nu.support, mu.support, i);
}

double subgradient(const SparseMeasure1D& nu, const SparseMeasure1D& mu, std::size_t i) {
    const double n = static_cast<double>(nu.size());
    return 2.0 / (n * n) * static_cast<double>(subgradient_direction(nu, mu, i));
}

namespace detail {

void gd_directions_serial(const std::vector<double>& v, const std::vector<double>& w,
                          std::vector<long long>& out) {
    out.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = direction_at(v, w, i);
}

void gd_directions_parallel(const std::vector<double>& v, const std::vector<double>& w,
                            std::vector<long long>& out, int threads) {
    out.resize(v.size());
    const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = direction_at(v, w, static_cast<std::size_t>(i));
}

}  // namespace detail

SparseMeasure1D gd_step(const SparseMeasure1D& nu, const SparseMeasure1D& mu, double gamma) {
    require_same_size(nu, mu);
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    std::vector<long long> dir;
    const int threads = parallel::max_threads();
    if (threads > 1)
        detail::gd_directions_parallel(nu.support, mu.support, dir, threads);
    else
        detail::gd_directions_serial(nu.support, mu.support, dir);
    SparseMeasure1D next = nu;
    for (std::size_t i = 0; i < next.size(); ++i) {
        if (dir[i] > 0)
            next.support[i] -= gamma;
        else if (dir[i] < 0)
            next.support[i] += gamma;
    }
    return next;
}

Trajectory particle_gd(const SparseMeasure1D& init, const SparseMeasure1D& mu, double gamma,
                       std::size_t max_iters) {
    require_same_size(init, mu);
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!is_distinct(init))
        throw std::invalid_argument("particle_gd requires a distinct initialization");

    Trajectory traj;
    traj.gamma = gamma;
    SparseMeasure1D current = init;
    double w = winf_distance(current, mu);
    traj.snapshots.push_back({0, current.support, w});
    std::size_t iter = 0;
    while (iter < max_iters && w > gamma) {
        current = gd_step(current, mu, gamma);
        ++iter;
        w = winf_distance(current, mu);
        traj.snapshots.push_back({iter, current.support, w});
    }
    traj.iterations = iter;
    return traj;
}

}  // namespace sparse_recover
