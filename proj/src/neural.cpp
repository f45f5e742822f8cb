#include "sparse_recover/neural.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sparse_recover {

namespace {
constexpr double kPi = std::numbers::pi;

inline double activation(double a) {
    return a > 0.0 ? 1.0 : 0.0;  // zero-one; phi(0) = 0 for determinism
}
}  // namespace

NeuronAngles::NeuronAngles(std::vector<double> a) : angles(std::move(a)) {
    if (angles.empty()) throw std::invalid_argument("empty angle list");
    for (double t : angles) {
        if (!(t >= 0.0 && t <= kPi))
            throw std::invalid_argument("neuron angles must lie in [0, pi]");
    }
}

double network_output(const std::array<double, 2>& x, const NeuronAngles& weights) {
    double sum = 0.0;
    for (double t : weights.angles)
        sum += activation(x[0] * std::sin(t) + x[1] * std::cos(t));
    return sum / static_cast<double>(weights.size());
}

double arccos_kernel(double theta, double omega) {
    return 1.0 - std::abs(theta - omega) / kPi;
}

double arccos_kernel_from_dot(double theta, double omega) {
    const double dot = std::sin(theta) * std::sin(omega) + std::cos(theta) * std::cos(omega);
    return 1.0 - std::acos(std::clamp(dot, -1.0, 1.0)) / kPi;
}

namespace detail {

double loss_closed_form(const std::vector<double>& v, const std::vector<double>& w) {
    const std::size_t n = v.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            acc += arccos_kernel(v[i], v[j]) - 2.0 * arccos_kernel(v[i], w[j]) +
                   arccos_kernel(w[i], w[j]);
        }
    }
    return acc / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace detail

double population_loss_analytic(const NeuronAngles& v, const NeuronAngles& w) {
    if (v.size() != w.size()) throw std::invalid_argument("angle lists must have equal size");
    return detail::loss_closed_form(v.angles, w.angles);
}

MonteCarloEstimate population_loss_mc(const NeuronAngles& v, const NeuronAngles& w,
                                      std::size_t samples, Xoshiro256PlusPlus& rng) {
    if (v.size() != w.size()) throw std::invalid_argument("angle lists must have equal size");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const double r = rng.uniform(0.0, 2.0 * kPi);
        const std::array<double, 2> x{std::sin(r), std::cos(r)};
        const double diff = network_output(x, v) - network_output(x, w);
        const double sq = diff * diff;
        sum += sq;
        sumsq += sq * sq;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.mean = sum / static_cast<double>(samples);
    if (samples > 1) {
        const double ns = static_cast<double>(samples);
        double var = (sumsq - ns * est.mean * est.mean) / (ns - 1.0);
        var = std::max(var, 0.0);
        est.std_error = std::sqrt(var / ns);
    }
    return est;
}

}  // namespace sparse_recover
