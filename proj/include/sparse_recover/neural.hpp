#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sparse_recover/rng.hpp"

namespace sparse_recover {

// Polar angles in [0, pi] of unit-circle neuron weights
// w_hat_i = (sin(theta_i), cos(theta_i)).
struct NeuronAngles {
    std::vector<double> angles;

    NeuronAngles() = default;
    explicit NeuronAngles(std::vector<double> a);

    std::size_t size() const { return angles.size(); }
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(samples)
    std::size_t samples = 0;
};

// (1/n) sum_i phi(x . w_hat_i) with the zero-one activation
// phi(a) = 1 for a > 0, else 0.
double network_output(const std::array<double, 2>& x, const NeuronAngles& weights);

// k(theta, omega) = 1 - angle(w_hat(theta), w_hat(omega)) / pi.
// For angles in [0, pi] this is exactly 1 - |theta - omega| / pi, which
// is the form used everywhere; the arccos route below is the cross-check.
double arccos_kernel(double theta, double omega);
double arccos_kernel_from_dot(double theta, double omega);

// Population mean-squared error of the student network against the
// teacher under inputs uniform on the unit circle, in closed form:
// (1/n^2) sum_{ij} [ k(v_i,v_j) - 2 k(v_i,w_j) + k(w_i,w_j) ].
double population_loss_analytic(const NeuronAngles& v, const NeuronAngles& w);

// Monte Carlo estimate of the same loss from x = (sin r, cos r),
// r uniform on [0, 2 pi).
MonteCarloEstimate population_loss_mc(const NeuronAngles& v, const NeuronAngles& w,
                                      std::size_t samples, Xoshiro256PlusPlus& rng);

namespace detail {
// closed-form loss on raw angle vectors (no range validation); used by
// the public op and by descent diagnostics where iterates may drift a
// step beyond [0, pi]
double loss_closed_form(const std::vector<double>& v, const std::vector<double>& w);
}  // namespace detail

}  // namespace sparse_recover
