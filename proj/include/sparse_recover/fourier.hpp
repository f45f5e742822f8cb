#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sparse_recover/measures.hpp"

namespace sparse_recover {

// Fourier-series coefficients of sign on [-pi, pi]:
// c_k = 4/(pi k) for odd k, 0 for even k, k = 1..m.
struct SignCoefficients {
    std::vector<double> c;

    std::size_t order() const { return c.size(); }
};

// [e^{-i w}, e^{-i 2 w}, ..., e^{-i m w}]; every entry has modulus 1.
struct FeatureVector {
    std::vector<std::complex<double>> entries;
};

// Generalized Fourier moments (1/n) sum_j Phi(w_j) of an n-point measure.
struct MomentVector {
    std::vector<std::complex<double>> entries;
    std::size_t n = 0;  // support size the moments summarize

    std::size_t order() const { return entries.size(); }
};

// Number of stored frequencies m versus the expansion index mb of the
// odd-harmonic series: the order-mb expansion uses odd k up to 2 mb + 1.
inline std::size_t frequencies_for_expansion_index(std::size_t mb) { return 2 * mb + 1; }

SignCoefficients sign_series_coeffs(std::size_t m);

FeatureVector feature_map(double w, std::size_t m);

MomentVector moments(const SparseMeasure1D& mu, std::size_t m);

// Truncated sign expansion g(delta) = sum over odd k <= m of
// (4/(pi k)) sin(k delta). Odd in delta; accurate on (-pi, pi) away
// from the jumps of the periodic square wave.
double truncated_sign(double delta, std::size_t m);

// -Im sum_k c_k conj(Phi_k(w)) Phi_k(v); equals truncated_sign(v - w, m)
// up to rounding. Kept as a genuinely complex-arithmetic route so the
// identity with truncated_sign is a two-path check.
double approx_sign(double v, double w, const SignCoefficients& coeffs);

// n * ( -Im sum_k c_k conj(Phimu_k) Phi_k(v) ): moment-based estimate of
// the unnormalized cross term sum_j sign(v - w_j). The factor n undoes
// the 1/n averaging inside Phimu.
double approx_cross_subgradient(double v, const MomentVector& phimu,
                                const SignCoefficients& coeffs);

// Pointwise error bound of the order-mb odd-harmonic expansion:
// 4 * (1/(mb |delta|) + 1/mb).
double truncation_error_bound(double delta, std::size_t mb);

// Precomputed weights c_k * conj(Phimu_k) for the recovery inner loop.
// eval(v) is bit-identical to approx_cross_subgradient(v, phimu, coeffs).
class CrossTermKernel {
public:
    CrossTermKernel(const MomentVector& phimu, const SignCoefficients& coeffs);

    double eval(double v) const;
    std::size_t order() const { return weights_.size(); }

private:
    std::vector<std::complex<double>> weights_;
    double n_scale_;
};

namespace detail {
std::vector<std::complex<double>> weighted_conj_moments(const MomentVector& phimu,
                                                        const SignCoefficients& coeffs);
double cross_eval(const std::vector<std::complex<double>>& weights, double n_scale, double v);
void moments_serial(const std::vector<double>& support, std::size_t m,
                    std::vector<std::complex<double>>& out);
void moments_parallel(const std::vector<double>& support, std::size_t m,
                      std::vector<std::complex<double>>& out, int threads);
}  // namespace detail

}  // namespace sparse_recover
