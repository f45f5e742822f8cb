#include "sparse_recover/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sparse_recover/parallel.hpp"

namespace sparse_recover {

namespace {
constexpr double kPi = std::numbers::pi;
}

SignCoefficients sign_series_coeffs(std::size_t m) {
    if (m < 1) throw std::invalid_argument("sign_series_coeffs needs m >= 1");
    SignCoefficients coeffs;
    coeffs.c.assign(m, 0.0);
    for (std::size_t k = 1; k <= m; k += 2)
        coeffs.c[k - 1] = 4.0 / (kPi * static_cast<double>(k));
    return coeffs;
}

FeatureVector feature_map(double w, std::size_t m) {
    if (m < 1) throw std::invalid_argument("feature_map needs m >= 1");
    FeatureVector phi;
    phi.entries.resize(m);
    for (std::size_t k = 1; k <= m; ++k)
        phi.entries[k - 1] = std::polar(1.0, -static_cast<double>(k) * w);
    return phi;
}

namespace detail {

void moments_serial(const std::vector<double>& support, std::size_t m,
                    std::vector<std::complex<double>>& out) {
    out.resize(m);
    const double n = static_cast<double>(support.size());
    for (std::size_t k = 1; k <= m; ++k) {
        std::complex<double> sum{0.0, 0.0};
        for (double w : support) sum += std::polar(1.0, -static_cast<double>(k) * w);
        out[k - 1] = sum / n;
    }
}

void moments_parallel(const std::vector<double>& support, std::size_t m,
                      std::vector<std::complex<double>>& out, int threads) {
    out.resize(m);
    const double n = static_cast<double>(support.size());
    const auto mm = static_cast<std::ptrdiff_t>(m);
    // entries are independent; the per-entry sum keeps the serial order
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::ptrdiff_t k = 1; k <= mm; ++k) {
        std::complex<double> sum{0.0, 0.0};
        for (double w : support) sum += std::polar(1.0, -static_cast<double>(k) * w);
        out[static_cast<std::size_t>(k - 1)] = sum / n;
    }
}

}  // namespace detail

MomentVector moments(const SparseMeasure1D& mu, std::size_t m) {
    if (m < 1) throw std::invalid_argument("moments needs m >= 1");
    MomentVector phimu;
    phimu.n = mu.size();
    const int threads = parallel::max_threads();
    if (threads > 1)
        detail::moments_parallel(mu.support, m, phimu.entries, threads);
    else
        detail::moments_serial(mu.support, m, phimu.entries);
    return phimu;
}

double truncated_sign(double delta, std::size_t m) {
    double sum = 0.0;
    for (std::size_t k = 1; k <= m; k += 2)
        sum += 4.0 / (kPi * static_cast<double>(k)) * std::sin(static_cast<double>(k) * delta);
    return sum;
}

double approx_sign(double v, double w, const SignCoefficients& coeffs) {
    double im = 0.0;
    for (std::size_t k = 1; k <= coeffs.order(); ++k) {
        const double ck = coeffs.c[k - 1];
        if (ck == 0.0) continue;
        const std::complex<double> phi_w = std::polar(1.0, -static_cast<double>(k) * w);
        const std::complex<double> phi_v = std::polar(1.0, -static_cast<double>(k) * v);
        im += ck * (std::conj(phi_w) * phi_v).imag();
    }
    return -im;
}

double truncation_error_bound(double delta, std::size_t mb) {
    const double m = static_cast<double>(mb);
    return 4.0 * (1.0 / (m * std::abs(delta)) + 1.0 / m);
}

namespace detail {

std::vector<std::complex<double>> weighted_conj_moments(const MomentVector& phimu,
                                                        const SignCoefficients& coeffs) {
    if (phimu.order() != coeffs.order())
        throw std::invalid_argument("moment/coefficient length mismatch");
    std::vector<std::complex<double>> weights(phimu.order());
    for (std::size_t k = 0; k < weights.size(); ++k)
        weights[k] = coeffs.c[k] * std::conj(phimu.entries[k]);
    return weights;
}

double cross_eval(const std::vector<std::complex<double>>& weights, double n_scale, double v) {
    const std::size_t m = weights.size();
    const std::complex<double> z = std::polar(1.0, -v);
    const std::complex<double> z2 = z * z;
    std::complex<double> p = z;  // z^k at the current odd k
    double im = 0.0;
    for (std::size_t k = 1; k <= m; k += 2) {
        const std::complex<double>& a = weights[k - 1];
        im += a.real() * p.imag() + a.imag() * p.real();
        p *= z2;
    }
    return -n_scale * im;
}

}  // namespace detail

double approx_cross_subgradient(double v, const MomentVector& phimu,
                                const SignCoefficients& coeffs) {
    const auto weights = detail::weighted_conj_moments(phimu, coeffs);
    return detail::cross_eval(weights, static_cast<double>(phimu.n), v);
}

CrossTermKernel::CrossTermKernel(const MomentVector& phimu, const SignCoefficients& coeffs)
    : weights_(detail::weighted_conj_moments(phimu, coeffs)),
      n_scale_(static_cast<double>(phimu.n)) {}

double CrossTermKernel::eval(double v) const {
    return detail::cross_eval(weights_, n_scale_, v);
}

}  // namespace sparse_recover
