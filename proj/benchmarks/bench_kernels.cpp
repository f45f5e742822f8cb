// Timing comparison of the serial reference kernels against their OpenMP
// versions, with a bitwise equality check on every output. Run with no
// arguments; thread counts are set programmatically.

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

#include "sparse_recover/energy.hpp"
#include "sparse_recover/fourier.hpp"
#include "sparse_recover/parallel.hpp"
#include "sparse_recover/rng.hpp"
#include "sparse_recover/superres.hpp"

using namespace sparse_recover;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_ms(F&& fn, int reps) {
    const double t0 = now_ms();
    for (int r = 0; r < reps; ++r) fn();
    return (now_ms() - t0) / reps;
}

bool equal_bits(const std::vector<std::complex<double>>& a,
                const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool equal_bits(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool equal_bits(const std::vector<long long>& a, const std::vector<long long>& b) {
    return a == b;
}

void report(const char* name, double serial_ms, double par_ms, int threads, bool identical) {
    std::printf("%-24s serial %9.2f ms   %d threads %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, threads, par_ms, serial_ms / par_ms,
                identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const int hw = std::max(1u, std::thread::hardware_concurrency());
    const int threads = argc > 1 ? std::atoi(argv[1]) : std::min(4, hw);
    Xoshiro256PlusPlus rng(12345);

    // moments: m x n feature averaging, parallel over frequencies
    {
        const std::size_t n = 2000, m = 20000;
        std::vector<double> support(n);
        for (auto& w : support) w = rng.uniform(0.0, 3.14159);
        std::vector<std::complex<double>> serial_out, parallel_out;
        const double ts = time_ms([&] { detail::moments_serial(support, m, serial_out); }, 3);
        const double tp = time_ms(
            [&] { detail::moments_parallel(support, m, parallel_out, threads); }, 3);
        report("moments", ts, tp, threads, equal_bits(serial_out, parallel_out));
    }

    // energy descent directions: n^2 sign sums, parallel over particles
    {
        const std::size_t n = 20000;
        std::vector<double> v(n), w(n);
        for (auto& x : v) x = rng.uniform(0.0, 3.14159);
        for (auto& x : w) x = rng.uniform(0.0, 3.14159);
        std::vector<long long> serial_out, parallel_out;
        const double ts = time_ms([&] { detail::gd_directions_serial(v, w, serial_out); }, 3);
        const double tp =
            time_ms([&] { detail::gd_directions_parallel(v, w, parallel_out, threads); }, 3);
        report("gd directions", ts, tp, threads, equal_bits(serial_out, parallel_out));
    }

    // moment-descent step: n independent O(m) cross terms
    {
        const std::size_t n = 256, m = 50001;
        std::vector<double> target(n), positions(n);
        for (auto& x : target) x = rng.uniform(0.0, 3.14159);
        for (auto& x : positions) x = rng.uniform(0.0, 3.14159);
        const MomentVector phimu = moments(SparseMeasure1D(target), m);
        const CrossTermKernel kernel(phimu, sign_series_coeffs(m));
        std::vector<double> serial_out, parallel_out;
        const double ts = time_ms(
            [&] { detail::recovery_step_serial(positions, serial_out, kernel, 0.01); }, 3);
        const double tp = time_ms(
            [&] { detail::recovery_step_parallel(positions, parallel_out, kernel, 0.01, threads); },
            3);
        report("recovery step", ts, tp, threads, equal_bits(serial_out, parallel_out));
    }

    return 0;
}
