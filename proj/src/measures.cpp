#include "sparse_recover/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sparse_recover {

namespace {

void require_same_size(const SparseMeasure1D& a, const SparseMeasure1D& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("measures must have the same support size");
}

// indices of v sorted by value, ties by original index
std::vector<std::size_t> sorted_order(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    return idx;
}

}  // namespace

SparseMeasure1D::SparseMeasure1D(std::vector<double> points) : support(std::move(points)) {
    if (support.empty()) throw std::invalid_argument("empty support");
    for (double x : support) {
        if (!std::isfinite(x)) throw std::invalid_argument("support point not finite");
    }
}

double winf_distance(const SparseMeasure1D& a, const SparseMeasure1D& b) {
    require_same_size(a, b);
    std::vector<double> sa = a.support;
    std::vector<double> sb = b.support;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i)
        worst = std::max(worst, std::abs(sa[i] - sb[i]));
    return worst;
}

double winf_bruteforce(const SparseMeasure1D& a, const SparseMeasure1D& b) {
    require_same_size(a, b);
    const std::size_t n = a.size();
    if (n > 8) throw std::invalid_argument("winf_bruteforce refuses n > 8");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(a.support[perm[i]] - b.support[i]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

MatchResult match_particles(const SparseMeasure1D& a, const SparseMeasure1D& b) {
    require_same_size(a, b);
    const auto order_a = sorted_order(a.support);
    const auto order_b = sorted_order(b.support);
    MatchResult result;
    result.permutation.resize(a.size());
    for (std::size_t rank = 0; rank < a.size(); ++rank) {
        result.permutation[order_b[rank]] = order_a[rank];
        result.max_deviation = std::max(
            result.max_deviation, std::abs(a.support[order_a[rank]] - b.support[order_b[rank]]));
    }
    return result;
}

SeparationInfo min_separation(const SparseMeasure1D& a) {
    if (a.size() < 2) throw std::invalid_argument("min_separation needs n >= 2");
    std::vector<double> s = a.support;
    std::sort(s.begin(), s.end());
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) sep = std::min(sep, s[i + 1] - s[i]);
    return {sep};
}

bool is_distinct(const SparseMeasure1D& a) {
    if (a.size() < 2) return true;
    return min_separation(a).min_separation > 0.0;
}

}  // namespace sparse_recover
