#pragma once

#include <cstddef>
#include <vector>

namespace sparse_recover {

// Uniform empirical measure (1/n) sum of Dirac masses at the support
// points (radians). The support is kept unsorted so callers can track
// particle identity across gradient-descent iterations; transport
// operations sort internally and report the permutation explicitly.
struct SparseMeasure1D {
    std::vector<double> support;

    SparseMeasure1D() = default;
    explicit SparseMeasure1D(std::vector<double> points);

    std::size_t size() const { return support.size(); }
};

// Optimal matching between two equal-size measures.
// permutation[i] is the index into the first measure paired with the
// i-th point of the second; max_deviation is the W-infinity distance.
struct MatchResult {
    std::vector<std::size_t> permutation;
    double max_deviation = 0.0;
};

struct SeparationInfo {
    double min_separation = 0.0;
};

// W-infinity distance between equal-size uniform empirical measures:
// min over permutations of the maximum matched displacement. On the
// line the minimum is attained by pairing sorted supports by rank.
double winf_distance(const SparseMeasure1D& a, const SparseMeasure1D& b);

// Exact minimum over all n! permutations. Testing oracle, refuses n > 8.
double winf_bruteforce(const SparseMeasure1D& a, const SparseMeasure1D& b);

// Rank-pairing of stably sorted supports; ties broken by original index
// so the result is deterministic.
MatchResult match_particles(const SparseMeasure1D& a, const SparseMeasure1D& b);

// Minimum pairwise gap of the support (0 when duplicates exist). n >= 2.
SeparationInfo min_separation(const SparseMeasure1D& a);

// True when all support points are pairwise distinct (n = 1 counts).
bool is_distinct(const SparseMeasure1D& a);

}  // namespace sparse_recover
