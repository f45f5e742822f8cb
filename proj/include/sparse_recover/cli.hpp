#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparse_recover/energy.hpp"

namespace sparse_recover::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAssumption = 3;
inline constexpr int kExitNumerical = 4;

// A spec plus the toolkit version fully determines a run; every field
// has a default.
struct ExperimentSpec {
    std::string command;  // energy-gd | recover1d | recoverd | nn-demo | bounds-check
    std::uint64_t seed = 1;

    std::size_t n = 5;
    std::size_t d = 3;
    double gamma = 0.01;
    std::size_t m = 0;  // 0 = derive from the schedule
    std::size_t k = 0;  // 0 = derive from the schedule
    double ell = 0.0;   // 0 = no separation enforcement when synthesizing
    double eps = 0.1;
    double beta = 0.25;
    double kappa = 0.2;
    std::size_t samples = 100000;
    std::size_t max_iters = 0;  // 0 = contraction budget from the initial distance
    std::size_t stride = 0;     // trajectory sampling stride; 0 = ceil(k/500)

    std::string mode = "theory";      // recover1d: theory | empirical
    std::string algo = "randomized";  // recoverd: deterministic | randomized
    std::vector<std::size_t> mb;      // bounds-check expansion indices

    std::string out_csv = "trajectory.csv";
    std::string out_json = "summary.json";
};

// Executes the named pipeline deterministically from the seed, writes
// the trajectory CSV and summary JSON, and returns the process exit
// status (0 ok, 2 usage, 3 assumption violation, 4 numerical/I-O).
int run(const ExperimentSpec& spec);

// CSV with header iter,particle,value,winf; one row per (snapshot,
// particle); numbers printed with 17 significant digits so a reparse
// reproduces them bit-exactly.
void emit_trajectory(const Trajectory& traj, const std::string& path);

// d-dimensional variant: iter,particle,coord,value where coord indexes
// the scalar recovery instance (0..d-1 coordinates, d..2d-1 sums).
void emit_trajectory_nd(const std::vector<Trajectory>& instances, const std::string& path);

}  // namespace sparse_recover::cli
