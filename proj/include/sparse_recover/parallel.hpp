#pragma once

namespace sparse_recover::parallel {

// Thread cap for OpenMP kernels. Read once from SPARSE_RECOVER_THREADS;
// defaults to 1 (serial). Every parallel kernel produces results bitwise
// identical to its serial reference, so raising this only changes speed.
int max_threads();

// Programmatic override (benchmarks, tests). Pass 0 to re-read the env.
void set_max_threads(int n);

}  // namespace sparse_recover::parallel
