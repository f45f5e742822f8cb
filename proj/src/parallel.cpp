#include "sparse_recover/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace sparse_recover::parallel {

namespace {

int read_env() {
    const char* env = std::getenv("SPARSE_RECOVER_THREADS");
    if (env == nullptr) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    if (v > 1024) return 1024;
    return static_cast<int>(v);
}

std::atomic<int> g_override{0};

}  // namespace

int max_threads() {
    const int o = g_override.load(std::memory_order_relaxed);
    if (o > 0) return o;
    static const int from_env = read_env();
    return from_env;
}

void set_max_threads(int n) {
    g_override.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

}  // namespace sparse_recover::parallel
