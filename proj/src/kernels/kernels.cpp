#include "nfpt/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <cstring>

namespace nfpt::kernels {

bool cpu_has_avx2() {
#if defined(NFPT_KERNELS_AVX2)
    static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2");
    return has;
#else
    return false;
#endif
}

namespace {

Isa probe_default() {
    if (const char* env = std::getenv("NFPT_ISA")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::Avx2;
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa> g_isa{probe_default()};

}  // namespace

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (isa == Isa::Avx2 && !cpu_has_avx2()) isa = Isa::Scalar;
    g_isa.store(isa, std::memory_order_relaxed);
}

void reset_isa() { g_isa.store(probe_default(), std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void project_keys(std::span<const uint32_t> states, uint32_t mask, std::span<uint32_t> keys) {
    assert(states.size() == keys.size());
#if defined(NFPT_KERNELS_AVX2)
    if (active_isa() == Isa::Avx2) {
        avx2::project_keys(states, mask, keys);
        return;
    }
#endif
    scalar::project_keys(states, mask, keys);
}

void gather_add(std::span<int64_t> acc, std::span<const int64_t> table,
                std::span<const uint32_t> keys) {
    assert(acc.size() == keys.size());
#if defined(NFPT_KERNELS_AVX2)
    if (active_isa() == Isa::Avx2) {
        avx2::gather_add(acc, table, keys);
        return;
    }
#endif
    scalar::gather_add(acc, table, keys);
}

void scatter_best(std::span<int64_t> best, std::span<uint32_t> arg,
                  std::span<const uint32_t> keys, std::span<const int64_t> vals, bool maximize) {
    assert(keys.size() == vals.size());
    if (maximize) {
        for (size_t i = 0; i < keys.size(); ++i) {
            const uint32_t k = keys[i];
            if (vals[i] > best[k]) {
                best[k] = vals[i];
                arg[k] = (uint32_t)i;
            }
        }
    } else {
        for (size_t i = 0; i < keys.size(); ++i) {
            const uint32_t k = keys[i];
            if (vals[i] < best[k]) {
                best[k] = vals[i];
                arg[k] = (uint32_t)i;
            }
        }
    }
}

std::pair<int64_t, size_t> reduce_best(std::span<const int64_t> vals, bool maximize) {
    assert(!vals.empty());
#if defined(NFPT_KERNELS_AVX2)
    if (active_isa() == Isa::Avx2) return avx2::reduce_best(vals, maximize);
#endif
    return scalar::reduce_best(vals, maximize);
}

size_t count_edges(std::span<const uint32_t> us, std::span<const uint32_t> vs,
                   std::span<const int32_t> state, EdgePred pred) {
    assert(us.size() == vs.size());
#if defined(NFPT_KERNELS_AVX2)
    if (active_isa() == Isa::Avx2) return avx2::count_edges(us, vs, state, pred);
#endif
    return scalar::count_edges(us, vs, state, pred);
}

}  // namespace nfpt::kernels
