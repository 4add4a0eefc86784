#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

// Hot array primitives behind the DP and objective evaluation. Each has a
// scalar reference implementation and (on x86-64) an AVX2/BMI2 variant picked
// at runtime; the variants are equivalence-tested against the reference.
namespace nfpt::kernels {

enum class Isa { Scalar, Avx2 };

// ISA actually in use: CPU probe, overridable with NFPT_ISA=scalar|avx2 or force_isa().
Isa active_isa();
void force_isa(Isa isa);
void reset_isa();  // back to probed default
bool cpu_has_avx2();
const char* isa_name(Isa isa);

// keys[i] = bits of states[i] at the positions set in mask, packed low
// (parallel bit extract).
void project_keys(std::span<const uint32_t> states, uint32_t mask, std::span<uint32_t> keys);

// acc[i] += table[keys[i]]
void gather_add(std::span<int64_t> acc, std::span<const int64_t> table,
                std::span<const uint32_t> keys);

// Keyed fold: best[keys[i]] takes vals[i] when strictly better; arg records
// the winning i. Ties keep the earliest i. Scalar only (sequential
// dependencies on duplicate keys).
void scatter_best(std::span<int64_t> best, std::span<uint32_t> arg,
                  std::span<const uint32_t> keys, std::span<const int64_t> vals, bool maximize);

// Best value and the index of its first occurrence. vals must be nonempty.
std::pair<int64_t, size_t> reduce_best(std::span<const int64_t> vals, bool maximize);

enum class EdgePred { BothIn, NeitherIn, Differ };

// Count edges whose endpoint states (0/1 per vertex) satisfy the predicate.
size_t count_edges(std::span<const uint32_t> us, std::span<const uint32_t> vs,
                   std::span<const int32_t> state, EdgePred pred);

// Reference implementations, exposed for the equivalence tests.
namespace scalar {
void project_keys(std::span<const uint32_t> states, uint32_t mask, std::span<uint32_t> keys);
void gather_add(std::span<int64_t> acc, std::span<const int64_t> table,
                std::span<const uint32_t> keys);
std::pair<int64_t, size_t> reduce_best(std::span<const int64_t> vals, bool maximize);
size_t count_edges(std::span<const uint32_t> us, std::span<const uint32_t> vs,
                   std::span<const int32_t> state, EdgePred pred);
}  // namespace scalar

#if defined(NFPT_KERNELS_AVX2)
namespace avx2 {
void project_keys(std::span<const uint32_t> states, uint32_t mask, std::span<uint32_t> keys);
void gather_add(std::span<int64_t> acc, std::span<const int64_t> table,
                std::span<const uint32_t> keys);
std::pair<int64_t, size_t> reduce_best(std::span<const int64_t> vals, bool maximize);
size_t count_edges(std::span<const uint32_t> us, std::span<const uint32_t> vs,
                   std::span<const int32_t> state, EdgePred pred);
}  // namespace avx2
#endif

}  // namespace nfpt::kernels
