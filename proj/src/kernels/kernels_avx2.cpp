// AVX2/BMI2 variants. Compiled with -mavx2 -mbmi2 and only entered after the
// runtime CPU probe in kernels.cpp.
#include <immintrin.h>

#include "nfpt/kernels.hpp"

namespace nfpt::kernels::avx2 {

void project_keys(std::span<const uint32_t> states, uint32_t mask, std::span<uint32_t> keys) {
    size_t i = 0;
    const size_t n = states.size();
    for (; i + 4 <= n; i += 4) {
        keys[i] = _pext_u32(states[i], mask);
        keys[i + 1] = _pext_u32(states[i + 1], mask);
        keys[i + 2] = _pext_u32(states[i + 2], mask);
        keys[i + 3] = _pext_u32(states[i + 3], mask);
    }
    for (; i < n; ++i) keys[i] = _pext_u32(states[i], mask);
}

void gather_add(std::span<int64_t> acc, std::span<const int64_t> table,
                std::span<const uint32_t> keys) {
    size_t i = 0;
    const size_t n = keys.size();
    const long long* base = table.data();
    for (; i + 4 <= n; i += 4) {
        const __m128i idx = _mm_loadu_si128((const __m128i*)(keys.data() + i));
        const __m256i vals = _mm256_i32gather_epi64(base, idx, 8);
        const __m256i cur = _mm256_loadu_si256((const __m256i*)(acc.data() + i));
        _mm256_storeu_si256((__m256i*)(acc.data() + i), _mm256_add_epi64(cur, vals));
    }
    for (; i < n; ++i) acc[i] += table[keys[i]];
}

std::pair<int64_t, size_t> reduce_best(std::span<const int64_t> vals, bool maximize) {
    const size_t n = vals.size();
    if (n < 8) return scalar::reduce_best(vals, maximize);

    __m256i best = _mm256_loadu_si256((const __m256i*)vals.data());
    __m256i best_idx = _mm256_setr_epi64x(0, 1, 2, 3);
    __m256i idx = best_idx;
    const __m256i four = _mm256_set1_epi64x(4);
    size_t i = 4;
    for (; i + 4 <= n; i += 4) {
        idx = _mm256_add_epi64(idx, four);
        const __m256i v = _mm256_loadu_si256((const __m256i*)(vals.data() + i));
        const __m256i better =
            maximize ? _mm256_cmpgt_epi64(v, best) : _mm256_cmpgt_epi64(best, v);
        best = _mm256_blendv_epi8(best, v, better);
        best_idx = _mm256_blendv_epi8(best_idx, idx, better);
    }

    alignas(32) int64_t b[4], bi[4];
    _mm256_store_si256((__m256i*)b, best);
    _mm256_store_si256((__m256i*)bi, best_idx);

    // Lane j holds the first best among indices j, j+4, ...; the earliest
    // global occurrence is the smallest index among lanes tied on value.
    int64_t out = b[0];
    size_t out_idx = (size_t)bi[0];
    for (int j = 1; j < 4; ++j) {
        const bool better = maximize ? (b[j] > out) : (b[j] < out);
        if (better || (b[j] == out && (size_t)bi[j] < out_idx)) {
            out = b[j];
            out_idx = (size_t)bi[j];
        }
    }
    for (; i < n; ++i) {
        const bool better = maximize ? (vals[i] > out) : (vals[i] < out);
        if (better) {
            out = vals[i];
            out_idx = i;
        }
    }
    return {out, out_idx};
}

size_t count_edges(std::span<const uint32_t> us, std::span<const uint32_t> vs,
                   std::span<const int32_t> state, EdgePred pred) {
    const size_t n = us.size();
    size_t count = 0;
    size_t i = 0;
    const int* base = state.data();
    const __m256i zero = _mm256_setzero_si256();
    const __m256i one = _mm256_set1_epi32(1);
    for (; i + 8 <= n; i += 8) {
        const __m256i iu = _mm256_loadu_si256((const __m256i*)(us.data() + i));
        const __m256i iv = _mm256_loadu_si256((const __m256i*)(vs.data() + i));
        const __m256i su = _mm256_i32gather_epi32(base, iu, 4);
        const __m256i sv = _mm256_i32gather_epi32(base, iv, 4);
        __m256i hit;
        switch (pred) {
            case EdgePred::BothIn:
                hit = _mm256_cmpeq_epi32(_mm256_and_si256(su, sv), one);
                break;
            case EdgePred::NeitherIn:
                hit = _mm256_cmpeq_epi32(_mm256_or_si256(su, sv), zero);
                break;
            default:
                hit = _mm256_cmpeq_epi32(_mm256_xor_si256(su, sv), one);
                break;
        }
        count += (size_t)__builtin_popcount((unsigned)_mm256_movemask_ps(_mm256_castsi256_ps(hit)));
    }
    if (i < n)
        count += scalar::count_edges(us.subspan(i), vs.subspan(i), state, pred);
    return count;
}

}  // namespace nfpt::kernels::avx2
