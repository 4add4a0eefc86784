#include "nfpt/kernels.hpp"

namespace nfpt::kernels::scalar {

void project_keys(std::span<const uint32_t> states, uint32_t mask, std::span<uint32_t> keys) {
    for (size_t i = 0; i < states.size(); ++i) {
        uint32_t s = states[i];
        uint32_t m = mask;
        uint32_t key = 0;
        int out = 0;
        while (m) {
            const uint32_t low = m & (~m + 1u);
            if (s & low) key |= 1u << out;
            ++out;
            m ^= low;
        }
        keys[i] = key;
    }
}

void gather_add(std::span<int64_t> acc, std::span<const int64_t> table,
                std::span<const uint32_t> keys) {
    for (size_t i = 0; i < keys.size(); ++i) acc[i] += table[keys[i]];
}

std::pair<int64_t, size_t> reduce_best(std::span<const int64_t> vals, bool maximize) {
    int64_t best = vals[0];
    size_t arg = 0;
    if (maximize) {
        for (size_t i = 1; i < vals.size(); ++i)
            if (vals[i] > best) {
                best = vals[i];
                arg = i;
            }
    } else {
        for (size_t i = 1; i < vals.size(); ++i)
            if (vals[i] < best) {
                best = vals[i];
                arg = i;
            }
    }
    return {best, arg};
}

size_t count_edges(std::span<const uint32_t> us, std::span<const uint32_t> vs,
                   std::span<const int32_t> state, EdgePred pred) {
    size_t count = 0;
    switch (pred) {
        case EdgePred::BothIn:
            for (size_t i = 0; i < us.size(); ++i) count += (state[us[i]] & state[vs[i]]) != 0;
            break;
        case EdgePred::NeitherIn:
            for (size_t i = 0; i < us.size(); ++i) count += (state[us[i]] | state[vs[i]]) == 0;
            break;
        case EdgePred::Differ:
            for (size_t i = 0; i < us.size(); ++i) count += (state[us[i]] ^ state[vs[i]]) != 0;
            break;
    }
    return count;
}

}  // namespace nfpt::kernels::scalar
