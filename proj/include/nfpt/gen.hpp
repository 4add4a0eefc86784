#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nfpt/graph.hpp"

namespace nfpt {

enum class GraphFamily { Er, Ba, Ws, Rr, Hk };

const char* family_name(GraphFamily f);
std::optional<GraphFamily> parse_family(std::string_view s);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Random-graph instance spec. n is drawn uniformly from [n_min, n_max]; only
// the fields of the chosen family are read. HK draws m uniformly from
// [hk_m_min, hk_m_max] per instance.
struct GenSpec {
    GraphFamily family = GraphFamily::Er;
    int n_min = 0, n_max = 0;
    double er_p = 0.0;
    int ba_m = 0;
    int ws_k = 0;
    double ws_p = 0.0;
    int rr_d = 0;
    int hk_m_min = 0, hk_m_max = 0;
    double hk_p = 0.0;
    uint64_t seed = 0;
};

// Throws ConfigError on parameters infeasible for the family (e.g. WS k >= n).
void validate_spec(const GenSpec& spec);

// Deterministic for a fixed spec (seed included). The produced graph is
// normalized, so isolated vertices are gone and ids are consecutive.
Graph generate(const GenSpec& spec);

// Named dataset profiles: the paper-scale configurations (er_ss .. hk_ld) and
// a desk-scale family set (desk_er .. desk_hk). Seeds are left to the caller.
std::optional<GenSpec> profile_spec(std::string_view name);
std::vector<std::string> profile_names();

}  // namespace nfpt
