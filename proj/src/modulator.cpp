#include "nfpt/modulator.hpp"

#include <algorithm>
#include <span>
#include <sstream>

namespace nfpt {

bool verify_modulator(const TreeDecomposition& td, const Modulator& mod) {
    for (const auto& bag : td.bags) {
        size_t residual = 0;
        for (int v : bag)
            if (!std::binary_search(mod.vertices.begin(), mod.vertices.end(), v)) ++residual;
        if ((int)residual > mod.eta + 1) return false;
    }
    return true;
}

Modulator modulator_greedy(const TreeDecomposition& td, int eta) {
    Modulator mod;
    mod.eta = eta;
    const int cap = eta + 1;

    std::vector<int> residual(td.num_bags());
    int max_vertex = -1;
    for (int b = 0; b < td.num_bags(); ++b) {
        residual[b] = (int)td.bags[b].size();
        for (int v : td.bags[b]) max_vertex = std::max(max_vertex, v);
    }

    std::vector<char> chosen(max_vertex + 1, 0);
    while (true) {
        std::vector<int> hits(max_vertex + 1, 0);
        bool violating = false;
        for (int b = 0; b < td.num_bags(); ++b) {
            if (residual[b] <= cap) continue;
            violating = true;
            for (int v : td.bags[b])
                if (!chosen[v]) ++hits[v];
        }
        if (!violating) break;
        int pick = -1;
        for (int v = 0; v <= max_vertex; ++v)
            if (!chosen[v] && hits[v] > 0 && (pick < 0 || hits[v] > hits[pick])) pick = v;
        chosen[pick] = 1;
        mod.vertices.push_back(pick);
        for (int b = 0; b < td.num_bags(); ++b)
            if (std::binary_search(td.bags[b].begin(), td.bags[b].end(), pick)) --residual[b];
    }
    std::sort(mod.vertices.begin(), mod.vertices.end());
    return mod;
}

namespace {

struct BnB {
    const std::vector<std::vector<int>>& bags;  // oversized bags only, as candidate indices
    std::vector<int> need;                      // per bag, removals still required
    std::vector<char> decided, taken;           // per candidate
    std::vector<int> bags_of_candidate_flat;
    std::vector<int> bags_of_candidate_off;
    long long budget, expanded = 0;
    int best_size;
    std::vector<char> best_taken;
    int taken_count = 0;
    bool truncated = false;

    BnB(const std::vector<std::vector<int>>& bags, std::vector<int> need, int ncand,
        long long budget, int incumbent)
        : bags(bags), need(std::move(need)), decided(ncand, 0), taken(ncand, 0),
          budget(budget), best_size(incumbent) {
        std::vector<std::vector<int>> per(ncand);
        for (int b = 0; b < (int)bags.size(); ++b)
            for (int c : bags[b]) per[c].push_back(b);
        bags_of_candidate_off.push_back(0);
        for (auto& v : per) {
            bags_of_candidate_flat.insert(bags_of_candidate_flat.end(), v.begin(), v.end());
            bags_of_candidate_off.push_back((int)bags_of_candidate_flat.size());
        }
    }

    std::span<const int> cand_bags(int c) const {
        return {bags_of_candidate_flat.data() + bags_of_candidate_off[c],
                bags_of_candidate_flat.data() + bags_of_candidate_off[c + 1]};
    }

    // Lower bound: total remaining need over a greedily chosen set of bags
    // that share no undecided candidates.
    int lower_bound(std::vector<int>& scratch_mark, int stamp) const {
        int lb = 0;
        for (int b = 0; b < (int)bags.size(); ++b) {
            if (need[b] <= 0) continue;
            bool disjoint = true;
            for (int c : bags[b])
                if (!decided[c] && scratch_mark[c] == stamp) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            lb += need[b];
            for (int c : bags[b])
                if (!decided[c]) scratch_mark[c] = stamp;
        }
        return lb;
    }

    bool feasible_counts() const {
        for (int b = 0; b < (int)bags.size(); ++b) {
            if (need[b] <= 0) continue;
            int avail = 0;
            for (int c : bags[b])
                if (!decided[c]) ++avail;
            if (avail < need[b]) return false;
        }
        return true;
    }

    void run() {
        std::vector<int> mark((int)decided.size(), -1);
        int stamp = 0;
        recurse(mark, stamp);
    }

    void recurse(std::vector<int>& mark, int& stamp) {
        if (++expanded > budget) {
            truncated = true;
            return;
        }
        if (taken_count >= best_size) return;
        bool any = false;
        for (int b = 0; b < (int)bags.size(); ++b)
            if (need[b] > 0) {
                any = true;
                break;
            }
        if (!any) {
            best_size = taken_count;
            best_taken = taken;
            return;
        }
        if (!feasible_counts()) return;
        if (taken_count + lower_bound(mark, ++stamp) >= best_size) return;

        // branch on the undecided candidate hitting the most violated bags
        int pick = -1, pick_hits = -1;
        for (int c = 0; c < (int)decided.size(); ++c) {
            if (decided[c]) continue;
            int hits = 0;
            for (int b : cand_bags(c))
                if (need[b] > 0) ++hits;
            if (hits > pick_hits) {
                pick_hits = hits;
                pick = c;
            }
        }
        if (pick < 0 || pick_hits == 0) return;

        // include
        decided[pick] = taken[pick] = 1;
        ++taken_count;
        for (int b : cand_bags(pick)) --need[b];
        recurse(mark, stamp);
        for (int b : cand_bags(pick)) ++need[b];
        --taken_count;
        taken[pick] = 0;

        // exclude
        recurse(mark, stamp);
        decided[pick] = 0;
    }
};

}  // namespace

ModulatorExactResult modulator_exact(const TreeDecomposition& td, int eta, long long node_budget) {
    ModulatorExactResult result;
    const int cap = eta + 1;

    // candidates: vertices of oversized bags
    std::vector<int> candidates;
    for (const auto& bag : td.bags)
        if ((int)bag.size() > cap) candidates.insert(candidates.end(), bag.begin(), bag.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    if (candidates.empty()) {
        result.modulator.eta = eta;
        return result;
    }

    std::vector<int> index_of;  // vertex id -> candidate index
    index_of.assign(candidates.back() + 1, -1);
    for (int i = 0; i < (int)candidates.size(); ++i) index_of[candidates[i]] = i;

    std::vector<std::vector<int>> cbags;
    std::vector<int> need;
    for (const auto& bag : td.bags) {
        if ((int)bag.size() <= cap) continue;
        std::vector<int> cs;
        cs.reserve(bag.size());
        for (int v : bag) cs.push_back(index_of[v]);
        cbags.push_back(std::move(cs));
        need.push_back((int)bag.size() - cap);
    }

    const Modulator greedy = modulator_greedy(td, eta);

    BnB bnb(cbags, std::move(need), (int)candidates.size(), node_budget,
            (int)greedy.vertices.size() + 1);
    // seed the incumbent with greedy so a budget blowout still returns something feasible
    bnb.best_taken.assign(candidates.size(), 0);
    for (int v : greedy.vertices)
        if (v < (int)index_of.size() && index_of[v] >= 0) bnb.best_taken[index_of[v]] = 1;
    bnb.best_size = (int)greedy.vertices.size();
    bnb.run();

    result.modulator.eta = eta;
    for (int i = 0; i < (int)candidates.size(); ++i)
        if (bnb.best_taken[i]) result.modulator.vertices.push_back(candidates[i]);
    result.optimal = !bnb.truncated;
    result.nodes_expanded = bnb.expanded;
    return result;
}

std::string to_line(const Modulator& mod) {
    std::ostringstream out;
    out << mod.eta;
    for (int v : mod.vertices) out << ' ' << v;
    return out.str();
}

Modulator modulator_from_line(const std::string& line) {
    std::istringstream in(line);
    Modulator mod;
    if (!(in >> mod.eta)) throw ParseError("bad modulator line");
    int v;
    while (in >> v) mod.vertices.push_back(v);
    std::sort(mod.vertices.begin(), mod.vertices.end());
    return mod;
}

}  // namespace nfpt
