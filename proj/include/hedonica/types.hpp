#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hedonica {

using Agent = int;

enum class Comparison { Less, Equal, Greater };

inline Comparison flip(Comparison c) {
    switch (c) {
        case Comparison::Less: return Comparison::Greater;
        case Comparison::Greater: return Comparison::Less;
        default: return Comparison::Equal;
    }
}

inline const char* to_string(Comparison c) {
    switch (c) {
        case Comparison::Less: return "less";
        case Comparison::Greater: return "greater";
        default: return "equal";
    }
}

// A coalition is a sorted, duplicate-free, nonempty set of agents.
using Coalition = std::vector<Agent>;

inline Coalition make_coalition(std::initializer_list<Agent> agents) {
    Coalition c(agents);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

inline Coalition sorted_coalition(std::vector<Agent> agents) {
    std::sort(agents.begin(), agents.end());
    agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
    return agents;
}

inline bool contains(const Coalition& c, Agent a) {
    return std::binary_search(c.begin(), c.end(), a);
}

struct Partition {
    std::vector<Coalition> blocks;

    // block_of[a] = index of the block containing a, or -1.
    std::vector<int> block_of(int n) const {
        std::vector<int> res(n, -1);
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
            for (Agent a : blocks[b])
                if (a >= 0 && a < n) res[a] = b;
        return res;
    }

    const Coalition& block_containing(Agent a) const {
        for (const auto& b : blocks)
            if (contains(b, a)) return b;
        throw std::out_of_range("agent " + std::to_string(a) + " not in partition");
    }
};

// Returns nullopt if ok, otherwise a description of the violation.
std::optional<std::string> validate_partition(const Partition& p, int n);

// Per-agent weak order over its friends, given as equivalence classes
// (best class first). Everyone not mentioned is an enemy, ranked strictly
// below self; self is strictly below the worst friend.
struct OrderingProfile {
    int n = 0;
    // ranking[i] = classes of friends of i, best first; members sorted.
    std::vector<std::vector<std::vector<Agent>>> ranking;

    // Derived, filled by make():
    std::vector<std::vector<Agent>> friends;  // F_i, sorted
    std::vector<std::vector<int>> class_of;   // class index of j in i's ranking, -1 otherwise
    std::vector<int> num_classes;

    static OrderingProfile make(int n, std::vector<std::vector<std::vector<Agent>>> ranking);

    bool is_friend(Agent i, Agent j) const { return class_of[i][j] >= 0; }
    bool is_enemy(Agent i, Agent j) const { return i != j && class_of[i][j] < 0; }

    // Preference level of j in i's eyes: friends get num_classes..1
    // (best class highest), self gets 0, enemies -1 (all tied).
    int level(Agent i, Agent j) const {
        if (i == j) return 0;
        int c = class_of[i][j];
        return c < 0 ? -1 : num_classes[i] - c;
    }

    // j >=_i k restricted to F_i ∪ {i} (and enemies below).
    Comparison compare_agents(Agent i, Agent j, Agent k) const {
        int a = level(i, j), b = level(i, k);
        return a < b ? Comparison::Less : a > b ? Comparison::Greater : Comparison::Equal;
    }

    bool is_strict() const;
    bool is_mutual() const;
};

}  // namespace hedonica
