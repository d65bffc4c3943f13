#include "hedonica/types.hpp"

namespace hedonica {

std::optional<std::string> validate_partition(const Partition& p, int n) {
    std::vector<int> seen(n, 0);
    for (const auto& block : p.blocks) {
        if (block.empty()) return std::string("empty block");
        for (Agent a : block) {
            if (a < 0 || a >= n)
                return "agent " + std::to_string(a) + " out of range";
            if (seen[a]++) return "agent " + std::to_string(a) + " duplicated";
        }
    }
    for (Agent a = 0; a < n; ++a)
        if (!seen[a]) return "agent " + std::to_string(a) + " missing";
    return std::nullopt;
}

OrderingProfile OrderingProfile::make(int n,
                                      std::vector<std::vector<std::vector<Agent>>> ranking) {
    if (n < 0) throw std::invalid_argument("negative agent count");
    if (static_cast<int>(ranking.size()) != n)
        throw std::invalid_argument("ranking size does not match agent count");

    OrderingProfile p;
    p.n = n;
    p.ranking = std::move(ranking);
    p.friends.assign(n, {});
    p.class_of.assign(n, std::vector<int>(n, -1));
    p.num_classes.assign(n, 0);

    for (Agent i = 0; i < n; ++i) {
        auto& classes = p.ranking[i];
        p.num_classes[i] = static_cast<int>(classes.size());
        for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
            auto& cls = classes[c];
            if (cls.empty())
                throw std::invalid_argument("empty equivalence class in ranking of agent " +
                                            std::to_string(i));
            std::sort(cls.begin(), cls.end());
            for (Agent j : cls) {
                if (j < 0 || j >= n)
                    throw std::invalid_argument("ranked agent out of range in ranking of agent " +
                                                std::to_string(i));
                if (j == i)
                    throw std::invalid_argument("agent " + std::to_string(i) +
                                                " appears in its own ranking");
                if (p.class_of[i][j] >= 0)
                    throw std::invalid_argument("agent " + std::to_string(j) +
                                                " appears twice in ranking of agent " +
                                                std::to_string(i));
                p.class_of[i][j] = c;
                p.friends[i].push_back(j);
            }
        }
        std::sort(p.friends[i].begin(), p.friends[i].end());
    }
    return p;
}

bool OrderingProfile::is_strict() const {
    for (const auto& classes : ranking)
        for (const auto& cls : classes)
            if (cls.size() > 1) return false;
    return true;
}

bool OrderingProfile::is_mutual() const {
    for (Agent i = 0; i < n; ++i)
        for (Agent j : friends[i])
            if (!is_friend(j, i)) return false;
    return true;
}

}  // namespace hedonica
