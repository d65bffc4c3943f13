#include "hedonica/properties.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hedonica {

const char* to_string(ToxicityFlavor f) {
    switch (f) {
        case ToxicityFlavor::Strict: return "strict";
        case ToxicityFlavor::Plain: return "plain";
        default: return "weak";
    }
}

namespace {

Coalition pair_or_singleton(Agent i, Agent j) {
    return i == j ? Coalition{i} : make_coalition({i, j});
}

std::string spec_name(const ToxicitySpec& spec) {
    std::ostringstream os;
    os << to_string(spec.flavor) << "-toxicity{";
    for (size_t k = 0; k < spec.pairs.size(); ++k) {
        if (k) os << ",";
        os << "(" << spec.pairs[k].first << "," << spec.pairs[k].second << ")";
    }
    os << "}";
    return os.str();
}

}  // namespace

PropertyReport check_consistency_on_pairs(const OrderingProfile& profile,
                                          const PreferenceOracle& oracle) {
    PropertyReport report{"consistency-on-pairs", true, std::nullopt};
    for (Agent i = 0; i < profile.n; ++i) {
        std::vector<Agent> pool = profile.friends[i];
        pool.push_back(i);
        for (Agent j : pool)
            for (Agent k : pool) {
                Comparison want = profile.compare_agents(i, j, k);
                Comparison got = oracle.compare(i, pair_or_singleton(i, j), pair_or_singleton(i, k));
                if (got != want) {
                    report.holds = false;
                    report.witness = PropertyWitness{
                        i,
                        {pair_or_singleton(i, j), pair_or_singleton(i, k)},
                        "pair order disagrees with partner order"};
                    return report;
                }
            }
    }
    return report;
}

PropertyReport check_toxicity(const OrderingProfile& profile, const PreferenceOracle& oracle,
                              const ToxicitySpec& spec, std::optional<int> sample_budget,
                              unsigned seed) {
    PropertyReport report{spec_name(spec), true, std::nullopt};
    const int n = profile.n;
    if (n > kCoalitionScanCap && !sample_budget)
        throw std::invalid_argument("agent count above exhaustive cap; supply a sample budget");

    std::mt19937 rng(seed);
    for (Agent i = 0; i < n; ++i) {
        std::vector<Agent> others;
        for (Agent j = 0; j < n; ++j)
            if (j != i) others.push_back(j);

        auto check_subset = [&](const std::vector<Agent>& subset) -> bool {
            int friend_count = 0, enemy_count = 0;
            for (Agent j : subset)
                profile.is_friend(i, j) ? ++friend_count : ++enemy_count;
            bool applicable = false;
            for (auto [k, l] : spec.pairs)
                if (friend_count == k && enemy_count >= l) applicable = true;
            if (!applicable) return true;

            Coalition s = subset;
            s.push_back(i);
            std::sort(s.begin(), s.end());
            switch (spec.flavor) {
                case ToxicityFlavor::Strict:
                    if (oracle.compare(i, s, {i}) != Comparison::Less) {
                        report.witness = PropertyWitness{i, {s}, "not strictly below singleton"};
                        return false;
                    }
                    break;
                case ToxicityFlavor::Plain:
                    if (oracle.compare(i, s, {i}) == Comparison::Greater) {
                        report.witness = PropertyWitness{i, {s}, "above singleton"};
                        return false;
                    }
                    break;
                case ToxicityFlavor::Weak:
                    for (Agent f : profile.friends[i]) {
                        if (oracle.compare(i, make_coalition({i, f}), s) != Comparison::Greater) {
                            report.witness =
                                PropertyWitness{i, {make_coalition({i, f}), s},
                                                "friend pair does not beat the coalition"};
                            return false;
                        }
                    }
                    break;
            }
            return true;
        };

        if (n <= kCoalitionScanCap) {
            const int m = static_cast<int>(others.size());
            for (unsigned mask = 1; mask < (1u << m); ++mask) {
                std::vector<Agent> subset;
                for (int b = 0; b < m; ++b)
                    if (mask & (1u << b)) subset.push_back(others[b]);
                if (!check_subset(subset)) {
                    report.holds = false;
                    return report;
                }
            }
        } else {
            for (int t = 0; t < *sample_budget; ++t) {
                std::shuffle(others.begin(), others.end(), rng);
                int size = std::uniform_int_distribution<int>(1, std::min<int>(11, n - 1))(rng);
                std::vector<Agent> subset(others.begin(), others.begin() + size);
                if (!check_subset(subset)) {
                    report.holds = false;
                    return report;
                }
            }
        }
    }
    return report;
}

PropertyReport check_triangle_appreciating(const OrderingProfile& profile,
                                           const PreferenceOracle& oracle, int closeness) {
    PropertyReport report{"triangle-appreciating", true, std::nullopt};
    for (Agent i = 0; i < profile.n; ++i)
        for (Agent j : profile.friends[i])
            for (Agent k : profile.friends[i]) {
                if (j == k) continue;
                if (profile.level(i, j) < profile.level(i, k)) continue;  // want j >=_i k
                int dist = std::abs(profile.class_of[i][j] - profile.class_of[i][k]);
                if (dist > closeness) continue;
                Coalition triangle = make_coalition({i, j, k});
                Coalition pair = make_coalition({i, j});
                if (oracle.compare(i, triangle, pair) != Comparison::Greater) {
                    report.holds = false;
                    report.witness =
                        PropertyWitness{i, {triangle, pair}, "triangle does not beat pair"};
                    return report;
                }
            }
    return report;
}

PropertyReport check_monotone_on_triangles(const OrderingProfile& profile,
                                           const PreferenceOracle& oracle) {
    PropertyReport report{"monotone-on-triangles", true, std::nullopt};
    for (Agent i = 0; i < profile.n; ++i) {
        const auto& fr = profile.friends[i];
        for (Agent j : fr)
            for (Agent j2 : fr)
                for (Agent k : fr)
                    for (Agent k2 : fr) {
                        // j >=_i j' >_i k >_i k'
                        if (profile.level(i, j) < profile.level(i, j2)) continue;
                        if (profile.level(i, j2) <= profile.level(i, k)) continue;
                        if (profile.level(i, k) <= profile.level(i, k2)) continue;
                        if (j == k) continue;
                        Coalition s = make_coalition({i, j, k});
                        Coalition t = make_coalition({i, j2, k2});
                        if (oracle.compare(i, s, t) != Comparison::Greater) {
                            report.holds = false;
                            report.witness = PropertyWitness{
                                i, {s, t}, "better friend pair gives no better triangle"};
                            return report;
                        }
                    }
    }
    return report;
}

PropertyReport check_intolerance_in_triangles(const OrderingProfile& profile,
                                              const PreferenceOracle& oracle) {
    PropertyReport report{"intolerance-in-triangles", true, std::nullopt};
    for (Agent i = 0; i < profile.n; ++i)
        for (Agent j : profile.friends[i])
            for (Agent k : profile.friends[i]) {
                if (j >= k) continue;
                if (!(profile.is_friend(j, k) && profile.is_friend(k, j))) continue;
                for (Agent e = 0; e < profile.n; ++e) {
                    if (!profile.is_enemy(i, e)) continue;
                    Coalition triangle = make_coalition({i, j, k});
                    Coalition with_enemy = make_coalition({i, j, k, e});
                    if (oracle.compare(i, triangle, with_enemy) != Comparison::Greater) {
                        report.holds = false;
                        report.witness = PropertyWitness{
                            i, {triangle, with_enemy}, "enemy join does not hurt the triangle"};
                        return report;
                    }
                }
            }
    return report;
}

OrderingProfile random_profile(int n, const ProfileShape& shape, std::mt19937& rng) {
    std::vector<std::vector<std::vector<Agent>>> ranking(n);

    auto order_into_classes = [&](std::vector<Agent> agents) {
        std::shuffle(agents.begin(), agents.end(), rng);
        std::vector<std::vector<Agent>> classes;
        std::bernoulli_distribution new_class(0.6);
        for (Agent a : agents) {
            if (shape.strict || classes.empty() || new_class(rng))
                classes.push_back({a});
            else
                classes.back().push_back(a);
        }
        return classes;
    };

    if (shape.bipartite) {
        // Directed friendships across a random bipartition.
        std::vector<int> side(n);
        for (int i = 0; i < n; ++i) side[i] = std::uniform_int_distribution<int>(0, 1)(rng);
        if (n >= 2) {
            side[0] = 0;
            side[1] = 1;  // keep both sides nonempty
        }
        for (Agent i = 0; i < n; ++i) {
            std::vector<Agent> pool;
            for (Agent j = 0; j < n; ++j)
                if (side[j] != side[i]) pool.push_back(j);
            std::shuffle(pool.begin(), pool.end(), rng);
            int count = std::uniform_int_distribution<int>(
                0, std::min<int>(shape.max_friends, static_cast<int>(pool.size())))(rng);
            pool.resize(count);
            ranking[i] = order_into_classes(pool);
        }
        return OrderingProfile::make(n, std::move(ranking));
    }

    // Mutual: random graph under the degree cap.
    std::vector<std::pair<Agent, Agent>> candidates;
    for (Agent i = 0; i < n; ++i)
        for (Agent j = i + 1; j < n; ++j) candidates.emplace_back(i, j);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    double density = std::uniform_real_distribution<double>(0.3, 0.9)(rng);
    std::bernoulli_distribution keep(density);
    std::vector<int> degree(n, 0);
    std::vector<std::vector<Agent>> neighbours(n);
    for (auto [i, j] : candidates) {
        if (degree[i] >= shape.max_friends || degree[j] >= shape.max_friends) continue;
        if (!keep(rng)) continue;
        ++degree[i];
        ++degree[j];
        neighbours[i].push_back(j);
        neighbours[j].push_back(i);
    }
    for (Agent i = 0; i < n; ++i) ranking[i] = order_into_classes(neighbours[i]);
    return OrderingProfile::make(n, std::move(ranking));
}

const char* to_string(TheoremContract t) {
    switch (t) {
        case TheoremContract::T1: return "t1";
        case TheoremContract::T1SNS: return "t1sns";
        case TheoremContract::T2B: return "t2b";
        case TheoremContract::T2NB: return "t2nb";
        case TheoremContract::T3: return "t3";
        case TheoremContract::T3SNS: return "t3sns";
        default: return "t3ssns";
    }
}

std::optional<TheoremContract> theorem_from_string(const std::string& name) {
    for (TheoremContract t :
         {TheoremContract::T1, TheoremContract::T1SNS, TheoremContract::T2B,
          TheoremContract::T2NB, TheoremContract::T3, TheoremContract::T3SNS,
          TheoremContract::T3SSNS})
        if (name == to_string(t)) return t;
    return std::nullopt;
}

ProfileShape contract_profile_shape(TheoremContract t) {
    switch (t) {
        case TheoremContract::T1:
        case TheoremContract::T1SNS:
            return {3, false, true, false};
        case TheoremContract::T2B:
            return {3, true, false, true};
        case TheoremContract::T2NB:
            return {3, true, true, false};
        default:
            return {4, true, true, false};
    }
}

std::vector<PropertyReport> check_contract(const GameInstance& game, TheoremContract t) {
    const OrderingProfile& p = game.profile();
    std::vector<PropertyReport> out;
    out.push_back(check_consistency_on_pairs(p, game));
    auto tox = [&](ToxicityFlavor f, std::vector<std::pair<int, int>> pairs) {
        out.push_back(check_toxicity(p, game, ToxicitySpec{f, std::move(pairs)}));
    };
    switch (t) {
        case TheoremContract::T1:
            tox(ToxicityFlavor::Plain, {{0, 1}});
            tox(ToxicityFlavor::Weak, {{1, 1}, {2, 2}});
            break;
        case TheoremContract::T1SNS:
            tox(ToxicityFlavor::Plain, {{0, 1}, {1, 1}});
            tox(ToxicityFlavor::Weak, {{1, 1}, {2, 2}});
            break;
        case TheoremContract::T2B:
        case TheoremContract::T2NB:
            tox(ToxicityFlavor::Strict, {{0, 1}, {1, 1}, {2, 5}});
            break;
        case TheoremContract::T3:
            tox(ToxicityFlavor::Plain, {{0, 1}});
            tox(ToxicityFlavor::Weak, {{1, 1}, {2, 2}, {3, 3}});
            out.push_back(check_intolerance_in_triangles(p, game));
            out.push_back(check_triangle_appreciating(p, game));
            out.push_back(check_monotone_on_triangles(p, game));
            break;
        case TheoremContract::T3SNS:
            tox(ToxicityFlavor::Plain, {{0, 1}, {1, 1}});
            tox(ToxicityFlavor::Weak, {{1, 1}, {2, 1}, {2, 2}, {3, 3}});
            out.push_back(check_intolerance_in_triangles(p, game));
            out.push_back(check_triangle_appreciating(p, game));
            out.push_back(check_monotone_on_triangles(p, game));
            break;
        case TheoremContract::T3SSNS:
            tox(ToxicityFlavor::Strict, {{0, 1}, {1, 1}});
            tox(ToxicityFlavor::Plain, {{0, 1}});
            tox(ToxicityFlavor::Weak, {{1, 1}, {2, 1}, {2, 2}, {3, 3}});
            out.push_back(check_intolerance_in_triangles(p, game));
            out.push_back(check_triangle_appreciating(p, game));
            out.push_back(check_monotone_on_triangles(p, game));
            break;
    }
    return out;
}

ContractReport verify_family_contract(FamilyTag family, FamilyParams params, TheoremContract t,
                                      int n, int seeds, unsigned base_seed) {
    ContractReport out;
    std::map<std::string, size_t> index;
    ProfileShape shape = contract_profile_shape(t);
    for (int s = 0; s < seeds; ++s) {
        std::mt19937 rng(base_seed + static_cast<unsigned>(s));
        OrderingProfile profile = random_profile(n, shape, rng);
        GameInstance game(std::move(profile), family, params);
        for (PropertyReport& r : check_contract(game, t)) {
            auto [it, inserted] = index.try_emplace(r.property, out.reports.size());
            if (inserted) {
                out.reports.push_back(std::move(r));
            } else if (!r.holds && out.reports[it->second].holds) {
                out.reports[it->second] = std::move(r);
            }
        }
        ++out.profiles_checked;
    }
    for (const auto& r : out.reports) out.all_hold = out.all_hold && r.holds;
    return out;
}

}  // namespace hedonica
