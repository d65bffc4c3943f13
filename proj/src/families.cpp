#include "hedonica/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace hedonica {

const char* to_string(FamilyTag f) {
    switch (f) {
        case FamilyTag::IRCL: return "ircl";
        case FamilyTag::StableRoommates: return "sr";
        case FamilyTag::WGame: return "wgame";
        case FamilyTag::WBGame: return "wbgame";
        case FamilyTag::AdditivelySeparable: return "as";
        case FamilyTag::CoalitionNet: return "hcnet";
        case FamilyTag::FractionalHedonic: return "fhg";
        case FamilyTag::SocialFractionalHedonic: return "socialfhg";
        case FamilyTag::Median: return "median";
        case FamilyTag::Midrange: return "midrange";
        case FamilyTag::LApproval: return "lapproval";
    }
    return "?";
}

std::optional<FamilyTag> family_from_string(const std::string& name) {
    static const std::vector<FamilyTag> all = {
        FamilyTag::IRCL,        FamilyTag::StableRoommates,
        FamilyTag::WGame,       FamilyTag::WBGame,
        FamilyTag::AdditivelySeparable, FamilyTag::CoalitionNet,
        FamilyTag::FractionalHedonic,   FamilyTag::SocialFractionalHedonic,
        FamilyTag::Median,      FamilyTag::Midrange,
        FamilyTag::LApproval,
    };
    for (FamilyTag f : all)
        if (name == to_string(f)) return f;
    return std::nullopt;
}

bool is_cardinal(FamilyTag f) {
    switch (f) {
        case FamilyTag::IRCL:
        case FamilyTag::StableRoommates:
        case FamilyTag::WGame:
        case FamilyTag::WBGame:
            return false;
        default:
            return true;
    }
}

UtilityAssignment canonical_utilities(const OrderingProfile& profile, long long a, long long b) {
    if (b < 1) throw std::invalid_argument("worst-friend value b must be >= 1");
    UtilityAssignment u;
    u.a = a;
    u.b = b;
    u.values.assign(profile.n, std::vector<long long>(profile.n, a));
    for (Agent i = 0; i < profile.n; ++i) {
        u.values[i][i] = 0;
        int k = profile.num_classes[i];
        for (int c = 0; c < k; ++c)
            for (Agent j : profile.ranking[i][c]) u.values[i][j] = b + (k - 1 - c);
    }
    return u;
}

Comparison compare(const PrefValue& x, const PrefValue& y) {
    // Denominators are positive and small; products fit comfortably.
    long long lhs = x.num * y.den;
    long long rhs = y.num * x.den;
    if (lhs != rhs) return lhs < rhs ? Comparison::Less : Comparison::Greater;
    if (x.tie != y.tie) return x.tie < y.tie ? Comparison::Less : Comparison::Greater;
    return Comparison::Equal;
}

std::vector<CoalitionNetRule> build_hcnet(const OrderingProfile& profile, Agent i,
                                          const UtilityAssignment& utilities) {
    if (profile.friends[i].size() > 4)
        throw std::invalid_argument("coalition net requires at most 4 friends per agent");
    std::vector<CoalitionNetRule> rules;
    for (Agent j : profile.friends[i]) rules.push_back({{j}, utilities.values[i][j]});
    std::vector<Agent> enemies;
    for (Agent j = 0; j < profile.n; ++j)
        if (profile.is_enemy(i, j)) enemies.push_back(j);
    if (!enemies.empty()) rules.push_back({std::move(enemies), utilities.a});
    return rules;
}

long long evaluate_hcnet(const std::vector<CoalitionNetRule>& rules, const Coalition& s) {
    long long total = 0;
    for (const auto& rule : rules)
        for (Agent atom : rule.atoms)
            if (contains(s, atom)) {
                total += rule.weight;
                break;
            }
    return total;
}

IrclList build_ircl_list(const OrderingProfile& profile, Agent i, bool with_triangles) {
    IrclList out;
    int next_rank = 0;
    if (with_triangles) {
        if (!profile.is_mutual())
            throw std::invalid_argument("IRCL lists require a mutual profile");
        // Each unordered friend pair once, better (or earlier-listed tied)
        // partner first.
        std::vector<std::pair<Agent, Agent>> pairs;
        for (Agent j : profile.friends[i])
            for (Agent k : profile.friends[i]) {
                if (j == k) continue;
                int lj = profile.level(i, j), lk = profile.level(i, k);
                if (lj > lk || (lj == lk && j < k)) pairs.emplace_back(j, k);
            }
        std::stable_sort(pairs.begin(), pairs.end(),
                         [&](const auto& p, const auto& q) {
                             int a = profile.class_of[i][p.first], b = profile.class_of[i][p.second];
                             int c = profile.class_of[i][q.first], d = profile.class_of[i][q.second];
                             return std::tie(a, b, p.first, p.second) <
                                    std::tie(c, d, q.first, q.second);
                         });
        for (const auto& [j, k] : pairs) {
            out.coalitions.push_back(make_coalition({i, j, k}));
            out.rank.push_back(next_rank++);  // triangles are strictly separated
        }
    }
    for (int c = 0; c < profile.num_classes[i]; ++c) {
        for (Agent j : profile.ranking[i][c]) {
            out.coalitions.push_back(make_coalition({i, j}));
            out.rank.push_back(next_rank);
        }
        ++next_rank;
    }
    out.coalitions.push_back({i});
    out.rank.push_back(next_rank);
    return out;
}

GameInstance::GameInstance(OrderingProfile profile, FamilyTag family, FamilyParams params)
    : profile_(std::move(profile)), family_(family), params_(params) {
    int n = profile_.n;
    if (family_ == FamilyTag::LApproval && params_.l < 4)
        throw std::invalid_argument("l-approval requires l >= 4");
    if (family_ == FamilyTag::CoalitionNet)
        for (Agent i = 0; i < n; ++i)
            if (profile_.friends[i].size() > 4)
                throw std::invalid_argument("coalition net requires at most 4 friends per agent");

    if (is_cardinal(family_)) {
        long long nn = n;
        long long a = 0, b = 1;
        switch (family_) {
            case FamilyTag::AdditivelySeparable:
            case FamilyTag::CoalitionNet:
                a = -(nn * nn + 2 * nn), b = 4;
                break;
            case FamilyTag::FractionalHedonic:
                a = -(nn * nn + 5 * nn), b = 7;
                break;
            case FamilyTag::SocialFractionalHedonic:
                a = 0, b = 7 * nn;
                break;
            case FamilyTag::Median:
                a = 0, b = 5;
                break;
            case FamilyTag::Midrange:
                a = -3 * nn, b = 1;
                break;
            case FamilyTag::LApproval:
                a = -6 * static_cast<long long>(params_.l) * nn, b = 4;
                break;
            default:
                break;
        }
        if (params_.a_override) a = *params_.a_override;
        if (params_.b_override) b = *params_.b_override;
        if (b < 1) b = 1;  // degenerate n; keep the invariant
        utilities_ = canonical_utilities(profile_, a, b);
    }

    if (family_ == FamilyTag::IRCL || family_ == FamilyTag::StableRoommates) {
        bool triangles = family_ == FamilyTag::IRCL;
        list_ranks_.resize(n);
        for (Agent i = 0; i < n; ++i) {
            IrclList list = build_ircl_list(profile_, i, triangles);
            auto& ranks = list_ranks_[i];
            for (size_t k = 0; k < list.coalitions.size(); ++k) {
                const Coalition& c = list.coalitions[k];
                if (c.size() == 3) {
                    std::vector<Agent> others;
                    for (Agent a : c)
                        if (a != i) others.push_back(a);
                    ranks.triangle[{others[0], others[1]}] = list.rank[k];
                } else if (c.size() == 2) {
                    ranks.pair[c[0] == i ? c[1] : c[0]] = list.rank[k];
                } else {
                    ranks.singleton = list.rank[k];
                }
            }
            ranks.unlisted = ranks.singleton + 1;
        }
    }
}

const UtilityAssignment& GameInstance::utilities() const {
    if (!utilities_) throw std::logic_error("ordinal family has no utility assignment");
    return *utilities_;
}

PrefValue GameInstance::shape_key(Agent i, const std::vector<Agent>& friends_in,
                                  int enemy_count) const {
    const int size = 1 + static_cast<int>(friends_in.size()) + enemy_count;
    switch (family_) {
        case FamilyTag::WGame:
        case FamilyTag::WBGame: {
            int worst, best;
            if (friends_in.empty() && enemy_count == 0) {
                worst = best = 0;  // the singleton's member is i itself
            } else {
                worst = enemy_count > 0 ? -1 : profile_.num_classes[i] + 1;
                best = -1;
                for (Agent j : friends_in) {
                    int lvl = profile_.level(i, j);
                    worst = std::min(worst, lvl);
                    best = std::max(best, lvl);
                }
                if (friends_in.empty()) best = -1;
            }
            PrefValue key{worst, 1, 0};
            if (family_ == FamilyTag::WBGame) key.tie = best;
            return key;
        }
        case FamilyTag::IRCL:
        case FamilyTag::StableRoommates: {
            const auto& ranks = list_ranks_[i];
            int rank = ranks.unlisted;
            if (enemy_count == 0) {
                if (friends_in.empty()) {
                    rank = ranks.singleton;
                } else if (friends_in.size() == 1) {
                    rank = ranks.pair.at(friends_in[0]);
                } else if (friends_in.size() == 2 && family_ == FamilyTag::IRCL) {
                    Agent a = std::min(friends_in[0], friends_in[1]);
                    Agent b = std::max(friends_in[0], friends_in[1]);
                    rank = ranks.triangle.at({a, b});
                }
            }
            return PrefValue{-rank, 1, 0};
        }
        default:
            break;
    }

    const auto& u = *utilities_;
    std::vector<long long> vals;
    vals.reserve(friends_in.size());
    long long sum = 0;
    for (Agent j : friends_in) {
        long long v = u.values[i][j];
        vals.push_back(v);
        sum += v;
    }
    switch (family_) {
        case FamilyTag::AdditivelySeparable:
            return PrefValue{sum + u.a * enemy_count, 1, 0};
        case FamilyTag::CoalitionNet:
            // One disjunctive enemy rule: fires at most once.
            return PrefValue{sum + (enemy_count > 0 ? u.a : 0), 1, 0};
        case FamilyTag::FractionalHedonic:
        case FamilyTag::SocialFractionalHedonic:
            return PrefValue{sum + u.a * enemy_count, size, 0};
        case FamilyTag::Median: {
            // Members' values including self at 0.
            std::vector<long long> all = vals;
            all.push_back(0);
            all.insert(all.end(), enemy_count, u.a);
            std::sort(all.begin(), all.end());
            size_t m = all.size();
            if (m % 2 == 1) return PrefValue{all[m / 2], 1, 0};
            return PrefValue{all[m / 2 - 1] + all[m / 2], 2, 0};
        }
        case FamilyTag::Midrange: {
            if (size == 1) return PrefValue{0, 1, 0};
            long long best = vals.empty() ? u.a : *std::max_element(vals.begin(), vals.end());
            long long worst = vals.empty() ? u.a : *std::min_element(vals.begin(), vals.end());
            if (enemy_count > 0) {
                best = std::max(best, u.a);
                worst = std::min(worst, u.a);
            }
            return PrefValue{best + worst, 2, 0};
        }
        case FamilyTag::LApproval: {
            std::vector<long long> all = vals;
            all.insert(all.end(), enemy_count, u.a);
            std::sort(all.begin(), all.end(), std::greater<>());
            int take = std::min<int>(params_.l, static_cast<int>(all.size()));
            long long total = 0;
            for (int k = 0; k < take; ++k) total += all[k];
            return PrefValue{total, 1, 0};
        }
        default:
            throw std::logic_error("unhandled family");
    }
}

PrefValue GameInstance::pref_key(Agent i, const std::vector<Agent>& friends_in,
                                 int enemy_count) const {
    return shape_key(i, friends_in, enemy_count);
}

namespace {

void split_coalition(const OrderingProfile& profile, Agent i, const Coalition& s,
                     std::vector<Agent>& friends_in, int& enemy_count) {
    friends_in.clear();
    enemy_count = 0;
    bool found = false;
    for (Agent j : s) {
        if (j == i) {
            found = true;
        } else if (profile.is_friend(i, j)) {
            friends_in.push_back(j);
        } else {
            ++enemy_count;
        }
    }
    if (!found)
        throw std::invalid_argument("agent " + std::to_string(i) + " is not in the coalition");
}

}  // namespace

Rational GameInstance::evaluate(Agent i, const Coalition& s) const {
    if (!is_cardinal(family_))
        throw std::logic_error("evaluate is defined for cardinal families only");
    std::vector<Agent> friends_in;
    int enemy_count = 0;
    split_coalition(profile_, i, s, friends_in, enemy_count);
    PrefValue key = shape_key(i, friends_in, enemy_count);
    return Rational(key.num, key.den);
}

Comparison GameInstance::compare(Agent i, const Coalition& s, const Coalition& t) const {
    std::vector<Agent> fs, ft;
    int es = 0, et = 0;
    split_coalition(profile_, i, s, fs, es);
    split_coalition(profile_, i, t, ft, et);
    return hedonica::compare(shape_key(i, fs, es), shape_key(i, ft, et));
}

}  // namespace hedonica
