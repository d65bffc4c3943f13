#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hedonica/types.hpp"

namespace hedonica {

using Rational = boost::rational<long long>;

enum class FamilyTag {
    IRCL,
    StableRoommates,
    WGame,
    WBGame,
    AdditivelySeparable,
    CoalitionNet,
    FractionalHedonic,
    SocialFractionalHedonic,
    Median,
    Midrange,
    LApproval,
};

const char* to_string(FamilyTag f);
std::optional<FamilyTag> family_from_string(const std::string& name);
bool is_cardinal(FamilyTag f);

struct FamilyParams {
    int l = 4;  // ℓ-approval only; must be >= 4
    std::optional<long long> a_override;
    std::optional<long long> b_override;
};

// ⟦a,b⟧-utilities: enemies are worth a, the worst friend class is worth b,
// each class above is worth one more, self is worth 0.
struct UtilityAssignment {
    long long a = 0;
    long long b = 0;
    std::vector<std::vector<long long>> values;  // values[i][j]
};

UtilityAssignment canonical_utilities(const OrderingProfile& profile, long long a, long long b);

// Totally ordered preference key, comparable within one agent's view only.
// Primary component is a rational; `tie` breaks exact ties lexicographically
// (used by worst-then-best games).
struct PrefValue {
    long long num = 0;
    long long den = 1;
    long long tie = 0;
};

Comparison compare(const PrefValue& x, const PrefValue& y);

// Abstract coalition-preference oracle: how agent i ranks coalitions
// containing it.
class PreferenceOracle {
public:
    virtual ~PreferenceOracle() = default;
    virtual Comparison compare(Agent i, const Coalition& s, const Coalition& t) const = 0;
};

// One weighted rule of a hedonic coalition net: fires when any listed
// atom (agent) is present in the coalition.
struct CoalitionNetRule {
    std::vector<Agent> atoms;
    long long weight = 0;
};

std::vector<CoalitionNetRule> build_hcnet(const OrderingProfile& profile, Agent i,
                                          const UtilityAssignment& utilities);
long long evaluate_hcnet(const std::vector<CoalitionNetRule>& rules, const Coalition& s);

// Output of the individually-rational-coalition-list algorithm for one
// agent: coalitions best first; equal rank values are indifferences.
struct IrclList {
    std::vector<Coalition> coalitions;
    std::vector<int> rank;
};

IrclList build_ircl_list(const OrderingProfile& profile, Agent i, bool with_triangles = true);

// An ordering profile plus a family tag: yields the coalition-preference
// oracle for each agent. Immutable after construction.
class GameInstance : public PreferenceOracle {
public:
    GameInstance(OrderingProfile profile, FamilyTag family, FamilyParams params = {});

    const OrderingProfile& profile() const { return profile_; }
    FamilyTag family() const { return family_; }
    const FamilyParams& params() const { return params_; }
    int n() const { return profile_.n; }

    // Cardinal families only.
    Rational evaluate(Agent i, const Coalition& s) const;

    Comparison compare(Agent i, const Coalition& s, const Coalition& t) const override;

    // Preference key of a coalition given only the friends of i it contains
    // and its enemy count. Valid because every family values all enemies
    // alike. friends_in must be a subset of F_i.
    PrefValue pref_key(Agent i, const std::vector<Agent>& friends_in, int enemy_count) const;

    // Canonical pairwise utilities (cardinal families only).
    const UtilityAssignment& utilities() const;
    long long value(Agent i, Agent j) const { return utilities().values[i][j]; }

private:
    PrefValue shape_key(Agent i, const std::vector<Agent>& friends_in, int enemy_count) const;

    OrderingProfile profile_;
    FamilyTag family_;
    FamilyParams params_;
    std::optional<UtilityAssignment> utilities_;

    // Coalition ranks for list-based families (IRCL, stable roommates).
    struct ListRanks {
        std::map<std::pair<Agent, Agent>, int> triangle;  // key: unordered friend pair
        std::map<Agent, int> pair;
        int singleton = 0;
        int unlisted = 0;
    };
    std::vector<ListRanks> list_ranks_;
};

}  // namespace hedonica
