#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hedonica/families.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

// Failure evidence: the agent and the coalition(s) exhibiting the violation.
struct PropertyWitness {
    Agent agent = -1;
    std::vector<Coalition> coalitions;
    std::string note;
};

struct PropertyReport {
    std::string property;
    bool holds = true;
    std::optional<PropertyWitness> witness;
};

enum class ToxicityFlavor { Strict, Plain, Weak };

const char* to_string(ToxicityFlavor f);

// ⟦k,l⟧ pairs: coalitions with exactly k friends and at least l enemies
// of the evaluating agent are "bad".
struct ToxicitySpec {
    ToxicityFlavor flavor = ToxicityFlavor::Strict;
    std::vector<std::pair<int, int>> pairs;
};

// Largest n for which coalition scans are exhaustive.
inline constexpr int kCoalitionScanCap = 12;

PropertyReport check_consistency_on_pairs(const OrderingProfile& profile,
                                          const PreferenceOracle& oracle);

// Exhaustive up to kCoalitionScanCap; above the cap a sampling budget
// (coalitions per agent) must be supplied.
PropertyReport check_toxicity(const OrderingProfile& profile, const PreferenceOracle& oracle,
                              const ToxicitySpec& spec,
                              std::optional<int> sample_budget = std::nullopt,
                              unsigned seed = 1);

PropertyReport check_triangle_appreciating(const OrderingProfile& profile,
                                           const PreferenceOracle& oracle, int closeness = 2);

PropertyReport check_monotone_on_triangles(const OrderingProfile& profile,
                                           const PreferenceOracle& oracle);

PropertyReport check_intolerance_in_triangles(const OrderingProfile& profile,
                                              const PreferenceOracle& oracle);

// Shape of a randomly sampled ordering profile.
struct ProfileShape {
    int max_friends = 3;
    bool strict = false;
    bool mutual = true;
    bool bipartite = false;  // bipartite implies directed (possibly one-sided) friendships
};

OrderingProfile random_profile(int n, const ProfileShape& shape, std::mt19937& rng);

// The preference-property bundles the hardness theorems demand, together
// with the profile shape they quantify over.
enum class TheoremContract { T1, T1SNS, T2B, T2NB, T3, T3SNS, T3SSNS };

const char* to_string(TheoremContract t);
std::optional<TheoremContract> theorem_from_string(const std::string& name);

ProfileShape contract_profile_shape(TheoremContract t);

// Runs the contract's property set on one game instance.
std::vector<PropertyReport> check_contract(const GameInstance& game, TheoremContract t);

struct ContractReport {
    std::vector<PropertyReport> reports;  // aggregated over all sampled profiles
    bool all_hold = true;
    int profiles_checked = 0;
};

ContractReport verify_family_contract(FamilyTag family, FamilyParams params, TheoremContract t,
                                      int n, int seeds, unsigned base_seed = 1);

}  // namespace hedonica
