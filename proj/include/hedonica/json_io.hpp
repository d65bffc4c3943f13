#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hedonica/families.hpp"
#include "hedonica/stability.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

// A game as stored on disk: orderings plus the family used to interpret
// them, with optional per-agent role labels.
struct GameDocument {
    OrderingProfile profile;
    std::vector<std::string> labels;  // empty strings where unlabelled
    FamilyTag family = FamilyTag::AdditivelySeparable;
    FamilyParams params;

    GameInstance instantiate() const { return GameInstance(profile, family, params); }
};

// Serialization is deterministic: keys sorted, two-space indent, one
// trailing newline. Parsers throw std::invalid_argument with a reason.
std::string game_to_json(const GameDocument& doc);
GameDocument game_from_json(const std::string& text);

std::string partition_to_json(const Partition& pi);
Partition partition_from_json(const std::string& text);

// Timing is deliberately left out so identical runs emit identical bytes.
std::string report_to_json(const StabilityReport& r);

// Graphviz view of the friendship structure: solid edges for mutual
// friendships, dashed arrows for one-sided ones.
std::string to_dot(const OrderingProfile& profile, const std::vector<std::string>& labels = {});

}  // namespace hedonica
