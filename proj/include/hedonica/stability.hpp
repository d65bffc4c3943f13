#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hedonica/families.hpp"
#include "hedonica/types.hpp"

namespace hedonica {

enum class StabilityConcept { CR, SCR, NS, IS, SNS, SSNS, SIS };

const char* to_string(StabilityConcept c);
std::optional<StabilityConcept> concept_from_string(const std::string& name);
bool is_group_concept(StabilityConcept c);

// Caps for exhaustive search.
inline constexpr int kBruteForceCap = 12;       // coalition scans, partition enumeration
inline constexpr int kGroupExhaustiveCap = 9;   // successor-partition enumeration

struct SearchBounds {
    int max_coalition_size = 7;  // blocking coalitions / new blocks
    int max_group = 4;           // deviating set H
};

// A deviating set together with the successor partition it induces.
struct Deviation {
    std::vector<Agent> deviators;
    Partition successor;
};

// A single agent moving to an existing block (or going solo).
struct SingleMove {
    Agent agent = -1;
    std::optional<int> target_block;  // nullopt: leave and stay alone
    Coalition new_coalition;
};

struct StabilityReport {
    StabilityConcept kind = StabilityConcept::CR;
    bool stable = false;
    bool exhaustive = false;
    SearchBounds bounds;
    std::optional<Coalition> blocking;
    std::optional<SingleMove> move;
    std::optional<Deviation> deviation;
    double elapsed_ms = 0;
};

// π →H π′: non-deviators' grouping among themselves is unchanged.
bool obtainable(const Partition& from, const std::vector<Agent>& deviators, const Partition& to);

// Core / strict-core blocking. scr=false: all members strictly prefer S;
// scr=true: all weakly, at least one strictly. Exhaustive when n is within
// the brute-force cap and max_size covers all sizes; bounded otherwise.
std::optional<Coalition> find_blocking_coalition(const GameInstance& game, const Partition& pi,
                                                bool scr, int max_size);

// NS / IS single-agent deviations; polynomial, any n.
std::optional<SingleMove> find_single_deviation(const GameInstance& game, const Partition& pi,
                                                StabilityConcept kind);

// SNS / SSNS / SIS group deviations. Exhaustive over successor partitions
// for n within the group cap; bounded search otherwise.
std::optional<Deviation> find_group_deviation(const GameInstance& game, const Partition& pi,
                                              StabilityConcept kind, SearchBounds bounds);

StabilityReport is_stable(const GameInstance& game, const Partition& pi, StabilityConcept c,
                          std::optional<SearchBounds> bounds = std::nullopt);

// Holds per-game caches (rank tables, successor-partition tables) so that
// checking many partitions of the same game amortises the preprocessing.
class StabilitySolver {
public:
    explicit StabilitySolver(const GameInstance& game);
    ~StabilitySolver();
    StabilitySolver(const StabilitySolver&) = delete;
    StabilitySolver& operator=(const StabilitySolver&) = delete;

    StabilityReport check(const Partition& pi, StabilityConcept c,
                          std::optional<SearchBounds> bounds = std::nullopt);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// First stable partition in enumeration order, or nullopt after exhausting
// Bell(n). Throws above the cap (kBruteForceCap; kGroupExhaustiveCap for
// group concepts). The answer is independent of the worker count.
std::optional<Partition> exists_stable(const GameInstance& game, StabilityConcept c,
                                       int threads = 1);

struct DynamicsOutcome {
    bool stabilized = false;
    Partition final;
    int steps = 0;
};

// Repeatedly applies the first NS/IS deviation found; deterministic.
DynamicsOutcome run_dynamics(const GameInstance& game, StabilityConcept kind, Partition start,
                             int budget);

namespace detail {

// The bounded engines behind is_stable for games past the exhaustive caps.
// Exposed so they can be cross-validated against exhaustive search.
std::optional<Coalition> bounded_blocking(const GameInstance& game, const Partition& pi, bool scr,
                                          int max_size);
std::optional<Deviation> bounded_group(const GameInstance& game, const Partition& pi,
                                       StabilityConcept kind, SearchBounds bounds);

}  // namespace detail

// Precomputed per-agent coalition ranks over bitmask coalitions; the
// substrate for small-n brute force. Valid for n <= kBruteForceCap.
class RankTable {
public:
    explicit RankTable(const GameInstance& game);

    int n() const { return n_; }
    // mask must contain bit i.
    int rank(Agent i, unsigned mask) const { return rank_[i][mask]; }

private:
    int n_;
    std::vector<std::vector<int>> rank_;
};

}  // namespace hedonica
