#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hedonica/types.hpp"

namespace hedonica {

struct Literal {
    int var = 0;  // 0-based
    bool neg = false;

    bool operator==(const Literal&) const = default;
};

// Position of a variable occurrence: clause index + slot within the clause.
struct Occurrence {
    int clause = -1;
    int slot = -1;
};

struct Formula {
    int num_vars = 0;
    std::vector<std::array<Literal, 3>> clauses;

    // Occurrence index, filled by validate_b2sat: for each variable, its two
    // positive and two negative occurrences in clause order.
    std::vector<std::array<Occurrence, 2>> pos;
    std::vector<std::array<Occurrence, 2>> neg;
    bool b2 = false;
};

// DIMACS-style input: "p cnf V C" header, clauses as signed ints ending in 0.
// Literal order within a clause is preserved.
Formula parse_cnf(const std::string& text);

// Enforces the (3,B2) shape: 3 distinct variables per clause, each variable
// exactly twice positive and twice negative. Fills the occurrence index.
// Throws std::invalid_argument naming the offending clause or variable.
void validate_b2sat(Formula& f);

using Assignment = std::vector<bool>;  // indexed by variable

bool satisfies(const Formula& f, const Assignment& a);

// Exhaustive truth-table scan; lexicographically first satisfying assignment
// (variable 0 most significant, false < true). Throws for more than 20 vars.
std::optional<Assignment> sat_oracle(const Formula& f);

// Up to `limit` satisfying assignments in the same order.
std::vector<Assignment> sat_enumerate(const Formula& f, int limit);

enum class GadgetKind { T1, T2B, T2NB, T3, Cycle };

const char* to_string(GadgetKind k);
std::optional<GadgetKind> gadget_from_string(const std::string& name);

struct Gadget {
    GadgetKind kind = GadgetKind::T1;
    Formula formula;
    OrderingProfile profile;
    std::vector<std::string> labels;      // role of each agent
    std::map<std::string, Agent> by_label;

    Agent at(const std::string& label) const;
};

// Compiles a validated (3,B2) formula into the gadget game for the chosen
// construction. Agent roles are retained in the label table.
Gadget build_gadget(GadgetKind kind, const Formula& f);

// The hand-built stable partition for a satisfying assignment.
// Throws std::invalid_argument if the assignment does not satisfy the formula.
Partition construct_partition(const Gadget& g, const Assignment& a);

// Reads an assignment back off a partition. Throws std::runtime_error when a
// variable comes out contradictory or undefined; the proofs rule both out for
// stable partitions only.
Assignment extract_assignment(const Gadget& g, const Partition& pi);

// n-ring, clockwise successor preferred to clockwise predecessor. n in {5, 9}.
Gadget cycle_gadget(int n);

}  // namespace hedonica
