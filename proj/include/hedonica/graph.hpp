#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hedonica/types.hpp"

namespace hedonica {

// Undirected view of the friendship relation: an edge is present only for
// reciprocal friendships. One-sided friendships are kept as directed arcs.
struct FriendshipGraph {
    int n = 0;
    std::vector<std::vector<Agent>> adj;            // sorted neighbour lists
    std::vector<std::vector<char>> mat;             // adjacency matrix
    std::vector<std::pair<Agent, Agent>> one_sided; // i likes j, not reciprocated

    bool adjacent(Agent i, Agent j) const { return mat[i][j] != 0; }
    int degree(Agent i) const { return static_cast<int>(adj[i].size()); }
};

struct GraphStats {
    int max_degree = 0;
    std::optional<int> girth;  // nullopt = acyclic
    bool bipartite = false;
    bool mutual = false;  // no one-sided arcs
};

FriendshipGraph friendship_graph(const OrderingProfile& profile);

// Same graph with one-sided arcs promoted to edges; useful for structural
// checks on profiles that are not fully mutual.
FriendshipGraph with_arcs_as_edges(const FriendshipGraph& g);

GraphStats graph_stats(const FriendshipGraph& g);

// Shortest-path hop count, nullopt if disconnected.
std::optional<int> distance(const FriendshipGraph& g, Agent from, Agent to);

// Induced 4-cycle with no chord.
bool has_chordless_4cycle(const FriendshipGraph& g);

}  // namespace hedonica
