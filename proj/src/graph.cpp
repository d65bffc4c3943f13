#include "hedonica/graph.hpp"

#include <deque>
#include <limits>

namespace hedonica {

FriendshipGraph friendship_graph(const OrderingProfile& profile) {
    FriendshipGraph g;
    g.n = profile.n;
    g.adj.assign(g.n, {});
    g.mat.assign(g.n, std::vector<char>(g.n, 0));
    for (Agent i = 0; i < g.n; ++i) {
        for (Agent j : profile.friends[i]) {
            if (profile.is_friend(j, i)) {
                if (i < j) {
                    g.adj[i].push_back(j);
                    g.adj[j].push_back(i);
                    g.mat[i][j] = g.mat[j][i] = 1;
                }
            } else {
                g.one_sided.emplace_back(i, j);
            }
        }
    }
    for (auto& lst : g.adj) std::sort(lst.begin(), lst.end());
    return g;
}

FriendshipGraph with_arcs_as_edges(const FriendshipGraph& g) {
    FriendshipGraph u = g;
    for (auto [i, j] : g.one_sided) {
        if (!u.mat[i][j]) {
            u.mat[i][j] = u.mat[j][i] = 1;
            u.adj[i].push_back(j);
            u.adj[j].push_back(i);
        }
    }
    u.one_sided.clear();
    for (auto& lst : u.adj) std::sort(lst.begin(), lst.end());
    return u;
}

namespace {

// Shortest cycle through any vertex, found by BFS from every root.
std::optional<int> compute_girth(const FriendshipGraph& g) {
    constexpr int inf = std::numeric_limits<int>::max();
    int best = inf;
    std::vector<int> dist(g.n), parent(g.n);
    for (Agent root = 0; root < g.n; ++root) {
        std::fill(dist.begin(), dist.end(), inf);
        std::deque<Agent> queue{root};
        dist[root] = 0;
        parent[root] = -1;
        while (!queue.empty()) {
            Agent u = queue.front();
            queue.pop_front();
            if (2 * dist[u] >= best) continue;
            for (Agent v : g.adj[u]) {
                if (v == parent[u]) continue;
                if (dist[v] == inf) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else {
                    // Non-tree edge: closes a cycle of this length or shorter.
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if (best == inf) return std::nullopt;
    return best;
}

bool compute_bipartite(const FriendshipGraph& g) {
    std::vector<int> color(g.n, -1);
    std::deque<Agent> queue;
    for (Agent root = 0; root < g.n; ++root) {
        if (color[root] >= 0) continue;
        color[root] = 0;
        queue.push_back(root);
        while (!queue.empty()) {
            Agent u = queue.front();
            queue.pop_front();
            for (Agent v : g.adj[u]) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

GraphStats graph_stats(const FriendshipGraph& g) {
    GraphStats s;
    for (Agent i = 0; i < g.n; ++i) s.max_degree = std::max(s.max_degree, g.degree(i));
    s.girth = compute_girth(g);
    s.bipartite = compute_bipartite(g);
    s.mutual = g.one_sided.empty();
    return s;
}

std::optional<int> distance(const FriendshipGraph& g, Agent from, Agent to) {
    constexpr int inf = std::numeric_limits<int>::max();
    std::vector<int> dist(g.n, inf);
    std::deque<Agent> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        Agent u = queue.front();
        queue.pop_front();
        if (u == to) return dist[u];
        for (Agent v : g.adj[u])
            if (dist[v] == inf) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return std::nullopt;
}

bool has_chordless_4cycle(const FriendshipGraph& g) {
    // i-j-k-l-i is chordless iff i,k and j,l are the only non-edges missing.
    for (Agent i = 0; i < g.n; ++i) {
        for (Agent k = i + 1; k < g.n; ++k) {
            if (g.adjacent(i, k)) continue;
            // Common neighbours of the non-adjacent pair (i,k).
            std::vector<Agent> common;
            for (Agent j : g.adj[i])
                if (g.adjacent(j, k)) common.push_back(j);
            for (size_t a = 0; a < common.size(); ++a)
                for (size_t b = a + 1; b < common.size(); ++b)
                    if (!g.adjacent(common[a], common[b])) return true;
        }
    }
    return false;
}

}  // namespace hedonica
