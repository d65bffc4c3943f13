#include "hedonica/stability.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hedonica/graph.hpp"
#include "hedonica/rgs.hpp"

namespace hedonica {

const char* to_string(StabilityConcept c) {
    switch (c) {
        case StabilityConcept::CR: return "cr";
        case StabilityConcept::SCR: return "scr";
        case StabilityConcept::NS: return "ns";
        case StabilityConcept::IS: return "is";
        case StabilityConcept::SNS: return "sns";
        case StabilityConcept::SSNS: return "ssns";
        default: return "sis";
    }
}

std::optional<StabilityConcept> concept_from_string(const std::string& name) {
    for (StabilityConcept c :
         {StabilityConcept::CR, StabilityConcept::SCR, StabilityConcept::NS, StabilityConcept::IS,
          StabilityConcept::SNS, StabilityConcept::SSNS, StabilityConcept::SIS})
        if (name == to_string(c)) return c;
    return std::nullopt;
}

bool is_group_concept(StabilityConcept c) {
    return c == StabilityConcept::SNS || c == StabilityConcept::SSNS || c == StabilityConcept::SIS;
}

namespace {

PrefValue coalition_key(const GameInstance& g, Agent i, const Coalition& s) {
    std::vector<Agent> fr;
    int enemies = 0;
    for (Agent j : s) {
        if (j == i) continue;
        if (g.profile().is_friend(i, j))
            fr.push_back(j);
        else
            ++enemies;
    }
    return g.pref_key(i, fr, enemies);
}

Partition apply_move(const Partition& pi, const SingleMove& mv) {
    Partition out;
    for (int b = 0; b < static_cast<int>(pi.blocks.size()); ++b) {
        Coalition c = pi.blocks[b];
        c.erase(std::remove(c.begin(), c.end(), mv.agent), c.end());
        if (mv.target_block && *mv.target_block == b)
            c.insert(std::lower_bound(c.begin(), c.end(), mv.agent), mv.agent);
        if (!c.empty()) out.blocks.push_back(std::move(c));
    }
    if (!mv.target_block) out.blocks.push_back(Coalition{mv.agent});
    return out;
}

void ensure_enemy_averse(const GameInstance& g) {
    if (is_cardinal(g.family()) && g.utilities().a >= 0)
        throw std::invalid_argument(
            "bounded search needs strictly negative enemy utility; exhaustive mode only");
}

// Connected induced subgraphs of sizes 2..k, each exactly once (ESU-style);
// cb gets the vertex set in insertion order and returns true to stop.
bool for_each_connected(const std::vector<std::vector<int>>& adj, int k,
                        const std::function<bool(const std::vector<int>&)>& cb) {
    const int n = static_cast<int>(adj.size());
    if (k < 2) return false;
    std::vector<char> blocked(n, 0);
    std::vector<int> sub;
    std::function<bool(const std::vector<int>&, int)> rec = [&](const std::vector<int>& ext,
                                                                int root) -> bool {
        if (sub.size() >= 2 && cb(sub)) return true;
        if (static_cast<int>(sub.size()) >= k) return false;
        for (std::size_t idx = 0; idx < ext.size(); ++idx) {
            int u = ext[idx];
            std::vector<int> next(ext.begin() + idx + 1, ext.end());
            std::vector<int> added;
            for (int w : adj[u])
                if (w > root && !blocked[w]) {
                    blocked[w] = 1;
                    added.push_back(w);
                    next.push_back(w);
                }
            sub.push_back(u);
            bool stop = rec(next, root);
            sub.pop_back();
            for (int w : added) blocked[w] = 0;
            if (stop) return true;
        }
        return false;
    };
    for (int root = 0; root < n; ++root) {
        sub.assign(1, root);
        blocked[root] = 1;
        std::vector<int> ext;
        for (int w : adj[root])
            if (w > root) {
                blocked[w] = 1;
                ext.push_back(w);
            }
        bool stop = rec(ext, root);
        blocked[root] = 0;
        for (int w : ext) blocked[w] = 0;
        if (stop) return true;
    }
    return false;
}

std::optional<Coalition> bounded_blocking_impl(const GameInstance& g, const Partition& pi, bool scr,
                                          int max_size) {
    ensure_enemy_averse(g);
    const int n = g.n();
    const auto bof = pi.block_of(n);
    std::vector<PrefValue> cur(n);
    for (Agent i = 0; i < n; ++i) cur[i] = coalition_key(g, i, pi.blocks[bof[i]]);

    // Individual rationality first: a lone agent is a blocking coalition of
    // size one, and the connected search below relies on IR holding.
    for (Agent i = 0; i < n; ++i)
        if (compare(g.pref_key(i, {}, 0), cur[i]) == Comparison::Greater) return Coalition{i};

    // Under strictly negative enemy utility any blocking coalition restricts
    // to one of its friendship components, so connected candidates suffice.
    FriendshipGraph fg = friendship_graph(g.profile());
    std::optional<Coalition> res;
    std::vector<Agent> fr;
    for_each_connected(fg.adj, max_size, [&](const std::vector<int>& raw) {
        Coalition s = sorted_coalition({raw.begin(), raw.end()});
        bool ok = true, any_strict = false;
        for (Agent i : s) {
            fr.clear();
            for (Agent j : s)
                if (j != i && g.profile().is_friend(i, j)) fr.push_back(j);
            int enemies = static_cast<int>(s.size()) - 1 - static_cast<int>(fr.size());
            Comparison c = compare(g.pref_key(i, fr, enemies), cur[i]);
            if (scr) {
                if (c == Comparison::Less) {
                    ok = false;
                    break;
                }
                if (c == Comparison::Greater) any_strict = true;
            } else if (c != Comparison::Greater) {
                ok = false;
                break;
            }
        }
        if (ok && (!scr || any_strict)) {
            res = std::move(s);
            return true;
        }
        return false;
    });
    return res;
}

// ---------------------------------------------------------------------------
// Bounded group-deviation search for games beyond the exhaustive cap.
//
// Candidate deviations are "groups": a set of movers joining either the
// remainder of an existing block (anchored) or nothing but themselves
// (pure). Every mover must have a friend in its destination — with strictly
// negative enemy utility and an individually rational start, a friendless
// mover cannot even weakly improve. Deviations whose parts neither exchange
// members with each other's blocks nor share a source block decompose into
// smaller valid deviations, so only "linked" combinations of groups are
// explored beyond single groups.
// ---------------------------------------------------------------------------

struct CandGroup {
    int anchor = -1;  // block index, or -1 for a fresh coalition
    std::vector<Agent> movers;
    std::vector<int> sources;  // distinct source blocks, sorted
};

class BoundedGroupSearch {
public:
    BoundedGroupSearch(const GameInstance& g, const Partition& pi, StabilityConcept kind,
                       SearchBounds bounds)
        : g_(g), pi_(pi), kind_(kind), bounds_(bounds), n_(g.n()), bof_(pi.block_of(n_)) {
        cur_.resize(n_);
        for (Agent i = 0; i < n_; ++i) cur_[i] = coalition_key(g_, i, pi_.blocks[bof_[i]]);
        aux_.resize(n_);
        for (Agent i = 0; i < n_; ++i)
            for (Agent j : g_.profile().friends[i]) {
                aux_[i].push_back(j);
                aux_[j].push_back(i);
            }
        for (auto& a : aux_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        in_dest_.assign(n_, 0);
        is_mover_.assign(n_, 0);
    }

    std::optional<Deviation> run() {
        collect_candidates();
        // Single groups; viability for combinations is recorded as we go.
        std::vector<int> viable;
        for (int gid = 0; gid < static_cast<int>(cands_.size()); ++gid) {
            auto [mover_ok, dev] = evaluate({gid});
            if (dev) return dev;
            if (is_viable(gid, mover_ok)) viable.push_back(gid);
        }
        if (viable.size() < 2 || bounds_.max_group < 2) return std::nullopt;
        return combos(viable);
    }

private:
    bool mover_needs_strict() const { return kind_ != StabilityConcept::SSNS; }

    void collect_candidates() {
        // Anchored groups, by block.
        for (int b = 0; b < static_cast<int>(pi_.blocks.size()); ++b) grow_from_block(b);
        // Pure groups: lone leavers, then friend-connected sets.
        for (Agent h = 0; h < n_; ++h)
            if (pi_.blocks[bof_[h]].size() > 1) push_group(-1, {h});
        for_each_connected(aux_, bounds_.max_group, [&](const std::vector<int>& raw) {
            std::vector<Agent> d = sorted_coalition({raw.begin(), raw.end()});
            if (movers_attached(d, nullptr)) push_group(-1, std::move(d));
            return false;
        });
    }

    bool movers_attached(const std::vector<Agent>& movers, const Coalition* anchor) const {
        for (Agent h : movers) {
            bool ok = false;
            for (Agent j : g_.profile().friends[h]) {
                if (std::binary_search(movers.begin(), movers.end(), j) ||
                    (anchor && contains(*anchor, j))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    void push_group(int anchor, std::vector<Agent> movers) {
        CandGroup cg;
        cg.anchor = anchor;
        cg.sources.reserve(movers.size());
        for (Agent h : movers) cg.sources.push_back(bof_[h]);
        std::sort(cg.sources.begin(), cg.sources.end());
        cg.sources.erase(std::unique(cg.sources.begin(), cg.sources.end()), cg.sources.end());
        cg.movers = std::move(movers);
        cands_.push_back(std::move(cg));
    }

    void grow_from_block(int b) {
        const Coalition& block = pi_.blocks[b];
        std::vector<char> blocked(n_, 0);
        for (Agent a : block) blocked[a] = 1;
        std::vector<int> ext;
        for (Agent a : block)
            for (int w : aux_[a])
                if (!blocked[w]) {
                    blocked[w] = 1;
                    ext.push_back(w);
                }
        std::vector<int> sub;
        std::function<void(const std::vector<int>&)> rec = [&](const std::vector<int>& e) {
            if (!sub.empty()) {
                std::vector<Agent> d = sorted_coalition({sub.begin(), sub.end()});
                if (movers_attached(d, &block)) push_group(b, std::move(d));
            }
            if (static_cast<int>(sub.size()) >= bounds_.max_group) return;
            for (std::size_t idx = 0; idx < e.size(); ++idx) {
                int u = e[idx];
                std::vector<int> next(e.begin() + idx + 1, e.end());
                std::vector<int> added;
                for (int w : aux_[u])
                    if (!blocked[w]) {
                        blocked[w] = 1;
                        added.push_back(w);
                        next.push_back(w);
                    }
                sub.push_back(u);
                rec(next);
                sub.pop_back();
                for (int w : added) blocked[w] = 0;
            }
        };
        rec(ext);
        for (Agent a : block) blocked[a] = 0;
        for (int w : ext) blocked[w] = 0;
    }

    Coalition group_content(const CandGroup& cg) const {
        // is_mover_ must be set for the whole combination under evaluation.
        Coalition content;
        if (cg.anchor >= 0)
            for (Agent a : pi_.blocks[cg.anchor])
                if (!is_mover_[a]) content.push_back(a);
        for (Agent h : cg.movers) content.push_back(h);
        std::sort(content.begin(), content.end());
        return content;
    }

    Comparison cmp_in(Agent i, const Coalition& content) const {
        std::vector<Agent> fr;
        int enemies = 0;
        for (Agent j : content) {
            if (j == i) continue;
            if (g_.profile().is_friend(i, j))
                fr.push_back(j);
            else
                ++enemies;
        }
        return compare(g_.pref_key(i, fr, enemies), cur_[i]);
    }

    // Mover-side feasibility even if up to (budget) enemies were removed
    // from the anchor remainder by sibling groups.
    bool is_viable(int gid, bool mover_ok) const {
        const CandGroup& cg = cands_[gid];
        int budget = bounds_.max_group - static_cast<int>(cg.movers.size());
        if (budget <= 0) return false;
        if (cg.anchor < 0) return mover_ok;
        Coalition content;
        for (Agent a : pi_.blocks[cg.anchor])
            if (!std::binary_search(cg.movers.begin(), cg.movers.end(), a)) content.push_back(a);
        int residual = static_cast<int>(content.size());
        for (Agent h : cg.movers) content.push_back(h);
        std::sort(content.begin(), content.end());
        for (Agent h : cg.movers) {
            std::vector<Agent> fr;
            int enemies = 0, removable = 0;
            for (Agent j : content) {
                if (j == h) continue;
                if (g_.profile().is_friend(h, j))
                    fr.push_back(j);
                else
                    ++enemies;
            }
            (void)residual;
            // Enemies of h inside the anchor remainder could leave with
            // sibling groups; assume the best case.
            int enemies_in_anchor = 0;
            for (Agent a : pi_.blocks[cg.anchor])
                if (!std::binary_search(cg.movers.begin(), cg.movers.end(), a) &&
                    g_.profile().is_enemy(h, a))
                    ++enemies_in_anchor;
            removable = std::min(budget, enemies_in_anchor);
            Comparison c = compare(g_.pref_key(h, fr, enemies - removable), cur_[h]);
            if (mover_needs_strict() ? c != Comparison::Greater : c == Comparison::Less)
                return false;
        }
        return true;
    }

    struct EvalResult {
        bool mover_ok = false;
        std::optional<Deviation> dev;
    };

    EvalResult evaluate(const std::vector<int>& gids) {
        std::vector<Agent> movers;
        for (int gid : gids)
            for (Agent h : cands_[gid].movers) movers.push_back(h);
        for (Agent h : movers) is_mover_[h] = 1;
        auto cleanup = [&] {
            for (Agent h : movers) is_mover_[h] = 0;
        };

        // Guard against a no-op: a pure group reforming an existing block.
        for (int gid : gids) {
            const CandGroup& cg = cands_[gid];
            if (cg.anchor < 0 && cg.sources.size() == 1 &&
                cg.movers.size() == pi_.blocks[cg.sources[0]].size()) {
                cleanup();
                return {};
            }
        }

        std::vector<Coalition> contents;
        contents.reserve(gids.size());
        for (int gid : gids) contents.push_back(group_content(cands_[gid]));

        bool any_strict = false;
        for (std::size_t k = 0; k < gids.size(); ++k) {
            for (Agent h : cands_[gids[k]].movers) {
                Comparison c = cmp_in(h, contents[k]);
                if (mover_needs_strict() ? c != Comparison::Greater : c == Comparison::Less) {
                    cleanup();
                    return {};
                }
                if (c == Comparison::Greater) any_strict = true;
            }
        }

        // Affected blocks: anchors plus every mover's source.
        std::vector<int> affected;
        std::vector<int> anchored_by(pi_.blocks.size(), -1);
        for (std::size_t k = 0; k < gids.size(); ++k) {
            const CandGroup& cg = cands_[gids[k]];
            if (cg.anchor >= 0) {
                anchored_by[cg.anchor] = static_cast<int>(k);
                affected.push_back(cg.anchor);
            }
            affected.insert(affected.end(), cg.sources.begin(), cg.sources.end());
        }
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

        bool need_residents =
            kind_ == StabilityConcept::SIS || (kind_ == StabilityConcept::SSNS && !any_strict);
        if (need_residents) {
            for (int b : affected) {
                std::optional<Coalition> residual;
                for (Agent r : pi_.blocks[b]) {
                    if (is_mover_[r]) continue;
                    const Coalition* content;
                    if (anchored_by[b] >= 0) {
                        content = &contents[anchored_by[b]];
                    } else {
                        if (!residual) {
                            residual.emplace();
                            for (Agent a : pi_.blocks[b])
                                if (!is_mover_[a]) residual->push_back(a);
                        }
                        content = &*residual;
                    }
                    Comparison c = cmp_in(r, *content);
                    if (kind_ == StabilityConcept::SIS && c == Comparison::Less) {
                        cleanup();
                        return {.mover_ok = true, .dev = std::nullopt};
                    }
                    if (c == Comparison::Greater) any_strict = true;
                }
                if (kind_ == StabilityConcept::SSNS && any_strict) break;
            }
        }
        if (kind_ == StabilityConcept::SSNS && !any_strict) {
            cleanup();
            return {.mover_ok = true, .dev = std::nullopt};
        }

        // Assemble the successor partition.
        Partition succ;
        for (int b = 0; b < static_cast<int>(pi_.blocks.size()); ++b) {
            if (anchored_by[b] >= 0) {
                succ.blocks.push_back(contents[anchored_by[b]]);
                continue;
            }
            Coalition c;
            for (Agent a : pi_.blocks[b])
                if (!is_mover_[a]) c.push_back(a);
            if (!c.empty()) succ.blocks.push_back(std::move(c));
        }
        for (std::size_t k = 0; k < gids.size(); ++k)
            if (cands_[gids[k]].anchor < 0) succ.blocks.push_back(contents[k]);

        cleanup();
        std::sort(movers.begin(), movers.end());
        return {.mover_ok = true, .dev = Deviation{std::move(movers), std::move(succ)}};
    }

    bool linked(const CandGroup& x, const CandGroup& y) const {
        if (x.anchor >= 0 && x.anchor == y.anchor) return false;
        for (Agent h : y.movers)
            if (std::binary_search(x.movers.begin(), x.movers.end(), h)) return false;
        auto mover_from = [&](const CandGroup& a, int block) {
            return block >= 0 && std::binary_search(a.sources.begin(), a.sources.end(), block);
        };
        if (mover_from(x, y.anchor) || mover_from(y, x.anchor)) return true;
        // Shared source block: removals interact through the residue.
        for (int s : x.sources)
            if (std::binary_search(y.sources.begin(), y.sources.end(), s)) return true;
        return false;
    }

    std::optional<Deviation> combos(const std::vector<int>& viable) {
        // Linkage graph over viable groups; connected combinations only.
        const int m = static_cast<int>(viable.size());
        if (m > 3000) {
            // Degenerate safety valve: pairs only.
            std::optional<Deviation> res;
            for (int a = 0; a < m && !res; ++a)
                for (int b = a + 1; b < m; ++b) {
                    const auto& ga = cands_[viable[a]];
                    const auto& gb = cands_[viable[b]];
                    if (static_cast<int>(ga.movers.size() + gb.movers.size()) > bounds_.max_group)
                        continue;
                    if (!linked(ga, gb)) continue;
                    auto [ok, dev] = evaluate({viable[a], viable[b]});
                    (void)ok;
                    if (dev) {
                        res = dev;
                        break;
                    }
                }
            return res;
        }
        std::vector<std::vector<int>> ladj(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                if (linked(cands_[viable[a]], cands_[viable[b]])) {
                    ladj[a].push_back(b);
                    ladj[b].push_back(a);
                }
        std::optional<Deviation> res;
        for_each_connected(ladj, bounds_.max_group, [&](const std::vector<int>& raw) {
            int total = 0;
            for (int idx : raw) total += static_cast<int>(cands_[viable[idx]].movers.size());
            if (total > bounds_.max_group) return false;
            std::vector<int> gids;
            gids.reserve(raw.size());
            for (int idx : raw) gids.push_back(viable[idx]);
            // Pairwise disjointness / distinct anchors beyond adjacency.
            for (std::size_t a = 0; a < gids.size(); ++a)
                for (std::size_t b = a + 1; b < gids.size(); ++b) {
                    const auto& ga = cands_[gids[a]];
                    const auto& gb = cands_[gids[b]];
                    if (ga.anchor >= 0 && ga.anchor == gb.anchor) return false;
                    for (Agent h : gb.movers)
                        if (std::binary_search(ga.movers.begin(), ga.movers.end(), h))
                            return false;
                }
            auto [ok, dev] = evaluate(gids);
            (void)ok;
            if (dev) {
                res = dev;
                return true;
            }
            return false;
        });
        return res;
    }

    const GameInstance& g_;
    const Partition& pi_;
    StabilityConcept kind_;
    SearchBounds bounds_;
    int n_;
    std::vector<int> bof_;
    std::vector<PrefValue> cur_;
    std::vector<std::vector<int>> aux_;  // friendship, either direction
    std::vector<CandGroup> cands_;
    std::vector<char> in_dest_;
    std::vector<char> is_mover_;
};

std::optional<Deviation> bounded_group_impl(const GameInstance& g, const Partition& pi,
                                       StabilityConcept kind, SearchBounds bounds) {
    ensure_enemy_averse(g);
    if (kind != StabilityConcept::SIS)
        if (auto mv = find_single_deviation(g, pi, StabilityConcept::NS))
            return Deviation{{mv->agent}, apply_move(pi, *mv)};
    BoundedGroupSearch search(g, pi, kind, bounds);
    return search.run();
}

}  // namespace

// ---------------------------------------------------------------------------

RankTable::RankTable(const GameInstance& game) : n_(game.n()) {
    if (n_ > kBruteForceCap) throw std::invalid_argument("rank table: n exceeds brute-force cap");
    const unsigned full = 1u << n_;
    rank_.assign(n_, std::vector<int>(full, -1));
    std::vector<unsigned> masks;
    std::vector<PrefValue> keys(full);
    std::vector<Agent> fr;
    for (Agent i = 0; i < n_; ++i) {
        masks.clear();
        for (unsigned m = 0; m < full; ++m) {
            if (!((m >> i) & 1u)) continue;
            fr.clear();
            for (Agent j : game.profile().friends[i])
                if ((m >> j) & 1u) fr.push_back(j);
            int enemies = std::popcount(m) - 1 - static_cast<int>(fr.size());
            keys[m] = game.pref_key(i, fr, enemies);
            masks.push_back(m);
        }
        std::sort(masks.begin(), masks.end(), [&](unsigned x, unsigned y) {
            return compare(keys[x], keys[y]) == Comparison::Less;
        });
        int r = 0;
        for (std::size_t t = 0; t < masks.size(); ++t) {
            if (t > 0 && compare(keys[masks[t - 1]], keys[masks[t]]) == Comparison::Less) ++r;
            rank_[i][masks[t]] = r;
        }
    }
}

bool obtainable(const Partition& from, const std::vector<Agent>& deviators, const Partition& to) {
    int n = 0;
    for (const auto& b : from.blocks)
        for (Agent a : b) n = std::max(n, a + 1);
    const auto bf = from.block_of(n);
    const auto bt = to.block_of(n);
    std::vector<char> dev(n, 0);
    for (Agent d : deviators)
        if (d >= 0 && d < n) dev[d] = 1;
    for (int i = 0; i < n; ++i) {
        if (dev[i]) continue;
        for (int j = i + 1; j < n; ++j) {
            if (dev[j]) continue;
            if ((bf[i] == bf[j]) != (bt[i] == bt[j])) return false;
        }
    }
    return true;
}

std::optional<SingleMove> find_single_deviation(const GameInstance& g, const Partition& pi,
                                                StabilityConcept kind) {
    if (kind != StabilityConcept::NS && kind != StabilityConcept::IS)
        throw std::invalid_argument("find_single_deviation handles ns and is only");
    const int n = g.n();
    const auto bof = pi.block_of(n);
    for (Agent i = 0; i < n; ++i) {
        const Coalition& home = pi.blocks[bof[i]];
        for (int b = 0; b < static_cast<int>(pi.blocks.size()); ++b) {
            if (b == bof[i]) continue;
            Coalition joined = pi.blocks[b];
            joined.insert(std::lower_bound(joined.begin(), joined.end(), i), i);
            if (g.compare(i, joined, home) != Comparison::Greater) continue;
            if (kind == StabilityConcept::IS) {
                bool consent = true;
                for (Agent j : pi.blocks[b])
                    if (g.compare(j, joined, pi.blocks[b]) == Comparison::Less) {
                        consent = false;
                        break;
                    }
                if (!consent) continue;
            }
            return SingleMove{i, b, std::move(joined)};
        }
        if (home.size() > 1 && g.compare(i, Coalition{i}, home) == Comparison::Greater)
            return SingleMove{i, std::nullopt, Coalition{i}};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

struct StabilitySolver::Impl {
    const GameInstance& game;
    std::optional<RankTable> rt;

    // Successor tables for the exhaustive group scan (n <= group cap):
    // for every partition, each agent's block mask and rank.
    bool tables_built = false;
    std::size_t count = 0;
    std::vector<std::uint16_t> masks;
    std::vector<int> ranks;
    std::vector<std::int8_t> labels;

    explicit Impl(const GameInstance& g) : game(g) {}

    RankTable& table() {
        if (!rt) rt.emplace(game);
        return *rt;
    }

    void build_group_tables() {
        if (tables_built) return;
        const int n = game.n();
        RankTable& tab = table();
        PartitionEnumerator en(n);
        while (true) {
            const auto& lab = en.labels();
            std::array<std::uint16_t, 16> bm{};
            for (int i = 0; i < n; ++i) bm[lab[i]] |= static_cast<std::uint16_t>(1u << i);
            for (int i = 0; i < n; ++i) {
                masks.push_back(bm[lab[i]]);
                ranks.push_back(tab.rank(i, bm[lab[i]]));
                labels.push_back(static_cast<std::int8_t>(lab[i]));
            }
            if (!en.next()) break;
        }
        count = labels.size() / n;
        tables_built = true;
    }

    std::optional<Coalition> mask_blocking(const Partition& pi, bool scr, int max_size) {
        const int n = game.n();
        RankTable& tab = table();
        const auto bof = pi.block_of(n);
        std::vector<unsigned> bmask(pi.blocks.size(), 0);
        for (std::size_t b = 0; b < pi.blocks.size(); ++b)
            for (Agent a : pi.blocks[b]) bmask[b] |= 1u << a;
        std::vector<int> prank(n);
        for (Agent i = 0; i < n; ++i) prank[i] = tab.rank(i, bmask[bof[i]]);
        const unsigned full = 1u << n;
        for (unsigned m = 1; m < full; ++m) {
            if (std::popcount(m) > max_size) continue;
            bool ok = true, any_strict = false;
            for (unsigned rest = m; rest; rest &= rest - 1) {
                int i = std::countr_zero(rest);
                int d = tab.rank(i, m) - prank[i];
                if (scr) {
                    if (d < 0) {
                        ok = false;
                        break;
                    }
                    if (d > 0) any_strict = true;
                } else if (d <= 0) {
                    ok = false;
                    break;
                }
            }
            if (ok && (!scr || any_strict)) {
                Coalition s;
                for (unsigned rest = m; rest; rest &= rest - 1)
                    s.push_back(std::countr_zero(rest));
                return s;
            }
        }
        return std::nullopt;
    }

    std::optional<Deviation> exhaustive_group(const Partition& pi, StabilityConcept kind) {
        const int n = game.n();
        if (kind != StabilityConcept::SIS)
            if (auto mv = find_single_deviation(game, pi, StabilityConcept::NS))
                return Deviation{{mv->agent}, apply_move(pi, *mv)};
        build_group_tables();
        RankTable& tab = table();
        const auto bof = pi.block_of(n);
        std::array<std::uint16_t, 16> bmask{};
        for (std::size_t b = 0; b < pi.blocks.size(); ++b)
            for (Agent a : pi.blocks[b]) bmask[b] |= static_cast<std::uint16_t>(1u << a);
        std::array<std::uint16_t, 16> my{};
        std::array<int, 16> r1{};
        for (Agent i = 0; i < n; ++i) {
            my[i] = bmask[bof[i]];
            r1[i] = tab.rank(i, my[i]);
        }
        for (std::size_t t = 0; t < count; ++t) {
            const std::uint16_t* m2 = &masks[t * n];
            const int* r2 = &ranks[t * n];
            std::uint16_t gm = 0, lm = 0;
            bool reject = false;
            for (int i = 0; i < n; ++i) {
                int d = r2[i] - r1[i];
                if (d > 0) {
                    gm |= static_cast<std::uint16_t>(1u << i);
                } else if (d < 0) {
                    if (kind == StabilityConcept::SIS) {
                        reject = true;
                        break;
                    }
                    lm |= static_cast<std::uint16_t>(1u << i);
                }
            }
            if (reject) continue;
            if (kind != StabilityConcept::SNS && gm == 0) continue;
            const std::uint16_t cover =
                kind == StabilityConcept::SSNS ? static_cast<std::uint16_t>(~lm) : gm;
            bool changed = false, covered = true;
            for (int i = 0; i < n && covered; ++i) {
                std::uint16_t d = static_cast<std::uint16_t>((my[i] ^ m2[i]) &
                                                            ~((2u << i) - 1u));
                if (!d) continue;
                changed = true;
                if ((cover >> i) & 1u) continue;
                if (d & static_cast<std::uint16_t>(~cover)) covered = false;
            }
            if (!changed || !covered) continue;

            // Witness: covered, improving agents incident to a change.
            std::uint16_t inc = 0;
            for (int i = 0; i < n; ++i)
                if (my[i] != m2[i]) inc |= static_cast<std::uint16_t>(1u << i);
            std::uint16_t h = static_cast<std::uint16_t>(cover & inc);
            if (kind == StabilityConcept::SSNS && !(h & gm))
                h |= static_cast<std::uint16_t>(gm & (~gm + 1u));  // lowest strict improver
            std::vector<Agent> dev;
            for (int i = 0; i < n; ++i)
                if ((h >> i) & 1u) dev.push_back(i);
            std::vector<int> lab(n);
            for (int i = 0; i < n; ++i) lab[i] = labels[t * n + i];
            return Deviation{std::move(dev), partition_from_labels(lab)};
        }
        return std::nullopt;
    }
};

StabilitySolver::StabilitySolver(const GameInstance& game) : impl_(std::make_unique<Impl>(game)) {}
StabilitySolver::~StabilitySolver() = default;

StabilityReport StabilitySolver::check(const Partition& pi, StabilityConcept c,
                                       std::optional<SearchBounds> bounds) {
    const auto t0 = std::chrono::steady_clock::now();
    const GameInstance& game = impl_->game;
    const int n = game.n();
    if (auto err = validate_partition(pi, n)) throw std::invalid_argument("partition: " + *err);

    StabilityReport rep;
    rep.kind = c;
    rep.bounds = bounds.value_or(SearchBounds{});
    switch (c) {
        case StabilityConcept::CR:
        case StabilityConcept::SCR: {
            const bool scr = c == StabilityConcept::SCR;
            if (n <= kBruteForceCap) {
                int max_size = bounds ? rep.bounds.max_coalition_size : n;
                rep.bounds.max_coalition_size = max_size;
                rep.blocking = impl_->mask_blocking(pi, scr, max_size);
                rep.exhaustive = max_size >= n;
            } else {
                rep.blocking = bounded_blocking_impl(game, pi, scr, rep.bounds.max_coalition_size);
                rep.exhaustive = false;
            }
            rep.stable = !rep.blocking.has_value();
            break;
        }
        case StabilityConcept::NS:
        case StabilityConcept::IS: {
            rep.move = find_single_deviation(game, pi, c);
            rep.exhaustive = true;
            rep.stable = !rep.move.has_value();
            break;
        }
        default: {
            if (n <= kGroupExhaustiveCap) {
                rep.deviation = impl_->exhaustive_group(pi, c);
                rep.exhaustive = true;
            } else {
                rep.deviation = bounded_group_impl(game, pi, c, rep.bounds);
                rep.exhaustive = false;
            }
            rep.stable = !rep.deviation.has_value();
            break;
        }
    }
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::optional<Coalition> find_blocking_coalition(const GameInstance& game, const Partition& pi,
                                                bool scr, int max_size) {
    if (game.n() <= kBruteForceCap) {
        StabilitySolver solver(game);
        SearchBounds b;
        b.max_coalition_size = max_size;
        auto rep = solver.check(pi, scr ? StabilityConcept::SCR : StabilityConcept::CR, b);
        return rep.blocking;
    }
    return bounded_blocking_impl(game, pi, scr, max_size);
}

std::optional<Deviation> find_group_deviation(const GameInstance& game, const Partition& pi,
                                              StabilityConcept kind, SearchBounds bounds) {
    if (!is_group_concept(kind))
        throw std::invalid_argument("find_group_deviation handles sns, ssns, sis only");
    StabilitySolver solver(game);
    return solver.check(pi, kind, bounds).deviation;
}

StabilityReport is_stable(const GameInstance& game, const Partition& pi, StabilityConcept c,
                          std::optional<SearchBounds> bounds) {
    StabilitySolver solver(game);
    return solver.check(pi, c, bounds);
}

std::optional<Partition> exists_stable(const GameInstance& game, StabilityConcept c,
                                       int threads) {
    const int cap = is_group_concept(c) ? kGroupExhaustiveCap : kBruteForceCap;
    if (game.n() > cap)
        throw std::invalid_argument("exists_stable: n exceeds the exhaustive cap for " +
                                    std::string(to_string(c)));
    threads = std::clamp(threads, 1, 32);
    if (threads == 1) {
        StabilitySolver solver(game);
        PartitionEnumerator en(game.n());
        while (true) {
            Partition p = en.current();
            if (solver.check(p, c).stable) return p;
            if (!en.next()) break;
        }
        return std::nullopt;
    }

    // Workers stride the enumeration; the winner is the lowest stable index,
    // so the result matches the single-threaded scan.
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::vector<std::optional<std::pair<std::uint64_t, std::vector<int>>>> hits(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            StabilitySolver solver(game);
            std::uint64_t index = static_cast<std::uint64_t>(w);
            for_each_partition(
                game.n(),
                [&](const std::vector<int>& labels) {
                    if (index >= best.load(std::memory_order_relaxed)) return false;
                    if (solver.check(partition_from_labels(labels), c).stable) {
                        hits[w] = {index, labels};
                        std::uint64_t prev = best.load();
                        while (index < prev && !best.compare_exchange_weak(prev, index)) {
                        }
                        return false;
                    }
                    index += threads;
                    return true;
                },
                w, threads);
        });
    for (auto& t : pool) t.join();

    const std::optional<std::pair<std::uint64_t, std::vector<int>>>* winner = nullptr;
    for (const auto& h : hits)
        if (h && (!winner || h->first < (*winner)->first)) winner = &h;
    if (!winner) return std::nullopt;
    return partition_from_labels((*winner)->second);
}

namespace detail {

std::optional<Coalition> bounded_blocking(const GameInstance& game, const Partition& pi, bool scr,
                                          int max_size) {
    return bounded_blocking_impl(game, pi, scr, max_size);
}

std::optional<Deviation> bounded_group(const GameInstance& game, const Partition& pi,
                                       StabilityConcept kind, SearchBounds bounds) {
    return bounded_group_impl(game, pi, kind, bounds);
}

}  // namespace detail

DynamicsOutcome run_dynamics(const GameInstance& game, StabilityConcept kind, Partition start,
                             int budget) {
    DynamicsOutcome out;
    out.final = std::move(start);
    for (int step = 0; step < budget; ++step) {
        auto mv = find_single_deviation(game, out.final, kind);
        if (!mv) {
            out.stabilized = true;
            out.steps = step;
            return out;
        }
        out.final = apply_move(out.final, *mv);
    }
    out.steps = budget;
    out.stabilized = !find_single_deviation(game, out.final, kind).has_value();
    return out;
}

}  // namespace hedonica
