#include "hedonica/reductions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hedonica {

namespace {

std::string var_name(int v) { return "x" + std::to_string(v + 1); }

std::string lit_name(const Literal& l) {
    return (l.neg ? "~" : "") + var_name(l.var);
}

}  // namespace

Formula parse_cnf(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    Formula f;
    int num_clauses = -1;

    // Header, skipping comment lines.
    while (in >> tok) {
        if (tok == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok != "p") throw std::invalid_argument("cnf: expected 'p cnf' header, got '" + tok + "'");
        break;
    }
    if (tok != "p") throw std::invalid_argument("cnf: missing header");
    std::string fmt;
    if (!(in >> fmt) || fmt != "cnf") throw std::invalid_argument("cnf: header format must be 'cnf'");
    if (!(in >> f.num_vars >> num_clauses) || f.num_vars <= 0 || num_clauses <= 0)
        throw std::invalid_argument("cnf: bad variable/clause counts in header");

    std::vector<Literal> current;
    int lit;
    while (in >> lit) {
        if (lit == 0) {
            if (current.empty()) throw std::invalid_argument("cnf: empty clause");
            if (current.size() != 3)
                throw std::invalid_argument("cnf: clause " + std::to_string(f.clauses.size() + 1) +
                                            " has " + std::to_string(current.size()) +
                                            " literals, need 3");
            f.clauses.push_back({current[0], current[1], current[2]});
            current.clear();
            continue;
        }
        int v = std::abs(lit);
        if (v > f.num_vars)
            throw std::invalid_argument("cnf: variable " + std::to_string(v) + " out of range (V=" +
                                        std::to_string(f.num_vars) + ")");
        current.push_back({v - 1, lit < 0});
    }
    if (!in.eof()) throw std::invalid_argument("cnf: stray token in clause data");
    if (!current.empty()) throw std::invalid_argument("cnf: unterminated clause");
    if (static_cast<int>(f.clauses.size()) != num_clauses)
        throw std::invalid_argument("cnf: header promises " + std::to_string(num_clauses) +
                                    " clauses, found " + std::to_string(f.clauses.size()));
    return f;
}

void validate_b2sat(Formula& f) {
    f.pos.assign(f.num_vars, {});
    f.neg.assign(f.num_vars, {});
    std::vector<int> pcount(f.num_vars, 0), ncount(f.num_vars, 0);

    for (int j = 0; j < static_cast<int>(f.clauses.size()); ++j) {
        const auto& c = f.clauses[j];
        for (int s = 0; s < 3; ++s)
            for (int t = s + 1; t < 3; ++t)
                if (c[s].var == c[t].var)
                    throw std::invalid_argument("b2sat: clause " + std::to_string(j + 1) +
                                                " repeats variable " + var_name(c[s].var));
        for (int s = 0; s < 3; ++s) {
            const Literal& l = c[s];
            auto& count = l.neg ? ncount[l.var] : pcount[l.var];
            if (count >= 2)
                throw std::invalid_argument("b2sat: variable " + var_name(l.var) + " occurs " +
                                            (l.neg ? std::string("negatively") : "positively") +
                                            " more than twice");
            (l.neg ? f.neg[l.var] : f.pos[l.var])[count] = {j, s};
            ++count;
        }
    }
    for (int v = 0; v < f.num_vars; ++v) {
        if (pcount[v] != 2)
            throw std::invalid_argument("b2sat: variable " + var_name(v) + " occurs positively " +
                                        std::to_string(pcount[v]) + " times, need 2");
        if (ncount[v] != 2)
            throw std::invalid_argument("b2sat: variable " + var_name(v) + " occurs negatively " +
                                        std::to_string(ncount[v]) + " times, need 2");
    }
    f.b2 = true;
}

bool satisfies(const Formula& f, const Assignment& a) {
    if (static_cast<int>(a.size()) != f.num_vars)
        throw std::invalid_argument("assignment size mismatch");
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (const Literal& l : c)
            if (a[l.var] != l.neg) sat = true;
        if (!sat) return false;
    }
    return true;
}

std::optional<Assignment> sat_oracle(const Formula& f) {
    auto all = sat_enumerate(f, 1);
    if (all.empty()) return std::nullopt;
    return all.front();
}

std::vector<Assignment> sat_enumerate(const Formula& f, int limit) {
    if (f.num_vars > 20) throw std::invalid_argument("sat oracle capped at 20 variables");
    std::vector<Assignment> out;
    // Variable 0 is the most significant digit, true before false, so the
    // all-true assignment is tried first.
    for (long m = (1l << f.num_vars) - 1; m >= 0 && static_cast<int>(out.size()) < limit; --m) {
        Assignment a(f.num_vars);
        for (int v = 0; v < f.num_vars; ++v) a[v] = (m >> (f.num_vars - 1 - v)) & 1;
        if (satisfies(f, a)) out.push_back(std::move(a));
    }
    return out;
}

const char* to_string(GadgetKind k) {
    switch (k) {
        case GadgetKind::T1: return "t1";
        case GadgetKind::T2B: return "t2b";
        case GadgetKind::T2NB: return "t2nb";
        case GadgetKind::T3: return "t3";
        default: return "cycle";
    }
}

std::optional<GadgetKind> gadget_from_string(const std::string& name) {
    for (GadgetKind k : {GadgetKind::T1, GadgetKind::T2B, GadgetKind::T2NB, GadgetKind::T3,
                         GadgetKind::Cycle})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

Agent Gadget::at(const std::string& label) const {
    auto it = by_label.find(label);
    if (it == by_label.end()) throw std::out_of_range("no agent labelled '" + label + "'");
    return it->second;
}

namespace {

// Shared agent-layout arithmetic for the three theorem gadgets.
struct Layout {
    GadgetKind kind;
    const Formula& f;
    int per_clause;  // agents per clause
    int per_var;     // agents per variable

    Layout(GadgetKind k, const Formula& formula) : kind(k), f(formula) {
        per_clause = (k == GadgetKind::T2B || k == GadgetKind::T2NB) ? 1 : 9;
        per_var = k == GadgetKind::T1 ? 10 : k == GadgetKind::T2B ? 9 : k == GadgetKind::T2NB ? 18 : 8;
    }

    int num_clauses() const { return static_cast<int>(f.clauses.size()); }
    int n() const { return per_clause * num_clauses() + per_var * f.num_vars; }

    // c_i of clause j, i in 1..9 (or the lone clause player for T2).
    Agent clause_agent(int j, int i = 1) const { return j * per_clause + (i - 1); }

    Agent var_base(int v) const { return per_clause * num_clauses() + per_var * v; }

    // Occurrence agents sit at offsets 0..3 past the base for T1/T3; for T2
    // the five named players come first.
    Agent occ_base(int v) const {
        return var_base(v) + (per_clause == 1 ? 5 : 0);
    }
    Agent pos_occ(int v, int k) const { return occ_base(v) + k; }
    Agent neg_occ(int v, int k) const { return occ_base(v) + 2 + k; }

    Agent occ_agent(const Occurrence& o) const {
        const Literal& l = f.clauses[o.clause][o.slot];
        const auto& occs = l.neg ? f.neg[l.var] : f.pos[l.var];
        int k = (occs[0].clause == o.clause && occs[0].slot == o.slot) ? 0 : 1;
        return l.neg ? neg_occ(l.var, k) : pos_occ(l.var, k);
    }

    // The clause player wired to slot s: c_1/c_4/c_7 for T1/T3.
    Agent port(int j, int s) const {
        return per_clause == 1 ? clause_agent(j) : clause_agent(j, 1 + 3 * s);
    }

    Agent port_of(const Occurrence& o) const { return port(o.clause, o.slot); }
};

void set_label(Gadget& g, Agent a, std::string label) {
    g.by_label[label] = a;
    g.labels[a] = std::move(label);
}

// Strict ranking: one singleton class per entry, best first.
std::vector<std::vector<Agent>> strict(std::initializer_list<Agent> order) {
    std::vector<std::vector<Agent>> r;
    for (Agent a : order) r.push_back({a});
    return r;
}

void clause_ring_orderings(const Layout& lay, std::vector<std::vector<std::vector<Agent>>>& rank) {
    for (int j = 0; j < lay.num_clauses(); ++j) {
        for (int i = 1; i <= 9; ++i) {
            Agent me = lay.clause_agent(j, i);
            Agent next = lay.clause_agent(j, i % 9 + 1);
            Agent prev = lay.clause_agent(j, (i + 7) % 9 + 1);
            if (i == 1 || i == 4 || i == 7)
                rank[me] = strict({lay.occ_agent({j, (i - 1) / 3}), next, prev});
            else
                rank[me] = strict({next, prev});
        }
    }
}

void clause_labels(const Layout& lay, Gadget& g) {
    for (int j = 0; j < lay.num_clauses(); ++j) {
        if (lay.per_clause == 1) {
            set_label(g, lay.clause_agent(j), "c" + std::to_string(j + 1));
        } else {
            for (int i = 1; i <= 9; ++i)
                set_label(g, lay.clause_agent(j, i),
                          "c" + std::to_string(j + 1) + "_" + std::to_string(i));
        }
    }
}

void occurrence_labels(const Layout& lay, Gadget& g) {
    for (int v = 0; v < lay.f.num_vars; ++v) {
        for (int k = 0; k < 2; ++k) {
            set_label(g, lay.pos_occ(v, k), var_name(v) + "_p" + std::to_string(k + 1));
            set_label(g, lay.neg_occ(v, k), var_name(v) + "_n" + std::to_string(k + 1));
        }
    }
}

Gadget build_t1(const Formula& f) {
    Layout lay(GadgetKind::T1, f);
    Gadget g;
    g.kind = GadgetKind::T1;
    g.formula = f;
    g.labels.resize(lay.n());

    std::vector<std::vector<std::vector<Agent>>> rank(lay.n());
    clause_ring_orderings(lay, rank);
    clause_labels(lay, g);
    occurrence_labels(lay, g);

    for (int v = 0; v < f.num_vars; ++v) {
        Agent x1 = lay.pos_occ(v, 0), x2 = lay.pos_occ(v, 1);
        Agent n1 = lay.neg_occ(v, 0), n2 = lay.neg_occ(v, 1);
        Agent a = lay.var_base(v) + 4, a1 = a + 1, a2 = a + 2;
        Agent b = lay.var_base(v) + 7, b1 = b + 1, b2 = b + 2;
        set_label(g, a, var_name(v) + "_a");
        set_label(g, a1, var_name(v) + "_a'");
        set_label(g, a2, var_name(v) + "_a''");
        set_label(g, b, var_name(v) + "_b");
        set_label(g, b1, var_name(v) + "_b'");
        set_label(g, b2, var_name(v) + "_b''");

        rank[x1] = strict({a, n2, lay.port_of(f.pos[v][0])});
        rank[n1] = strict({a, x2, lay.port_of(f.neg[v][0])});
        rank[x2] = strict({b, n1, lay.port_of(f.pos[v][1])});
        rank[n2] = strict({b, x1, lay.port_of(f.neg[v][1])});
        rank[a] = {{std::min(x1, n1), std::max(x1, n1)}, {a1}};
        rank[a1] = strict({a, a2});
        rank[a2] = strict({a1});
        rank[b] = {{std::min(x2, n2), std::max(x2, n2)}, {b1}};
        rank[b1] = strict({b, b2});
        rank[b2] = strict({b1});
    }
    g.profile = OrderingProfile::make(lay.n(), std::move(rank));
    return g;
}

Gadget build_t2(GadgetKind kind, const Formula& f) {
    Layout lay(kind, f);
    Gadget g;
    g.kind = kind;
    g.formula = f;
    g.labels.resize(lay.n());

    std::vector<std::vector<std::vector<Agent>>> rank(lay.n());
    clause_labels(lay, g);
    occurrence_labels(lay, g);

    for (int j = 0; j < lay.num_clauses(); ++j) {
        // Clause player ranks its occurrences in clause-literal order.
        Agent c = lay.clause_agent(j);
        rank[c] = strict({lay.occ_agent({j, 0}), lay.occ_agent({j, 1}), lay.occ_agent({j, 2})});
    }

    for (int v = 0; v < f.num_vars; ++v) {
        Agent base = lay.var_base(v);
        Agent stalker = base, main = base + 1, pos = base + 2, neg = base + 3, garbage = base + 4;
        set_label(g, stalker, var_name(v) + "_stalker");
        set_label(g, main, var_name(v) + "_main");
        set_label(g, pos, var_name(v) + "_pos");
        set_label(g, neg, var_name(v) + "_neg");
        set_label(g, garbage, var_name(v) + "_garbage");

        Agent x1 = lay.pos_occ(v, 0), x2 = lay.pos_occ(v, 1);
        Agent n1 = lay.neg_occ(v, 0), n2 = lay.neg_occ(v, 1);

        rank[x1] = strict({lay.port_of(f.pos[v][0]), pos, main});
        rank[x2] = strict({lay.port_of(f.pos[v][1]), pos, garbage});
        rank[n1] = strict({lay.port_of(f.neg[v][0]), neg, main});
        rank[n2] = strict({lay.port_of(f.neg[v][1]), neg, garbage});
        rank[pos] = strict({x1, x2});
        rank[neg] = strict({n1, n2});
        rank[garbage] = strict({x2, n2});

        if (kind == GadgetKind::T2B) {
            rank[stalker] = strict({main});  // unrequited
            rank[main] = strict({x1, n1});
        } else {
            Agent r1 = base + 9;
            rank[main] = strict({stalker, x1, n1});
            rank[stalker] = strict({main, r1});
            rank[r1] = strict({stalker, r1 + 1, r1 + 8});
            for (int i = 2; i <= 9; ++i) {
                Agent me = r1 + i - 1;
                rank[me] = strict({r1 + i % 9, r1 + (i + 7) % 9});
                set_label(g, me, var_name(v) + "_r" + std::to_string(i));
            }
            set_label(g, r1, var_name(v) + "_r1");
        }
    }
    g.profile = OrderingProfile::make(lay.n(), std::move(rank));
    return g;
}

Gadget build_t3(const Formula& f) {
    Layout lay(GadgetKind::T3, f);
    Gadget g;
    g.kind = GadgetKind::T3;
    g.formula = f;
    g.labels.resize(lay.n());

    std::vector<std::vector<std::vector<Agent>>> rank(lay.n());
    clause_ring_orderings(lay, rank);
    clause_labels(lay, g);
    occurrence_labels(lay, g);

    for (int v = 0; v < f.num_vars; ++v) {
        Agent x1 = lay.pos_occ(v, 0), x2 = lay.pos_occ(v, 1);
        Agent n1 = lay.neg_occ(v, 0), n2 = lay.neg_occ(v, 1);
        Agent a = lay.var_base(v) + 4, b = a + 1, c = a + 2, d = a + 3;
        set_label(g, a, var_name(v) + "_a");
        set_label(g, b, var_name(v) + "_b");
        set_label(g, c, var_name(v) + "_c");
        set_label(g, d, var_name(v) + "_d");

        rank[x1] = strict({a, b, n2, lay.port_of(f.pos[v][0])});
        rank[n1] = strict({b, a, x2, lay.port_of(f.neg[v][0])});
        rank[x2] = strict({c, d, n1, lay.port_of(f.pos[v][1])});
        rank[n2] = strict({d, c, x1, lay.port_of(f.neg[v][1])});
        rank[a] = strict({b, x1, n1});
        rank[b] = strict({a, n1, x1});
        rank[c] = strict({d, x2, n2});
        rank[d] = strict({c, n2, x2});
    }
    g.profile = OrderingProfile::make(lay.n(), std::move(rank));
    return g;
}

// Pair off the c-players not matched with a literal. Within each maximal
// cyclic run between matched positions, an odd run leaves its first player
// single, then consecutive pairs.
void pair_clause_remainder(const Layout& lay, int j, const std::vector<char>& matched,
                           Partition& pi) {
    std::vector<int> anchors;
    for (int p : {1, 4, 7})
        if (matched[p]) anchors.push_back(p);
    for (size_t k = 0; k < anchors.size(); ++k) {
        int from = anchors[k];
        int to = anchors[(k + 1) % anchors.size()];
        std::vector<Agent> run;
        for (int p = from % 9 + 1; p != to; p = p % 9 + 1) run.push_back(lay.clause_agent(j, p));
        size_t start = 0;
        if (run.size() % 2 == 1) {
            pi.blocks.push_back({run[0]});
            start = 1;
        }
        for (size_t q = start; q + 1 < run.size(); q += 2)
            pi.blocks.push_back(sorted_coalition({run[q], run[q + 1]}));
    }
}

Partition construct_t1_t3(const Gadget& g, const Assignment& a) {
    Layout lay(g.kind, g.formula);
    const Formula& f = g.formula;
    Partition pi;

    for (int j = 0; j < lay.num_clauses(); ++j) {
        std::vector<char> matched(10, 0);
        for (int s = 0; s < 3; ++s) {
            const Literal& l = f.clauses[j][s];
            if (a[l.var] != l.neg) {
                matched[1 + 3 * s] = 1;
                pi.blocks.push_back(sorted_coalition({lay.port(j, s), lay.occ_agent({j, s})}));
            }
        }
        pair_clause_remainder(lay, j, matched, pi);
    }

    for (int v = 0; v < f.num_vars; ++v) {
        // The two false occurrences go to the auxiliary agents.
        Agent first = a[v] ? lay.neg_occ(v, 0) : lay.pos_occ(v, 0);
        Agent second = a[v] ? lay.neg_occ(v, 1) : lay.pos_occ(v, 1);
        Agent aa = lay.var_base(v) + 4;
        if (g.kind == GadgetKind::T1) {
            Agent bb = lay.var_base(v) + 7;
            pi.blocks.push_back(sorted_coalition({first, aa}));
            pi.blocks.push_back(sorted_coalition({second, bb}));
            pi.blocks.push_back({aa + 1, aa + 2});
            pi.blocks.push_back({bb + 1, bb + 2});
        } else {
            pi.blocks.push_back(sorted_coalition({first, aa, aa + 1}));
            pi.blocks.push_back(sorted_coalition({second, aa + 2, aa + 3}));
        }
    }
    return pi;
}

Partition construct_t2(const Gadget& g, const Assignment& a) {
    Layout lay(g.kind, g.formula);
    const Formula& f = g.formula;
    Partition pi;

    // matched = is true(c) of its clause, i.e. the first true literal.
    std::vector<char> matched(lay.n(), 0);
    for (int j = 0; j < lay.num_clauses(); ++j) {
        for (int s = 0; s < 3; ++s) {
            const Literal& l = f.clauses[j][s];
            if (a[l.var] != l.neg) {
                Agent occ = lay.occ_agent({j, s});
                matched[occ] = 1;
                pi.blocks.push_back(sorted_coalition({lay.clause_agent(j), occ}));
                break;
            }
        }
    }

    for (int v = 0; v < f.num_vars; ++v) {
        Agent base = lay.var_base(v);
        Agent stalker = base, main = base + 1, pos = base + 2, neg = base + 3, garbage = base + 4;
        Agent x1 = lay.pos_occ(v, 0), x2 = lay.pos_occ(v, 1);
        Agent n1 = lay.neg_occ(v, 0), n2 = lay.neg_occ(v, 1);

        if (g.kind == GadgetKind::T2B) {
            pi.blocks.push_back({stalker});
        } else {
            Agent r1 = base + 9;
            pi.blocks.push_back(sorted_coalition({stalker, r1}));
            for (int i = 1; i <= 7; i += 2) pi.blocks.push_back({r1 + i, r1 + i + 1});
        }

        // Leftover occurrences of the true side pair with pos/neg; the spill
        // goes to garbage.
        Agent keeper = a[v] ? pos : neg;
        Agent o1 = a[v] ? x1 : n1, o2 = a[v] ? x2 : n2;
        pi.blocks.push_back(sorted_coalition({main, a[v] ? n1 : x1}));
        pi.blocks.push_back(sorted_coalition({a[v] ? neg : pos, a[v] ? n2 : x2}));
        if (matched[o1] && matched[o2]) {
            pi.blocks.push_back({keeper});
            pi.blocks.push_back({garbage});
        } else if (matched[o1]) {
            pi.blocks.push_back(sorted_coalition({o2, keeper}));
            pi.blocks.push_back({garbage});
        } else if (matched[o2]) {
            pi.blocks.push_back(sorted_coalition({o1, keeper}));
            pi.blocks.push_back({garbage});
        } else {
            pi.blocks.push_back(sorted_coalition({o1, keeper}));
            pi.blocks.push_back(sorted_coalition({o2, garbage}));
        }
    }
    return pi;
}

}  // namespace

Gadget build_gadget(GadgetKind kind, const Formula& f) {
    Formula checked = f;
    if (!checked.b2) validate_b2sat(checked);
    switch (kind) {
        case GadgetKind::T1: return build_t1(checked);
        case GadgetKind::T2B:
        case GadgetKind::T2NB: return build_t2(kind, checked);
        case GadgetKind::T3: return build_t3(checked);
        default: throw std::invalid_argument("cycle gadgets are built by cycle_gadget(n)");
    }
}

Partition construct_partition(const Gadget& g, const Assignment& a) {
    if (g.kind == GadgetKind::Cycle)
        throw std::invalid_argument("no constructed partition for cycle gadgets");
    if (!satisfies(g.formula, a))
        throw std::invalid_argument("assignment does not satisfy the formula");
    if (g.kind == GadgetKind::T1 || g.kind == GadgetKind::T3) return construct_t1_t3(g, a);
    return construct_t2(g, a);
}

Assignment extract_assignment(const Gadget& g, const Partition& pi) {
    if (g.kind == GadgetKind::Cycle)
        throw std::invalid_argument("no assignment extraction for cycle gadgets");
    const Formula& f = g.formula;
    Layout lay(g.kind, f);
    auto block = pi.block_of(lay.n());
    auto together = [&](Agent i, Agent j) { return block[i] >= 0 && block[i] == block[j]; };

    Assignment a(f.num_vars);
    for (int v = 0; v < f.num_vars; ++v) {
        if (g.kind == GadgetKind::T2B || g.kind == GadgetKind::T2NB) {
            Agent main = lay.var_base(v) + 1;
            Agent x1 = lay.pos_occ(v, 0), n1 = lay.neg_occ(v, 0);
            if (together(main, n1))
                a[v] = true;
            else if (together(main, x1))
                a[v] = false;
            else
                throw std::runtime_error("undefined variable " + var_name(v) +
                                         ": " + var_name(v) + "_main is with neither " +
                                         var_name(v) + "_p1 nor " + var_name(v) + "_n1");
            continue;
        }
        bool t = together(lay.port_of(f.pos[v][0]), lay.occ_agent(f.pos[v][0])) ||
                 together(lay.port_of(f.pos[v][1]), lay.occ_agent(f.pos[v][1]));
        bool ff = together(lay.port_of(f.neg[v][0]), lay.occ_agent(f.neg[v][0])) ||
                  together(lay.port_of(f.neg[v][1]), lay.occ_agent(f.neg[v][1]));
        if (t && ff)
            throw std::runtime_error("contradictory variable " + var_name(v) +
                                     ": both a positive and a negative occurrence sit with "
                                     "their clause player");
        if (!t && !ff)
            throw std::runtime_error("undefined variable " + var_name(v) +
                                     ": no occurrence sits with its clause player");
        a[v] = t;
    }
    return a;
}

Gadget cycle_gadget(int n) {
    if (n != 5 && n != 9) throw std::invalid_argument("cycle gadget supports n = 5 or 9");
    Gadget g;
    g.kind = GadgetKind::Cycle;
    g.labels.resize(n);
    std::vector<std::vector<std::vector<Agent>>> rank(n);
    for (int i = 0; i < n; ++i) {
        rank[i] = strict({(i + 1) % n, (i + n - 1) % n});
        set_label(g, i, "p" + std::to_string(i + 1));
    }
    g.profile = OrderingProfile::make(n, std::move(rank));
    return g;
}

}  // namespace hedonica
