#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hedonica/graph.hpp"
#include "hedonica/json_io.hpp"
#include "hedonica/properties.hpp"
#include "hedonica/rgs.hpp"
#include "hedonica/reductions.hpp"
#include "hedonica/stability.hpp"

using namespace hedonica;

namespace {

constexpr int kExitStable = 0;
constexpr int kExitUnstable = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitOverCap = 4;

int worker_count() {
    if (const char* env = std::getenv("HEDONICA_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::invalid_argument("cannot read '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out.good()) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

FamilyTag parse_family(const std::string& name) {
    auto f = family_from_string(name);
    if (!f) throw std::invalid_argument("unknown family '" + name + "'");
    return *f;
}

StabilityConcept parse_concept(const std::string& name) {
    auto c = concept_from_string(name);
    if (!c) throw std::invalid_argument("unknown concept '" + name + "'");
    return *c;
}

Gadget gadget_from_args(const std::string& theorem, const std::string& cnf_path) {
    auto kind = gadget_from_string(theorem);
    if (!kind || *kind == GadgetKind::Cycle)
        throw std::invalid_argument("theorem must be one of t1, t2b, t2nb, t3");
    Formula f = parse_cnf(slurp(cnf_path));
    validate_b2sat(f);
    return build_gadget(*kind, f);
}

// "1 -2 3": every variable exactly once, sign gives the truth value.
Assignment parse_assignment(const std::string& text, int num_vars) {
    Assignment a(num_vars);
    std::vector<char> seen(num_vars, 0);
    std::istringstream in(text);
    int lit;
    while (in >> lit) {
        int v = std::abs(lit);
        if (v < 1 || v > num_vars)
            throw std::invalid_argument("assignment variable " + std::to_string(v) +
                                        " out of range");
        if (seen[v - 1]) throw std::invalid_argument("assignment repeats variable " +
                                                     std::to_string(v));
        seen[v - 1] = 1;
        a[v - 1] = lit > 0;
    }
    if (!in.eof()) throw std::invalid_argument("assignment: stray token");
    for (int v = 0; v < num_vars; ++v)
        if (!seen[v])
            throw std::invalid_argument("assignment misses variable " + std::to_string(v + 1));
    return a;
}

std::string assignment_line(const Assignment& a) {
    std::string out;
    for (size_t v = 0; v < a.size(); ++v) {
        if (v) out += " ";
        out += (a[v] ? "" : "-") + std::to_string(v + 1);
    }
    return out;
}

void print_graph_stats(const OrderingProfile& profile, std::ostream& os) {
    GraphStats s = graph_stats(with_arcs_as_edges(friendship_graph(profile)));
    os << "agents: " << profile.n << "\n"
       << "max degree: " << s.max_degree << "\n"
       << "girth: " << (s.girth ? std::to_string(*s.girth) : std::string("acyclic")) << "\n"
       << "bipartite: " << (s.bipartite ? "yes" : "no") << "\n"
       << "mutual: " << (s.mutual ? "yes" : "no") << "\n";
}

int cmd_reduce(const std::string& theorem, const std::string& family, int l,
               const std::string& cnf_path, const std::string& out, const std::string& dot) {
    Gadget g;
    if (theorem == "cycle5" || theorem == "cycle9") {
        g = cycle_gadget(theorem == "cycle5" ? 5 : 9);
    } else {
        if (cnf_path.empty()) throw std::invalid_argument("a CNF file is required");
        g = gadget_from_args(theorem, cnf_path);
    }
    GameDocument doc;
    doc.profile = g.profile;
    doc.labels = g.labels;
    doc.family = parse_family(family);
    doc.params.l = l;
    emit(game_to_json(doc), out);
    if (!dot.empty()) emit(to_dot(doc.profile, doc.labels), dot);
    print_graph_stats(doc.profile, std::cerr);
    return 0;
}

int cmd_construct(const std::string& theorem, const std::string& cnf_path,
                  const std::string& assignment, const std::string& out) {
    Gadget g = gadget_from_args(theorem, cnf_path);
    Assignment a;
    if (assignment.empty()) {
        auto found = sat_oracle(g.formula);
        if (!found) throw std::invalid_argument("formula is unsatisfiable");
        a = *found;
    } else {
        a = parse_assignment(assignment, g.formula.num_vars);
    }
    emit(partition_to_json(construct_partition(g, a)), out);
    std::cerr << "assignment: " << assignment_line(a) << "\n";
    return 0;
}

int cmd_extract(const std::string& theorem, const std::string& cnf_path,
                const std::string& partition_path) {
    Gadget g = gadget_from_args(theorem, cnf_path);
    Partition pi = partition_from_json(slurp(partition_path));
    if (auto err = validate_partition(pi, g.profile.n)) throw std::invalid_argument(*err);
    Assignment a = extract_assignment(g, pi);
    std::cout << assignment_line(a) << "\n";
    std::cerr << (satisfies(g.formula, a) ? "satisfies the formula\n"
                                          : "does not satisfy the formula\n");
    return 0;
}

int cmd_check(const std::string& concept_name, int max_size, int max_h,
              const std::string& game_path, const std::string& partition_path) {
    GameDocument doc = game_from_json(slurp(game_path));
    GameInstance game = doc.instantiate();
    Partition pi = partition_from_json(slurp(partition_path));
    if (auto err = validate_partition(pi, game.n())) throw std::invalid_argument(*err);
    StabilityReport r =
        is_stable(game, pi, parse_concept(concept_name), SearchBounds{max_size, max_h});
    std::cout << report_to_json(r);
    std::cerr << "elapsed: " << r.elapsed_ms << " ms\n";
    if (!r.stable) return kExitUnstable;
    return r.exhaustive ? kExitStable : kExitInconclusive;
}

int cmd_solve(const std::string& concept_name, const std::string& game_path,
              const std::string& out) {
    GameDocument doc = game_from_json(slurp(game_path));
    GameInstance game = doc.instantiate();
    StabilityConcept c = parse_concept(concept_name);
    int cap = is_group_concept(c) ? kGroupExhaustiveCap : kBruteForceCap;
    if (game.n() > cap) {
        std::cerr << "n = " << game.n() << " exceeds the exhaustive cap (" << cap << ") for "
                  << to_string(c) << "\n";
        return kExitOverCap;
    }
    auto pi = exists_stable(game, c, worker_count());
    if (!pi) {
        std::cout << "none\n";
        return kExitUnstable;
    }
    emit(partition_to_json(*pi), out);
    return kExitStable;
}

int cmd_verify_family(const std::string& family, const std::string& theorem, int n, int seeds,
                      unsigned seed, int l) {
    auto t = theorem_from_string(theorem);
    if (!t) throw std::invalid_argument("unknown theorem contract '" + theorem + "'");
    if (n > 12) throw std::invalid_argument("verify-family is capped at n = 12");
    FamilyParams params;
    params.l = l;
    ContractReport r = verify_family_contract(parse_family(family), params, *t, n, seeds, seed);
    std::cout << "family " << family << ", contract " << theorem << ", n=" << n << ", profiles="
              << r.profiles_checked << ", prng=mt19937, seed=" << seed << "\n";
    for (const auto& p : r.reports) {
        std::cout << "  " << p.property << ": " << (p.holds ? "pass" : "FAIL");
        if (!p.holds && p.witness) {
            std::cout << " (agent " << p.witness->agent;
            if (!p.witness->note.empty()) std::cout << ", " << p.witness->note;
            std::cout << ")";
        }
        std::cout << "\n";
    }
    return r.all_hold ? 0 : 1;
}

int cmd_dynamics(const std::string& concept_name, const std::string& game_path,
                 const std::string& start_path, int budget) {
    GameDocument doc = game_from_json(slurp(game_path));
    GameInstance game = doc.instantiate();
    StabilityConcept c = parse_concept(concept_name);
    if (c != StabilityConcept::NS && c != StabilityConcept::IS)
        throw std::invalid_argument("dynamics supports ns and is only");
    Partition start;
    if (start_path.empty()) {
        for (Agent i = 0; i < game.n(); ++i) start.blocks.push_back({i});
    } else {
        start = partition_from_json(slurp(start_path));
        if (auto err = validate_partition(start, game.n())) throw std::invalid_argument(*err);
    }
    DynamicsOutcome out = run_dynamics(game, c, std::move(start), budget);
    std::cout << "stabilized: " << (out.stabilized ? "yes" : "no") << "\nsteps: " << out.steps
              << "\n" << partition_to_json(out.final);
    return out.stabilized ? 0 : 1;
}

int cmd_stats(const std::string& game_path, const std::string& dot) {
    GameDocument doc = game_from_json(slurp(game_path));
    print_graph_stats(doc.profile, std::cout);
    FriendshipGraph g = friendship_graph(doc.profile);
    std::cout << "chordless 4-cycle: " << (has_chordless_4cycle(g) ? "yes" : "no") << "\n";
    if (!dot.empty()) emit(to_dot(doc.profile, doc.labels), dot);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hedonic games: families, stability, and SAT gadgets"};
    app.require_subcommand(1);

    std::string theorem, family = "as", concept_name, cnf_path, game_path, partition_path;
    std::string out, dot, assignment, start_path;
    int l = 4, max_size = 7, max_h = 4, n = 7, seeds = 100, budget = 1000;
    unsigned seed = 1;

    auto* reduce = app.add_subcommand("reduce", "compile a (3,B2)-SAT formula into a gadget game");
    reduce->add_option("--theorem", theorem, "t1|t2b|t2nb|t3|cycle5|cycle9")->required();
    reduce->add_option("--family", family, "family tag interpreting the orderings");
    reduce->add_option("--l", l, "l-approval parameter");
    reduce->add_option("cnf", cnf_path, "DIMACS input (not needed for cycles)");
    reduce->add_option("-o,--output", out, "game JSON path (default: stdout)");
    reduce->add_option("--emit-dot", dot, "write the friendship graph as DOT");

    auto* construct = app.add_subcommand("construct", "build the hand-made stable partition");
    construct->add_option("--theorem", theorem)->required();
    construct->add_option("cnf", cnf_path)->required();
    construct->add_option("--assignment", assignment,
                          "signed literals, e.g. \"1 -2 3\" (default: solver)");
    construct->add_option("-o,--output", out);

    auto* extract = app.add_subcommand("extract", "read an assignment off a partition");
    extract->add_option("--theorem", theorem)->required();
    extract->add_option("cnf", cnf_path)->required();
    extract->add_option("partition", partition_path)->required();

    auto* check = app.add_subcommand("check", "decide stability of a partition");
    check->add_option("--concept", concept_name, "cr|scr|ns|is|sns|ssns|sis")->required();
    check->add_option("--max-size", max_size, "bounded-search coalition size cap");
    check->add_option("--max-h", max_h, "bounded-search deviating-group cap");
    check->add_option("game", game_path)->required();
    check->add_option("partition", partition_path)->required();

    auto* solve = app.add_subcommand("solve", "search for a stable partition");
    solve->add_option("--concept", concept_name)->required();
    solve->add_option("game", game_path)->required();
    solve->add_option("-o,--output", out);

    auto* verify = app.add_subcommand("verify-family", "property contracts on random profiles");
    verify->add_option("--family", family)->required();
    verify->add_option("--theorem", theorem, "t1|t1sns|t2b|t2nb|t3|t3sns|t3ssns")->required();
    verify->add_option("--n", n);
    verify->add_option("--seeds", seeds);
    verify->add_option("--seed", seed);
    verify->add_option("--l", l);

    auto* dynamics = app.add_subcommand("dynamics", "iterate single-agent deviations");
    dynamics->add_option("--concept", concept_name, "ns|is")->required();
    dynamics->add_option("game", game_path)->required();
    dynamics->add_option("--start", start_path, "starting partition (default: singletons)");
    dynamics->add_option("--budget", budget);

    auto* stats = app.add_subcommand("stats", "graph statistics of a game file");
    stats->add_option("game", game_path)->required();
    stats->add_option("--emit-dot", dot);

    CLI11_PARSE(app, argc, argv);

    try {
        if (reduce->parsed()) return cmd_reduce(theorem, family, l, cnf_path, out, dot);
        if (construct->parsed()) return cmd_construct(theorem, cnf_path, assignment, out);
        if (extract->parsed()) return cmd_extract(theorem, cnf_path, partition_path);
        if (check->parsed())
            return cmd_check(concept_name, max_size, max_h, game_path, partition_path);
        if (solve->parsed()) return cmd_solve(concept_name, game_path, out);
        if (verify->parsed()) return cmd_verify_family(family, theorem, n, seeds, seed, l);
        if (dynamics->parsed()) return cmd_dynamics(concept_name, game_path, start_path, budget);
        if (stats->parsed()) return cmd_stats(game_path, dot);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
