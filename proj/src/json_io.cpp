#include "hedonica/json_io.hpp"

#include <json.hpp>

#include "hedonica/graph.hpp"

namespace hedonica {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("json: parse error");
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json partition_json(const Partition& pi) {
    json arr = json::array();
    for (const auto& b : pi.blocks) arr.push_back(b);
    return arr;
}

Partition partition_value(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("partition: expected an array of blocks");
    Partition pi;
    for (const auto& b : j) {
        if (!b.is_array() || b.empty())
            throw std::invalid_argument("partition: blocks must be nonempty arrays");
        Coalition c;
        for (const auto& a : b) {
            if (!a.is_number_integer()) throw std::invalid_argument("partition: agents are ints");
            c.push_back(a.get<Agent>());
        }
        pi.blocks.push_back(sorted_coalition(std::move(c)));
    }
    return pi;
}

}  // namespace

std::string game_to_json(const GameDocument& doc) {
    json j;
    j["n"] = doc.profile.n;
    j["family"] = to_string(doc.family);
    j["rankings"] = doc.profile.ranking;

    json params;
    if (doc.family == FamilyTag::LApproval) params["l"] = doc.params.l;
    if (doc.params.a_override) params["a"] = *doc.params.a_override;
    if (doc.params.b_override) params["b"] = *doc.params.b_override;
    j["params"] = params.is_null() ? json::object() : params;

    json agents = json::array();
    for (Agent i = 0; i < doc.profile.n; ++i) {
        json a;
        a["index"] = i;
        if (i < static_cast<int>(doc.labels.size()) && !doc.labels[i].empty())
            a["label"] = doc.labels[i];
        agents.push_back(a);
    }
    j["agents"] = agents;
    return dump(j);
}

GameDocument game_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object() || !j.contains("n") || !j.contains("rankings") || !j.contains("family"))
        throw std::invalid_argument("game: need keys n, family, rankings");

    GameDocument doc;
    int n = j["n"].get<int>();
    auto ranking = j["rankings"].get<std::vector<std::vector<std::vector<Agent>>>>();
    doc.profile = OrderingProfile::make(n, std::move(ranking));

    auto fam = family_from_string(j["family"].get<std::string>());
    if (!fam) throw std::invalid_argument("game: unknown family '" +
                                          j["family"].get<std::string>() + "'");
    doc.family = *fam;

    if (j.contains("params")) {
        const json& p = j["params"];
        if (p.contains("l")) doc.params.l = p["l"].get<int>();
        if (p.contains("a")) doc.params.a_override = p["a"].get<long long>();
        if (p.contains("b")) doc.params.b_override = p["b"].get<long long>();
    }
    doc.labels.assign(n, "");
    if (j.contains("agents"))
        for (const auto& a : j["agents"]) {
            int i = a.at("index").get<int>();
            if (i < 0 || i >= n) throw std::invalid_argument("game: agent index out of range");
            if (a.contains("label")) doc.labels[i] = a["label"].get<std::string>();
        }
    return doc;
}

std::string partition_to_json(const Partition& pi) { return dump(partition_json(pi)); }

Partition partition_from_json(const std::string& text) { return partition_value(parse(text)); }

std::string report_to_json(const StabilityReport& r) {
    json j;
    j["concept"] = to_string(r.kind);
    j["stable"] = r.stable;
    j["exhaustive"] = r.exhaustive;
    j["bounds"] = {{"max_coalition_size", r.bounds.max_coalition_size},
                   {"max_group", r.bounds.max_group}};
    json w;
    if (r.blocking) w["blocking"] = *r.blocking;
    if (r.move) {
        json m;
        m["agent"] = r.move->agent;
        if (r.move->target_block)
            m["target_block"] = *r.move->target_block;
        else
            m["target_block"] = nullptr;
        m["coalition"] = r.move->new_coalition;
        w["move"] = m;
    }
    if (r.deviation) {
        w["deviators"] = r.deviation->deviators;
        w["successor"] = partition_json(r.deviation->successor);
    }
    j["witness"] = w.is_null() ? json::object() : w;
    return dump(j);
}

std::string to_dot(const OrderingProfile& profile, const std::vector<std::string>& labels) {
    FriendshipGraph g = friendship_graph(profile);
    auto name = [&](Agent i) {
        if (i < static_cast<int>(labels.size()) && !labels[i].empty())
            return "\"" + labels[i] + "\"";
        return std::to_string(i);
    };
    std::string out = "digraph friendships {\n  edge [dir=none];\n";
    for (Agent i = 0; i < g.n; ++i)
        for (Agent j : g.adj[i])
            if (i < j) out += "  " + name(i) + " -> " + name(j) + ";\n";
    for (auto [i, j] : g.one_sided)
        out += "  " + name(i) + " -> " + name(j) + " [dir=forward, style=dashed];\n";
    out += "}\n";
    return out;
}

}  // namespace hedonica
