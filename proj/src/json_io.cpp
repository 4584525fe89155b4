#include "gpcip/json_io.hpp"

#include <bit>
#include <stdexcept>

namespace gpcip {

namespace {

Json rows_to_json(const std::vector<std::vector<Fp>>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json r = Json::array();
        for (const Fp& x : row) r.push_back(x.value());
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::vector<Fp>> rows_from_json(const Json& j, std::uint32_t q) {
    std::vector<std::vector<Fp>> rows;
    for (const auto& r : j) {
        std::vector<Fp> row;
        for (const auto& x : r) row.push_back(Fp(x.get<std::int64_t>(), q));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json block_to_json(const QueryBlock& blk) {
    Json b;
    b["indices"] = blk.indices;
    b["coeff_rows"] = rows_to_json(blk.coeff_rows);
    return b;
}

QueryBlock block_from_json(const Json& j, std::uint32_t q) {
    QueryBlock b;
    b.indices = j.at("indices").get<std::vector<int>>();
    b.coeff_rows = rows_from_json(j.at("coeff_rows"), q);
    return b;
}

Json message_to_json(const MessageVec& x) {
    Json out = Json::array();
    for (const Fp& s : x.symbols) out.push_back(s.value());
    return out;
}

MessageVec message_from_json(const Json& j, std::uint32_t q) {
    std::vector<Fp> symbols;
    for (const auto& x : j) symbols.push_back(Fp(x.get<std::int64_t>(), q));
    return MessageVec(std::move(symbols));
}

}  // namespace

Json query_to_json(const Query& query) {
    Json j;
    j["K"] = query.K;
    j["q"] = query.q;
    j["m"] = query.m;
    j["rho"] = query.rho;
    j["alpha"] = query.alpha;
    j["gamma"] = query.gamma;
    j["D"] = query.D;
    j["q0"] = block_to_json(query.q0);
    Json parts = Json::array();
    for (const auto& blk : query.parts) parts.push_back(block_to_json(blk));
    j["parts"] = std::move(parts);
    return j;
}

Query query_from_json(const Json& j) {
    Query query;
    query.K = j.at("K").get<int>();
    query.q = j.at("q").get<std::uint32_t>();
    query.m = j.at("m").get<int>();
    query.rho = j.at("rho").get<int>();
    query.alpha = j.at("alpha").get<int>();
    query.gamma = j.at("gamma").get<int>();
    query.D = j.at("D").get<int>();
    query.q0 = block_from_json(j.at("q0"), query.q);
    for (const auto& blk : j.at("parts")) query.parts.push_back(block_from_json(blk, query.q));
    return query;
}

Json answer_to_json(const Answer& answer) {
    Json j;
    Json a0 = Json::array();
    for (const auto& x : answer.a0) a0.push_back(message_to_json(x));
    j["a0"] = std::move(a0);
    Json ai = Json::array();
    for (const auto& blk : answer.ai) {
        Json b = Json::array();
        for (const auto& x : blk) b.push_back(message_to_json(x));
        ai.push_back(std::move(b));
    }
    j["ai"] = std::move(ai);
    return j;
}

Answer answer_from_json(const Json& j, const Query& query) {
    Answer answer;
    for (const auto& x : j.at("a0")) answer.a0.push_back(message_from_json(x, query.q));
    for (const auto& blk : j.at("ai")) {
        std::vector<MessageVec> b;
        for (const auto& x : blk) b.push_back(message_from_json(x, query.q));
        answer.ai.push_back(std::move(b));
    }
    return answer;
}

Json key_to_json(const QueryKey& key) {
    Json j;
    j["q0"] = key.q0;
    j["parts"] = key.parts;
    return j;
}

Json graph_to_json(const Digraph& g) {
    Json j;
    j["n"] = g.n();
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
    j["edges"] = std::move(edges);
    return j;
}

Digraph graph_from_json(const Json& j) {
    Digraph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) {
        if (e.size() != 2) throw std::invalid_argument("edge must be a [u, v] pair");
        g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
}

Json relation_to_json(const SetRelation& rel) {
    Json j;
    j["K"] = rel.K;
    j["M"] = rel.M;
    j["D"] = rel.D;
    Json entries = Json::array();
    for (const auto& [I, J] : rel.f) {
        Json e;
        std::vector<int> iv, jv;
        for (int b = 0; b < rel.K; ++b) {
            if (I >> b & 1) iv.push_back(b + 1);
            if (J >> b & 1) jv.push_back(b + 1);
        }
        e["I"] = iv;
        e["J"] = jv;
        entries.push_back(std::move(e));
    }
    j["f"] = std::move(entries);
    return j;
}

SetRelation relation_from_json(const Json& j) {
    SetRelation rel;
    rel.K = j.at("K").get<int>();
    rel.M = j.at("M").get<int>();
    rel.D = j.at("D").get<int>();
    if (rel.K < 1 || rel.K > 62) throw std::invalid_argument("K must be in [1, 62]");
    for (const auto& e : j.at("f")) {
        std::uint64_t I = 0, J = 0;
        for (int i : e.at("I").get<std::vector<int>>()) {
            if (i < 1 || i > rel.K) throw std::invalid_argument("relation index out of range");
            I |= 1ull << (i - 1);
        }
        for (int i : e.at("J").get<std::vector<int>>()) {
            if (i < 1 || i > rel.K) throw std::invalid_argument("relation index out of range");
            J |= 1ull << (i - 1);
        }
        rel.f[I] = J;
    }
    return rel;
}

Json instance_to_json(const Instance& inst) {
    Json j;
    j["K"] = inst.K;
    j["M"] = inst.M;
    j["D"] = inst.D;
    j["q"] = inst.q;
    j["m"] = inst.m;
    return j;
}

Json privacy_report_to_json(const Instance& inst, const PrivacyReport& report) {
    Json j;
    j["instance"] = instance_to_json(inst);
    j["keys_checked"] = report.keys_checked;
    j["pass"] = report.pass;
    j["worst_violation"] = to_string(report.worst_violation);
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        Json e;
        e["key"] = key_to_json(v.key);
        e["j"] = v.j;
        e["posterior"] = to_string(v.posterior);
        violations.push_back(std::move(e));
    }
    j["violations"] = std::move(violations);
    return j;
}

Json goodrel_report_to_json(const SetRelation& rel, const GoodRelationReport& report) {
    auto condition = [](const ConditionReport& c) {
        Json j;
        j["pass"] = c.pass;
        j["witnesses"] = c.witnesses;
        return j;
    };
    Json j;
    j["K"] = rel.K;
    j["M"] = rel.M;
    j["D"] = rel.D;
    Json conditions;
    conditions["i"] = condition(report.contains_input);
    conditions["ii"] = condition(report.demand_cover);
    conditions["iii"] = condition(report.closure);
    conditions["iv"] = condition(report.avoidance);
    j["conditions"] = std::move(conditions);
    j["codomain_ok"] = report.codomain_ok;
    j["nonconforming"] = report.nonconforming;
    j["good"] = report.good;
    return j;
}

Json scan_report_to_json(int K, int D, const ScanReport& report) {
    Json j;
    j["K"] = K;
    j["D"] = D;
    j["graphs_scanned"] = report.graphs_scanned;
    j["d_graphs_found"] = report.d_graphs_found;
    j["max_mu_ext"] = report.max_mu_ext;
    j["bound"] = report.bound;
    Json ces = Json::array();
    for (const auto& edges : report.counterexamples) {
        Json e = Json::array();
        for (auto [u, v] : edges) e.push_back(Json::array({u, v}));
        ces.push_back(std::move(e));
    }
    j["counterexamples"] = std::move(ces);
    return j;
}

}  // namespace gpcip
