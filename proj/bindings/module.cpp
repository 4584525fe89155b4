#include "gpcip/audit.hpp"
#include "gpcip/digraph.hpp"
#include "gpcip/json_io.hpp"
#include "gpcip/protocol.hpp"
#include "gpcip/relation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace gpcip;

namespace {

Instance make_instance(int K, int M, int D, std::uint32_t q, int m) {
    Instance inst{K, M, D, q, m};
    if (inst.q == 0) inst.q = next_prime_at_least(static_cast<std::uint32_t>(inst.alpha()));
    inst.validate();
    return inst;
}

Digraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    return Digraph(n, edges);
}

py::dict params_dict(int K, int M, int D, std::uint32_t q, int m) {
    const Instance inst = make_instance(K, M, D, q, m);
    const DerivedParams p = derive_params(inst);
    const BranchWeights w = theta_weights(inst);
    py::dict d;
    d["alpha"] = p.alpha;
    d["beta"] = p.beta;
    d["rho"] = p.rho;
    d["gamma"] = p.gamma;
    d["theta1"] = to_string(w.theta1);
    if (w.theta2) d["theta2"] = to_string(*w.theta2);
    if (w.theta3) d["theta3"] = to_string(*w.theta3);
    d["branch_prob_a"] = to_string(w.prob_a);
    d["branch_prob_b"] = to_string(w.prob_b);
    return d;
}

py::dict run_protocol(int K, int M, int D, std::uint32_t q, int m, std::uint64_t seed,
                      std::optional<std::vector<int>> demand,
                      std::optional<std::vector<int>> sideinfo) {
    const Instance inst = make_instance(K, M, D, q, m);
    Rng rng(seed);
    std::vector<int> everything(inst.K);
    for (int i = 0; i < inst.K; ++i) everything[i] = i + 1;

    DemandSideInfo ws;
    if (demand) {
        ws.W = *demand;
        ws.S = sideinfo.value_or(std::vector<int>{});
        std::sort(ws.W.begin(), ws.W.end());
        std::sort(ws.S.begin(), ws.S.end());
        ws.validate(inst);
    } else {
        ws.S = rng.subset(everything, inst.M);
        std::vector<int> rest;
        std::set_difference(everything.begin(), everything.end(), ws.S.begin(), ws.S.end(),
                            std::back_inserter(rest));
        ws.W = rng.subset(rest, inst.D);
    }

    std::vector<MessageVec> messages;
    for (int i = 0; i < inst.K; ++i) {
        std::vector<Fp> symbols;
        for (int s = 0; s < inst.m; ++s)
            symbols.push_back(Fp(static_cast<std::int64_t>(rng.below(inst.q)), inst.q));
        messages.push_back(MessageVec(std::move(symbols)));
    }

    const Partition partition = sample_partition(inst, ws, rng);
    const Query query = build_query(inst, partition, rng);
    const Answer answer = answer_query(query, messages);
    std::map<int, MessageVec> side_values;
    for (int s : ws.S) side_values[s] = messages[s - 1];
    const auto recovered = recover(query, answer, ws, side_values);

    bool ok = true;
    py::dict rec;
    for (const auto& [idx, val] : recovered) {
        std::vector<int> symbols;
        for (const Fp& x : val.symbols) symbols.push_back(static_cast<int>(x.value()));
        rec[py::int_(idx)] = symbols;
        ok = ok && val == messages[idx - 1];
    }

    py::dict d;
    d["demand"] = ws.W;
    d["sideinfo"] = ws.S;
    d["query_json"] = query_to_json(query).dump();
    d["answer_json"] = answer_to_json(answer).dump();
    d["recovered"] = std::move(rec);
    d["rate"] = to_string(measured_rate(query));
    d["ok"] = ok;
    return d;
}

py::dict audit_privacy(int K, int M, int D, const std::string& mutation, std::int64_t budget) {
    const Instance inst = make_instance(K, M, D, 0, 1);
    ProtocolVariant variant;
    if (mutation == "always-branch-a") variant = ProtocolVariant{true, false, true};
    else if (mutation == "theta1-doubled") variant = ProtocolVariant{false, true, true};
    else if (mutation == "no-shuffle") variant = ProtocolVariant{false, false, false};
    else if (mutation != "none") throw std::invalid_argument("unknown mutation: " + mutation);
    const PrivacyReport report = audit_individual_privacy(inst, variant, budget);
    py::dict d;
    d["pass"] = report.pass;
    d["keys_checked"] = report.keys_checked;
    d["worst_violation"] = to_string(report.worst_violation);
    d["violations"] = report.violations.size();
    return d;
}

py::dict scan_bound(int K, int D, bool exhaustive, std::uint64_t count, std::uint64_t seed,
                    std::int64_t budget) {
    ScanMode mode;
    mode.exhaustive = exhaustive;
    mode.sample_count = count;
    mode.seed = seed;
    const ScanReport report = scan_mother_set_bound(K, D, mode, budget);
    py::dict d;
    d["graphs_scanned"] = report.graphs_scanned;
    d["d_graphs_found"] = report.d_graphs_found;
    d["max_mu_ext"] = report.max_mu_ext;
    d["bound"] = report.bound;
    d["counterexamples"] = report.counterexamples;
    return d;
}

std::pair<int, std::vector<int>> mu_result(const MotherSetResult& r) {
    return {r.size, r.witness};
}

py::dict goodrel_check(const std::string& rel_json, const std::string& variant) {
    const SetRelation rel = relation_from_json(Json::parse(rel_json));
    const Condition4Variant v = variant == "excluding-i" ? Condition4Variant::ExcludingI
                                                         : Condition4Variant::Literal;
    const GoodRelationReport report = validate_good(rel, v);
    py::dict d;
    d["good"] = report.good;
    d["i"] = report.contains_input.pass;
    d["ii"] = report.demand_cover.pass;
    d["iii"] = report.closure.pass;
    d["iv"] = report.avoidance.pass;
    d["codomain_ok"] = report.codomain_ok;
    if (report.good) {
        const CoverBoundReport bound = check_cover_bound(rel, v);
        d["cover_size"] = bound.cover_size;
        d["bound"] = bound.bound;
        d["bound_ok"] = bound.ok;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_gpcip, mod) {
    mod.doc() = "GPC-IP private retrieval protocol with exact audits and digraph scans";

    mod.def("achievable_rate",
            [](int K, int M, int D) { return to_string(achievable_rate(K, M, D)); },
            py::arg("K"), py::arg("M"), py::arg("D"));

    mod.def("derive_params", &params_dict, py::arg("K"), py::arg("M"), py::arg("D"),
            py::arg("q") = 0, py::arg("m") = 1);

    mod.def("run_protocol", &run_protocol, py::arg("K"), py::arg("M"), py::arg("D"),
            py::arg("q") = 0, py::arg("m") = 1, py::arg("seed") = 1,
            py::arg("demand") = py::none(), py::arg("sideinfo") = py::none());

    mod.def("audit_privacy", &audit_privacy, py::arg("K"), py::arg("M"), py::arg("D"),
            py::arg("mutation") = "none", py::arg("budget") = kDefaultBudget);

    mod.def("theta_balance",
            [](int K, int M, int D) {
                return verify_theta_balance(make_instance(K, M, D, 0, 1));
            },
            py::arg("K"), py::arg("M"), py::arg("D"));

    mod.def("mu_ext",
            [](int n, const std::vector<std::pair<int, int>>& edges, bool full_cover) {
                return mu_result(mu_ext(graph_from_edges(n, edges),
                                        full_cover ? MotherVariant::FullCover
                                                   : MotherVariant::RestrictedTarget));
            },
            py::arg("n"), py::arg("edges"), py::arg("full_cover") = false);

    mod.def("mu_int",
            [](int n, const std::vector<std::pair<int, int>>& edges, bool full_cover) {
                return mu_result(mu_int(graph_from_edges(n, edges),
                                        full_cover ? MotherVariant::FullCover
                                                   : MotherVariant::RestrictedTarget));
            },
            py::arg("n"), py::arg("edges"), py::arg("full_cover") = false);

    mod.def("is_d_graph",
            [](int n, const std::vector<std::pair<int, int>>& edges, int D) {
                const DGraphReport r = is_d_graph(graph_from_edges(n, edges), D);
                py::dict d;
                d["ok"] = r.ok;
                d["failed_conditions"] = r.failed_conditions;
                return d;
            },
            py::arg("n"), py::arg("edges"), py::arg("D"));

    mod.def("scan_mother_set_bound", &scan_bound, py::arg("K"), py::arg("D"),
            py::arg("exhaustive") = true, py::arg("count") = 0, py::arg("seed") = 1,
            py::arg("budget") = 10'000'000);

    mod.def("goodrel_check", &goodrel_check, py::arg("rel_json"),
            py::arg("variant") = "literal");

    mod.attr("__version__") = "0.1.0";
}
