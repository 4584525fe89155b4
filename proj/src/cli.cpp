#include "gpcip/cli.hpp"

#include "gpcip/audit.hpp"
#include "gpcip/digraph.hpp"
#include "gpcip/errors.hpp"
#include "gpcip/json_io.hpp"
#include "gpcip/protocol.hpp"
#include "gpcip/relation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace gpcip {

namespace {

struct CommonOpts {
    int K = 0;
    int M = 1;
    int D = 2;
    std::uint32_t q = 0;  // 0: smallest prime >= M+D
    int m = 1;
    std::uint64_t seed = 0;  // 0: derive from entropy
    std::int64_t budget = kDefaultBudget;
};

Instance make_instance(const CommonOpts& o) {
    Instance inst{o.K, o.M, o.D, o.q, o.m};
    if (inst.q == 0) inst.q = next_prime_at_least(static_cast<std::uint32_t>(inst.alpha()));
    inst.validate();
    return inst;
}

ProtocolVariant variant_from_name(const std::string& name) {
    if (name == "none") return {};
    if (name == "always-branch-a") return ProtocolVariant{true, false, true};
    if (name == "theta1-doubled") return ProtocolVariant{false, true, true};
    if (name == "no-shuffle") return ProtocolVariant{false, false, false};
    throw std::invalid_argument("unknown mutation: " + name);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    Rng r(base ^ (0x9E3779B97F4A7C15ULL * (salt + 1)));
    std::uint64_t s = r.next();
    return s == 0 ? 1 : s;
}

std::vector<MessageVec> plant_messages(const Instance& inst, Rng& rng) {
    std::vector<MessageVec> messages;
    for (int i = 0; i < inst.K; ++i) {
        std::vector<Fp> symbols;
        for (int s = 0; s < inst.m; ++s)
            symbols.push_back(Fp(static_cast<std::int64_t>(rng.below(inst.q)), inst.q));
        messages.push_back(MessageVec(std::move(symbols)));
    }
    return messages;
}

DemandSideInfo random_ws(const Instance& inst, Rng& rng) {
    std::vector<int> everything(inst.K);
    for (int i = 0; i < inst.K; ++i) everything[i] = i + 1;
    DemandSideInfo ws;
    ws.S = rng.subset(everything, inst.M);
    std::vector<int> rest;
    std::set_difference(everything.begin(), everything.end(), ws.S.begin(), ws.S.end(),
                        std::back_inserter(rest));
    ws.W = rng.subset(rest, inst.D);
    return ws;
}

int cmd_params(const CommonOpts& o, std::ostream& out) {
    const Instance inst = make_instance(o);
    const DerivedParams p = derive_params(inst);
    const BranchWeights w = theta_weights(inst);
    Json j;
    j["instance"] = instance_to_json(inst);
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["rho"] = p.rho;
    j["gamma"] = p.gamma;
    std::vector<int> omegas;
    for (const Fp& x : p.omegas) omegas.push_back(static_cast<int>(x.value()));
    j["omegas"] = omegas;
    j["theta1"] = to_string(w.theta1);
    if (w.theta2) j["theta2"] = to_string(*w.theta2);
    if (w.theta3) j["theta3"] = to_string(*w.theta3);
    j["branch_prob_a"] = to_string(w.prob_a);
    j["branch_prob_b"] = to_string(w.prob_b);
    j["achievable_rate"] = to_string(achievable_rate(inst.K, inst.M, inst.D));
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_run(const CommonOpts& o, const std::vector<int>& demand, const std::vector<int>& sideinfo,
            std::ostream& out) {
    const Instance inst = make_instance(o);
    Rng rng(o.seed);

    DemandSideInfo ws;
    if (!demand.empty() || !sideinfo.empty()) {
        ws.W = demand;
        ws.S = sideinfo;
        std::sort(ws.W.begin(), ws.W.end());
        std::sort(ws.S.begin(), ws.S.end());
        ws.validate(inst);
    } else {
        ws = random_ws(inst, rng);
    }

    const std::vector<MessageVec> messages = plant_messages(inst, rng);
    const Partition partition = sample_partition(inst, ws, rng);
    const Query query = build_query(inst, partition, rng);
    const Answer answer = answer_query(query, messages);
    std::map<int, MessageVec> side_values;
    for (int s : ws.S) side_values[s] = messages[s - 1];
    const auto recovered = recover(query, answer, ws, side_values);

    bool ok = true;
    for (int wdx : ws.W) {
        auto it = recovered.find(wdx);
        ok = ok && it != recovered.end() && it->second == messages[wdx - 1];
    }

    Json j;
    j["instance"] = instance_to_json(inst);
    j["seed"] = o.seed;
    j["demand"] = ws.W;
    j["sideinfo"] = ws.S;
    j["query"] = query_to_json(query);
    j["answer"] = answer_to_json(answer);
    Json rec;
    for (const auto& [idx, val] : recovered) {
        Json v = Json::array();
        for (const Fp& s : val.symbols) v.push_back(s.value());
        rec[std::to_string(idx)] = std::move(v);
    }
    j["recovered"] = std::move(rec);
    j["rate"] = to_string(measured_rate(query));
    j["ok"] = ok;
    out << j.dump(2) << "\n";
    return ok ? 0 : 2;
}

int cmd_audit_privacy(const CommonOpts& o, const std::string& mode, std::uint64_t count,
                      const std::string& mutation, std::ostream& out) {
    const Instance inst = make_instance(o);
    const ProtocolVariant variant = variant_from_name(mutation);
    if (mode == "sample") {
        const McPrivacyReport report = mc_privacy_smoke(inst, count, o.seed, variant);
        Json j;
        j["instance"] = instance_to_json(inst);
        j["mode"] = "sample";
        j["samples"] = report.samples;
        j["pass"] = report.pass;
        Json buckets = Json::array();
        for (const auto& b : report.buckets) {
            Json e;
            e["j"] = b.j;
            e["bucket"] = b.bucket;
            e["seen"] = b.seen;
            e["demanded"] = b.demanded;
            e["ok"] = b.ok;
            buckets.push_back(std::move(e));
        }
        j["buckets"] = std::move(buckets);
        out << j.dump(2) << "\n";
        return report.pass ? 0 : 2;
    }
    const PrivacyReport report = audit_individual_privacy(inst, variant, o.budget);
    Json j = privacy_report_to_json(inst, report);
    j["mode"] = "exact";
    if (mutation != "none") j["mutation"] = mutation;
    out << j.dump(2) << "\n";
    return report.pass ? 0 : 2;
}

int cmd_audit_support(const CommonOpts& o, std::ostream& out) {
    const Instance inst = make_instance(o);
    const JointAudit joint = build_joint(inst, {}, o.budget);
    const int bound = (inst.K + inst.D - 1) / inst.D;
    Json keys = Json::array();
    int min_size = inst.K + 1;
    bool pass = true;
    for (const auto& [key, st] : joint.keys) {
        const CertainCover cover = min_certain_cover(joint, key);
        min_size = std::min(min_size, cover.size);
        pass = pass && cover.size >= bound;
        Json e;
        e["key"] = key_to_json(key);
        e["size"] = cover.size;
        e["witness"] = cover.witness;
        keys.push_back(std::move(e));
    }
    Json j;
    j["instance"] = instance_to_json(inst);
    j["keys_checked"] = joint.keys.size();
    j["bound"] = bound;
    j["min_cover_size"] = min_size;
    j["pass"] = pass;
    j["keys"] = std::move(keys);
    out << j.dump(2) << "\n";
    return pass ? 0 : 2;
}

int cmd_audit_decodability(const CommonOpts& o, std::ostream& out) {
    const Instance inst = make_instance(o);
    const DecodabilityReport report = audit_decodability(inst, o.budget);
    Json j;
    j["instance"] = instance_to_json(inst);
    j["keys_checked"] = report.keys_checked;
    j["pass"] = report.pass;
    Json failures = Json::array();
    for (const auto& f : report.failures) {
        Json e;
        e["key"] = key_to_json(f.key);
        e["j"] = f.j;
        failures.push_back(std::move(e));
    }
    j["failures"] = std::move(failures);
    out << j.dump(2) << "\n";
    return report.pass ? 0 : 2;
}

int cmd_rate_table(const CommonOpts& o, int k_min, int k_max, int seeds, std::ostream& out) {
    out << "K,M,D,achievable_rate,measured_rate,match\n";
    bool all_match = true;
    for (int K = k_min; K <= k_max; ++K) {
        if (K < o.M + o.D) continue;
        CommonOpts row = o;
        row.K = K;
        const Instance inst = make_instance(row);
        const Rational formula = achievable_rate(K, o.M, o.D);
        std::optional<Rational> measured;
        bool match = true;
        for (int s = 1; s <= seeds; ++s) {
            Rng rng(mix_seed(o.seed, static_cast<std::uint64_t>(K) * 1000 + s));
            const DemandSideInfo ws = random_ws(inst, rng);
            const Partition partition = sample_partition(inst, ws, rng);
            const Query query = build_query(inst, partition, rng);
            const Rational rate = measured_rate(query);
            if (!measured) measured = rate;
            match = match && rate == formula && rate == *measured;
        }
        all_match = all_match && match;
        out << K << "," << o.M << "," << o.D << "," << to_string(formula) << ","
            << (measured ? to_string(*measured) : "-") << "," << (match ? "true" : "false")
            << "\n";
    }
    return all_match ? 0 : 2;
}

int cmd_theta_balance(const CommonOpts& o, int k_max, std::ostream& out) {
    Json failures = Json::array();
    std::uint64_t checked = 0;
    auto check = [&](int K, int M, int D) {
        Instance inst{K, M, D, next_prime_at_least(static_cast<std::uint32_t>(M + D)), 1};
        ++checked;
        if (!verify_theta_balance(inst)) {
            Json e;
            e["K"] = K;
            e["M"] = M;
            e["D"] = D;
            failures.push_back(std::move(e));
        }
    };
    if (o.K > 0) {
        check(o.K, o.M, o.D);
    } else {
        for (int K = 3; K <= k_max; ++K)
            for (int M = 1; M <= K - 2; ++M)
                for (int D = 2; D <= K - M; ++D) check(K, M, D);
    }
    Json j;
    j["checked"] = checked;
    j["all_hold"] = failures.empty();
    j["failures"] = failures;
    out << j.dump(2) << "\n";
    return failures.empty() ? 0 : 2;
}

int cmd_conj2(const CommonOpts& o, const std::string& mode, std::uint64_t count,
              std::ostream& out) {
    ScanMode scan;
    scan.exhaustive = mode == "exhaustive";
    scan.sample_count = count;
    scan.seed = o.seed == 0 ? 1 : o.seed;
    const ScanReport report = scan_mother_set_bound(o.K, o.D, scan, o.budget);
    Json j = scan_report_to_json(o.K, o.D, report);
    j["mode"] = mode;
    out << j.dump(2) << "\n";
    return report.counterexamples.empty() ? 0 : 2;
}

int cmd_goodrel_check(const CommonOpts& o, const std::string& file, const std::string& variant,
                      std::ostream& out) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open relation file: " + file);
    Json parsed = Json::parse(in);
    const SetRelation rel = relation_from_json(parsed);
    const Condition4Variant v = variant == "excluding-i" ? Condition4Variant::ExcludingI
                                                         : Condition4Variant::Literal;
    const GoodRelationReport report = validate_good(rel, v);
    Json j = goodrel_report_to_json(rel, report);
    j["variant"] = variant;
    bool ok = report.good;
    if (report.good) {
        const CoverBoundReport bound = check_cover_bound(rel, v);
        Json b;
        b["cover_size"] = bound.cover_found ? Json(bound.cover_size) : Json("inf");
        b["bound"] = bound.bound;
        b["ok"] = bound.ok;
        j["cover"] = std::move(b);
        ok = bound.ok;
    }
    out << j.dump(2) << "\n";
    return ok ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"GPC-IP private retrieval protocol, exact audits, and conjecture scans"};
    app.require_subcommand(1);

    CommonOpts o;
    std::vector<int> demand, sideinfo;
    std::string mode = "exact";
    std::string mutation = "none";
    std::string variant = "literal";
    std::string file;
    std::uint64_t count = 1'000'000;
    int k_min = 3, k_max = 12, seeds = 10, k_max_balance = 30;

    auto add_common = [&](CLI::App* cmd, bool need_k) {
        auto* k = cmd->add_option("--K", o.K, "message count");
        if (need_k) k->required();
        cmd->add_option("--M", o.M, "side information size");
        cmd->add_option("--D", o.D, "demand size");
        cmd->add_option("--q", o.q, "prime field size (default: smallest prime >= M+D)");
        cmd->add_option("--m", o.m, "message length in field symbols");
        cmd->add_option("--seed", o.seed, "PRNG seed; 0 derives one from entropy");
        cmd->add_option("--budget", o.budget, "enumeration budget")->envname("GPCIP_BUDGET");
    };

    auto* params = app.add_subcommand("params", "derived protocol parameters");
    add_common(params, true);

    auto* run = app.add_subcommand("run", "one full query/answer/recover round trip");
    add_common(run, true);
    run->add_option("--demand", demand, "demand indices (default: drawn from the prior)")
        ->delimiter(',');
    run->add_option("--sideinfo", sideinfo, "side information indices")->delimiter(',');

    auto* privacy = app.add_subcommand("audit-privacy", "exact posterior-uniformity audit");
    add_common(privacy, true);
    privacy->add_option("--mode", mode, "exact|sample")
        ->check(CLI::IsMember({"exact", "sample"}));
    privacy->add_option("--count", count, "samples for --mode sample");
    privacy->add_option("--mutation", mutation, "protocol mutation to audit")
        ->check(CLI::IsMember({"none", "always-branch-a", "theta1-doubled", "no-shuffle"}));

    auto* support = app.add_subcommand("audit-support", "certain-cover lower bound per key");
    add_common(support, true);

    auto* decod = app.add_subcommand("audit-decodability", "per-key decodable demand sets");
    add_common(decod, true);

    auto* rate = app.add_subcommand("rate-table", "achievable vs measured rate over a K range");
    add_common(rate, false);
    rate->add_option("--K-min", k_min, "smallest K");
    rate->add_option("--K-max", k_max, "largest K");
    rate->add_option("--seeds", seeds, "seeded runs per row");

    auto* balance = app.add_subcommand("theta-balance", "branch-weight balance identities");
    add_common(balance, false);
    balance->add_option("--K-max", k_max_balance, "check all valid instances up to this K");

    auto* conj = app.add_subcommand("conj2", "mother-set bound scan over labeled digraphs");
    conj->add_option("--K", o.K, "node count")->required();
    conj->add_option("--D", o.D, "out-degree threshold");
    conj->add_option("--mode", mode, "exhaustive|sample")
        ->check(CLI::IsMember({"exhaustive", "sample"}));
    conj->add_option("--count", count, "samples for --mode sample");
    conj->add_option("--seed", o.seed, "PRNG seed for --mode sample");
    conj->add_option("--budget", o.budget, "graph budget")->envname("GPCIP_BUDGET");

    auto* goodrel = app.add_subcommand("goodrel-check", "good-relation conditions and cover bound");
    goodrel->add_option("--file", file, "relation JSON file")->required();
    goodrel->add_option("--variant", variant, "condition-(iv) reading")
        ->check(CLI::IsMember({"literal", "excluding-i"}));

    mode = "exact";
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (params->parsed()) return cmd_params(o, out);
        if (run->parsed()) return cmd_run(o, demand, sideinfo, out);
        if (privacy->parsed()) return cmd_audit_privacy(o, mode, count, mutation, out);
        if (support->parsed()) return cmd_audit_support(o, out);
        if (decod->parsed()) return cmd_audit_decodability(o, out);
        if (rate->parsed()) return cmd_rate_table(o, k_min, k_max, seeds, out);
        if (balance->parsed()) return cmd_theta_balance(o, k_max_balance, out);
        if (conj->parsed()) {
            if (mode != "sample") mode = "exhaustive";
            return cmd_conj2(o, mode, count, out);
        }
        if (goodrel->parsed()) return cmd_goodrel_check(o, file, variant, out);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace gpcip
