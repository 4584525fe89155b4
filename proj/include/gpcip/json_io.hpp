#pragma once

#include "gpcip/audit.hpp"
#include "gpcip/digraph.hpp"
#include "gpcip/protocol.hpp"
#include "gpcip/relation.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace gpcip {

// ordered_json keeps the canonical field order through serialization
using Json = nlohmann::ordered_json;

Json query_to_json(const Query& query);
Query query_from_json(const Json& j);

Json answer_to_json(const Answer& answer);
Answer answer_from_json(const Json& j, const Query& query);

Json key_to_json(const QueryKey& key);

Json graph_to_json(const Digraph& g);
Digraph graph_from_json(const Json& j);

Json relation_to_json(const SetRelation& rel);
SetRelation relation_from_json(const Json& j);

Json instance_to_json(const Instance& inst);

Json privacy_report_to_json(const Instance& inst, const PrivacyReport& report);
Json goodrel_report_to_json(const SetRelation& rel, const GoodRelationReport& report);
Json scan_report_to_json(int K, int D, const ScanReport& report);

}  // namespace gpcip
