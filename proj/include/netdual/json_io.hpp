#pragma once

#include <string>

#include "json.hpp"
#include "netdual/code.hpp"
#include "netdual/gdagger.hpp"
#include "netdual/group.hpp"
#include "netdual/groupchar.hpp"
#include "netdual/support.hpp"
#include "netdual/witness.hpp"

namespace netdual {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become StructuralError "<source>: line L, column C: ...".
Json parse_json(const std::string& text, const std::string& source);

/// Value of the top-level "format" key, or "" when absent.
std::string format_of(const Json& doc);

// Every document carries "format": "netdual.<kind>/1". Readers throw StructuralError
// with the JSON pointer of the offending value.

/// {"2": "3/2", "13": "1"}: coefficient of the log of each key. Readers also take any
/// integer key >= 2 and the text form "log6 + 1/2*log3".
Json to_json(const LogScalar& x);
LogScalar logscalar_from_json(const Json& j, const std::string& at = "");

/// Values keyed by the comma-joined labels of each nonempty subset, all required.
Json to_json(const SetFunction& f);
SetFunction setfunction_from_json(const Json& j, const std::string& at = "");

/// "group": {"name", "table"} or {"name", "permutations"}; "members": element lists.
Json to_json(const SubgroupFamily& fam);
SubgroupFamily subgroup_family_from_json(const Json& j, const std::string& at = "");

/// "q", "n", "members": one basis (list of rows) per subspace.
Json to_json(const SubspaceFamily& fam);
SubspaceFamily subspace_family_from_json(const Json& j, const std::string& at = "");

/// "alphabets" (optional on input) and "tuples".
Json to_json(const SupportSet& s);
SupportSet support_from_json(const Json& j, const std::string& at = "");

Json to_json(const Network& net);
Network network_from_json(const Json& j, const std::string& at = "");

/// "sessions": [{"id", "origin", "receivers"}] in session order.
Json to_json(const ConnectionRequirement& conn);
ConnectionRequirement connection_from_json(const Json& j, const std::string& at = "");

/// "rates" and "capacities", both keyed by label.
Json to_json(const RateCapacityTuple& t);
RateCapacityTuple tuple_from_json(const Json& j, const std::string& at = "");

/// "alphabets" ({"size"} or {"q", "dim"}), "encoders", "decoders" as a list of
/// {"receiver", "session", "map"}, "manifest". A map is {"table"} or {"q", "cols", "matrix"}.
Json to_json(const NetworkCode& code);
NetworkCode code_from_json(const Json& j, const std::string& at = "");

Json to_json(const WitnessCertificate& cert);
WitnessCertificate witness_from_json(const Json& j, const std::string& at = "");

/// "n", "network", "connection", "subnetworks" and optionally "tuple".
Json to_json(const GDaggerLayout& layout, const RateCapacityTuple* tuple = nullptr);
/// Rebuilds the layout from "n" and checks the stored network and connection match it.
GDaggerLayout gdagger_from_json(const Json& j, const std::string& at = "");

}  // namespace netdual
