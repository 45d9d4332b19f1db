#pragma once

#include <map>
#include <string>
#include <vector>

#include "netdual/network.hpp"
#include "netdual/setfunction.hpp"

namespace netdual {

/// "{1,3}" for the subset {1,3} of {1..N}.
std::string subset_text(Subset s);

/// One of the small gadgets G-dagger is assembled from.
struct Subnetwork {
  /// 0, 1 or 2.
  int type = 0;
  Subset alpha = 0;
  /// Zero-based index of the extra element i for type 2, -1 otherwise.
  int extra = -1;
  /// Label prefix, e.g. "T2[{1},2]".
  std::string prefix;
  /// Role name ("W", "W'", "W''", "W*") to edge id.
  std::map<std::string, std::string> roles;
  /// Receiver nodes paired with the session each demands.
  std::vector<std::pair<std::string, std::string>> receivers;
  friend bool operator==(const Subnetwork&, const Subnetwork&) = default;
};

struct GDaggerLayout {
  int n = 0;
  Network network;
  ConnectionRequirement conn;
  /// Session label for each nonempty alpha, indexed by mask.
  std::map<Subset, std::string> session;
  /// Origin node of each session.
  std::map<Subset, std::string> origin;
  /// Edge carrying V_j, j zero-based.
  std::vector<std::string> v_edges;
  std::vector<Subnetwork> subnetworks;

  Subset full() const { return full_set(n); }
  friend bool operator==(const GDaggerLayout&, const GDaggerLayout&) = default;
};

/// The fixed network and connection requirement for N variables. Every edge of the
/// returned network is uncapped; capacities come from rate_capacity().
GDaggerLayout build_gdagger(int n);

/// lambda(S[alpha]) = h(alpha) and the role-edge capacities; other edges stay uncapped.
/// With `validate`, a negative entry (h not monotone) raises ArgumentError.
RateCapacityTuple rate_capacity(const SetFunction& h, const GDaggerLayout& layout, bool validate = true);

/// Copy of the network with the tuple's capacities written onto its edges.
Network with_capacities(const Network& net, const RateCapacityTuple& tuple);

}  // namespace netdual
