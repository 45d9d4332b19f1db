#include "netdual/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "netdual/errors.hpp"

namespace netdual {

std::vector<std::string> topo_order(const std::vector<std::string>& nodes, const std::vector<Edge>& edges) {
  std::map<std::string, int> indeg;
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& n : nodes) indeg[n] = 0;
  for (const auto& e : edges) {
    ++indeg.at(e.head);
    succ[e.tail].push_back(e.head);
  }
  std::set<std::string> ready;
  for (const auto& [n, d] : indeg) {
    if (d == 0) ready.insert(n);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    const std::string n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(n);
    for (const auto& m : succ[n]) {
      if (--indeg[m] == 0) ready.insert(m);
    }
  }
  if (order.size() != indeg.size()) {
    for (const auto& [n, d] : indeg) {
      if (d > 0) throw StructuralError("network has a cycle through node '" + n + "'");
    }
  }
  return order;
}

Network::Network(std::vector<std::string> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::set<std::string> seen;
  for (const auto& n : nodes_) {
    if (n.empty()) throw StructuralError("empty node label");
    if (!seen.insert(n).second) throw StructuralError("duplicate node '" + n + "'");
    in_[n];
    out_[n];
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.id.empty()) throw StructuralError("empty edge id");
    if (!edge_pos_.emplace(e.id, static_cast<int>(i)).second) {
      throw StructuralError("duplicate edge '" + e.id + "'");
    }
    if (!seen.count(e.tail)) throw StructuralError("edge '" + e.id + "' tail '" + e.tail + "' is not a node");
    if (!seen.count(e.head)) throw StructuralError("edge '" + e.id + "' head '" + e.head + "' is not a node");
    if (e.capacity && e.capacity->sign() < 0) {
      throw StructuralError("edge '" + e.id + "' has negative capacity");
    }
    in_[e.head].push_back(static_cast<int>(i));
    out_[e.tail].push_back(static_cast<int>(i));
  }
  auto by_id = [this](int a, int b) { return edges_[a].id < edges_[b].id; };
  for (auto& [_, v] : in_) std::sort(v.begin(), v.end(), by_id);
  for (auto& [_, v] : out_) std::sort(v.begin(), v.end(), by_id);
  topo_ = netdual::topo_order(nodes_, edges_);
  std::map<std::string, int> rank;
  for (std::size_t i = 0; i < topo_.size(); ++i) rank[topo_[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < edges_.size(); ++i) edge_order_.push_back(static_cast<int>(i));
  std::sort(edge_order_.begin(), edge_order_.end(), [&](int a, int b) {
    const int ra = rank[edges_[a].tail], rb = rank[edges_[b].tail];
    return ra != rb ? ra < rb : edges_[a].id < edges_[b].id;
  });
}

const Edge& Network::edge(const std::string& id) const {
  auto it = edge_pos_.find(id);
  if (it == edge_pos_.end()) throw ArgumentError("unknown edge '" + id + "'");
  return edges_[it->second];
}

std::optional<int> Network::edge_index(const std::string& id) const {
  auto it = edge_pos_.find(id);
  if (it == edge_pos_.end()) return std::nullopt;
  return it->second;
}

bool Network::has_node(const std::string& node) const { return in_.count(node) > 0; }

const std::vector<int>& Network::in_edges(const std::string& node) const {
  auto it = in_.find(node);
  if (it == in_.end()) throw ArgumentError("unknown node '" + node + "'");
  return it->second;
}

const std::vector<int>& Network::out_edges(const std::string& node) const {
  auto it = out_.find(node);
  if (it == out_.end()) throw ArgumentError("unknown node '" + node + "'");
  return it->second;
}

void ConnectionRequirement::validate(const Network& net) const {
  std::set<std::string> seen;
  for (const auto& s : sessions) {
    if (s.empty()) throw StructuralError("empty session label");
    if (!seen.insert(s).second) throw StructuralError("duplicate session '" + s + "'");
    if (net.edge_index(s)) throw StructuralError("session '" + s + "' shares its label with an edge");
    auto o = origin.find(s);
    if (o == origin.end()) throw StructuralError("session '" + s + "' has no origin");
    if (!net.has_node(o->second)) {
      throw StructuralError("origin '" + o->second + "' of session '" + s + "' is not a node");
    }
    auto r = receivers.find(s);
    if (r == receivers.end() || r->second.empty()) {
      throw StructuralError("session '" + s + "' has no receivers");
    }
    for (const auto& node : r->second) {
      if (!net.has_node(node)) {
        throw StructuralError("receiver '" + node + "' of session '" + s + "' is not a node");
      }
    }
  }
  for (const auto& [s, _] : origin) {
    if (!seen.count(s)) throw StructuralError("origin given for unknown session '" + s + "'");
  }
  for (const auto& [s, _] : receivers) {
    if (!seen.count(s)) throw StructuralError("receivers given for unknown session '" + s + "'");
  }
}

std::vector<std::string> ConnectionRequirement::sessions_at(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& [s, o] : origin) {
    if (o == node) out.push_back(s);
  }
  return out;  // std::map iteration is already label-sorted
}

std::vector<std::pair<std::string, std::string>> ConnectionRequirement::demands() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [s, rs] : receivers) {
    for (const auto& r : rs) out.emplace_back(r, s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> node_feeds(const Network& net, const ConnectionRequirement& conn,
                                    const std::string& node) {
  std::vector<std::string> feeds = conn.sessions_at(node);
  for (int e : net.in_edges(node)) feeds.push_back(net.edges()[e].id);
  return feeds;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string to_dot(const Network& net, const ConnectionRequirement& conn) {
  std::map<std::string, std::vector<std::string>> originates, demands;
  for (const auto& [s, o] : conn.origin) originates[o].push_back(s);
  for (const auto& [s, rs] : conn.receivers) {
    for (const auto& r : rs) demands[r].push_back(s);
  }
  std::ostringstream os;
  os << "digraph network {\n  rankdir=TB;\n";
  for (const auto& n : net.nodes()) {
    std::string label = n;
    std::string shape = "circle";
    std::string style = "filled";
    if (originates.count(n)) {
      style = "solid";
      std::string ss;
      for (const auto& s : originates[n]) ss += (ss.empty() ? "" : " ") + s;
      label += "\\nsrc: " + ss;
    }
    if (demands.count(n)) {
      shape = "doublecircle";
      style = "solid";
      std::string ss;
      for (const auto& s : demands[n]) ss += (ss.empty() ? "" : " ") + s;
      label += "\\nwants: " + ss;
    }
    os << "  " << quote(n) << " [shape=" << shape << ", style=" << style << ", label=" << quote(label) << "];\n";
  }
  for (const auto& e : net.edges()) {
    std::string label = e.id;
    if (e.capacity) label += "\\n" + e.capacity->str();
    os << "  " << quote(e.tail) << " -> " << quote(e.head) << " [label=" << quote(label);
    if (!e.capacity) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace netdual

namespace netdual {

void RateCapacityTuple::validate() const {
  for (const auto& [s, v] : rates) {
    if (v.sign() < 0) throw ArgumentError("rate of '" + s + "' is negative: " + v.str());
  }
  for (const auto& [e, v] : caps) {
    if (v.sign() < 0) throw ArgumentError("capacity of '" + e + "' is negative: " + v.str());
  }
}

std::optional<LogScalar> RateCapacityTuple::capacity(const Edge& e) const {
  auto it = caps.find(e.id);
  if (it != caps.end()) return it->second;
  return e.capacity;
}

}  // namespace netdual
