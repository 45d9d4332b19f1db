#include "netdual/gdagger.hpp"

#include "netdual/errors.hpp"

namespace netdual {

std::string subset_text(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!contains(s, i)) continue;
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

namespace {

struct Builder {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::vector<std::string> v_edges;

  void node(const std::string& n) { nodes.push_back(n); }
  void edge(const std::string& id, const std::string& tail, const std::string& head) {
    edges.push_back(Edge{id, tail, head, std::nullopt});
  }
  /// Uncapped copy of V_j from the distribution node into `consumer`.
  void fan_out(int j, const std::string& consumer) { edge(v_edges[j] + ">" + consumer, "dist", consumer); }
};

}  // namespace

GDaggerLayout build_gdagger(int n) {
  if (n < 1) throw ArgumentError("N must be at least 1");
  if (n > 8) throw ResourceError("N > 8 gives an unreasonably large network");
  GDaggerLayout L;
  L.n = n;
  const Subset all = full_set(n);
  Builder b;
  for (Subset a = 1; a <= all; ++a) {
    L.session[a] = "S[" + subset_text(a) + "]";
    L.origin[a] = "src:" + L.session[a];
    b.node(L.origin[a]);
    L.conn.sessions.push_back(L.session[a]);
    L.conn.origin[L.session[a]] = L.origin[a];
  }
  const std::string top = L.origin[all];
  b.node("dist");
  for (int j = 0; j < n; ++j) {
    b.v_edges.push_back("V[" + std::to_string(j + 1) + "]");
    b.edge(b.v_edges[j], top, "dist");
  }
  L.v_edges = b.v_edges;

  auto demand = [&](Subnetwork& sub, const std::string& rx, Subset s) {
    L.conn.receivers[L.session[s]].push_back(rx);
    sub.receivers.emplace_back(rx, L.session[s]);
  };

  for (Subset a = 1; a <= all; ++a) {
    Subnetwork sub{0, a, -1, "T0[" + subset_text(a) + "]", {}, {}};
    const std::string rx = sub.prefix + ".rx";
    b.node(rx);
    sub.roles["W"] = sub.prefix + ".W";
    b.edge(sub.roles["W"], L.origin[a], rx);
    demand(sub, rx, a);
    L.subnetworks.push_back(std::move(sub));
  }
  for (Subset a = 1; a <= all; ++a) {
    Subnetwork sub{1, a, -1, "T1[" + subset_text(a) + "]", {}, {}};
    const std::string mid = sub.prefix + ".mid", rx = sub.prefix + ".rx";
    b.node(mid);
    b.node(rx);
    for (int j = 0; j < n; ++j) {
      if (contains(a, j)) b.fan_out(j, mid);
    }
    sub.roles["W'"] = sub.prefix + ".W'";
    b.edge(sub.roles["W'"], mid, rx);
    sub.roles["W"] = sub.prefix + ".W";
    b.edge(sub.roles["W"], top, rx);
    demand(sub, rx, all);
    L.subnetworks.push_back(std::move(sub));
  }
  for (Subset a = 1; a < all; ++a) {
    for (int i = 0; i < n; ++i) {
      if (contains(a, i)) continue;
      Subnetwork sub{2, a, i, "T2[" + subset_text(a) + "," + std::to_string(i + 1) + "]", {}, {}};
      const std::string& p = sub.prefix;
      const std::string n1 = p + ".n1", split = p + ".split", n2 = p + ".n2", n3 = p + ".n3";
      const std::string up = p + ".up", low = p + ".low";
      for (const auto& x : {n1, split, n2, n3, up, low}) b.node(x);
      for (int j = 0; j < n; ++j) {
        if (contains(a, j)) b.fan_out(j, n1);
      }
      b.edge(p + ".S>n1", L.origin[a], n1);
      sub.roles["W"] = p + ".W";
      b.edge(sub.roles["W"], n1, split);
      b.edge(p + ".W>up", split, up);
      b.edge(p + ".W>low", split, low);
      sub.roles["W'"] = p + ".W'";
      b.edge(sub.roles["W'"], top, up);
      for (int j = 0; j < n; ++j) {
        if (contains(a, j) || j == i) b.fan_out(j, n2);
      }
      sub.roles["W''"] = p + ".W''";
      b.edge(sub.roles["W''"], n2, n3);
      b.fan_out(i, n3);
      sub.roles["W*"] = p + ".W*";
      b.edge(sub.roles["W*"], n3, low);
      b.edge(p + ".S>up", L.origin[a], up);
      demand(sub, up, all);
      demand(sub, low, a);
      L.subnetworks.push_back(std::move(sub));
    }
  }
  L.network = Network(std::move(b.nodes), std::move(b.edges));
  L.conn.validate(L.network);
  return L;
}

RateCapacityTuple rate_capacity(const SetFunction& h, const GDaggerLayout& layout, bool validate) {
  if (h.size() != layout.n) {
    throw ArgumentError("set function has " + std::to_string(h.size()) + " elements, layout is for N=" +
                        std::to_string(layout.n));
  }
  const Subset all = layout.full();
  RateCapacityTuple t;
  for (const auto& [a, s] : layout.session) t.rates[s] = h(a);
  for (int j = 0; j < layout.n; ++j) t.caps[layout.v_edges[j]] = h(singleton(j));
  for (const auto& sub : layout.subnetworks) {
    const Subset a = sub.alpha;
    switch (sub.type) {
      case 0:
        t.caps[sub.roles.at("W")] = h(a);
        break;
      case 1:
        t.caps[sub.roles.at("W")] = h(all) - h(a);
        t.caps[sub.roles.at("W'")] = h(a);
        break;
      default: {
        const Subset i = singleton(sub.extra);
        t.caps[sub.roles.at("W")] = h(a);
        t.caps[sub.roles.at("W'")] = h(all) - h(a);
        t.caps[sub.roles.at("W''")] = h(a | i) - h(i);
        t.caps[sub.roles.at("W*")] = h(a);
        break;
      }
    }
  }
  if (validate) t.validate();
  return t;
}

Network with_capacities(const Network& net, const RateCapacityTuple& tuple) {
  std::vector<Edge> edges = net.edges();
  for (auto& e : edges) e.capacity = tuple.capacity(e);
  return Network(net.nodes(), std::move(edges));
}

}  // namespace netdual
