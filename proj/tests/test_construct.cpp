#include <random>
#include <set>

#include "doctest.h"
#include "netdual/errors.hpp"
#include "netdual/gdagger.hpp"
#include "netdual/groupchar.hpp"
#include "oracles.hpp"

using namespace netdual;
using oracle::log2_times;

namespace {

LogScalar lg(std::uint64_t n) { return LogScalar::log(n); }

std::map<int, int> count_types(const GDaggerLayout& g) {
  std::map<int, int> out;
  for (const auto& s : g.subnetworks) ++out[s.type];
  return out;
}

/// Sessions whose origin has a directed path to the tail of `edge_id`, found by a
/// backwards search in the test.
std::set<std::string> upstream_sessions(const GDaggerLayout& g, const std::string& edge_id) {
  std::set<std::string> seen_nodes;
  std::vector<std::string> stack{g.network.edge(edge_id).tail};
  while (!stack.empty()) {
    const std::string v = stack.back();
    stack.pop_back();
    if (!seen_nodes.insert(v).second) continue;
    for (const auto& e : g.network.edges()) {
      if (e.head == v) stack.push_back(e.tail);
    }
  }
  std::set<std::string> out;
  for (const auto& [mask, node] : g.origin) {
    if (seen_nodes.count(node)) out.insert(g.session.at(mask));
  }
  return out;
}

SetFunction h_from_units(int n, const std::vector<long>& units) {
  SetFunction h(GroundSet::numbered(n));
  for (Subset s = 1; s <= h.full(); ++s) h.set(s, log2_times(units[s]));
  return h;
}

std::map<std::string, LogScalar> flatten(const RateCapacityTuple& t) {
  std::map<std::string, LogScalar> out = t.rates;
  out.insert(t.caps.begin(), t.caps.end());
  return out;
}

}  // namespace

TEST_CASE("subnetwork counts") {
  const auto g1 = build_gdagger(1);
  CHECK(g1.conn.sessions.size() == 1);
  CHECK(count_types(g1) == std::map<int, int>{{0, 1}, {1, 1}});

  const auto g2 = build_gdagger(2);
  CHECK(g2.conn.sessions.size() == 3);
  CHECK(count_types(g2) == std::map<int, int>{{0, 3}, {1, 3}, {2, 2}});
  std::set<std::pair<Subset, int>> pairs;
  for (const auto& s : g2.subnetworks) {
    if (s.type == 2) pairs.insert({s.alpha, s.extra});
  }
  CHECK(pairs == std::set<std::pair<Subset, int>>{{1u, 1}, {2u, 0}});

  const auto g3 = build_gdagger(3);
  CHECK(g3.conn.sessions.size() == 7);
  CHECK(count_types(g3) == std::map<int, int>{{0, 7}, {1, 7}, {2, 9}});

  for (int n = 1; n <= 5; ++n) {
    int expected = 0;
    for (Subset a = 1; a < full_set(n); ++a) expected += n - cardinality(a);
    CHECK(count_types(build_gdagger(n))[2] == expected);
  }
  CHECK_THROWS_AS(build_gdagger(0), ArgumentError);
  CHECK_THROWS_AS(build_gdagger(9), ResourceError);
}

TEST_CASE("labels") {
  const auto g = build_gdagger(3);
  CHECK(subset_text(5) == "{1,3}");
  CHECK(g.session.at(5) == "S[{1,3}]");
  CHECK(g.v_edges.size() == 3);
  CHECK(g.v_edges[1] == "V[2]");
  bool found = false;
  for (const auto& s : g.subnetworks) {
    if (s.type == 2 && s.alpha == 1 && s.extra == 1) {
      found = true;
      CHECK(s.prefix == "T2[{1},2]");
      CHECK(s.roles.at("W''") == "T2[{1},2].W''");
    }
  }
  CHECK(found);
}

TEST_CASE("wiring carries the right sessions") {
  for (int n = 1; n <= 3; ++n) {
    const auto g = build_gdagger(n);
    CHECK_NOTHROW(g.conn.validate(g.network));
    const std::string top = g.session.at(g.full());
    for (const auto& e : g.network.edges()) CHECK_FALSE(e.capacity.has_value());
    for (std::size_t j = 0; j < g.v_edges.size(); ++j) {
      CHECK(g.network.edge(g.v_edges[j]).tail == g.origin.at(g.full()));
    }
    for (const auto& sub : g.subnetworks) {
      const std::string own = g.session.at(sub.alpha);
      auto ups = [&](const std::string& role) { return upstream_sessions(g, sub.roles.at(role)); };
      if (sub.type == 0) {
        CHECK(ups("W") == std::set<std::string>{own});
        REQUIRE(sub.receivers.size() == 1);
        CHECK(sub.receivers[0].second == own);
      } else if (sub.type == 1) {
        CHECK(ups("W") == std::set<std::string>{top});
        CHECK(ups("W'") == std::set<std::string>{top});
        // W' leaves a node fed by exactly the |alpha| V edges
        const auto& mid = g.network.edge(sub.roles.at("W'")).tail;
        CHECK(static_cast<int>(g.network.in_edges(mid).size()) == cardinality(sub.alpha));
        REQUIRE(sub.receivers.size() == 1);
        CHECK(sub.receivers[0].second == top);
        const auto feeds = node_feeds(g.network, g.conn, sub.receivers[0].first);
        CHECK(feeds.size() == 2);
      } else {
        CHECK(ups("W") == std::set<std::string>{own, top});
        CHECK(ups("W'") == std::set<std::string>{top});
        CHECK(ups("W''") == std::set<std::string>{top});
        CHECK(ups("W*") == std::set<std::string>{top});
        const auto& n2 = g.network.edge(sub.roles.at("W''")).tail;
        CHECK(static_cast<int>(g.network.in_edges(n2).size()) == cardinality(sub.alpha) + 1);
        const auto& n3 = g.network.edge(sub.roles.at("W*")).tail;
        CHECK(g.network.in_edges(n3).size() == 2);
        REQUIRE(sub.receivers.size() == 2);
        CHECK(sub.receivers[0].second == top);
        CHECK(sub.receivers[1].second == own);
        // the upper receiver sees S[alpha] on an uncapped edge, W and W'
        const auto up = node_feeds(g.network, g.conn, sub.receivers[0].first);
        CHECK(up.size() == 3);
        std::set<std::string> from;
        for (const auto& f : up) {
          const auto s = upstream_sessions(g, f);
          from.insert(s.begin(), s.end());
        }
        CHECK(from.count(own));
        const auto low = node_feeds(g.network, g.conn, sub.receivers[1].first);
        CHECK(low.size() == 2);
      }
    }
  }
}

TEST_CASE("rate-capacity examples") {
  const auto g2 = build_gdagger(2);
  const auto zero = rate_capacity(SetFunction(GroundSet::numbered(2)), g2);
  for (const auto& [_, v] : flatten(zero)) CHECK(v.is_zero());
  CHECK(zero.rates.size() == 3);

  const auto t = rate_capacity(h_from_units(2, {0, 1, 1, 2}), g2);
  CHECK(t.rates.at("S[{1,2}]") == log2_times(2));
  CHECK(t.caps.at("V[1]") == log2_times(1));
  for (const auto& sub : g2.subnetworks) {
    if (sub.type == 1 && sub.alpha == 1) CHECK(t.caps.at(sub.roles.at("W")) == log2_times(1));
    if (sub.type == 2 && sub.alpha == 1) CHECK(t.caps.at(sub.roles.at("W''")) == log2_times(1));
  }

  const SetFunction pp = projective_plane_function();
  const auto g4 = build_gdagger(4);
  const auto tp = rate_capacity(pp, g4);
  bool seen = false;
  for (const auto& sub : g4.subnetworks) {
    if (sub.type == 2 && sub.alpha == 3 && sub.extra == 2) {
      seen = true;
      CHECK(tp.caps.at(sub.roles.at("W''")) == lg(12));
    }
  }
  CHECK(seen);

  CHECK_THROWS_AS(rate_capacity(h_from_units(3, {0, 1, 1, 2, 1, 2, 2, 3}), g2), ArgumentError);
}

TEST_CASE("rate-capacity entries follow the role formulas") {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 4; ++n) {
    const auto g = build_gdagger(n);
    const SetFunction h = oracle::random_polymatroid(n, 5, rng);
    const auto t = rate_capacity(h, g);
    std::size_t capped = n;
    for (Subset a = 1; a <= g.full(); ++a) CHECK(t.rates.at(g.session.at(a)) == h(a));
    for (int j = 0; j < n; ++j) CHECK(t.caps.at(g.v_edges[j]) == h(singleton(j)));
    for (const auto& sub : g.subnetworks) {
      capped += sub.roles.size();
      const Subset a = sub.alpha, N = g.full();
      auto cap = [&](const char* role) { return t.caps.at(sub.roles.at(role)); };
      if (sub.type == 0) {
        CHECK(cap("W") == h(a));
      } else if (sub.type == 1) {
        CHECK(cap("W") == h(N) - h(a));
        CHECK(cap("W'") == h(a));
      } else {
        const Subset i = singleton(sub.extra);
        CHECK(cap("W") == h(a));
        CHECK(cap("W'") == h(N) - h(a));
        CHECK(cap("W''") == h(a | i) - h(i));
        CHECK(cap("W*") == h(a));
      }
    }
    CHECK(t.caps.size() == capped);
    const Network capped_net = with_capacities(g.network, t);
    std::size_t with_cap = 0;
    for (const auto& e : capped_net.edges()) {
      if (e.capacity) {
        ++with_cap;
        CHECK(*e.capacity == t.caps.at(e.id));
      }
    }
    CHECK(with_cap == capped);
  }
}

TEST_CASE("rate-capacity map is linear and the layout does not depend on h") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const auto g = build_gdagger(n);
    const SetFunction a = oracle::random_polymatroid(n, 4, rng), b = oracle::random_polymatroid(n, 4, rng);
    const Rational c(1 + trial % 5, 1 + trial % 3);
    const auto ta = flatten(rate_capacity(a, g)), tb = flatten(rate_capacity(b, g));
    const auto tsum = flatten(rate_capacity(a + b, g)), tc = flatten(rate_capacity(c * a, g));
    for (const auto& [k, v] : ta) {
      CHECK(tsum.at(k) == v + tb.at(k));
      CHECK(tc.at(k) == v * c);
    }
    // capacities decorate a fixed topology
    auto strip = [](Network net) {
      std::vector<Edge> edges = net.edges();
      for (auto& e : edges) e.capacity.reset();
      return Network(net.nodes(), edges);
    };
    CHECK(strip(with_capacities(g.network, rate_capacity(a, g))) ==
          strip(with_capacities(g.network, rate_capacity(b, g))));
    CHECK(build_gdagger(n) == g);
  }
}

TEST_CASE("non-monotone h gives a negative capacity up to three elements") {
  std::mt19937_64 rng(23);
  int flagged = 0, hidden = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 3;
    const SetFunction h = oracle::break_polymatroid(oracle::random_polymatroid(n, 4, rng), rng);
    bool monotone = true;
    for (Subset s = 0; s <= h.full(); ++s) {
      for (int i = 0; i < n; ++i) monotone = monotone && h(s) <= h(s | singleton(i));
    }
    // the drops the tuple can see: below zero, below h(N), or h(i) above h(alpha + i)
    bool visible = false;
    for (Subset a = 1; a <= h.full(); ++a) {
      visible = visible || h(a).sign() < 0 || h(h.full()) < h(a);
      for (int i = 0; i < n; ++i) visible = visible || h(a | singleton(i)) < h(singleton(i));
    }
    const auto g = build_gdagger(n);
    const auto t = rate_capacity(h, g, false);
    bool negative = false;
    for (const auto& [_, v] : flatten(t)) negative = negative || v.sign() < 0;
    CHECK(negative == visible);
    if (negative) CHECK_THROWS_AS(rate_capacity(h, g), ArgumentError);
    if (!monotone && n <= 3) CHECK(negative);
    flagged += negative;
    hidden += !monotone && !negative;
  }
  CHECK(flagged > 10);
  CHECK(hidden > 0);
}
