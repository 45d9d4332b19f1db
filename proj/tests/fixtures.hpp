#pragma once

#include <random>

#include "netdual/code.hpp"
#include "netdual/network.hpp"

namespace fixture {

using namespace netdual;

struct Instance {
  Network net;
  ConnectionRequirement conn;
  NetworkCode code;
};

inline Edge edge(std::string id, std::string tail, std::string head) { return {id, tail, head, std::nullopt}; }

inline LocalMap mat(int q, std::vector<std::vector<int>> rows, int cols = -1) {
  return LocalMap::matrix(FqMatrix(q, rows, cols));
}

/// s -> e1 -> r -> e2 -> d carrying one session of `size` symbols.
inline Instance relay(std::uint64_t size) {
  Instance in;
  in.net = Network({"d", "r", "s"}, {edge("e1", "s", "r"), edge("e2", "r", "d")});
  in.conn.sessions = {"x"};
  in.conn.origin = {{"x", "s"}};
  in.conn.receivers = {{"x", {"d"}}};
  std::vector<std::uint64_t> id(size);
  for (std::uint64_t k = 0; k < size; ++k) id[k] = k;
  for (const char* v : {"x", "e1", "e2"}) in.code.alphabets[v] = Alphabet::symbols(size);
  in.code.encoders["e1"] = LocalMap::table(id);
  in.code.encoders["e2"] = LocalMap::table(id);
  in.code.decoders[{"d", "x"}] = LocalMap::table(id);
  return in;
}

inline Network butterfly_network() {
  return Network({"a", "b", "s1", "s2", "t1", "t2"},
                 {edge("e1", "s1", "t1"), edge("e2", "s1", "a"), edge("e3", "s2", "a"), edge("e4", "s2", "t2"),
                  edge("m", "a", "b"), edge("m1", "b", "t1"), edge("m2", "b", "t2")});
}

inline ConnectionRequirement butterfly_connection() {
  ConnectionRequirement c;
  c.sessions = {"x", "y"};
  c.origin = {{"x", "s1"}, {"y", "s2"}};
  c.receivers = {{"x", {"t1", "t2"}}, {"y", {"t1", "t2"}}};
  return c;
}

/// Binary butterfly, tables. With `forward_only` the middle edge carries x alone.
inline Instance butterfly(bool forward_only = false) {
  Instance in{butterfly_network(), butterfly_connection(), {}};
  for (const auto& v : {"x", "y", "e1", "e2", "e3", "e4", "m", "m1", "m2"}) in.code.alphabets[v] = Alphabet::symbols(2);
  const auto id = LocalMap::table({0, 1});
  for (const auto& e : {"e1", "e2", "e3", "e4", "m1", "m2"}) in.code.encoders[e] = id;
  in.code.encoders["m"] = LocalMap::table(forward_only ? std::vector<std::uint64_t>{0, 0, 1, 1}
                                                       : std::vector<std::uint64_t>{0, 1, 1, 0});
  // t1 sees (e1, m1), t2 sees (e4, m2)
  in.code.decoders[{"t1", "x"}] = LocalMap::table({0, 0, 1, 1});
  in.code.decoders[{"t1", "y"}] = LocalMap::table({0, 1, 1, 0});
  in.code.decoders[{"t2", "x"}] = LocalMap::table({0, 1, 1, 0});
  in.code.decoders[{"t2", "y"}] = LocalMap::table({0, 0, 1, 1});
  return in;
}

/// The same XOR butterfly written with F_2 matrices.
inline Instance linear_butterfly() {
  Instance in{butterfly_network(), butterfly_connection(), {}};
  for (const auto& v : {"x", "y", "e1", "e2", "e3", "e4", "m", "m1", "m2"}) {
    in.code.alphabets[v] = Alphabet::vector_space(2, 1);
  }
  for (const auto& e : {"e1", "e2", "e3", "e4", "m1", "m2"}) in.code.encoders[e] = mat(2, {{1}});
  in.code.encoders["m"] = mat(2, {{1, 1}});
  in.code.decoders[{"t1", "x"}] = mat(2, {{1, 0}});
  in.code.decoders[{"t1", "y"}] = mat(2, {{1, 1}});
  in.code.decoders[{"t2", "x"}] = mat(2, {{1, 1}});
  in.code.decoders[{"t2", "y"}] = mat(2, {{1, 0}});
  return in;
}

/// Butterfly with random F_q matrices of the given dimensions everywhere; decoders
/// are random too, so the code is usually not zero-error.
inline Instance random_linear_butterfly(int q, int dim, std::mt19937_64& rng) {
  Instance in{butterfly_network(), butterfly_connection(), {}};
  std::uniform_int_distribution<int> d(0, dim), sym(0, q - 1);
  std::map<std::string, int> dims{{"x", dim}, {"y", dim}};
  for (const auto& e : in.net.edges()) dims[e.id] = d(rng);
  auto random_matrix = [&](int rows, int cols) {
    FqMatrix m(q, rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m.set(r, c, sym(rng));
    }
    return LocalMap::matrix(m);
  };
  auto feed_dim = [&](const std::string& node) {
    int total = 0;
    for (const auto& f : node_feeds(in.net, in.conn, node)) total += dims[f];
    return total;
  };
  for (const auto& [v, k] : dims) in.code.alphabets[v] = Alphabet::vector_space(q, k);
  for (const auto& e : in.net.edges()) in.code.encoders[e.id] = random_matrix(dims[e.id], feed_dim(e.tail));
  for (const auto& [t, s] : in.conn.demands()) in.code.decoders[{t, s}] = random_matrix(dim, feed_dim(t));
  return in;
}

}  // namespace fixture
