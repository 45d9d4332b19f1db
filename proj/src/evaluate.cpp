#include "netdual/evaluate.hpp"

#include <algorithm>
#include <set>

#include "netdual/errors.hpp"

namespace netdual {

CodeEvaluator::CodeEvaluator(const Network& net, const ConnectionRequirement& conn, const NetworkCode& code,
                             EvaluationOptions options)
    : net_(net), conn_(conn), code_(code), options_(options) {
  conn.validate(net);
  std::vector<std::string> sessions = conn.sessions;
  std::sort(sessions.begin(), sessions.end());
  num_sessions_ = static_cast<int>(sessions.size());
  labels_ = sessions;
  for (const auto& e : net.edges()) labels_.push_back(e.id);
  for (std::size_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = static_cast<int>(i);

  for (const auto& l : labels_) {
    auto it = code.alphabets.find(l);
    if (it == code.alphabets.end()) throw StructuralError("code has no alphabet for '" + l + "'");
    if (it->second.size == 0) throw StructuralError("empty alphabet for '" + l + "'");
    alphabet_.push_back(it->second);
  }
  feeds_.resize(labels_.size());
  feed_alphabets_.resize(labels_.size());
  encoder_.assign(labels_.size(), nullptr);
  for (const auto& e : net.edges()) {
    const int v = index_[e.id];
    for (const auto& f : node_feeds(net, conn, e.tail)) {
      feeds_[v].push_back(index_.at(f));
      feed_alphabets_[v].push_back(alphabet_[index_.at(f)]);
    }
    auto it = code.encoders.find(e.id);
    if (it == code.encoders.end()) throw StructuralError("code has no encoder for edge '" + e.id + "'");
    it->second.check_shape(feed_alphabets_[v], alphabet_[v], "encoder of '" + e.id + "'");
    encoder_[v] = &it->second;
  }
  for (int e : net.edge_order()) edge_order_.push_back(num_sessions_ + e);
  topo_rank_.assign(labels_.size(), 0);
  for (std::size_t k = 0; k < edge_order_.size(); ++k) topo_rank_[edge_order_[k]] = static_cast<int>(k);

  for (const auto& [receiver, session] : conn.demands()) {
    auto it = code.decoders.find({receiver, session});
    if (it == code.decoders.end()) {
      throw StructuralError("code has no decoder for session '" + session + "' at '" + receiver + "'");
    }
    std::vector<Alphabet> in;
    for (const auto& f : node_feeds(net, conn, receiver)) in.push_back(alphabet_[index_.at(f)]);
    it->second.check_shape(in, alphabet_[index_.at(session)], "decoder of '" + session + "' at '" + receiver + "'");
  }
}

int CodeEvaluator::var_index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ArgumentError("unknown variable '" + label + "'");
  return it->second;
}

std::vector<int> CodeEvaluator::upstream_edges(const std::vector<int>& vars) const {
  std::vector<bool> seen(labels_.size(), false);
  std::vector<int> stack(vars.begin(), vars.end());
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    for (int f : feeds_[v]) stack.push_back(f);
  }
  std::vector<int> out;
  for (int v : edge_order_) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

std::vector<int> CodeEvaluator::upstream_sessions(const std::vector<int>& vars) const {
  std::set<int> out;
  for (int v : vars) {
    if (v < num_sessions_) out.insert(v);
  }
  for (int e : upstream_edges(vars)) {
    for (int f : feeds_[e]) {
      if (f < num_sessions_) out.insert(f);
    }
  }
  return {out.begin(), out.end()};
}

void CodeEvaluator::enumerate(const std::vector<int>& sessions, const std::vector<int>& edges,
                              const std::function<void(const std::vector<std::uint64_t>&)>& visit) const {
  std::uint64_t total = 1;
  for (int s : sessions) {
    if (alphabet_[s].size > options_.product_cap / total) {
      throw ResourceError("source product exceeds cap " + std::to_string(options_.product_cap));
    }
    total *= alphabet_[s].size;
  }
  std::vector<std::uint64_t> values(labels_.size(), 0);
  std::vector<std::uint64_t> inputs;
  for (std::uint64_t step = 0; step < total; ++step) {
    if (step > 0) {
      for (std::size_t k = sessions.size(); k-- > 0;) {
        if (++values[sessions[k]] < alphabet_[sessions[k]].size) break;
        values[sessions[k]] = 0;
      }
    }
    for (int e : edges) {
      inputs.clear();
      for (int f : feeds_[e]) inputs.push_back(values[f]);
      values[e] = encoder_[e]->apply(inputs, feed_alphabets_[e], alphabet_[e]);
    }
    visit(values);
  }
}

namespace {

/// log M - (1/M) sum_c c log c, given the multiset of outcome counts.
LogScalar entropy_from_counts(const std::map<std::vector<std::uint64_t>, std::uint64_t>& counts,
                              std::uint64_t total) {
  std::map<std::uint64_t, std::uint64_t> by_count;
  for (const auto& [_, c] : counts) ++by_count[c];
  LogScalar h = LogScalar::log(total);
  for (const auto& [c, mult] : by_count) {
    if (c > 1) h -= LogScalar::log(c) * Rational(mpz_class(std::to_string(c * mult)), mpz_class(std::to_string(total)));
  }
  return h;
}

}  // namespace

LogScalar CodeEvaluator::entropy(const std::vector<std::string>& vars) const {
  std::vector<int> idx;
  for (const auto& l : vars) idx.push_back(var_index(l));
  if (idx.empty()) return {};
  const auto sessions = upstream_sessions(idx);
  std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> key(idx.size());
  enumerate(sessions, upstream_edges(idx), [&](const std::vector<std::uint64_t>& values) {
    for (std::size_t k = 0; k < idx.size(); ++k) key[k] = values[idx[k]];
    ++counts[key];
    ++total;
  });
  return entropy_from_counts(counts, total);
}

SetFunction CodeEvaluator::induced_function(const std::vector<std::string>& vars) const {
  GroundSet ground(vars);
  std::vector<int> idx;
  for (const auto& l : vars) idx.push_back(var_index(l));
  const auto sessions = upstream_sessions(idx);
  std::vector<std::vector<std::uint64_t>> rows;
  enumerate(sessions, upstream_edges(idx), [&](const std::vector<std::uint64_t>& values) {
    std::vector<std::uint64_t> r(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) r[k] = values[idx[k]];
    rows.push_back(std::move(r));
  });
  const std::uint64_t total = rows.size();
  if (total * (std::uint64_t{1} << idx.size()) > (std::uint64_t{1} << 30)) {
    throw ResourceError("induced function too large to tabulate");
  }
  SetFunction f(ground);
  std::vector<std::uint64_t> key;
  for (Subset s = 1; s <= ground.full(); ++s) {
    std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
    for (const auto& r : rows) {
      key.clear();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (contains(s, static_cast<int>(k))) key.push_back(r[k]);
      }
      ++counts[key];
    }
    f.set(s, entropy_from_counts(counts, total));
  }
  return f;
}

EvaluationResult CodeEvaluator::evaluate() const {
  EvaluationResult result;
  for (const auto& [receiver, session] : conn_.demands()) {
    const LocalMap& dec = code_.decoders.at({receiver, session});
    std::vector<int> in;
    std::vector<Alphabet> in_alph;
    for (const auto& f : node_feeds(net_, conn_, receiver)) {
      in.push_back(index_.at(f));
      in_alph.push_back(alphabet_[index_.at(f)]);
    }
    const int target = index_.at(session);
    auto vars = in;
    vars.push_back(target);
    const auto sessions = upstream_sessions(vars);
    std::size_t failures = 0;
    std::vector<std::uint64_t> inputs;
    enumerate(sessions, upstream_edges(vars), [&](const std::vector<std::uint64_t>& values) {
      inputs.clear();
      for (int f : in) inputs.push_back(values[f]);
      const std::uint64_t got = dec.apply(inputs, in_alph, alphabet_[target]);
      if (got == values[target]) return;
      result.zero_error = false;
      if (failures++ >= options_.max_failures_per_decoder) return;
      FailingInput fi{{}, receiver, session, got};
      for (int s : sessions) fi.sources[labels_[s]] = values[s];
      result.failing_inputs.push_back(std::move(fi));
    });
  }
  if (static_cast<int>(labels_.size()) <= options_.induced_cap) result.induced = induced_function(labels_);
  return result;
}

EvaluationResult evaluate_code(const Network& net, const ConnectionRequirement& conn, const NetworkCode& code,
                               EvaluationOptions options) {
  return CodeEvaluator(net, conn, code, options).evaluate();
}

std::vector<std::string> alphabet_violations(const Network& net, const NetworkCode& code,
                                             const RateCapacityTuple& tuple) {
  std::vector<std::string> out;
  for (const auto& e : net.edges()) {
    const auto cap = tuple.capacity(e);
    if (!cap) continue;
    auto it = code.alphabets.find(e.id);
    if (it == code.alphabets.end()) throw StructuralError("code has no alphabet for '" + e.id + "'");
    if (it->second.log_size() > *cap) out.push_back(e.id);
  }
  for (const auto& [s, rate] : tuple.rates) {
    auto it = code.alphabets.find(s);
    if (it == code.alphabets.end()) throw StructuralError("code has no alphabet for '" + s + "'");
    if (it->second.log_size() < rate) out.push_back(s);
  }
  return out;
}

bool check_admissible(const Network& net, const ConnectionRequirement& conn, const NetworkCode& code,
                      const RateCapacityTuple& tuple, EvaluationOptions options) {
  options.induced_cap = 0;
  if (!alphabet_violations(net, code, tuple).empty()) return false;
  return evaluate_code(net, conn, code, options).zero_error;
}

namespace {

Alphabet product_alphabet(const Alphabet& a, const Alphabet& b) {
  if (a.linear() && b.linear() && a.q == b.q) return Alphabet::vector_space(a.q, a.dim + b.dim);
  if (a.size > (std::uint64_t{1} << 40) / b.size) throw ResourceError("product alphabet too large");
  return Alphabet::symbols(a.size * b.size);
}

LocalMap product_map(const LocalMap& ma, const LocalMap& mb, const std::vector<Alphabet>& in_a,
                     const std::vector<Alphabet>& in_b, const Alphabet& out_a, const Alphabet& out_b,
                     const std::vector<Alphabet>& in_p, const Alphabet& out_p) {
  if (ma.is_matrix() && mb.is_matrix() && out_p.linear()) {
    bool all_linear = true;
    for (const auto& a : in_p) all_linear = all_linear && a.linear();
    if (all_linear) {
      // block diagonal, with columns interleaved per input: [a_k digits, b_k digits]
      int cols = 0;
      for (const auto& a : in_p) cols += a.dim;
      FqMatrix m(out_p.q, out_p.dim, cols);
      int ca = 0, cb = 0, c = 0;
      for (std::size_t k = 0; k < in_p.size(); ++k) {
        for (int d = 0; d < in_a[k].dim; ++d, ++c, ++ca) {
          for (int r = 0; r < out_a.dim; ++r) m.set(r, c, ma.mat()(r, ca));
        }
        for (int d = 0; d < in_b[k].dim; ++d, ++c, ++cb) {
          for (int r = 0; r < out_b.dim; ++r) m.set(out_a.dim + r, c, mb.mat()(r, cb));
        }
      }
      return LocalMap::matrix(std::move(m));
    }
  }
  std::uint64_t domain = 1;
  for (const auto& a : in_p) {
    if (a.size > (std::uint64_t{1} << 26) / domain) throw ResourceError("product table too large");
    domain *= a.size;
  }
  std::vector<std::uint64_t> table(domain);
  std::vector<std::uint64_t> xa(in_p.size()), xb(in_p.size());
  for (std::uint64_t idx = 0; idx < domain; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t k = in_p.size(); k-- > 0;) {
      const std::uint64_t x = rest % in_p[k].size;
      rest /= in_p[k].size;
      xa[k] = x % in_a[k].size;
      xb[k] = x / in_a[k].size;
    }
    table[idx] = ma.apply(xa, in_a, out_a) + mb.apply(xb, in_b, out_b) * out_a.size;
  }
  return LocalMap::table(std::move(table));
}

}  // namespace

NetworkCode code_product(const Network& net, const ConnectionRequirement& conn, const NetworkCode& a,
                         const NetworkCode& b) {
  std::vector<std::string> labels;
  try {
    CodeEvaluator check_a(net, conn, a), check_b(net, conn, b);
    labels = check_a.variables();
  } catch (const StructuralError& e) {
    throw ArgumentError(std::string("codes do not share the network: ") + e.what());
  }
  NetworkCode p;
  for (const auto& l : labels) p.alphabets[l] = product_alphabet(a.alphabets.at(l), b.alphabets.at(l));
  auto build = [&](const std::vector<std::string>& feeds, const LocalMap& ma, const LocalMap& mb,
                   const std::string& out) {
    std::vector<Alphabet> in_a, in_b, in_p;
    for (const auto& f : feeds) {
      in_a.push_back(a.alphabets.at(f));
      in_b.push_back(b.alphabets.at(f));
      in_p.push_back(p.alphabets.at(f));
    }
    return product_map(ma, mb, in_a, in_b, a.alphabets.at(out), b.alphabets.at(out), in_p, p.alphabets.at(out));
  };
  for (const auto& e : net.edges()) {
    p.encoders[e.id] = build(node_feeds(net, conn, e.tail), a.encoders.at(e.id), b.encoders.at(e.id), e.id);
  }
  for (const auto& key : conn.demands()) {
    p.decoders[key] = build(node_feeds(net, conn, key.first), a.decoders.at(key), b.decoders.at(key), key.second);
  }
  return p;
}

LinearKernels kernels_of_linear_code(const Network& net, const ConnectionRequirement& conn,
                                     const NetworkCode& code) {
  if (!code.is_linear()) throw ArgumentError("code is not linear");
  const int q = code.field_size();
  CodeEvaluator ev(net, conn, code);
  LinearKernels out;
  out.labels = ev.variables();
  std::vector<std::string> sessions = conn.sessions;
  std::sort(sessions.begin(), sessions.end());
  int total = 0;
  std::map<std::string, FqMatrix> global;
  for (const auto& s : sessions) total += code.alphabets.at(s).dim;
  int offset = 0;
  for (const auto& s : sessions) {
    const int d = code.alphabets.at(s).dim;
    FqMatrix g(q, d, total);
    for (int k = 0; k < d; ++k) g.set(k, offset + k, 1);
    offset += d;
    global[s] = std::move(g);
  }
  for (int e : net.edge_order()) {
    const auto& edge = net.edges()[e];
    FqMatrix stacked(q, 0, total);
    for (const auto& f : node_feeds(net, conn, edge.tail)) stacked = vstack(stacked, global.at(f));
    const FqMatrix& m = code.encoders.at(edge.id).mat();
    const int dim = code.alphabets.at(edge.id).dim;
    global[edge.id] = (m.rows() == 0 || m.cols() == 0) ? FqMatrix(q, dim, total) : m * stacked;
  }
  out.family.q = q;
  out.family.n = total;
  for (const auto& l : out.labels) {
    const FqMatrix& g = global.at(l);
    out.global_maps.push_back(g);
    out.family.members.push_back(g.rows() == 0 ? FqMatrix::identity(q, total) : g.nullspace());
  }
  return out;
}

}  // namespace netdual
