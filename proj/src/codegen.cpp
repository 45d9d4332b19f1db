#include "netdual/codegen.hpp"

#include <algorithm>
#include <functional>

#include "netdual/errors.hpp"
#include "netdual/inequalities.hpp"

namespace netdual {

SideInfoCode::SideInfoCode(const SupportSet& s) {
  if (s.arity() != 2) throw ArgumentError("side-information coding needs a pair of variables");
  if (!quasi_uniform_check(s).quasi_uniform) throw ArgumentError("support is not quasi-uniform");
  for (const auto& t : s.tuples) slices_[t[1]].push_back(t[0]);
  for (auto& [_, v] : slices_) std::sort(v.begin(), v.end());
  size_ = s.size() / slices_.size();
}

std::uint64_t SideInfoCode::encode(int u1, int u2) const {
  auto it = slices_.find(u2);
  if (it == slices_.end()) throw ArgumentError("side information outside the support");
  auto pos = std::lower_bound(it->second.begin(), it->second.end(), u1);
  if (pos == it->second.end() || *pos != u1) throw ArgumentError("pair outside the support");
  return static_cast<std::uint64_t>(pos - it->second.begin());
}

int SideInfoCode::decode(std::uint64_t w, int u2) const {
  auto it = slices_.find(u2);
  if (it == slices_.end() || w >= it->second.size()) throw ArgumentError("codeword outside the support");
  return it->second[w];
}

SideInfoCode side_info_encoder(const SupportSet& s) { return SideInfoCode(s); }

namespace {

using Inputs = std::vector<std::uint64_t>;

int feed_pos(const std::vector<std::string>& feeds, const std::string& label) {
  auto it = std::find(feeds.begin(), feeds.end(), label);
  if (it == feeds.end()) throw std::logic_error("missing feed " + label);
  return static_cast<int>(it - feeds.begin());
}

/// Shared state while filling in a code on a fixed network.
struct CodeBuilder {
  const Network& net;
  const ConnectionRequirement& conn;
  NetworkCode code;

  std::vector<std::string> feeds_of_edge(const std::string& e) const {
    return node_feeds(net, conn, net.edge(e).tail);
  }
  std::vector<Alphabet> alphabets(const std::vector<std::string>& feeds) const {
    std::vector<Alphabet> out;
    for (const auto& f : feeds) out.push_back(code.alphabets.at(f));
    return out;
  }
  LocalMap tabulate(const std::vector<std::string>& feeds, const std::function<std::uint64_t(const Inputs&)>& fn) const {
    const auto in = alphabets(feeds);
    std::uint64_t domain = 1;
    for (const auto& a : in) {
      if (a.size > (std::uint64_t{1} << 28) / domain) throw ResourceError("lookup table too large");
      domain *= a.size;
    }
    std::vector<std::uint64_t> table(domain);
    Inputs x(in.size(), 0);
    for (std::uint64_t idx = 0; idx < domain; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t k = in.size(); k-- > 0;) {
        x[k] = rest % in[k].size;
        rest /= in[k].size;
      }
      table[idx] = fn(x);
    }
    return LocalMap::table(std::move(table));
  }
  void encoder(const std::string& e, const std::function<std::uint64_t(const Inputs&)>& fn) {
    code.encoders[e] = tabulate(feeds_of_edge(e), fn);
  }
  /// Encoder of an edge whose value is one of its feeds.
  void forward(const std::string& e, const std::string& source) {
    const int p = feed_pos(feeds_of_edge(e), source);
    encoder(e, [p](const Inputs& x) { return x[p]; });
  }
  void decoder(const std::string& rx, const std::string& session, const std::function<std::uint64_t(const Inputs&)>& fn) {
    code.decoders[{rx, session}] = tabulate(node_feeds(net, conn, rx), fn);
  }
  /// Matrix over a node's feeds assembled from per-feed column blocks; missing feeds get zero.
  FqMatrix assemble(const std::vector<std::string>& feeds, const std::map<std::string, FqMatrix>& blocks,
                    int q, int out_dim) const {
    FqMatrix m(q, out_dim, 0);
    for (const auto& f : feeds) {
      const int d = code.alphabets.at(f).dim;
      auto it = blocks.find(f);
      m = hstack(m, it == blocks.end() ? FqMatrix(q, out_dim, d) : it->second);
    }
    return m;
  }
};

/// Fan-out edges leaving the distribution node, grouped by the V edge they copy.
std::vector<std::pair<std::string, int>> fan_outs(const GDaggerLayout& L) {
  std::vector<std::pair<std::string, int>> out;
  for (int e : L.network.out_edges("dist")) {
    const std::string& id = L.network.edges()[e].id;
    const std::string base = id.substr(0, id.find('>'));
    const auto j = std::find(L.v_edges.begin(), L.v_edges.end(), base) - L.v_edges.begin();
    out.emplace_back(id, static_cast<int>(j));
  }
  return out;
}

/// Index structures of a support: sorted distinct projections on each alpha.
struct SupportIndex {
  const SupportSet& s;
  int n;
  std::vector<std::map<std::vector<int>, std::uint64_t>> proj_index;  // by alpha
  std::vector<std::vector<std::uint64_t>> tuple_proj;                 // [alpha][tuple] -> idx
  std::vector<std::vector<std::vector<std::uint64_t>>> slices;        // [alpha][p] -> tuple ids

  explicit SupportIndex(const SupportSet& sup) : s(sup), n(sup.arity()) {
    const std::size_t masks = std::size_t{1} << n;
    proj_index.resize(masks);
    tuple_proj.resize(masks);
    slices.resize(masks);
    for (Subset a = 1; a < masks; ++a) {
      const auto p = s.projections(a);
      for (std::size_t k = 0; k < p.size(); ++k) proj_index[a][p[k]] = k;
      slices[a].resize(p.size());
      for (std::size_t t = 0; t < s.size(); ++t) {
        const std::uint64_t k = proj_index[a].at(s.project(s.tuples[t], a));
        tuple_proj[a].push_back(k);
        slices[a][k].push_back(t);
      }
    }
  }
  std::uint64_t count(Subset a) const { return proj_index[a].size(); }
  /// idx_alpha from the V_j symbol indices (j in alpha, ascending), if that combination occurs.
  std::optional<std::uint64_t> from_coordinates(Subset a, const std::vector<std::uint64_t>& v) const {
    std::vector<int> proj;
    std::size_t k = 0;
    for (int j = 0; j < n; ++j) {
      if (!contains(a, j)) continue;
      const auto& pj = proj_index[singleton(j)];
      if (v[k] >= pj.size()) return std::nullopt;
      proj.push_back(std::next(pj.begin(), static_cast<long>(v[k]))->first[0]);
      ++k;
    }
    auto it = proj_index[a].find(proj);
    if (it == proj_index[a].end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace

NetworkCode quasi_uniform_code(const SupportSet& s, const GDaggerLayout& L) {
  if (s.arity() != L.n) throw ArgumentError("support arity does not match the layout");
  const auto qu = quasi_uniform_check(s);
  if (!qu.quasi_uniform) throw ArgumentError("support is not quasi-uniform");
  const SupportIndex ix(s);
  const Subset all = L.full();
  const std::uint64_t total = s.size();
  CodeBuilder b{L.network, L.conn, {}};
  auto& A = b.code.alphabets;

  for (const auto& [a, label] : L.session) A[label] = Alphabet::symbols(a == all ? total : ix.count(a));
  for (int j = 0; j < L.n; ++j) A[L.v_edges[j]] = Alphabet::symbols(ix.count(singleton(j)));
  const auto fans = fan_outs(L);
  for (const auto& [id, j] : fans) A[id] = A[L.v_edges[j]];
  for (const auto& sub : L.subnetworks) {
    const Subset a = sub.alpha;
    const std::string& p = sub.prefix;
    if (sub.type == 0) {
      A[sub.roles.at("W")] = A[L.session.at(a)];
    } else if (sub.type == 1) {
      A[sub.roles.at("W'")] = Alphabet::symbols(ix.count(a));
      A[sub.roles.at("W")] = Alphabet::symbols(total / ix.count(a));
    } else {
      const Subset i = singleton(sub.extra);
      const Alphabet m_alpha = Alphabet::symbols(ix.count(a));
      for (const auto& e : {p + ".S>n1", p + ".S>up", sub.roles.at("W"), p + ".W>up", p + ".W>low", sub.roles.at("W*")}) {
        A[e] = m_alpha;
      }
      A[sub.roles.at("W'")] = Alphabet::symbols(total / ix.count(a));
      A[sub.roles.at("W''")] = Alphabet::symbols(ix.count(a | i) / ix.count(i));
    }
  }

  const std::string top = L.session.at(all);
  for (int j = 0; j < L.n; ++j) {
    const auto& proj = ix.tuple_proj[singleton(j)];
    b.encoder(L.v_edges[j], [&proj](const Inputs& x) { return proj[x[0]]; });
    b.code.manifest[L.v_edges[j]] = "coordinate " + std::to_string(j + 1) + " of the joint tuple";
  }
  for (const auto& [id, j] : fans) b.forward(id, L.v_edges[j]);

  // V_alpha symbol from the V_j feeds of a node, or 0 when the combination never occurs
  auto v_alpha = [&](Subset a, const std::vector<std::string>& feeds) {
    std::vector<int> pos;
    for (int j = 0; j < L.n; ++j) {
      if (!contains(a, j)) continue;
      for (std::size_t k = 0; k < feeds.size(); ++k) {
        if (feeds[k].rfind(L.v_edges[j] + ">", 0) == 0) pos.push_back(static_cast<int>(k));
      }
    }
    return [&ix, a, pos](const Inputs& x) -> std::uint64_t {
      std::vector<std::uint64_t> v;
      for (int k : pos) v.push_back(x[k]);
      return ix.from_coordinates(a, v).value_or(0);
    };
  };
  // rank of a tuple within the tuples sharing its alpha projection
  auto slice_rank = [&](Subset a) {
    std::vector<std::uint64_t> rank(total);
    for (const auto& sl : ix.slices[a]) {
      for (std::size_t k = 0; k < sl.size(); ++k) rank[sl[k]] = k;
    }
    return rank;
  };

  for (const auto& sub : L.subnetworks) {
    const Subset a = sub.alpha;
    const std::string& p = sub.prefix;
    const std::uint64_t m = ix.count(a);
    if (sub.type == 0) {
      b.forward(sub.roles.at("W"), L.session.at(a));
      b.decoder(sub.receivers[0].first, sub.receivers[0].second, [](const Inputs& x) { return x[0]; });
      b.code.manifest[sub.roles.at("W")] = "uncoded session";
      continue;
    }
    const auto rank = slice_rank(a);
    const auto& slices = ix.slices[a];
    if (sub.type == 1) {
      const std::string w = sub.roles.at("W"), wp = sub.roles.at("W'");
      b.encoder(wp, v_alpha(a, b.feeds_of_edge(wp)));
      b.encoder(w, [&rank](const Inputs& x) { return rank[x[0]]; });
      const auto feeds = node_feeds(L.network, L.conn, sub.receivers[0].first);
      const int pw = feed_pos(feeds, w), pwp = feed_pos(feeds, wp);
      b.decoder(sub.receivers[0].first, top, [&slices, pw, pwp](const Inputs& x) -> std::uint64_t {
        const auto& sl = slices[x[pwp]];
        return x[pw] < sl.size() ? sl[x[pw]] : 0;
      });
      b.code.manifest[wp] = "V_alpha uncoded";
      b.code.manifest[w] = "rank of the tuple among tuples with the same V_alpha";
      continue;
    }
    const Subset i = singleton(sub.extra);
    const std::string sa = L.session.at(a);
    const std::string w = sub.roles.at("W"), wp = sub.roles.at("W'"), w2 = sub.roles.at("W''"), ws = sub.roles.at("W*");
    b.forward(p + ".S>n1", sa);
    b.forward(p + ".S>up", sa);
    {
      const auto feeds = b.feeds_of_edge(w);
      const int ps = feed_pos(feeds, p + ".S>n1");
      auto va = v_alpha(a, feeds);
      b.encoder(w, [va, ps, m](const Inputs& x) { return (va(x) + x[ps]) % m; });
    }
    b.forward(p + ".W>up", w);
    b.forward(p + ".W>low", w);
    b.encoder(wp, [&rank](const Inputs& x) { return rank[x[0]]; });
    // W'': rank of V_alpha among the alpha-projections seen together with V_i
    std::map<std::uint64_t, std::vector<std::uint64_t>> with_vi;
    for (std::size_t t = 0; t < total; ++t) with_vi[ix.tuple_proj[i][t]].push_back(ix.tuple_proj[a][t]);
    for (auto& [_, v] : with_vi) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    {
      const auto feeds = b.feeds_of_edge(w2);
      auto va = v_alpha(a, feeds);
      auto vi = v_alpha(i, feeds);
      b.encoder(w2, [va, vi, with_vi](const Inputs& x) -> std::uint64_t {
        auto it = with_vi.find(vi(x));
        if (it == with_vi.end()) return 0;
        auto pos = std::lower_bound(it->second.begin(), it->second.end(), va(x));
        return pos != it->second.end() && *pos == va(x) ? static_cast<std::uint64_t>(pos - it->second.begin()) : 0;
      });
    }
    {
      const auto feeds = b.feeds_of_edge(ws);
      const int p2 = feed_pos(feeds, w2);
      auto vi = v_alpha(i, feeds);
      b.encoder(ws, [p2, vi, with_vi](const Inputs& x) -> std::uint64_t {
        auto it = with_vi.find(vi(x));
        if (it == with_vi.end() || x[p2] >= it->second.size()) return 0;
        return it->second[x[p2]];
      });
    }
    const auto& [up, up_session] = sub.receivers[0];
    const auto& [low, low_session] = sub.receivers[1];
    {
      const auto feeds = node_feeds(L.network, L.conn, up);
      const int ps = feed_pos(feeds, p + ".S>up"), pw = feed_pos(feeds, p + ".W>up"), pwp = feed_pos(feeds, wp);
      b.decoder(up, up_session, [&slices, ps, pw, pwp, m](const Inputs& x) -> std::uint64_t {
        const auto& sl = slices[(x[pw] + m - x[ps]) % m];
        return x[pwp] < sl.size() ? sl[x[pwp]] : 0;
      });
    }
    {
      const auto feeds = node_feeds(L.network, L.conn, low);
      const int pw = feed_pos(feeds, p + ".W>low"), pws = feed_pos(feeds, ws);
      b.decoder(low, low_session, [pw, pws, m](const Inputs& x) { return (x[pw] + m - x[pws]) % m; });
    }
    b.code.manifest[w] = "V_alpha index plus S[alpha], mod |support of V_alpha|";
    b.code.manifest[wp] = "rank of the tuple among tuples with the same V_alpha";
    b.code.manifest[w2] = "rank of V_alpha among values seen with V_i";
    b.code.manifest[ws] = "V_alpha rebuilt from W'' and V_i";
  }
  return std::move(b.code);
}

FqMatrix left_inverse(const FqMatrix& a) {
  const int q = a.q();
  if (a.cols() == 0) return FqMatrix(q, 0, a.rows());
  if (a.rank() != a.cols()) throw ArgumentError("left inverse needs full column rank");
  auto lt = a.transposed().solve(FqMatrix::identity(q, a.cols()));
  return lt->transposed();
}

LinearCompression linear_compress(int q, const FqMatrix& t1, const FqMatrix& t2) {
  if (t1.cols() != t2.cols()) throw ArgumentError("T1 and T2 have different domains");
  const int n = t1.cols();
  const FqMatrix b1 = t1.rows() ? t1.nullspace() : FqMatrix::identity(q, n);
  const FqMatrix b2 = t2.rows() ? t2.nullspace() : FqMatrix::identity(q, n);
  const std::vector<FqMatrix> both{b1.rows() ? b1 : FqMatrix(q, 0, n), b2.rows() ? b2 : FqMatrix(q, 0, n)};
  const FqMatrix b12 = intersect_subspaces(q, n, both);
  auto tail = [q, n](const FqMatrix& m, int from) {
    std::vector<int> rows;
    for (int r = from; r < m.rows(); ++r) rows.push_back(r);
    return rows.empty() ? FqMatrix(q, 0, n) : m.select_rows(rows);
  };
  const FqMatrix w1 = tail(extend_basis_within(b12, both[0]), b12.rows());
  const FqMatrix w2 = tail(extend_basis_within(b12, both[1]), b12.rows());
  const FqMatrix sum = vstack(vstack(b12, w1), w2);
  const FqMatrix w0 = tail(extend_basis(sum, n), sum.rows());
  const int d0 = w0.rows(), d2 = w2.rows();

  LinearCompression out;
  out.dim = d2;
  // (c0, c2) = L1 T1(a) where a = ... + W0^T c0 + W2^T c2
  const FqMatrix l1 = left_inverse(t1 * vstack(w0, w2).transposed());
  if (d2 > 0) {
    std::vector<int> rows;
    for (int r = d0; r < d0 + d2; ++r) rows.push_back(r);
    out.w_of_t1 = l1.select_rows(rows);
  } else {
    out.w_of_t1 = FqMatrix(q, 0, t1.rows());
  }
  out.w_of_a = out.w_of_t1 * t1;
  out.recon_w = d2 ? t1 * w2.transposed() : FqMatrix(q, t1.rows(), 0);
  const FqMatrix l2 = left_inverse(t2 * vstack(w0, w1).transposed());
  if (d0 > 0) {
    std::vector<int> rows;
    for (int r = 0; r < d0; ++r) rows.push_back(r);
    out.recon_t2 = t1 * w0.transposed() * l2.select_rows(rows);
  } else {
    out.recon_t2 = FqMatrix(q, t1.rows(), t2.rows());
  }
  return out;
}

NetworkCode linear_code(const SubspaceFamily& fam, const GDaggerLayout& L) {
  fam.validate();
  if (fam.arity() != L.n) throw ArgumentError("family size does not match the layout");
  const int q = fam.q, n = fam.n;
  const Subset all = L.full();
  if (fam.intersection(all).rank() != 0) {
    throw ArgumentError("subspaces intersect in a nonzero vector; quotient by the intersection first");
  }
  CodeBuilder b{L.network, L.conn, {}};
  auto& A = b.code.alphabets;

  std::vector<FqMatrix> f(L.n);
  for (int j = 0; j < L.n; ++j) {
    const auto& m = fam.members[j];
    f[j] = annihilator(m.rows() ? m : FqMatrix(q, 0, n), n);
  }
  // C_alpha: independent rows of the stacked f_j, j in alpha, and where they come from
  struct Coord {
    FqMatrix c;
    std::vector<std::pair<int, int>> origin;  // (j, row of f_j)
  };
  std::map<Subset, Coord> coords;
  auto coord = [&](Subset a) -> const Coord& {
    auto it = coords.find(a);
    if (it != coords.end()) return it->second;
    FqMatrix stacked(q, 0, n);
    std::vector<std::pair<int, int>> from;
    for (int j = 0; j < L.n; ++j) {
      if (!contains(a, j)) continue;
      stacked = vstack(stacked, f[j]);
      for (int r = 0; r < f[j].rows(); ++r) from.emplace_back(j, r);
    }
    Coord c{FqMatrix(q, 0, n), {}};
    const auto keep = stacked.independent_rows();
    if (!keep.empty()) c.c = stacked.select_rows(keep);
    for (int k : keep) c.origin.push_back(from[k]);
    return coords.emplace(a, std::move(c)).first->second;
  };
  // columns of a node's V feeds that select C_alpha
  auto select = [&](Subset a, const std::vector<std::string>& feeds) {
    const Coord& c = coord(a);
    std::map<std::string, FqMatrix> blocks;
    for (std::size_t k = 0; k < c.origin.size(); ++k) {
      const auto [j, r] = c.origin[k];
      std::string label;
      for (const auto& x : feeds) {
        if (x.rfind(L.v_edges[j] + ">", 0) == 0) label = x;
      }
      auto [it, _] = blocks.try_emplace(label, FqMatrix(q, c.c.rows(), f[j].rows()));
      it->second.set(static_cast<int>(k), r, 1);
    }
    return blocks;
  };
  auto set_matrix = [&](const std::string& e, const std::map<std::string, FqMatrix>& blocks) {
    b.code.encoders[e] = LocalMap::matrix(b.assemble(b.feeds_of_edge(e), blocks, q, A.at(e).dim));
  };
  auto set_decoder = [&](const std::string& rx, const std::string& s, const std::map<std::string, FqMatrix>& blocks) {
    b.code.decoders[{rx, s}] = LocalMap::matrix(b.assemble(node_feeds(L.network, L.conn, rx), blocks, q, A.at(s).dim));
  };
  auto scaled = [q](const FqMatrix& m, int c) {
    FqMatrix out = m;
    const auto& F = GaloisField::get(q);
    for (int r = 0; r < m.rows(); ++r) {
      for (int k = 0; k < m.cols(); ++k) out.set(r, k, F.mul(c, m(r, k)));
    }
    return out;
  };
  const int minus_one = GaloisField::get(q).neg(1);

  for (const auto& [a, label] : L.session) A[label] = Alphabet::vector_space(q, a == all ? n : coord(a).c.rows());
  for (int j = 0; j < L.n; ++j) A[L.v_edges[j]] = Alphabet::vector_space(q, f[j].rows());
  const auto fans = fan_outs(L);
  for (const auto& [id, j] : fans) A[id] = A[L.v_edges[j]];
  std::map<Subset, LinearCompression> top_compress;
  for (const auto& sub : L.subnetworks) {
    const Subset a = sub.alpha;
    const std::string& p = sub.prefix;
    const Alphabet d_alpha = A.at(L.session.at(a));
    if (sub.type == 0) {
      A[sub.roles.at("W")] = d_alpha;
      continue;
    }
    if (!top_compress.count(a)) top_compress.emplace(a, linear_compress(q, FqMatrix::identity(q, n), coord(a).c));
    A[sub.roles.at("W")] = Alphabet::vector_space(q, sub.type == 1 ? top_compress.at(a).dim : d_alpha.dim);
    A[sub.roles.at("W'")] = sub.type == 1 ? d_alpha : Alphabet::vector_space(q, top_compress.at(a).dim);
    if (sub.type == 2) {
      for (const auto& e : {p + ".S>n1", p + ".S>up", p + ".W>up", p + ".W>low", sub.roles.at("W*")}) A[e] = d_alpha;
    }
  }

  const std::string top = L.session.at(all);
  for (int j = 0; j < L.n; ++j) {
    set_matrix(L.v_edges[j], {{top, f[j]}});
    b.code.manifest[L.v_edges[j]] = "map with kernel V_" + std::to_string(j + 1);
  }
  for (const auto& [id, j] : fans) set_matrix(id, {{L.v_edges[j], FqMatrix::identity(q, f[j].rows())}});

  for (const auto& sub : L.subnetworks) {
    const Subset a = sub.alpha;
    const std::string& p = sub.prefix;
    const std::string sa = L.session.at(a);
    const int da = A.at(sa).dim;
    const FqMatrix id_a = FqMatrix::identity(q, da);
    if (sub.type == 0) {
      set_matrix(sub.roles.at("W"), {{sa, id_a}});
      set_decoder(sub.receivers[0].first, sub.receivers[0].second, {{sub.roles.at("W"), id_a}});
      b.code.manifest[sub.roles.at("W")] = "uncoded session";
      continue;
    }
    const LinearCompression& lc = top_compress.at(a);
    const std::string w = sub.roles.at("W"), wp = sub.roles.at("W'");
    if (sub.type == 1) {
      set_matrix(wp, select(a, b.feeds_of_edge(wp)));
      set_matrix(w, {{top, lc.w_of_a}});
      set_decoder(sub.receivers[0].first, top, {{w, lc.recon_w}, {wp, lc.recon_t2}});
      b.code.manifest[wp] = "coordinates of V_alpha";
      b.code.manifest[w] = "compression of S against V_alpha";
      continue;
    }
    const int i = sub.extra;
    const std::string w2 = sub.roles.at("W''"), ws = sub.roles.at("W*");
    set_matrix(p + ".S>n1", {{sa, id_a}});
    set_matrix(p + ".S>up", {{sa, id_a}});
    auto wblocks = select(a, b.feeds_of_edge(w));
    wblocks.emplace(p + ".S>n1", id_a);
    set_matrix(w, wblocks);
    set_matrix(p + ".W>up", {{w, id_a}});
    set_matrix(p + ".W>low", {{w, id_a}});
    set_matrix(wp, {{top, lc.w_of_a}});
    const LinearCompression side = linear_compress(q, coord(a).c, f[i]);
    A[w2] = Alphabet::vector_space(q, side.dim);
    {
      auto blocks = select(a, b.feeds_of_edge(w2));
      for (auto& [_, m] : blocks) m = side.w_of_t1 * m;
      set_matrix(w2, blocks);
    }
    {
      std::string vi;
      for (const auto& x : b.feeds_of_edge(ws)) {
        if (x.rfind(L.v_edges[i] + ">", 0) == 0) vi = x;
      }
      set_matrix(ws, {{w2, side.recon_w}, {vi, side.recon_t2}});
    }
    const auto& [up, up_session] = sub.receivers[0];
    const auto& [low, low_session] = sub.receivers[1];
    set_decoder(up, up_session, {{p + ".S>up", scaled(lc.recon_t2, minus_one)}, {p + ".W>up", lc.recon_t2}, {wp, lc.recon_w}});
    set_decoder(low, low_session, {{ws, scaled(id_a, minus_one)}, {p + ".W>low", id_a}});
    b.code.manifest[w] = "S[alpha] plus the coordinates of V_alpha";
    b.code.manifest[wp] = "compression of S against V_alpha";
    b.code.manifest[w2] = "compression of V_alpha against V_i";
    b.code.manifest[ws] = "V_alpha rebuilt from W'' and V_i";
  }
  return std::move(b.code);
}

NetworkCode group_code_encode(const FiniteGroup& g, const std::map<std::string, std::vector<int>>& assignment,
                              const Network& net, const ConnectionRequirement& conn) {
  conn.validate(net);
  std::vector<std::string> vars = conn.sessions;
  for (const auto& e : net.edges()) vars.push_back(e.id);
  std::map<std::string, std::vector<int>> coset;  // label -> coset index of each element
  NetworkCode code;
  for (const auto& v : vars) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw ArgumentError("no subgroup assigned to '" + v + "'");
    if (!is_subgroup(g, it->second)) throw ArgumentError("assignment of '" + v + "' is not a subgroup");
    // first-encounter coset numbering, as in coset_support
    std::vector<int> idx(g.order());
    std::map<int, int> first;
    for (int x = 0; x < g.order(); ++x) {
      int key = g.order();
      for (int h : it->second) key = std::min(key, g.mul(x, h));
      idx[x] = first.emplace(key, static_cast<int>(first.size())).first->second;
    }
    code.alphabets[v] = Alphabet::symbols(first.size());
    coset[v] = std::move(idx);
  }
  {
    SubgroupFamily sessions{g, {}};
    for (const auto& s : conn.sessions) sessions.members.push_back(assignment.at(s));
    if (!sessions.members.empty()) {
      const SetFunction h = entropy_from_subgroups(sessions);
      std::vector<Subset> parts;
      for (int k = 0; k < sessions.arity(); ++k) parts.push_back(singleton(k));
      if (!is_independent(h, parts)) throw ArgumentError("session subgroups do not give independent sessions");
    }
  }
  auto build = [&](const std::vector<std::string>& feeds, const std::string& out, const std::string& where) {
    std::uint64_t domain = 1;
    for (const auto& f : feeds) domain *= code.alphabets.at(f).size;
    if (domain > (std::uint64_t{1} << 26)) throw ResourceError(where + ": lookup table too large");
    std::vector<std::uint64_t> table(domain, 0);
    std::vector<int> owner(domain, -1);
    for (int x = 0; x < g.order(); ++x) {
      std::uint64_t key = 0;
      for (const auto& f : feeds) key = key * code.alphabets.at(f).size + coset[f][x];
      const int value = coset[out][x];
      if (owner[key] >= 0 && static_cast<int>(table[key]) != value) {
        std::string combo;
        for (const auto& f : feeds) combo += (combo.empty() ? "" : ", ") + f + "=" + std::to_string(coset[f][x]);
        throw ArgumentError(where + ": input cosets (" + combo + ") meet two cosets of the output subgroup (elements " +
                            std::to_string(owner[key]) + " and " + std::to_string(x) + ")");
      }
      owner[key] = x;
      table[key] = value;
    }
    return LocalMap::table(std::move(table));
  };
  for (const auto& e : net.edges()) {
    code.encoders[e.id] = build(node_feeds(net, conn, e.tail), e.id, "edge '" + e.id + "'");
    code.manifest[e.id] = "coset of the assigned subgroup";
  }
  for (const auto& [rx, s] : conn.demands()) {
    code.decoders[{rx, s}] = build(node_feeds(net, conn, rx), s, "decoder of '" + s + "' at '" + rx + "'");
  }
  return code;
}

}  // namespace netdual
