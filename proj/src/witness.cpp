#include "netdual/witness.hpp"

#include <algorithm>

#include "netdual/errors.hpp"
#include "netdual/extensions.hpp"
#include "netdual/inequalities.hpp"

namespace netdual {

namespace {

SetFunction singleton_function(const std::string& label, const LogScalar& value) {
  SetFunction f{GroundSet({label})};
  f.set(1, value);
  return f;
}

int index(const SetFunction& f, const std::string& label) { return f.ground().require_index(label); }

std::vector<std::string> v_labels(int n) {
  std::vector<std::string> out;
  for (int j = 1; j <= n; ++j) out.push_back("V[" + std::to_string(j) + "]");
  return out;
}

/// h with its elements renamed V[1]..V[n].
SetFunction relabel(const SetFunction& h) { return SetFunction(GroundSet(v_labels(h.size())), h.values()); }

std::string j_label(Subset alpha) { return "J[" + subset_text(alpha) + "]"; }

}  // namespace

WitnessCertificate build_witness(const SetFunction& h, const GDaggerLayout& layout) {
  const int n = layout.n;
  if (h.size() != n) throw ArgumentError("set function size does not match the layout");
  if (n + static_cast<int>(layout.session.size()) > GroundSet::kMaxSize) {
    throw ResourceError("witness for N=" + std::to_string(n) + " does not fit a local ground set");
  }
  const Subset all = layout.full();
  const std::string top = layout.session.at(all);
  WitnessCertificate cert{n, relabel(h), {}};

  // V edges and every fan-out carry the V they copy
  std::map<std::string, std::string> v_alias;
  for (int j = 0; j < n; ++j) v_alias[layout.v_edges[j]] = layout.v_edges[j];
  for (const auto& e : layout.network.edges()) {
    if (e.tail != "dist") continue;
    for (int j = 0; j < n; ++j) {
      if (e.id.rfind(layout.v_edges[j] + ">", 0) == 0) v_alias[e.id] = layout.v_edges[j];
    }
  }
  auto local_v = [&](const std::string& consumer_prefix) {
    std::map<std::string, std::string> a;
    for (const auto& [edge, v] : v_alias) {
      if (edge == v || consumer_prefix.empty() || edge.find(">" + consumer_prefix + ".") != std::string::npos) {
        a[edge] = v;
      }
    }
    return a;
  };

  auto step = [&](const std::string& where, auto&& op) -> SetFunction {
    try {
      return op();
    } catch (const CertificateInvalid& e) {
      throw CertificateInvalid(where + ": " + e.what());
    } catch (const ArgumentError& e) {
      throw CertificateInvalid(where + ": " + e.what());
    }
  };

  const SetFunction with_top = step("sources", [&] { return functional_extension(cert.h, all, top); });
  auto with_session = [&](const SetFunction& f, Subset alpha) {
    if (alpha == all) return f;
    return independent_adhesion(f, singleton_function(layout.session.at(alpha), h(alpha)));
  };

  {
    LocalWitness src{"sources", with_top, local_v("")};
    for (Subset a = 1; a < all; ++a) src.function = with_session(src.function, a);
    for (const auto& [a, s] : layout.session) src.assignment[s] = s;
    cert.locals.push_back(std::move(src));
  }

  for (const auto& sub : layout.subnetworks) {
    const Subset a = sub.alpha;
    const std::string own = layout.session.at(a);
    LocalWitness loc{sub.prefix, {}, local_v(sub.prefix)};
    for (int j = 0; j < n; ++j) loc.assignment[layout.v_edges[j]] = layout.v_edges[j];
    loc.assignment[top] = top;
    if (sub.type != 1) loc.assignment[own] = own;
    const std::string jv = j_label(a);
    const std::string w_prime = "J[" + top + "|" + jv + "]";
    auto functional = [&](const SetFunction& f) {
      return step(sub.prefix, [&] { return functional_extension(f, a, jv); });
    };
    auto transmit = [&](const SetFunction& f) {
      return step(sub.prefix, [&] {
        return sw_extension(f, singleton(index(f, top)), singleton(index(f, jv)), w_prime);
      });
    };
    switch (sub.type) {
      case 0:
        loc.function = with_session(with_top, a);
        loc.assignment[sub.roles.at("W")] = own;
        break;
      case 1:
        loc.function = transmit(functional(with_top));
        loc.assignment[sub.roles.at("W'")] = jv;
        loc.assignment[sub.roles.at("W")] = w_prime;
        break;
      default: {
        const std::string vi = layout.v_edges[sub.extra];
        const std::string w = own + "+" + jv, w2 = "J[" + jv + "|" + vi + "]";
        SetFunction f = functional(with_session(with_top, a));
        f = step(sub.prefix, [&] { return sum_extension(f, index(f, own), index(f, jv), w); });
        f = transmit(f);
        f = step(sub.prefix, [&] { return sw_extension(f, singleton(index(f, jv)), singleton(index(f, vi)), w2); });
        loc.function = std::move(f);
        for (const char* alias : {".S>n1", ".S>up"}) loc.assignment[sub.prefix + alias] = own;
        for (const char* alias : {".W", ".W>up", ".W>low"}) loc.assignment[sub.prefix + alias] = w;
        loc.assignment[sub.roles.at("W'")] = w_prime;
        loc.assignment[sub.roles.at("W''")] = w2;
        loc.assignment[sub.roles.at("W*")] = jv;
        break;
      }
    }
    cert.locals.push_back(std::move(loc));
  }

  const auto report = verify_connection_constraints(cert, layout, rate_capacity(h, layout, false));
  if (!report.ok) throw CertificateInvalid(report.failures.front());
  return cert;
}

VerificationReport verify_connection_constraints(const WitnessCertificate& cert, const GDaggerLayout& layout,
                                                 const RateCapacityTuple& tuple) {
  return verify_connection_constraints(cert, layout.network, layout.conn, tuple);
}

VerificationReport verify_connection_constraints(const WitnessCertificate& cert, const Network& net,
                                                 const ConnectionRequirement& conn, const RateCapacityTuple& tuple) {
  VerificationReport rep;
  auto fail = [&](std::string what) {
    rep.ok = false;
    rep.failures.push_back(std::move(what));
  };

  for (const auto& loc : cert.locals) {
    const auto poly = check_polymatroid(loc.function);
    if (!poly.empty()) fail(loc.name + " is not a polymatroid: " + describe(poly.instances.front(), loc.function.ground()));
    for (const auto& [var, label] : loc.assignment) {
      if (!loc.function.ground().index_of(label)) fail(loc.name + " assigns " + var + " to unknown element " + label);
    }
    std::vector<std::string> vs;
    for (const auto& l : cert.h.ground().labels()) {
      if (loc.function.ground().index_of(l)) vs.push_back(l);
    }
    if (!vs.empty() && loc.function.restricted(vs) != cert.h.restricted(vs)) fail(loc.name + " disagrees with h on the V's");
  }
  if (!rep.ok) return rep;

  // shared variables must have the same entropy everywhere
  std::map<std::string, std::pair<LogScalar, std::string>> single;
  for (const auto& loc : cert.locals) {
    for (const auto& [var, label] : loc.assignment) {
      const LogScalar v = loc.function(singleton(index(loc.function, label)));
      auto [it, fresh] = single.emplace(var, std::pair{v, loc.name});
      if (!fresh && it->second.first != v) fail("H(" + var + ") differs between " + it->second.second + " and " + loc.name);
    }
  }

  // a clause: sum_k coef_k H(vars_k) compared with a bound
  struct Clause {
    std::string text;
    std::vector<std::string> vars;
    std::vector<std::pair<std::vector<std::string>, Rational>> terms;
    int sense;  // 0: == bound, 1: >= bound, -1: <= bound
    LogScalar bound;
  };
  std::vector<Clause> clauses;
  auto functional = [&](const std::string& out, std::vector<std::string> feeds, const std::string& text) {
    std::vector<std::string> with = feeds;
    with.push_back(out);
    clauses.push_back({text, with, {{with, Rational(1)}, {feeds, Rational(-1)}}, 0, LogScalar()});
  };
  for (const auto& e : net.edges()) functional(e.id, node_feeds(net, conn, e.tail), "H(" + e.id + " | feeds) = 0");
  for (const auto& [t, s] : conn.demands()) {
    functional(s, node_feeds(net, conn, t), "H(" + s + " | feeds of " + t + ") = 0");
  }
  if (conn.sessions.size() > 1) {
    Clause c{"sessions independent", conn.sessions, {{conn.sessions, Rational(-1)}}, 0, LogScalar()};
    for (const auto& s : conn.sessions) c.terms.push_back({{s}, Rational(1)});
    clauses.push_back(std::move(c));
  }
  for (const auto& [s, rate] : tuple.rates) {
    clauses.push_back({"H(" + s + ") >= " + rate.str(), {s}, {{{s}, Rational(1)}}, 1, rate});
  }
  for (const auto& e : net.edges()) {
    if (auto cap = tuple.capacity(e)) {
      clauses.push_back({"H(" + e.id + ") <= " + cap->str(), {e.id}, {{{e.id}, Rational(1)}}, -1, *cap});
    }
  }

  for (const auto& c : clauses) {
    ++rep.clauses;
    bool covered = false;
    for (const auto& loc : cert.locals) {
      const bool covers = std::all_of(c.vars.begin(), c.vars.end(), [&](const std::string& v) {
        return loc.assignment.count(v) > 0;
      });
      if (!covers) continue;
      covered = true;
      LogScalar lhs;
      for (const auto& [vars, coef] : c.terms) {
        Subset s = 0;
        for (const auto& v : vars) s |= singleton(index(loc.function, loc.assignment.at(v)));
        lhs.add_scaled(loc.function(s), coef);
      }
      const int cmp = (lhs - c.bound).sign();
      const bool holds = c.sense == 0 ? cmp == 0 : c.sense > 0 ? cmp >= 0 : cmp <= 0;
      if (!holds) fail(c.text + " fails in " + loc.name);
    }
    if (!covered) throw CoverageError("no local function covers the clause " + c.text);
  }
  return rep;
}

SetFunction extract(const WitnessCertificate& cert) {
  for (const auto& loc : cert.locals) {
    for (const auto& l : cert.h.ground().labels()) {
      if (!loc.function.ground().index_of(l)) throw CertificateInvalid(loc.name + " lacks " + l);
    }
    if (loc.function.restricted(cert.h.ground().labels()) != cert.h) {
      throw CertificateInvalid(loc.name + " disagrees with h on the V's");
    }
  }
  const auto poly = check_polymatroid(cert.h);
  if (!poly.empty()) throw CertificateInvalid("h is not a polymatroid: " + describe(poly.instances.front(), cert.h.ground()));
  return cert.h;
}

}  // namespace netdual
