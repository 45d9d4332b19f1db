#include "netdual/inequalities.hpp"

#include <algorithm>

#include "netdual/errors.hpp"

namespace netdual {

namespace {

using Roles = std::array<Subset, 4>;

LogScalar ingleton_slack(const SetFunction& f, const Roles& r) {
  const auto [a, b, c, d] = r;
  LogScalar lhs = f(a | b) + f(a | c) + f(a | d) + f(b | c) + f(b | d);
  LogScalar rhs = f(a) + f(b) + f(c | d) + f(a | b | c) + f(a | b | d);
  return lhs - rhs;
}

LogScalar zhang_yeung_slack(const SetFunction& f, const Roles& r) {
  const auto [a, b, c, d] = r;
  LogScalar rhs = mutual_information(f, a, b) + mutual_information(f, a, c | d) +
                  Rational(3) * mutual_information(f, c, d, a) + mutual_information(f, c, d, b);
  return rhs - Rational(2) * mutual_information(f, c, d);
}

template <typename SlackFn>
ViolationReport check_four_roles(const SetFunction& f, InequalityFamily family, SlackFn slack) {
  const int n = f.size();
  if (n < 4) throw ArgumentError(to_string(family) + " check needs at least 4 ground elements");
  ViolationReport report;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          const Roles roles{singleton(a), singleton(b), singleton(c), singleton(d)};
          LogScalar s = slack(f, roles);
          if (s.sign() < 0) {
            report.instances.push_back({family, {roles.begin(), roles.end()}, std::move(s)});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace

std::string to_string(InequalityFamily family) {
  switch (family) {
    case InequalityFamily::Monotonicity:
      return "monotonicity";
    case InequalityFamily::Submodularity:
      return "submodularity";
    case InequalityFamily::Ingleton:
      return "ingleton";
    case InequalityFamily::ZhangYeung:
      return "zhang-yeung";
  }
  return "unknown";
}

std::string describe(const Violation& v, const GroundSet& ground) {
  auto set = [&](Subset s) { return "{" + ground.format(s) + "}"; };
  std::string out = to_string(v.family) + " ";
  switch (v.family) {
    case InequalityFamily::Monotonicity:
      out += "f" + set(v.arguments[0]) + " >= f" + set(v.arguments[1]);
      break;
    case InequalityFamily::Submodularity: {
      const Subset ctx = v.arguments[3];
      out += "I(" + ground.format(v.arguments[0] & ~ctx) + ";" + ground.format(v.arguments[1] & ~ctx) +
             (ctx ? "|" + ground.format(ctx) : "") + ") >= 0";
      break;
    }
    case InequalityFamily::Ingleton:
    case InequalityFamily::ZhangYeung:
      out += "roles (";
      for (std::size_t k = 0; k < v.arguments.size(); ++k) out += (k ? "," : "") + ground.format(v.arguments[k]);
      out += ")";
      break;
  }
  return out + ", slack " + v.slack.str();
}

LogScalar evaluate_slack(const SetFunction& f, InequalityFamily family,
                         std::span<const Subset> args) {
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ArgumentError("wrong argument count for " + to_string(family));
  };
  switch (family) {
    case InequalityFamily::Monotonicity:
      need(2);
      return f.at(args[0]) - f.at(args[1]);
    case InequalityFamily::Submodularity:
      need(4);
      return f.at(args[0]) + f.at(args[1]) - f.at(args[2]) - f.at(args[3]);
    case InequalityFamily::Ingleton:
      need(4);
      return ingleton_slack(f, {args[0], args[1], args[2], args[3]});
    case InequalityFamily::ZhangYeung:
      need(4);
      return zhang_yeung_slack(f, {args[0], args[1], args[2], args[3]});
  }
  throw ArgumentError("unknown inequality family");
}

ViolationReport check_polymatroid(const SetFunction& f) {
  ViolationReport report;
  const int n = f.size();
  const Subset full = f.full();
  for (int i = 0; i < n; ++i) {
    const Subset rest = full & ~singleton(i);
    LogScalar s = f(full) - f(rest);
    if (s.sign() < 0) {
      report.instances.push_back({InequalityFamily::Monotonicity, {full, rest}, std::move(s)});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Subset rest = full & ~singleton(i) & ~singleton(j);
      // Increasing mask order over subsets of `rest`.
      Subset a = 0;
      while (true) {
        const Subset ai = a | singleton(i), aj = a | singleton(j), aij = ai | aj;
        LogScalar s = f(ai) + f(aj) - f(aij) - f(a);
        if (s.sign() < 0) {
          report.instances.push_back({InequalityFamily::Submodularity, {ai, aj, aij, a}, std::move(s)});
        }
        if (a == rest) break;
        a = (a - rest) & rest;
      }
    }
  }
  return report;
}

bool is_polymatroid(const SetFunction& f) { return check_polymatroid(f).empty(); }

ViolationReport check_ingleton(const SetFunction& f) {
  return check_four_roles(f, InequalityFamily::Ingleton, ingleton_slack);
}

ViolationReport check_zhang_yeung(const SetFunction& f) {
  return check_four_roles(f, InequalityFamily::ZhangYeung, zhang_yeung_slack);
}

LogScalar conditional_entropy(const SetFunction& f, Subset a, Subset b) {
  return f.at(a | b) - f.at(b);
}

bool is_function_of(const SetFunction& f, Subset x, Subset a) { return f.at(x | a) == f.at(a); }

bool is_independent(const SetFunction& f, std::span<const Subset> parts) {
  Subset all = 0;
  LogScalar sum;
  for (Subset p : parts) {
    if ((all & p) != 0) throw ArgumentError("independence parts must be pairwise disjoint");
    all |= p;
    sum += f.at(p);
  }
  return f.at(all) == sum;
}

LogScalar mutual_information(const SetFunction& f, Subset a, Subset b, Subset c) {
  return f(a | c) + f(b | c) - f(a | b | c) - f(c);
}

LogScalar delta(const SetFunction& f, Subset a, Subset b) {
  return f.at(a) + f.at(b) - f.at(a | b) - f.at(a & b);
}

std::vector<Subset> flats(const SetFunction& f) {
  if (!is_polymatroid(f)) throw ArgumentError("flats are only defined here for polymatroids");
  std::vector<Subset> out;
  for (Subset a = 0; a <= f.full(); ++a) {
    bool flat = true;
    for (int x = 0; x < f.size() && flat; ++x) {
      if (!contains(a, x) && f(a | singleton(x)) == f(a)) flat = false;
    }
    if (flat) out.push_back(a);
  }
  return out;
}

bool adhesion_compatible(const SetFunction& f, const SetFunction& fstar) {
  std::vector<int> f_pos, star_pos;
  for (int i = 0; i < f.size(); ++i) {
    if (auto j = fstar.ground().index_of(f.ground().label(i))) {
      f_pos.push_back(i);
      star_pos.push_back(*j);
    }
  }
  for (Subset s = 1; s < (Subset{1} << f_pos.size()); ++s) {
    if (f(embed(s, f_pos)) != fstar(embed(s, star_pos))) {
      throw ArgumentError("functions disagree on shared subset {" + f.ground().format(embed(s, f_pos)) +
                          "}");
    }
  }
  const Subset shared = embed(full_set(static_cast<int>(f_pos.size())), f_pos);
  const auto fl = flats(f);
  for (Subset a : fl) {
    for (Subset b : fl) {
      if (delta(f, a, b) < delta(f, a & shared, b & shared)) return false;
    }
  }
  return true;
}

}  // namespace netdual
