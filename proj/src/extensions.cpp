#include "netdual/extensions.hpp"

#include <algorithm>

#include "netdual/errors.hpp"
#include "netdual/inequalities.hpp"

namespace netdual {

namespace {

/// f on the old ground, `extra(B)` on Z u B.
template <class Rule>
SetFunction extend(const SetFunction& f, const std::string& name, const char* op, Rule extra) {
  if (f.ground().index_of(name)) throw ArgumentError(std::string(op) + ": element '" + name + "' already exists");
  auto labels = f.ground().labels();
  labels.push_back(name);
  SetFunction g{GroundSet(std::move(labels))};
  const Subset z = singleton(f.size());
  for (Subset b = 0; b <= f.full(); ++b) {
    if (b) g.set(b, f(b));
    g.set(b | z, extra(b));
  }
  const auto report = check_polymatroid(g);
  if (!report.empty()) {
    throw CertificateInvalid(std::string(op) + " adding '" + name + "' is not a polymatroid: " +
                             describe(report.instances.front(), g.ground()));
  }
  return g;
}

}  // namespace

SetFunction functional_extension(const SetFunction& f, Subset a, const std::string& name) {
  if (a > f.full()) throw ArgumentError("functional extension: subset outside the ground set");
  return extend(f, name, "functional extension", [&](Subset b) { return f(b | a); });
}

SetFunction sum_extension(const SetFunction& f, int x, int y, const std::string& name) {
  if (x < 0 || y < 0 || x >= f.size() || y >= f.size() || x == y) {
    throw ArgumentError("sum extension needs two distinct ground elements");
  }
  const Subset X = singleton(x), Y = singleton(y);
  if (f(X) != f(Y)) throw ArgumentError("sum extension: H(" + f.ground().label(x) + ") != H(" + f.ground().label(y) + ")");
  if (f(X | Y) != f(X) + f(Y)) {
    throw ArgumentError("sum extension: " + f.ground().label(x) + " and " + f.ground().label(y) + " are not independent");
  }
  return extend(f, name, "sum extension", [&](Subset b) { return std::min(f(b | X | Y), f(b) + f(X)); });
}

SetFunction sw_extension(const SetFunction& f, Subset x, Subset y, const std::string& name) {
  if (x > f.full() || y > f.full()) throw ArgumentError("sw extension: subset outside the ground set");
  const LogScalar rate = f(x | y) - f(y);
  return extend(f, name, "sw extension", [&](Subset b) { return std::min(f(b | x), f(b) + rate); });
}

SetFunction independent_adhesion(const SetFunction& f, const SetFunction& fstar) {
  auto labels = f.ground().labels();
  for (const auto& l : fstar.ground().labels()) {
    if (f.ground().index_of(l)) throw ArgumentError("independent adhesion: element '" + l + "' is in both grounds");
    labels.push_back(l);
  }
  SetFunction g{GroundSet(std::move(labels))};
  const int shift = f.size();
  for (Subset a = 1; a <= g.full(); ++a) g.set(a, f(a & f.full()) + fstar(a >> shift));
  return g;
}

}  // namespace netdual
