#include "netdual/support.hpp"

#include <algorithm>
#include <map>

#include "netdual/errors.hpp"

namespace netdual {

SupportSet::SupportSet(std::vector<std::vector<int>> alphabets_in, std::vector<std::vector<int>> tuples_in)
    : alphabets(std::move(alphabets_in)), tuples(std::move(tuples_in)) {
  if (alphabets.empty()) throw StructuralError("support arity must be at least 1");
  if (alphabets.size() > static_cast<std::size_t>(GroundSet::kMaxSize)) {
    throw ResourceError("support arity exceeds ground-set cap");
  }
  if (tuples.empty()) throw StructuralError("support has no tuples");
  for (auto& a : alphabets) {
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
      throw StructuralError("alphabet has a repeated symbol");
    }
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  for (const auto& t : tuples) {
    if (t.size() != alphabets.size()) throw StructuralError("tuple arity does not match alphabets");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!std::binary_search(alphabets[i].begin(), alphabets[i].end(), t[i])) {
        throw StructuralError("symbol " + std::to_string(t[i]) + " not in alphabet of coordinate " +
                              std::to_string(i + 1));
      }
    }
  }
}

SupportSet SupportSet::from_tuples(std::vector<std::vector<int>> tuples) {
  if (tuples.empty()) throw StructuralError("support has no tuples");
  std::vector<std::vector<int>> alph(tuples[0].size());
  for (const auto& t : tuples) {
    if (t.size() != alph.size()) throw StructuralError("tuples of different arity");
    for (std::size_t i = 0; i < t.size(); ++i) alph[i].push_back(t[i]);
  }
  for (auto& a : alph) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return SupportSet(std::move(alph), std::move(tuples));
}

std::vector<int> SupportSet::project(const std::vector<int>& tuple, Subset alpha) const {
  std::vector<int> out;
  for (int i = 0; i < arity(); ++i) {
    if (contains(alpha, i)) out.push_back(tuple[i]);
  }
  return out;
}

std::vector<std::vector<int>> SupportSet::projections(Subset alpha) const {
  std::vector<std::vector<int>> out;
  out.reserve(tuples.size());
  for (const auto& t : tuples) out.push_back(project(t, alpha));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QuasiUniformResult quasi_uniform_check(const SupportSet& s) {
  QuasiUniformResult r;
  const int n = s.arity();
  std::vector<LogScalar> values(std::size_t{1} << n);
  for (Subset alpha = 1; alpha <= full_set(n); ++alpha) {
    std::map<std::vector<int>, std::size_t> count;
    for (const auto& t : s.tuples) ++count[s.project(t, alpha)];
    const std::size_t m = count.begin()->second;
    bool uniform = true;
    for (const auto& [_, c] : count) uniform = uniform && c == m;
    if (!uniform) r.failing.push_back(alpha);
    values[alpha] = LogScalar::log(static_cast<std::uint64_t>(count.size()));
  }
  r.quasi_uniform = r.failing.empty();
  if (r.quasi_uniform) r.entropy = SetFunction(GroundSet::numbered(n), std::move(values));
  return r;
}

}  // namespace netdual
