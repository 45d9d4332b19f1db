#include "netdual/setfunction.hpp"

#include <unordered_set>

#include "netdual/errors.hpp"

namespace netdual {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ArgumentError("ground set must have at least one element");
  if (size() > kMaxSize) {
    throw ResourceError("ground set of " + std::to_string(size()) + " elements exceeds cap " +
                        std::to_string(kMaxSize));
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    const auto parts = split_top_level(l);
    if (l.empty() || parts.size() != 1 || parts[0] != l) {
      throw ArgumentError("ground label '" + l + "' is empty, unbalanced or has a comma outside brackets");
    }
    if (!seen.insert(l).second) throw ArgumentError("duplicate ground label '" + l + "'");
  }
}

GroundSet GroundSet::numbered(int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return GroundSet(std::move(labels));
}

std::optional<int> GroundSet::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

int GroundSet::require_index(const std::string& label) const {
  if (auto i = index_of(label)) return *i;
  throw ArgumentError("unknown ground element '" + label + "'");
}

std::string GroundSet::format(Subset s) const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (!contains(s, i)) continue;
    if (!out.empty()) out += ',';
    out += labels_[i];
  }
  return out;
}

Subset GroundSet::parse(const std::string& text) const {
  Subset s = 0;
  if (text.empty()) return 0;
  const auto items = split_top_level(text);
  if (items.empty()) throw StructuralError("unbalanced brackets in '" + text + "'");
  for (const auto& item : items) {
    const int i = require_index(item);
    if (contains(s, i)) throw StructuralError("element '" + item + "' repeated in '" + text + "'");
    s |= singleton(i);
  }
  return s;
}

std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out(1);
  std::string open;
  for (char c : text) {
    if (c == '[' || c == '{' || c == '(') {
      open.push_back(c);
    } else if (c == ']' || c == '}' || c == ')') {
      const char want = c == ']' ? '[' : c == '}' ? '{' : '(';
      if (open.empty() || open.back() != want) return {};
      open.pop_back();
    } else if (c == ',' && open.empty()) {
      out.emplace_back();
      continue;
    }
    out.back().push_back(c);
  }
  if (!open.empty()) return {};
  return out;
}

Subset GroundSet::subset_of(std::span<const std::string> labels) const {
  Subset s = 0;
  for (const auto& l : labels) s |= singleton(require_index(l));
  return s;
}

SetFunction::SetFunction(GroundSet ground)
    : ground_(std::move(ground)), values_(std::size_t{1} << ground_.size()) {}

SetFunction::SetFunction(GroundSet ground, std::vector<LogScalar> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << ground_.size())) {
    throw StructuralError("set function has " + std::to_string(values_.size()) +
                          " values, expected 2^" + std::to_string(ground_.size()));
  }
  if (!values_[0].is_zero()) throw StructuralError("set function must vanish on the empty set");
}

const LogScalar& SetFunction::at(Subset s) const {
  if (s > full()) throw ArgumentError("subset mask outside the ground set");
  return values_[s];
}

void SetFunction::set(Subset s, LogScalar value) {
  if (s > full()) throw ArgumentError("subset mask outside the ground set");
  if (s == 0 && !value.is_zero()) throw ArgumentError("set function must vanish on the empty set");
  values_[s] = std::move(value);
}

Subset embed(Subset local, std::span<const int> positions) {
  Subset out = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (contains(local, static_cast<int>(k))) out |= singleton(positions[k]);
  }
  return out;
}

SetFunction SetFunction::restricted(std::span<const int> positions) const {
  std::vector<std::string> labels;
  for (int p : positions) labels.push_back(ground_.label(p));
  SetFunction out{GroundSet(std::move(labels))};
  for (Subset s = 1; s <= out.full(); ++s) out.values_[s] = values_[embed(s, positions)];
  return out;
}

SetFunction SetFunction::restricted(std::span<const std::string> labels) const {
  std::vector<int> positions;
  for (const auto& l : labels) positions.push_back(ground_.require_index(l));
  return restricted(positions);
}

SetFunction& SetFunction::operator+=(const SetFunction& other) {
  if (ground_ != other.ground_) throw ArgumentError("adding set functions over different grounds");
  for (std::size_t s = 0; s < values_.size(); ++s) values_[s] += other.values_[s];
  return *this;
}

SetFunction& SetFunction::operator*=(const Rational& c) {
  for (auto& v : values_) v *= c;
  return *this;
}

}  // namespace netdual
