#include "netdual/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "netdual/errors.hpp"

namespace netdual {

namespace {

constexpr const char* kSetFunction = "netdual.setfunction/1";
constexpr const char* kSubgroups = "netdual.subgroup-family/1";
constexpr const char* kSubspaces = "netdual.subspace-family/1";
constexpr const char* kSupport = "netdual.support/1";
constexpr const char* kNetwork = "netdual.network/1";
constexpr const char* kConnection = "netdual.connection/1";
constexpr const char* kTuple = "netdual.tuple/1";
constexpr const char* kCode = "netdual.code/1";
constexpr const char* kWitness = "netdual.witness/1";
constexpr const char* kGDagger = "netdual.gdagger/1";

[[noreturn]] void fail(const std::string& at, const std::string& what) {
  throw StructuralError((at.empty() ? std::string("/") : at) + ": " + what);
}

std::string child(const std::string& at, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return at + "/" + escaped;
}

std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

const Json& field(const Json& j, const char* key, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(at, std::string("missing \"") + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const char* key, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object");
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void only_keys(const Json& j, std::initializer_list<std::string_view> keys, const std::string& at) {
  for (const auto& [key, _] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(child(at, key), "unknown key");
  }
}

void expect_format(const Json& j, const char* kind, const std::string& at) {
  const Json& f = field(j, "format", at);
  if (!f.is_string() || f.get<std::string>() != kind) {
    fail(child(at, "format"), std::string("expected \"") + kind + "\"");
  }
}

const Json& array(const Json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array");
  return j;
}

std::string string_of(const Json& j, const std::string& at) {
  if (!j.is_string()) fail(at, "expected a string");
  return j.get<std::string>();
}

long long integer_of(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) fail(at, "expected an integer");
  return j.get<long long>();
}

int int_of(const Json& j, const std::string& at) {
  const long long v = integer_of(j, at);
  if (v < INT32_MIN || v > INT32_MAX) fail(at, "integer out of range");
  return static_cast<int>(v);
}

std::uint64_t unsigned_of(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail(at, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<std::string> strings_of(const Json& j, const std::string& at) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array(j, at).size(); ++i) out.push_back(string_of(j[i], child(at, i)));
  return out;
}

std::vector<int> ints_of(const Json& j, const std::string& at) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array(j, at).size(); ++i) out.push_back(int_of(j[i], child(at, i)));
  return out;
}

std::vector<std::vector<int>> int_rows_of(const Json& j, const std::string& at) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < array(j, at).size(); ++i) out.push_back(ints_of(j[i], child(at, i)));
  return out;
}

/// Runs a constructor or validator, moving its complaint to the given location.
template <class F>
auto located(const std::string& at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StructuralError& e) {
    fail(at, e.what());
  } catch (const ArgumentError& e) {
    fail(at, e.what());
  }
}

Rational rational_of(const Json& j, const std::string& at) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return located(at, [&] { return parse_rational(string_of(j, at)); });
}

LogScalar log_of_key(const std::string& key, const std::string& at) {
  if (key.empty() || !std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); })) {
    fail(at, "key '" + key + "' is not a positive integer");
  }
  const mpz_class n(key);
  if (n < 2) fail(at, "key '" + key + "' must be at least 2");
  return located(at, [&] { return LogScalar::log(n); });
}

// "0", "log6", "-1/2*log3 + 2 log5"
LogScalar logscalar_from_text(const std::string& text, const std::string& at) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto bad = [&](const std::string& what) { fail(at, "character " + std::to_string(pos + 1) + ": " + what); };
  const auto first_char = text.find_first_not_of(" \t");
  if (first_char != std::string::npos && text[first_char] == '0' &&
      text.find_first_not_of(" \t", first_char + 1) == std::string::npos) {
    return LogScalar();
  }
  LogScalar out;
  bool first = true;
  while (true) {
    skip();
    int sign = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      bad("expected + or -");
    }
    first = false;
    Rational coef(1);
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const std::size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      coef = located(at, [&] { return parse_rational(text.substr(start, pos - start)); });
      skip();
      if (pos < text.size() && text[pos] == '*') ++pos;
      skip();
    }
    if (text.compare(pos, 3, "log") != 0) bad("expected log<n>");
    pos += 3;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) bad("expected an integer after log");
    out.add_scaled(log_of_key(text.substr(start, pos - start), at), sign > 0 ? coef : Rational(-coef));
    skip();
    if (pos == text.size()) return out;
  }
}

Json matrix_json(const FqMatrix& m) { return m.to_rows(); }

FqMatrix matrix_of(const Json& j, int q, int cols, const std::string& at) {
  const auto rows = int_rows_of(j, at);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) fail(child(at, r), "expected " + std::to_string(cols) + " entries");
    for (int v : rows[r]) {
      if (v < 0 || v >= q) fail(child(at, r), "entry " + std::to_string(v) + " is not in F_" + std::to_string(q));
    }
  }
  return located(at, [&] { return FqMatrix(q, rows, cols); });
}

Json map_json(const LocalMap& m) {
  if (m.is_matrix()) return {{"q", m.mat().q()}, {"cols", m.mat().cols()}, {"matrix", matrix_json(m.mat())}};
  return {{"table", m.values()}};
}

LocalMap map_of(const Json& j, const std::string& at) {
  if (const Json* t = optional_field(j, "table", at)) {
    std::vector<std::uint64_t> values;
    for (std::size_t i = 0; i < array(*t, child(at, "table")).size(); ++i) {
      values.push_back(unsigned_of((*t)[i], child(child(at, "table"), i)));
    }
    return LocalMap::table(std::move(values));
  }
  const int q = int_of(field(j, "q", at), child(at, "q"));
  if (!GaloisField::is_supported(q)) fail(child(at, "q"), "unsupported field size");
  const int cols = int_of(field(j, "cols", at), child(at, "cols"));
  if (cols < 0) fail(child(at, "cols"), "negative");
  return LocalMap::matrix(matrix_of(field(j, "matrix", at), q, cols, child(at, "matrix")));
}

Json alphabet_json(const Alphabet& a) {
  if (a.linear()) return {{"q", a.q}, {"dim", a.dim}};
  return {{"size", a.size}};
}

Alphabet alphabet_of(const Json& j, const std::string& at) {
  if (const Json* s = optional_field(j, "size", at)) {
    const std::uint64_t n = unsigned_of(*s, child(at, "size"));
    return located(at, [&] { return Alphabet::symbols(n); });
  }
  const int q = int_of(field(j, "q", at), child(at, "q"));
  const int dim = int_of(field(j, "dim", at), child(at, "dim"));
  if (!GaloisField::is_supported(q)) fail(child(at, "q"), "unsupported field size");
  return located(at, [&] { return Alphabet::vector_space(q, dim); });
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (const auto p = what.find("; "); p != std::string::npos) what = what.substr(p + 2);
    throw StructuralError(source + ": line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
}

std::string format_of(const Json& doc) {
  if (!doc.is_object()) return "";
  const auto it = doc.find("format");
  return it != doc.end() && it->is_string() ? it->get<std::string>() : "";
}

Json to_json(const LogScalar& x) {
  Json out = Json::object();
  for (const auto& [p, q] : x.terms()) out[std::to_string(p)] = format_rational(q);
  return out;
}

LogScalar logscalar_from_json(const Json& j, const std::string& at) {
  if (j.is_number_integer() && j.get<long long>() == 0) return LogScalar();
  if (j.is_string()) return logscalar_from_text(j.get<std::string>(), at);
  if (!j.is_object()) fail(at, "expected a log-combination object or text");
  LogScalar out;
  for (const auto& [key, value] : j.items()) {
    out.add_scaled(log_of_key(key, child(at, key)), rational_of(value, child(at, key)));
  }
  return out;
}

Json to_json(const SetFunction& f) {
  Json values = Json::object();
  for (Subset s = 1; s <= f.full(); ++s) values[f.ground().format(s)] = to_json(f(s));
  return {{"format", kSetFunction}, {"ground", f.ground().labels()}, {"values", values}};
}

SetFunction setfunction_from_json(const Json& j, const std::string& at) {
  expect_format(j, kSetFunction, at);
  const auto labels = strings_of(field(j, "ground", at), child(at, "ground"));
  const GroundSet ground = located(child(at, "ground"), [&] { return GroundSet(labels); });
  const Json& values = field(j, "values", at);
  const std::string vat = child(at, "values");
  if (!values.is_object()) fail(vat, "expected an object");
  std::vector<LogScalar> v(std::size_t{ground.full()} + 1);
  std::vector<bool> seen(v.size(), false);
  for (const auto& [key, value] : values.items()) {
    const Subset s = located(child(vat, key), [&] { return ground.parse(key); });
    if (seen[s]) fail(child(vat, key), "subset given twice");
    seen[s] = true;
    v[s] = logscalar_from_json(value, child(vat, key));
    if (s == 0 && !v[s].is_zero()) fail(child(vat, key), "the empty set must have value 0");
  }
  for (Subset s = 1; s <= ground.full(); ++s) {
    if (!seen[s]) fail(vat, "missing subset '" + ground.format(s) + "'");
  }
  return SetFunction(ground, std::move(v));
}

Json to_json(const SubgroupFamily& fam) {
  Json group = {{"table", fam.group.table()}};
  if (!fam.group.name().empty()) group["name"] = fam.group.name();
  return {{"format", kSubgroups}, {"group", group}, {"members", fam.members}};
}

SubgroupFamily subgroup_family_from_json(const Json& j, const std::string& at) {
  expect_format(j, kSubgroups, at);
  const Json& g = field(j, "group", at);
  const std::string gat = child(at, "group");
  std::string name;
  if (const Json* n = optional_field(g, "name", gat)) name = string_of(*n, child(gat, "name"));
  SubgroupFamily fam;
  if (const Json* perms = optional_field(g, "permutations", gat)) {
    const auto gens = int_rows_of(*perms, child(gat, "permutations"));
    fam.group = located(child(gat, "permutations"), [&] { return FiniteGroup::from_permutations(gens, name); });
  } else {
    const auto table = int_rows_of(field(g, "table", gat), child(gat, "table"));
    fam.group = located(child(gat, "table"), [&] { return FiniteGroup(table, name); });
  }
  fam.members = int_rows_of(field(j, "members", at), child(at, "members"));
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    for (int x : fam.members[i]) {
      if (x < 0 || x >= fam.group.order()) fail(child(child(at, "members"), i), "element " + std::to_string(x) + " is not in the group");
    }
  }
  located(child(at, "members"), [&] {
    fam.validate();
    return 0;
  });
  return fam;
}

Json to_json(const SubspaceFamily& fam) {
  Json members = Json::array();
  for (const auto& m : fam.members) members.push_back(m.rows() == 0 ? Json::array() : matrix_json(m));
  return {{"format", kSubspaces}, {"q", fam.q}, {"n", fam.n}, {"members", members}};
}

SubspaceFamily subspace_family_from_json(const Json& j, const std::string& at) {
  expect_format(j, kSubspaces, at);
  SubspaceFamily fam;
  fam.q = int_of(field(j, "q", at), child(at, "q"));
  if (!GaloisField::is_supported(fam.q)) fail(child(at, "q"), "unsupported field size");
  fam.n = int_of(field(j, "n", at), child(at, "n"));
  if (fam.n < 0) fail(child(at, "n"), "negative");
  const Json& members = array(field(j, "members", at), child(at, "members"));
  for (std::size_t i = 0; i < members.size(); ++i) {
    fam.members.push_back(matrix_of(members[i], fam.q, fam.n, child(child(at, "members"), i)));
  }
  located(child(at, "members"), [&] {
    fam.validate();
    return 0;
  });
  return fam;
}

Json to_json(const SupportSet& s) {
  return {{"format", kSupport}, {"alphabets", s.alphabets}, {"tuples", s.tuples}};
}

SupportSet support_from_json(const Json& j, const std::string& at) {
  expect_format(j, kSupport, at);
  auto tuples = int_rows_of(field(j, "tuples", at), child(at, "tuples"));
  if (const Json* a = optional_field(j, "alphabets", at)) {
    auto alphabets = int_rows_of(*a, child(at, "alphabets"));
    return located(at, [&] { return SupportSet(std::move(alphabets), std::move(tuples)); });
  }
  return located(at, [&] { return SupportSet::from_tuples(std::move(tuples)); });
}

Json to_json(const Network& net) {
  Json edges = Json::array();
  for (const auto& e : net.edges()) {
    Json je = {{"id", e.id}, {"tail", e.tail}, {"head", e.head}};
    if (e.capacity) je["capacity"] = to_json(*e.capacity);
    edges.push_back(je);
  }
  return {{"format", kNetwork}, {"nodes", net.nodes()}, {"edges", edges}};
}

Network network_from_json(const Json& j, const std::string& at) {
  expect_format(j, kNetwork, at);
  auto nodes = strings_of(field(j, "nodes", at), child(at, "nodes"));
  std::vector<Edge> edges;
  const Json& je = array(field(j, "edges", at), child(at, "edges"));
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string eat = child(child(at, "edges"), i);
    if (je[i].is_object()) only_keys(je[i], {"id", "tail", "head", "capacity"}, eat);
    Edge e{string_of(field(je[i], "id", eat), child(eat, "id")), string_of(field(je[i], "tail", eat), child(eat, "tail")),
           string_of(field(je[i], "head", eat), child(eat, "head")), std::nullopt};
    if (const Json* c = optional_field(je[i], "capacity", eat)) {
      e.capacity = logscalar_from_json(*c, child(eat, "capacity"));
      if (e.capacity->sign() < 0) fail(child(eat, "capacity"), "negative capacity");
    }
    edges.push_back(std::move(e));
  }
  return located(at, [&] { return Network(std::move(nodes), std::move(edges)); });
}

Json to_json(const ConnectionRequirement& conn) {
  Json sessions = Json::array();
  for (const auto& s : conn.sessions) {
    Json js = {{"id", s}, {"origin", conn.origin.count(s) ? conn.origin.at(s) : ""}};
    js["receivers"] = conn.receivers.count(s) ? conn.receivers.at(s) : std::vector<std::string>{};
    sessions.push_back(js);
  }
  return {{"format", kConnection}, {"sessions", sessions}};
}

ConnectionRequirement connection_from_json(const Json& j, const std::string& at) {
  expect_format(j, kConnection, at);
  ConnectionRequirement conn;
  const Json& js = array(field(j, "sessions", at), child(at, "sessions"));
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string sat = child(child(at, "sessions"), i);
    const std::string id = string_of(field(js[i], "id", sat), child(sat, "id"));
    if (conn.origin.count(id)) fail(child(sat, "id"), "session '" + id + "' listed twice");
    conn.sessions.push_back(id);
    conn.origin[id] = string_of(field(js[i], "origin", sat), child(sat, "origin"));
    conn.receivers[id] = strings_of(field(js[i], "receivers", sat), child(sat, "receivers"));
  }
  return conn;
}

Json to_json(const RateCapacityTuple& t) {
  Json rates = Json::object(), caps = Json::object();
  for (const auto& [s, v] : t.rates) rates[s] = to_json(v);
  for (const auto& [e, v] : t.caps) caps[e] = to_json(v);
  return {{"format", kTuple}, {"rates", rates}, {"capacities", caps}};
}

RateCapacityTuple tuple_from_json(const Json& j, const std::string& at) {
  expect_format(j, kTuple, at);
  only_keys(j, {"format", "rates", "capacities"}, at);
  RateCapacityTuple t;
  auto read = [&](const char* key, std::map<std::string, LogScalar>& into) {
    const std::string kat = child(at, key);
    const Json* m = optional_field(j, key, at);
    if (!m) return;
    if (!m->is_object()) fail(kat, "expected an object");
    for (const auto& [label, value] : m->items()) into[label] = logscalar_from_json(value, child(kat, label));
  };
  read("rates", t.rates);
  read("capacities", t.caps);
  located(at, [&] {
    t.validate();
    return 0;
  });
  return t;
}

Json to_json(const NetworkCode& code) {
  Json alphabets = Json::object(), encoders = Json::object(), decoders = Json::array();
  for (const auto& [v, a] : code.alphabets) alphabets[v] = alphabet_json(a);
  for (const auto& [e, m] : code.encoders) encoders[e] = map_json(m);
  for (const auto& [key, m] : code.decoders) {
    decoders.push_back({{"receiver", key.first}, {"session", key.second}, {"map", map_json(m)}});
  }
  return {{"format", kCode},
          {"alphabets", alphabets},
          {"encoders", encoders},
          {"decoders", decoders},
          {"manifest", code.manifest}};
}

NetworkCode code_from_json(const Json& j, const std::string& at) {
  expect_format(j, kCode, at);
  NetworkCode code;
  const std::string aat = child(at, "alphabets"), eat = child(at, "encoders"), dat = child(at, "decoders");
  const Json& alphabets = field(j, "alphabets", at);
  if (!alphabets.is_object()) fail(aat, "expected an object");
  for (const auto& [v, a] : alphabets.items()) code.alphabets[v] = alphabet_of(a, child(aat, v));
  const Json& encoders = field(j, "encoders", at);
  if (!encoders.is_object()) fail(eat, "expected an object");
  for (const auto& [e, m] : encoders.items()) code.encoders[e] = map_of(m, child(eat, e));
  const Json& decoders = array(field(j, "decoders", at), dat);
  for (std::size_t i = 0; i < decoders.size(); ++i) {
    const std::string at_i = child(dat, i);
    const std::string t = string_of(field(decoders[i], "receiver", at_i), child(at_i, "receiver"));
    const std::string s = string_of(field(decoders[i], "session", at_i), child(at_i, "session"));
    if (code.decoders.count({t, s})) fail(at_i, "second decoder for " + s + " at " + t);
    code.decoders[{t, s}] = map_of(field(decoders[i], "map", at_i), child(at_i, "map"));
  }
  if (const Json* m = optional_field(j, "manifest", at)) {
    if (!m->is_object()) fail(child(at, "manifest"), "expected an object");
    for (const auto& [k, v] : m->items()) code.manifest[k] = string_of(v, child(child(at, "manifest"), k));
  }
  return code;
}

Json to_json(const WitnessCertificate& cert) {
  Json locals = Json::array();
  for (const auto& loc : cert.locals) {
    locals.push_back({{"name", loc.name}, {"function", to_json(loc.function)}, {"assignment", loc.assignment}});
  }
  return {{"format", kWitness}, {"n", cert.n}, {"h", to_json(cert.h)}, {"locals", locals}};
}

WitnessCertificate witness_from_json(const Json& j, const std::string& at) {
  expect_format(j, kWitness, at);
  WitnessCertificate cert;
  cert.n = int_of(field(j, "n", at), child(at, "n"));
  cert.h = setfunction_from_json(field(j, "h", at), child(at, "h"));
  if (cert.h.size() != cert.n) fail(child(at, "h"), "expected " + std::to_string(cert.n) + " elements");
  const Json& locals = array(field(j, "locals", at), child(at, "locals"));
  for (std::size_t i = 0; i < locals.size(); ++i) {
    const std::string lat = child(child(at, "locals"), i);
    LocalWitness loc;
    loc.name = string_of(field(locals[i], "name", lat), child(lat, "name"));
    loc.function = setfunction_from_json(field(locals[i], "function", lat), child(lat, "function"));
    const Json& a = field(locals[i], "assignment", lat);
    if (!a.is_object()) fail(child(lat, "assignment"), "expected an object");
    for (const auto& [var, label] : a.items()) {
      const std::string vat = child(child(lat, "assignment"), var);
      loc.assignment[var] = string_of(label, vat);
      if (!loc.function.ground().index_of(loc.assignment[var])) fail(vat, "not an element of the local ground");
    }
    cert.locals.push_back(std::move(loc));
  }
  return cert;
}

Json to_json(const GDaggerLayout& layout, const RateCapacityTuple* tuple) {
  Json subs = Json::array();
  for (const auto& s : layout.subnetworks) {
    Json receivers = Json::array();
    for (const auto& [node, session] : s.receivers) receivers.push_back({{"node", node}, {"session", session}});
    Json js = {{"prefix", s.prefix}, {"type", s.type}, {"alpha", subset_text(s.alpha)}, {"roles", s.roles}, {"receivers", receivers}};
    if (s.extra >= 0) js["extra"] = s.extra + 1;
    subs.push_back(js);
  }
  Json out = {{"format", kGDagger},
              {"n", layout.n},
              {"network", to_json(layout.network)},
              {"connection", to_json(layout.conn)},
              {"subnetworks", subs}};
  if (tuple) out["tuple"] = to_json(*tuple);
  return out;
}

GDaggerLayout gdagger_from_json(const Json& j, const std::string& at) {
  expect_format(j, kGDagger, at);
  const int n = int_of(field(j, "n", at), child(at, "n"));
  GDaggerLayout layout = located(child(at, "n"), [&] { return build_gdagger(n); });
  if (network_from_json(field(j, "network", at), child(at, "network")) != layout.network) {
    fail(child(at, "network"), "does not match G-dagger(" + std::to_string(n) + ")");
  }
  if (connection_from_json(field(j, "connection", at), child(at, "connection")) != layout.conn) {
    fail(child(at, "connection"), "does not match G-dagger(" + std::to_string(n) + ")");
  }
  return layout;
}

}  // namespace netdual
