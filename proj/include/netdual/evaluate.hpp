#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netdual/code.hpp"
#include "netdual/groupchar.hpp"
#include "netdual/network.hpp"
#include "netdual/setfunction.hpp"

namespace netdual {

struct EvaluationOptions {
  /// Largest number of source tuples enumerated for any one check.
  std::uint64_t product_cap = std::uint64_t{1} << 24;
  /// The full induced function is computed only up to this many variables.
  int induced_cap = 16;
  /// Failing inputs kept per decoder.
  std::size_t max_failures_per_decoder = 8;
};

struct FailingInput {
  std::map<std::string, std::uint64_t> sources;
  std::string receiver;
  std::string session;
  std::uint64_t decoded = 0;
};

struct EvaluationResult {
  bool zero_error = true;
  std::vector<FailingInput> failing_inputs;
  /// Entropy of all session and edge variables; absent when there are more than
  /// induced_cap of them.
  std::optional<SetFunction> induced;
};

/// Runs a code on uniform independent sources. Each check enumerates only the sessions
/// upstream of the variables involved, which gives the same joint law since the other
/// sessions are independent of them.
class CodeEvaluator {
 public:
  CodeEvaluator(const Network& net, const ConnectionRequirement& conn, const NetworkCode& code,
                EvaluationOptions options = {});

  /// Sessions in label order, then edges in network order.
  const std::vector<std::string>& variables() const { return labels_; }
  LogScalar entropy(const std::vector<std::string>& vars) const;
  /// Entropy function over the given variables, as a SetFunction with those labels.
  SetFunction induced_function(const std::vector<std::string>& vars) const;
  EvaluationResult evaluate() const;

 private:
  int var_index(const std::string& label) const;
  std::vector<int> upstream_sessions(const std::vector<int>& vars) const;
  std::vector<int> upstream_edges(const std::vector<int>& vars) const;
  /// Calls visit(values) for each assignment of `sessions`, with `edges` computed.
  void enumerate(const std::vector<int>& sessions, const std::vector<int>& edges,
                 const std::function<void(const std::vector<std::uint64_t>&)>& visit) const;

  const Network& net_;
  const ConnectionRequirement& conn_;
  const NetworkCode& code_;
  EvaluationOptions options_;
  int num_sessions_ = 0;
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
  std::vector<Alphabet> alphabet_;
  /// Per variable: feeding variables (empty for sessions).
  std::vector<std::vector<int>> feeds_;
  std::vector<std::vector<Alphabet>> feed_alphabets_;
  std::vector<const LocalMap*> encoder_;
  /// Edge variables in evaluation order.
  std::vector<int> edge_order_;
  std::vector<int> topo_rank_;
};

EvaluationResult evaluate_code(const Network& net, const ConnectionRequirement& conn, const NetworkCode& code,
                               EvaluationOptions options = {});

/// Zero-error, log|A_e| <= omega_e for every capped edge and log|A_s| >= lambda_s.
bool check_admissible(const Network& net, const ConnectionRequirement& conn, const NetworkCode& code,
                      const RateCapacityTuple& tuple, EvaluationOptions options = {});
/// The alphabet-size comparisons alone, naming each failing variable.
std::vector<std::string> alphabet_violations(const Network& net, const NetworkCode& code,
                                             const RateCapacityTuple& tuple);

/// Componentwise product; the pair (a, b) is the symbol a + b |A_1|. Two linear codes
/// over the same field give a linear code (vector a then vector b).
NetworkCode code_product(const Network& net, const ConnectionRequirement& conn, const NetworkCode& a,
                         const NetworkCode& b);

struct LinearKernels {
  /// Session and edge labels, in CodeEvaluator::variables() order.
  std::vector<std::string> labels;
  /// Global map of each variable on the stacked source vector.
  std::vector<FqMatrix> global_maps;
  /// Kernels of the global maps, same order.
  SubspaceFamily family;
};

LinearKernels kernels_of_linear_code(const Network& net, const ConnectionRequirement& conn,
                                     const NetworkCode& code);

}  // namespace netdual
