#pragma once

#include <map>
#include <string>
#include <vector>

#include "netdual/code.hpp"
#include "netdual/fq_matrix.hpp"
#include "netdual/gdagger.hpp"
#include "netdual/group.hpp"
#include "netdual/groupchar.hpp"
#include "netdual/support.hpp"

namespace netdual {

/// Zero-error description of U1 given side information U2 for a quasi-uniform pair.
/// The codeword of (u1, u2) is the rank of u1 within {u1' : (u1', u2) in support}.
class SideInfoCode {
 public:
  /// Throws ArgumentError if the support is not arity 2 or not quasi-uniform.
  explicit SideInfoCode(const SupportSet& s);

  std::uint64_t alphabet_size() const { return size_; }
  std::uint64_t encode(int u1, int u2) const;
  int decode(std::uint64_t w, int u2) const;
  /// Sorted u1 values seen with each u2.
  const std::map<int, std::vector<int>>& slices() const { return slices_; }

 private:
  std::uint64_t size_ = 0;
  std::map<int, std::vector<int>> slices_;
};

SideInfoCode side_info_encoder(const SupportSet& s);

/// Zero-error code on G-dagger(N) realizing M(h) for the entropy function h of a
/// quasi-uniform support. Throws ArgumentError otherwise.
NetworkCode quasi_uniform_code(const SupportSet& s, const GDaggerLayout& layout);

/// W(a) with T1(a) = recon_w W(a) + recon_t2 T2(a) for every a.
struct LinearCompression {
  /// W as a map of a.
  FqMatrix w_of_a;
  /// W as a map of T1(a): w_of_a = w_of_t1 * T1.
  FqMatrix w_of_t1;
  FqMatrix recon_w;
  FqMatrix recon_t2;
  /// dim ker T2 - dim (ker T1 n ker T2).
  int dim = 0;
};

LinearCompression linear_compress(int q, const FqMatrix& t1, const FqMatrix& t2);

/// Left inverse L (L A = I) of a matrix with full column rank.
FqMatrix left_inverse(const FqMatrix& a);

/// Linear zero-error code on G-dagger(N) realizing M(entropy_from_subspaces(fam)).
/// The subspaces must intersect in {0}.
NetworkCode linear_code(const SubspaceFamily& fam, const GDaggerLayout& layout);

/// Group network code: each session or edge label is assigned a subgroup, and each
/// variable carries the coset of its subgroup containing a common uniform group element.
/// Every edge and decoder table sends the intersection of its input cosets to the coset
/// of the output subgroup containing it; an assignment where that intersection can
/// straddle two output cosets is rejected with the offending combination.
NetworkCode group_code_encode(const FiniteGroup& g, const std::map<std::string, std::vector<int>>& assignment,
                              const Network& net, const ConnectionRequirement& conn);

}  // namespace netdual
