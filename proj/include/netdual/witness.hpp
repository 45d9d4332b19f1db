#pragma once

#include <map>
#include <string>
#include <vector>

#include "netdual/gdagger.hpp"

namespace netdual {

/// A set function on a small ground, with network variables (sessions and edges)
/// mapped to its elements. Several variables may share an element.
struct LocalWitness {
  /// "sources" or a subnetwork prefix.
  std::string name;
  SetFunction function;
  std::map<std::string, std::string> assignment;
  friend bool operator==(const LocalWitness&, const LocalWitness&) = default;
};

struct WitnessCertificate {
  int n = 0;
  /// The function being certified, over V[1]..V[n].
  SetFunction h;
  std::vector<LocalWitness> locals;
  friend bool operator==(const WitnessCertificate&, const WitnessCertificate&) = default;
};

/// Local pseudo-entropy functions for G-dagger(N) realizing M(h): a "sources" function
/// over the V's and every session, and one per subnetwork built from h by the
/// extension calculus. Verifies the result against M(h); throws CertificateInvalid
/// naming the first failed constraint, which is what happens when h is not a
/// polymatroid. N is limited to 4 so that the sources function fits a ground set.
WitnessCertificate build_witness(const SetFunction& h, const GDaggerLayout& layout);

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::size_t clauses = 0;
};

/// Checks every connection constraint (each edge and each decoded session a function
/// of its feeds, independent sessions, rates and capacities) in every local function
/// whose assignment covers the clause's variables, plus per-local polymatroid checks
/// and agreement of the locals on shared variables and with h. Throws CoverageError
/// for a clause no local covers.
VerificationReport verify_connection_constraints(const WitnessCertificate& cert, const Network& net,
                                                 const ConnectionRequirement& conn, const RateCapacityTuple& tuple);
VerificationReport verify_connection_constraints(const WitnessCertificate& cert, const GDaggerLayout& layout,
                                                 const RateCapacityTuple& tuple);

/// The certified h, after checking that every local agrees with it on the V's and that
/// it is a polymatroid. Throws CertificateInvalid otherwise.
SetFunction extract(const WitnessCertificate& cert);

}  // namespace netdual
