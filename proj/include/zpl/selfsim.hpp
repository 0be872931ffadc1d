#pragma once

#include "zpl/families.hpp"

#include <string>

namespace zpl {

// phi: M -> L with M spanned by the columns of U and phi(U e_b) = F e_b.
struct VirtualEndo {
  LieLattice L;
  Mat U;  // Hermite basis of M
  Mat F;
  long index_log = 0;
  // Rational extension of phi to the ambient space.
  Mat phi() const;
  Submodule domain() const;
};

VirtualEndo make_endo(const LieLattice& L, const Mat& U, const Mat& F);
// Same endo seen through an isomorphism P (columns: images of the basis of e.L in target).
VirtualEndo transport(const VirtualEndo& e, const LieLattice& target, const Mat& P);

struct DomainChain {
  std::vector<Submodule> D;
  std::optional<Submodule> stabilized_isolator;
};
DomainChain domain_chain(const VirtualEndo& e, int n);

enum class Verdict { Simple, NotSimple, Inconclusive };
const char* verdict_name(Verdict v);

struct SimplicityVerdict {
  Verdict status = Verdict::Inconclusive;
  std::string strategy;
  std::optional<Submodule> witness;
  std::string reason;
  int fixpoint_steps = 0;
};

struct SimplicityConfig {
  int cap = 40;
  int degree_cap = 4;
  bool rational_core = true;
  bool abelian = true;
  bool metabelian = true;
  bool fixpoint = true;
};

SimplicityVerdict simplicity(const VirtualEndo& e, const SimplicityConfig& cfg = {});
// Nonzero ideal of L inside M and stable under phi.
bool is_invariant_ideal(const VirtualEndo& e, const Submodule& I);

// Explicit simple endos of index p^k (p^{dk} for the codimension-one construction).
VirtualEndo certify(const PContext& ctx, const FamilyTag& tag, long k);
// Endo on the lattice with good basis e_0..e_d and matrix A; throws NoCertificate when none applies.
VirtualEndo certify_matrix(const PContext& ctx, const Mat& A, long k);
// M = <x_0, p^m x_1, ..., p^m x_d>, phi(x_0) = x_0, phi(p^m x_i) = x_i (index p^{dm}), or the
// cyclic construction of index p^m when L is abelian.
VirtualEndo codim1_endo(const LieLattice& L, const GoodBasis& gb, long m);
VirtualEndo abelian_cyclic_endo(const LieLattice& L, long k);

bool in_index_p_list(const PContext& ctx, const FamilyTag& tag);

struct Decision {
  bool index_p = false;
  FamilyTag tag;
  VirtualEndo certificate;
  std::string obstruction;  // empty when index_p
};
Decision decide_ss_index_3dim(const LieLattice& L);

struct Hereditary {
  bool hereditary = false;
  FamilyTag tag;
  std::optional<Submodule> witness;
  bool witness_verified = false;
};
Hereditary hereditary_3dim(const LieLattice& L);

struct NonssWitness {
  std::vector<long> k;      // k_0..k_d
  Submodule M;               // in the coordinates of the given lattice
  std::vector<Q> a, b;       // shape of M: M = L(a', b')
  bool hypotheses = false;   // the four valuation hypotheses hold for (a', b')
  bool inequalities = false; // k_0 + k_1 - k_i > i - 1 for all i
};
bool nonss_hypotheses(const PContext& ctx, const std::vector<Q>& a, const std::vector<Q>& b);
// Reads (a,b) with [x_0,x_1] = sum a_i x_i, [x_0,x_{i+1}] = b_i x_i off the standard basis, or nullopt.
std::optional<std::pair<std::vector<Q>, std::vector<Q>>> lab_shape(const LieLattice& L);
NonssWitness witness_nonss(const LieLattice& L);

struct ShssResult {
  bool shss = false;
  long s = 0;  // kInf for the abelian case
  std::optional<Submodule> witness;
  std::string witness_kind;
};
ShssResult shss_classify(const LieLattice& L);

}  // namespace zpl
