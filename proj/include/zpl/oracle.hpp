#pragma once

#include "zpl/selfsim.hpp"

#include <cstdint>
#include <string>

namespace zpl {

// Index-p submodule in good coordinates x_0..x_d:
//   TopScaled:  y_0 = p x_0, y_i = x_i
//   MidScaled:  y_0 = x_0 - f_0 x_{i0}, y_{i0} = p x_{i0}, y_i = x_i otherwise
//   Mixed:      as MidScaled, and y_i = x_i - f_i x_{i0} for k0 <= i < i0, f_{k0} a unit
struct SubmoduleShape {
  enum class Kind { TopScaled, MidScaled, Mixed };
  Kind kind = Kind::TopScaled;
  int i0 = 0, k0 = 0;
  std::vector<long> f;  // f[0] = f_0, f[i] for k0 <= i < i0, residues in [0, p)

  // Columns y_0..y_d in good coordinates.
  Mat basis(const PContext& ctx, int d) const;
  std::string label() const;
  bool operator==(const SubmoduleShape& o) const { return kind == o.kind && i0 == o.i0 && k0 == o.k0 && f == o.f; }
};

// Coordinates in which shapes are read: a good basis when L has one, the
// standard basis otherwise.
struct OracleFrame {
  Mat P;
  std::optional<GoodBasis> gb;
};
OracleFrame oracle_frame(const LieLattice& L);

std::vector<SubmoduleShape> enum_index_p(const LieLattice& L);
Submodule shape_module(const LieLattice& L, const OracleFrame& fr, const SubmoduleShape& s);
std::vector<SubmoduleShape> subalgebra_filter(const LieLattice& L, const std::vector<SubmoduleShape>& shapes);

// Homogeneous solutions mod p^N of the homomorphism congruences on a shape,
// for fixed F_00 and top row F_{0,1..d}. Unknowns are F_{kj} (k,j >= 1,
// index (k-1)d + j-1) followed by F_{l0} (index d^2 + l-1). Each generator has
// additive order p^order.
struct HomSolutions {
  int d = 0;
  long N = 0;
  std::vector<std::vector<int64_t>> gens;
  std::vector<long> order;
  bool row_admissible = true;  // top row satisfies the row-only condition
  long log_size() const;
};

HomSolutions hom_solutions_mod(const LieLattice& L, const SubmoduleShape& shape, long N, long f00,
                               const std::vector<long>& top_row = {});

// Default candidate ideals inside the abelian ideal of the good basis, in ambient coordinates.
std::vector<Submodule> default_candidates(const LieLattice& L, long N);

struct ExhaustConfig {
  long N = 2;
  // Congruences are solved modulo p^(N + guard) and projected to p^N when the
  // top row is forced to vanish; this drops residue classes that do not lift.
  long guard = 2;
  int jobs = 1;
  std::vector<Submodule> candidates;  // empty: default_candidates
  int sample_limit = 4;               // uncovered samples kept per record
  int64_t scan_limit = 4096;          // uncovered exact reductions scored per lift attempt
  int64_t element_limit = int64_t(1) << 24;
  bool lift = true;
  int lift_attempts = 64;
};

struct UncoveredSample {
  std::vector<long> top_row;
  Mat F;  // good coordinates, entries in [0, p^N)
  int score = 0;  // rank of (U F^-1)^n mod p; n + 1 when F is singular mod p
  bool exact = false;  // reduction of an exact solution
};

// F_00 class (modulo `modulus`, which includes guard digits) and top row of
// a system with an uncovered solution.
struct UncoveredRow {
  long f00 = 0;
  long modulus = 0;
  std::vector<long> top;
};

struct ExhaustRecord {
  SubmoduleShape shape;
  long f00 = 0;
  UncoveredSample sample;
  int rows = 0;              // admissible top rows examined
  std::vector<long> orders;  // solution generator orders for the zero top row
  double elements = 0;       // solutions examined (projected to the ideal block)
  bool covered = true;
  bool complete = true;      // false when the element limit cut enumeration short
  bool fast_path = true;     // every row settled by one candidate
  std::vector<UncoveredSample> uncovered;
  std::vector<UncoveredRow> uncovered_rows;
};

struct LiftResult {
  bool attempted = false;
  bool simple_lift_found = false;
  int tried = 0;
  std::optional<VirtualEndo> endo;
  SubmoduleShape shape;
  long f00 = 0;
  UncoveredSample sample;
  SimplicityVerdict verdict;
};

struct ExhaustReport {
  long p = 0, N = 0;
  std::string tag;
  int shapes = 0, subalgebras = 0;
  int candidates = 0;
  bool covered = true;
  bool complete = true;
  std::vector<ExhaustRecord> records;  // subalgebra shapes only, shape order then F_00
  LiftResult lift;
};

ExhaustReport exhaust(const LieLattice& L, const ExhaustConfig& cfg);

// Exact homomorphism congruent to a mod p^N solution, when one exists with F_00
// equal to f00_exact (if given) or to a lift of f00 of absolute value below p^N.
std::optional<VirtualEndo> lift_solution(const LieLattice& L, const SubmoduleShape& shape, long N, long f00,
                                         const UncoveredSample& s, std::optional<Q> f00_exact = std::nullopt);

}  // namespace zpl
