#pragma once

#include "fzeta/fractal.hpp"

#include <cstdint>
#include <vector>

namespace fzeta {

/// Closed walk v_0 .. v_m with v_m = v_0 and an explicit origin v_0.
struct ClosedPath {
  std::vector<Vertex> v;
  int length() const { return static_cast<int>(v.size()) - 1; }
};

/// Worst-case number of proper closed walks: |origins| * d * (d-1)^(m-2).
std::uint64_t proper_path_budget(int d, std::size_t origin_count, int m);

/// All proper (non-backtracking) closed paths of length m starting in
/// origins. Throws when the worst-case estimate exceeds the budget.
std::vector<ClosedPath> enumerate_proper_closed(const Graph& g, int m, const VertexSet& origins,
                                                std::uint64_t budget = 100000000ull);

struct PathClassification {
  bool has_tail;
  bool reduced;
  bool primitive;
};

/// Classifies a proper closed path; rejects inputs that are not proper.
PathClassification classify_path(const Graph& g, const ClosedPath& p);

/// Lexicographically least rotation of the origin-stripped cycle
/// v_0 .. v_{m-1}. Orientation is preserved: a cycle and its reversal are
/// distinct unless some rotation equates them.
std::vector<Vertex> canonical_rotation(const std::vector<Vertex>& cycle);

/// Period of the cycle under rotation; equals the effective length.
int cycle_period(const std::vector<Vertex>& cycle);

struct CensusRow {
  int m = 0;
  std::uint64_t raw_reduced = 0;   // origin-marked reduced closed paths
  std::uint64_t shift_classes = 0; // rotation classes, orientation kept
};

struct Census {
  std::vector<CensusRow> rows;  // rows[k] is length k+1
  // canonical shift-class representatives per length (index m-1)
  std::vector<std::vector<std::vector<Vertex>>> class_reps;
};

Census reduced_cycle_census(const Graph& g, int max_len, std::uint64_t budget = 100000000ull);

struct CycleRecord {
  std::vector<Vertex> rep;  // canonical form in K_size coordinates
  int length = 0;
  bool primitive = false;
  int size = 0;              // least level whose copy image contains the cycle
  int effective_length = 0;
  Rational mu;               // average multiplicity
  Rational density;          // branching * mu; exponent weight in N_m sums
  bool mu_exact = false;     // closed form vs deepest finite-level ratio
  Rational mu_gap;           // one-sided bound on the remaining gap when inexact
};

/// Size, effective length, and multiplicity of a reduced cycle living in
/// level `level` of the exhaustion.
CycleRecord cycle_stats(const Exhaustion& x, int level, const ClosedPath& c);

/// Finite-level multiplicity ratios (n, |G(size,n)| / |K_{n+1}|) for
/// n = size .. max_level - 1; the sequence increases toward mu.
std::vector<std::pair<int, Rational>> mu_ratio_sequence(const Exhaustion& x, int size);

/// Limit multiplicity for the families with a closed form; throws for carpet.
Rational mu_closed_form(Family f, int size);

struct MuEstimate {
  Rational value;
  Rational gap;  // bound on |limit - value|; zero when exact
  bool exact;
};

MuEstimate mu_estimate(const Exhaustion& x, int size);

struct WeightedCensusRow {
  int m = 0;
  std::uint64_t g_classes = 0;
  Rational weighted;  // sum over classes of density * effective length
  bool stabilized = false;  // class set identical when enumerated one level shallower
};

/// Per-length weighted class sums, the cycle-side N_m. Classes are collected
/// at `level` and compared against level - 1 for stabilization.
std::vector<WeightedCensusRow> weighted_census(const Exhaustion& x, int max_len, int level,
                                               std::uint64_t budget = 100000000ull);

/// One record per G-class of prime cycles of length <= max_len, collected at
/// `level`. Input to the Euler product.
std::vector<CycleRecord> prime_class_records(const Exhaustion& x, int max_len, int level,
                                             std::uint64_t budget = 100000000ull);

}  // namespace fzeta
