#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eprgame/embedding.hpp"
#include "eprgame/game.hpp"

namespace eprgame {

struct AxisRange {
  double lo{0.0}, hi{1.0}, step{0.1};
};

// Sweep configuration. Axis i of a sweep uses axes[i]; when fewer axes than
// dimensions are given the last one is broadcast, and an empty vector means
// the default [0,1] lattice with step 0.1. sample_count extra points per
// family are drawn from the seeded generator, so equal grids and seeds give
// byte-identical reports.
struct SweepGrid {
  std::vector<AxisRange> axes;
  std::uint64_t seed{1};
  int sample_count{0};

  AxisRange axis(std::size_t i) const;
  static SweepGrid uniform(double step, std::uint64_t seed = 1, int sample_count = 0);
};

// Lattice points lo, lo+step, ..., hi. Throws std::invalid_argument on a
// non-positive step or an empty range.
std::vector<double> lattice(const AxisRange& axis);

struct IdentityStat {
  std::string identity;
  long checks{};
  double max_abs_discrepancy{};
};

struct Counterexample {
  std::string identity;
  std::vector<std::pair<std::string, double>> inputs;
  double lhs{}, rhs{};
};

struct OracleReport {
  double tol{kDefaultTol};
  long checks_run{};
  long skipped_infeasible{};
  std::vector<IdentityStat> identities;
  std::vector<Counterexample> counterexamples;  // capped at kMaxCounterexamples
  long counterexample_count{};                  // total, including uncaptured ones
  long short_form_checks{};                     // textbook short-form comparisons
  long short_form_mismatches{};

  bool all_within_tol() const { return counterexample_count == 0; }
};

inline constexpr std::size_t kMaxCounterexamples = 32;

// Recomputes an identity from a counterexample's inputs; returns {lhs, rhs}.
// Throws std::invalid_argument on an unknown identity or missing inputs.
std::pair<double, double> replay_counterexample(const GameMatrix& game,
                                                const Counterexample& ce);

// Re-derives every closed form against direct payoff arithmetic over
// lattice + sampled inputs. Identities covered: the two bilinear stability
// differences, the factorizable delta closed forms, the embedded classical
// stability differences, the defection-gap identity, the payoff-gap
// identity, the quadratic stability identity on constrained boxes, and the
// constrained reduction of the correlation combination. The textbook short
// form of that reduction is tallied separately and never counts as a
// failure.
OracleReport verify_identities(const GameMatrix& game, const SweepGrid& grid,
                               double tol = kDefaultTol);

struct FactorizableSweepReport {
  long lattice_points{};
  long embedded_count{};
  long infeasible_count{};
  long positive_second_difference_count{};  // strictly above tol
  double max_second_difference{};           // over embedded samples and x > 0
  double min_second_difference{};
};

// Sweeps (r, r_prime) over axes 0 and 1, embeds each point classically and
// evaluates the stability difference P(0,x) - P(x,x) on the x grid
// {0.1, ..., 1.0}. When the embedding is undefined or infeasible the
// embedded family is empty and all counts are zero.
FactorizableSweepReport sweep_factorizable(const GameMatrix& game, const SweepGrid& grid,
                                           double tol = kDefaultTol);

struct ConstrainedSweepRow {
  double p4{}, p5{}, p8{}, p9{};
  bool feasible{};
  bool symmetric{};
  double margin{};  // p8 + p9 - p4 - p5
  double delta{};   // NaN when infeasible
  bool local_range{};
};

struct ConstrainedSweepReport {
  double kappa{};
  long lattice_points{};
  long feasible_count{};
  long symmetric_count{};
  long ess_count{};
  long ess_without_violation_count{};
  double delta_min{}, delta_max{};  // over feasible rows; NaN when none
  bool contains_ess_without_violation{};
  std::vector<ConstrainedSweepRow> rows;
};

// Sweeps the free tuple (p4, p5, p8, p9) over axes 0..3 at the game's kappa.
// When kappa is undefined or outside [0,1] the report is empty with
// feasible_count 0.
ConstrainedSweepReport sweep_constrained(const GameMatrix& game, const SweepGrid& grid,
                                         double tol = kDefaultTol);

// CSV with header p4,p5,p8,p9,feasible,symmetric,margin,delta,local_range;
// one row per lattice point, full precision, deterministic bytes.
std::string sweep_csv(const ConstrainedSweepReport& report);

}  // namespace eprgame
