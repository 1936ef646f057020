#pragma once

#include <array>
#include <utility>

#include "eprgame/box.hpp"
#include "eprgame/game.hpp"

namespace eprgame {

// Expected payoffs of the four pure-strategy profiles, for both players.
// Field order mirrors the profiles (S,S), (S,S'), (S',S), (S',S').
struct PurePayoffTable {
  double row_ss{}, row_ssp{}, row_sps{}, row_spsp{};
  double col_ss{}, col_ssp{}, col_sps{}, col_spsp{};

  std::array<double, 4> row() const { return {row_ss, row_ssp, row_sps, row_spsp}; }
  std::array<double, 4> col() const { return {col_ss, col_ssp, col_sps, col_spsp}; }
};

// Mixed strategies: x and y are the probabilities that the row and column
// player play S.
struct StrategyProfile {
  double x{}, y{};

  bool in_range() const;
};

struct PayoffPair {
  double row{}, col{};
};

struct TableSymmetryReport {
  // |row(S,S)-col(S,S)|, |row(S,S')-col(S',S)|, |row(S',S)-col(S,S')|,
  // |row(S',S')-col(S',S')|
  std::array<double, 4> residuals{};
  double max_residual{};
  bool symmetric{};
};

struct NashCheck {
  double row_gap{};  // min over pure deviations of row payoff loss from deviating
  double col_gap{};
  bool is_ne{};
};

enum class EssStatus { NotNE, NEOnly, EssByCondition1, EssByCondition2 };

const char* to_string(EssStatus status);

struct EssVerdict {
  bool is_symmetric_nash{};
  double delta1{}, delta2{};
  // Coefficient on (x - x_star)^2 in the stability difference that decides
  // the second condition; positive margin means strictly stable there.
  double margin{};
  EssStatus status{EssStatus::NotNE};
};

struct FitnessInputs {
  double epsilon{};      // mutant share of the population, in (0,1)
  double mutant_x{};     // mutant strategy
  double incumbent_x{};  // incumbent strategy
};

struct FitnessPair {
  double mutant{}, incumbent{};
};

// Contracts the box against the game's coefficients group by group.
// Requires a valid box (std::invalid_argument otherwise).
PurePayoffTable pure_payoffs(const ProbabilityBox& box, const GameMatrix& game,
                             double tol = kDefaultTol);

PayoffPair mixed_payoffs(const StrategyProfile& profile, const PurePayoffTable& table);

TableSymmetryReport symmetry_residuals(const PurePayoffTable& table, double tol = kDefaultTol);

NashCheck nash_check(const StrategyProfile& profile, const PurePayoffTable& table,
                     double tol = kDefaultTol);

// delta1 = P(S,S) - P(S',S) - P(S,S') + P(S',S'), delta2 = P(S,S') - P(S',S'),
// row-player quantities of a symmetric table (std::domain_error otherwise).
std::pair<double, double> ess_deltas(const PurePayoffTable& table, double tol = kDefaultTol);

// Classifies x_star as a symmetric equilibrium of a symmetric table.
EssVerdict ess_classify(double x_star, const PurePayoffTable& table, double tol = kDefaultTol);

// Mean payoffs of mutant and incumbent in an incumbent population invaded by
// an epsilon share of mutants.
FitnessPair fitness(const FitnessInputs& inputs, const PurePayoffTable& table,
                    double tol = kDefaultTol);

}  // namespace eprgame
