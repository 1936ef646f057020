#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eprgame/box.hpp"
#include "eprgame/game.hpp"
#include "eprgame/payoff.hpp"

namespace eprgame {

// Constraints a factorizable box must satisfy so the game's defection
// profile stays an equilibrium: s_prime is pinned to kappa, and the setting
// contrasts must match (r - s == r_prime - s_prime).
struct EmbeddingConstraints {
  std::optional<double> kappa;  // empty when omega1 == 0
  bool feasible{};              // kappa defined and within [0,1]
};

// Free coordinates of the constrained no-signaling family. The remaining
// probabilities are pinned by kappa: p15 = kappa - p5, p14 = 1 - kappa - p8,
// p1 = p4 + p5 - p8, p12 = p8 + p9 - p5, then the dependent eight follow.
struct ConstrainedFreeParams {
  double p4{}, p5{}, p8{}, p9{};
  double kappa{};
};

struct RangeViolation {
  std::string name;  // entry name, e.g. "p15"
  double value{};
};

struct ConstrainedBoxResult {
  std::optional<ProbabilityBox> box;
  std::vector<RangeViolation> violations;

  bool feasible() const { return box.has_value(); }
};

// Signed residuals of the constraint system on a box, given the game's
// ratio kappa. All six vanish simultaneously on constrained boxes.
struct ConstraintResiduals {
  double balance_first{};   // p1+p5+p8+p12+p14+p15 - (1 + p4 + p9)
  double balance_second{};  // p4+p5+p8+p9+p14+p15 - (1 + p1 + p12)
  double s_prime{};         // p5 + p7 - kappa
  double cross_balance{};   // p5 + p12 - (p8 + p9)
  double p5_p15{};          // p5 + p15 - kappa
  double p8_p14{};          // p8 + p14 - (1 - kappa)

  double max_abs() const;
};

struct QuantumEssReport {
  double margin{};       // p8 + p9 - p4 - p5
  double coefficient{};  // margin * omega1; the x^2 coefficient of the stability gap
  bool ne_preserved{};   // row payoff of (S',S') equals that of (S,S')
  double delta_reduced{};
  bool violates_chsh{};  // some variant leaves [-2, 2]
};

struct ReducedChshReport {
  double delta{};             // full combination evaluated on the completed box
  double reduced_delta{};     // 4*(p4 + p9) - 2, the constrained reduction
  bool reduced_consistent{};  // reduced_delta reproduces delta within tol
  double short_form_delta{};  // 2*(2*p4 + p9 - 1); differs from delta by 2*p9
  bool short_form_matches{};
};

EmbeddingConstraints classical_embedding(const GameMatrix& game);

// Completes (r, r_prime) to embedded factorizable parameters: s_prime is
// pinned to kappa and s follows from the contrast rule. Returns std::nullopt
// when the forced s leaves [0,1]; throws std::domain_error when the
// embedding itself is undefined or infeasible.
std::optional<FactorizableParams> sample_classical_params(const EmbeddingConstraints& constraints,
                                                          double r, double r_prime);

// Stability differences of x_star = 0 against mutant x in the embedded
// classical game: first component P(0,0) - P(x,0), second P(0,x) - P(x,x),
// both from the bilinear closed forms. Throws std::domain_error when the
// params violate the embedding constraints beyond tol.
std::pair<double, double> classical_ess_difference(const FactorizableParams& params,
                                                   const GameMatrix& game, double x,
                                                   double tol = kDefaultTol);

// Residuals of the constraint system; requires omega1 != 0
// (std::domain_error otherwise).
ConstraintResiduals quantum_constraint_residuals(const ProbabilityBox& box,
                                                 const GameMatrix& game);

// Builds the constrained box from the free tuple, or reports every entry
// that leaves [0,1] by more than tol. Throws std::domain_error when kappa
// itself leaves [0,1].
ConstrainedBoxResult build_constrained_box(const ConstrainedFreeParams& params,
                                           double tol = kDefaultTol);

// Stability report of x_star = 0 on the constrained box; requires a feasible
// tuple whose kappa matches the game's (std::domain_error otherwise).
QuantumEssReport ess_margin(const ConstrainedFreeParams& params, const GameMatrix& game,
                            double tol = kDefaultTol);

ReducedChshReport reduced_chsh(const ConstrainedFreeParams& params, double tol = kDefaultTol);

}  // namespace eprgame
