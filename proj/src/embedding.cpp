#include "eprgame/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eprgame {

double ConstraintResiduals::max_abs() const {
  double m = 0.0;
  for (double r : {balance_first, balance_second, s_prime, cross_balance, p5_p15, p8_p14}) {
    m = std::max(m, std::abs(r));
  }
  return m;
}

EmbeddingConstraints classical_embedding(const GameMatrix& game) {
  const OmegaTriple w = omegas(game);
  EmbeddingConstraints c;
  c.kappa = w.kappa;
  c.feasible = w.kappa.has_value() && *w.kappa >= 0.0 && *w.kappa <= 1.0;
  return c;
}

std::optional<FactorizableParams> sample_classical_params(const EmbeddingConstraints& constraints,
                                                          double r, double r_prime) {
  if (!constraints.kappa.has_value()) {
    throw std::domain_error("embedding undefined: the payoff contrast omega1 is zero");
  }
  if (!constraints.feasible) {
    throw std::domain_error("embedding infeasible: kappa lies outside [0,1]");
  }
  const double kappa = *constraints.kappa;
  // The contrast rule pins s: r - s == r_prime - s_prime with s_prime == kappa.
  FactorizableParams params{r, r - (r_prime - kappa), r_prime, kappa};
  if (!params.in_range()) return std::nullopt;
  return params;
}

std::pair<double, double> classical_ess_difference(const FactorizableParams& params,
                                                   const GameMatrix& game, double x,
                                                   double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!params.in_range()) throw std::domain_error("factorizable parameters must lie in [0,1]");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("mutant strategy must lie in [0,1]");
  const OmegaTriple w = omegas(game);
  if (!w.kappa.has_value()) {
    throw std::domain_error("embedding undefined: the payoff contrast omega1 is zero");
  }
  if (std::abs(params.s_prime - *w.kappa) > tol ||
      std::abs((params.r - params.s) - (params.r_prime - params.s_prime)) > tol) {
    throw std::domain_error("parameters violate the embedding constraints");
  }
  // Bilinear closed forms of the stability differences at x_star = 0.
  const double d1 = (params.r - params.s) * (params.r_prime - params.s_prime) * w.omega1;
  const double d2 = (params.r - params.s) * (params.s_prime * w.omega1 - w.omega2);
  return {-x * d2, -x * (x * d1 + d2)};
}

ConstraintResiduals quantum_constraint_residuals(const ProbabilityBox& box,
                                                 const GameMatrix& game) {
  const OmegaTriple w = omegas(game);
  if (!w.kappa.has_value()) {
    throw std::domain_error("constraints undefined: the payoff contrast omega1 is zero");
  }
  const double kappa = *w.kappa;
  ConstraintResiduals r;
  r.balance_first = box.at(1) + box.at(5) + box.at(8) + box.at(12) + box.at(14) + box.at(15) -
                    (1.0 + box.at(4) + box.at(9));
  r.balance_second = box.at(4) + box.at(5) + box.at(8) + box.at(9) + box.at(14) + box.at(15) -
                     (1.0 + box.at(1) + box.at(12));
  r.s_prime = box.at(5) + box.at(7) - kappa;
  r.cross_balance = box.at(5) + box.at(12) - (box.at(8) + box.at(9));
  r.p5_p15 = box.at(5) + box.at(15) - kappa;
  r.p8_p14 = box.at(8) + box.at(14) - (1.0 - kappa);
  return r;
}

ConstrainedBoxResult build_constrained_box(const ConstrainedFreeParams& f, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(f.kappa >= 0.0 && f.kappa <= 1.0)) {
    throw std::domain_error("kappa must lie in [0,1]");
  }
  IndependentOctet octet;
  octet.p4 = f.p4;
  octet.p5 = f.p5;
  octet.p8 = f.p8;
  octet.p9 = f.p9;
  octet.p15 = f.kappa - f.p5;
  octet.p14 = 1.0 - f.kappa - f.p8;
  octet.p1 = f.p4 + f.p5 - f.p8;
  octet.p12 = f.p8 + f.p9 - f.p5;
  const ProbabilityBox box = complete_from_independent(octet);
  ConstrainedBoxResult out;
  for (int i = 1; i <= 16; ++i) {
    const double v = box.at(i);
    if (!(v >= -tol && v <= 1.0 + tol)) {
      out.violations.push_back({"p" + std::to_string(i), v});
    }
  }
  if (out.violations.empty()) out.box = box;
  return out;
}

QuantumEssReport ess_margin(const ConstrainedFreeParams& f, const GameMatrix& game, double tol) {
  const OmegaTriple w = omegas(game);
  if (!w.kappa.has_value()) {
    throw std::domain_error("embedding undefined: the payoff contrast omega1 is zero");
  }
  if (std::abs(*w.kappa - f.kappa) > tol) {
    throw std::domain_error("free tuple's kappa does not match the game's ratio");
  }
  const ConstrainedBoxResult built = build_constrained_box(f, tol);
  if (!built.feasible()) {
    throw std::domain_error("free tuple yields probabilities outside [0,1]");
  }
  QuantumEssReport rep;
  rep.margin = f.p8 + f.p9 - f.p4 - f.p5;
  rep.coefficient = rep.margin * w.omega1;
  const PurePayoffTable t = pure_payoffs(*built.box, game, tol);
  rep.ne_preserved = std::abs(t.row_spsp - t.row_ssp) <= tol;
  const ChshReport chsh = chsh_report(*built.box);
  rep.delta_reduced = chsh.delta;
  rep.violates_chsh = !chsh.is_local_range;
  return rep;
}

ReducedChshReport reduced_chsh(const ConstrainedFreeParams& f, double tol) {
  const ConstrainedBoxResult built = build_constrained_box(f, tol);
  if (!built.feasible()) {
    throw std::domain_error("free tuple yields probabilities outside [0,1]");
  }
  ReducedChshReport rep;
  rep.delta = chsh_report(*built.box).delta;
  // On constrained boxes every term except p4 + p9 cancels.
  rep.reduced_delta = 4.0 * (f.p4 + f.p9) - 2.0;
  rep.reduced_consistent = std::abs(rep.delta - rep.reduced_delta) <= tol;
  rep.short_form_delta = 2.0 * (2.0 * f.p4 + f.p9 - 1.0);
  rep.short_form_matches = std::abs(rep.delta - rep.short_form_delta) <= tol;
  return rep;
}

}  // namespace eprgame
