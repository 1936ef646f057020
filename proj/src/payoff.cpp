#include "eprgame/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eprgame {

bool StrategyProfile::in_range() const {
  return x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0;
}

const char* to_string(EssStatus status) {
  switch (status) {
    case EssStatus::NotNE: return "NotNE";
    case EssStatus::NEOnly: return "NEOnly";
    case EssStatus::EssByCondition1: return "ESSByCondition1";
    case EssStatus::EssByCondition2: return "ESSByCondition2";
  }
  return "NotNE";
}

namespace {

void require_profile(const StrategyProfile& profile) {
  if (!profile.in_range()) {
    throw std::domain_error("strategy probabilities must lie in [0,1]");
  }
}

void require_symmetric(const PurePayoffTable& table, double tol) {
  if (!symmetry_residuals(table, tol).symmetric) {
    throw std::domain_error("payoff table is not symmetric within tolerance");
  }
}

}  // namespace

PurePayoffTable pure_payoffs(const ProbabilityBox& box, const GameMatrix& game, double tol) {
  if (!game.finite()) throw std::invalid_argument("game matrix entries must be finite");
  if (!validate_box(box, tol).valid) {
    throw std::invalid_argument("pure_payoffs requires a valid probability box");
  }
  const std::array<double, 4> row = game.row_cells();
  const std::array<double, 4> col = game.col_cells();
  const auto group_dot = [&box](int base, const std::array<double, 4>& c) {
    return c[0] * box.at(base) + c[1] * box.at(base + 1) + c[2] * box.at(base + 2) +
           c[3] * box.at(base + 3);
  };
  PurePayoffTable t;
  t.row_ss = group_dot(1, row);
  t.row_ssp = group_dot(5, row);
  t.row_sps = group_dot(9, row);
  t.row_spsp = group_dot(13, row);
  t.col_ss = group_dot(1, col);
  t.col_ssp = group_dot(5, col);
  t.col_sps = group_dot(9, col);
  t.col_spsp = group_dot(13, col);
  return t;
}

PayoffPair mixed_payoffs(const StrategyProfile& profile, const PurePayoffTable& t) {
  require_profile(profile);
  const double x = profile.x, y = profile.y;
  PayoffPair out;
  out.row = x * y * t.row_ss + x * (1.0 - y) * t.row_ssp + (1.0 - x) * y * t.row_sps +
            (1.0 - x) * (1.0 - y) * t.row_spsp;
  out.col = x * y * t.col_ss + x * (1.0 - y) * t.col_ssp + (1.0 - x) * y * t.col_sps +
            (1.0 - x) * (1.0 - y) * t.col_spsp;
  return out;
}

TableSymmetryReport symmetry_residuals(const PurePayoffTable& t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  TableSymmetryReport rep;
  rep.residuals = {
      std::abs(t.row_ss - t.col_ss),
      std::abs(t.row_ssp - t.col_sps),
      std::abs(t.row_sps - t.col_ssp),
      std::abs(t.row_spsp - t.col_spsp),
  };
  rep.max_residual = 0.0;
  for (double r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r);
  rep.symmetric = rep.max_residual <= tol;
  return rep;
}

NashCheck nash_check(const StrategyProfile& profile, const PurePayoffTable& t, double tol) {
  require_profile(profile);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const PayoffPair base = mixed_payoffs(profile, t);
  // Payoffs are linear in a player's own mixture, so pure deviations suffice.
  // A pure profile's own strategy is not a deviation and stays out of the min.
  const auto min_gap = [](double own, double gap0, double gap1) {
    if (own == 0.0) return gap1;
    if (own == 1.0) return gap0;
    return std::min(gap0, gap1);
  };
  NashCheck check;
  check.row_gap = min_gap(profile.x, base.row - mixed_payoffs({0.0, profile.y}, t).row,
                          base.row - mixed_payoffs({1.0, profile.y}, t).row);
  check.col_gap = min_gap(profile.y, base.col - mixed_payoffs({profile.x, 0.0}, t).col,
                          base.col - mixed_payoffs({profile.x, 1.0}, t).col);
  check.is_ne = check.row_gap >= -tol && check.col_gap >= -tol;
  return check;
}

std::pair<double, double> ess_deltas(const PurePayoffTable& t, double tol) {
  require_symmetric(t, tol);
  const double delta1 = t.row_ss - t.row_sps - t.row_ssp + t.row_spsp;
  const double delta2 = t.row_ssp - t.row_spsp;
  return {delta1, delta2};
}

EssVerdict ess_classify(double x_star, const PurePayoffTable& t, double tol) {
  require_symmetric(t, tol);
  if (!(x_star >= 0.0 && x_star <= 1.0)) {
    throw std::domain_error("candidate strategy must lie in [0,1]");
  }
  const auto [d1, d2] = ess_deltas(t, tol);
  EssVerdict v;
  v.delta1 = d1;
  v.delta2 = d2;
  v.margin = -d1;
  // First-difference slope: P(x*,x*) - P(x,x*) = (x* - x) * c.
  const double c = x_star * d1 + d2;
  const double gap_at_0 = x_star * c;
  const double gap_at_1 = (x_star - 1.0) * c;
  v.is_symmetric_nash = std::min(gap_at_0, gap_at_1) >= -tol;
  if (!v.is_symmetric_nash) {
    v.status = EssStatus::NotNE;
    return v;
  }
  if (std::abs(c) > tol) {
    // The first difference is strict for every x != x* only when x* sits at
    // the boundary the slope favours.
    const bool at_favoured_boundary = c > 0.0 ? x_star >= 1.0 - tol : x_star <= tol;
    v.status = at_favoured_boundary ? EssStatus::EssByCondition1 : EssStatus::NEOnly;
    return v;
  }
  // First difference vanishes; stability is decided by
  // P(x*,x) - P(x,x) = -delta1 * (x - x*)^2.
  v.status = v.margin > tol ? EssStatus::EssByCondition2 : EssStatus::NEOnly;
  return v;
}

FitnessPair fitness(const FitnessInputs& in, const PurePayoffTable& t, double tol) {
  require_symmetric(t, tol);
  if (!(in.epsilon > 0.0 && in.epsilon < 1.0)) {
    throw std::domain_error("epsilon must lie in (0,1)");
  }
  if (!(in.mutant_x >= 0.0 && in.mutant_x <= 1.0) ||
      !(in.incumbent_x >= 0.0 && in.incumbent_x <= 1.0)) {
    throw std::domain_error("strategies must lie in [0,1]");
  }
  const auto pay = [&t](double u, double v) { return mixed_payoffs({u, v}, t).row; };
  const double x = in.mutant_x, xs = in.incumbent_x, eps = in.epsilon;
  FitnessPair out;
  out.mutant = eps * pay(x, x) + (1.0 - eps) * pay(x, xs);
  out.incumbent = eps * pay(xs, x) + (1.0 - eps) * pay(xs, xs);
  return out;
}

}  // namespace eprgame
