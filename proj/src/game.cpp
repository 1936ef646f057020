#include "eprgame/game.hpp"

#include <cmath>
#include <stdexcept>

namespace eprgame {

bool GameMatrix::finite() const {
  return std::isfinite(a1) && std::isfinite(a2) && std::isfinite(a3) && std::isfinite(a4);
}

namespace {

void require_finite(const GameMatrix& game) {
  if (!game.finite()) throw std::invalid_argument("game matrix entries must be finite");
}

}  // namespace

const char* to_string(OrderingLabel label) {
  switch (label) {
    case OrderingLabel::StrictPD: return "StrictPD";
    case OrderingLabel::GeneralizedPDInequality: return "GeneralizedPDInequality";
    case OrderingLabel::EmbeddingFeasible: return "EmbeddingFeasible";
    case OrderingLabel::Other: return "Other";
  }
  return "Other";
}

OmegaTriple omegas(const GameMatrix& game) {
  require_finite(game);
  OmegaTriple w;
  w.omega1 = game.a1 - game.a2 - game.a3 + game.a4;
  w.omega2 = game.a4 - game.a2;
  w.omega3 = game.a3 - game.a1;
  if (w.omega1 != 0.0) w.kappa = w.omega2 / w.omega1;
  return w;
}

OrderingClass classify_ordering(const GameMatrix& game) {
  require_finite(game);
  const OmegaTriple w = omegas(game);
  OrderingClass c;
  c.is_strict_pd = game.a3 > game.a1 && game.a1 > game.a4 && game.a4 > game.a2;
  c.satisfies_generalized_pd_inequality = w.omega2 > w.omega3;
  c.kappa_in_unit_interval = w.kappa.has_value() && *w.kappa > 0.0 && *w.kappa < 1.0;
  if (c.is_strict_pd && c.satisfies_generalized_pd_inequality) {
    c.label = OrderingLabel::GeneralizedPDInequality;
  } else if (c.is_strict_pd) {
    c.label = OrderingLabel::StrictPD;
  } else if (c.kappa_in_unit_interval) {
    c.label = OrderingLabel::EmbeddingFeasible;
  } else {
    c.label = OrderingLabel::Other;
  }
  return c;
}

}  // namespace eprgame
