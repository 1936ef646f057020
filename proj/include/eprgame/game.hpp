#pragma once

#include <array>
#include <optional>

namespace eprgame {

// Absolute tolerance used by every equality-style check unless a caller
// overrides it. Strict inequalities must clear +tol.
inline constexpr double kDefaultTol = 1e-9;

// Row player's 2x2 payoff matrix, read row-major against strategies (S, S'):
//   a1 = payoff(S,S), a2 = payoff(S,S'), a3 = payoff(S',S), a4 = payoff(S',S').
// The column player's matrix of the symmetric game is always the transpose
// and is derived on demand, never stored.
struct GameMatrix {
  double a1{}, a2{}, a3{}, a4{};

  std::array<double, 4> row_cells() const { return {a1, a2, a3, a4}; }
  std::array<double, 4> col_cells() const { return {a1, a3, a2, a4}; }
  bool finite() const;
};

// omega1 = a1 - a2 - a3 + a4, omega2 = a4 - a2, omega3 = a3 - a1.
// omega1 == omega2 - omega3 identically; kappa = omega2 / omega1 is left
// empty when omega1 == 0 (a degenerate game, not an error).
struct OmegaTriple {
  double omega1{}, omega2{}, omega3{};
  std::optional<double> kappa;
};

enum class OrderingLabel { StrictPD, GeneralizedPDInequality, EmbeddingFeasible, Other };

struct OrderingClass {
  bool is_strict_pd{};                         // a3 > a1 > a4 > a2
  bool satisfies_generalized_pd_inequality{};  // a4 - a2 > a3 - a1
  bool kappa_in_unit_interval{};               // 0 < kappa < 1
  OrderingLabel label{OrderingLabel::Other};
};

const char* to_string(OrderingLabel label);

OmegaTriple omegas(const GameMatrix& game);
OrderingClass classify_ordering(const GameMatrix& game);

}  // namespace eprgame
