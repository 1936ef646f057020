#pragma once

#include <array>
#include <optional>

#include "eprgame/game.hpp"

namespace eprgame {

// Joint probabilities of a bipartite two-setting / two-outcome box.
// Layout of the 16 entries (1-based, matching the on-disk order):
//   p1..p4    settings (a,b) = (1,1)
//   p5..p8    settings (1,2)
//   p9..p12   settings (2,1)
//   p13..p16  settings (2,2)
// and within each group of four the outcome pair (pi1, pi2) runs
// (+1,+1), (+1,-1), (-1,+1), (-1,-1).
struct ProbabilityBox {
  std::array<double, 16> p{};

  double at(int i) const { return p[static_cast<std::size_t>(i - 1)]; }
  double& at(int i) { return p[static_cast<std::size_t>(i - 1)]; }
};

// Single-party outcome probabilities of a product box: r and s give the
// chance of outcome +1 for player 1 under settings 1 and 2; r_prime and
// s_prime do the same for player 2.
struct FactorizableParams {
  double r{}, s{}, r_prime{}, s_prime{};

  bool in_range() const;
  std::array<double, 4> values() const { return {r, s, r_prime, s_prime}; }
};

// The eight probabilities that determine the remaining eight of a
// normalized no-signaling box.
struct IndependentOctet {
  double p1{}, p4{}, p5{}, p8{}, p9{}, p12{}, p14{}, p15{};
};

struct BoxValidation {
  double tol{kDefaultTol};
  std::array<double, 16> range_violations{};        // distance outside [0,1], per entry
  double max_range_violation{};
  std::array<double, 4> normalization_residuals{};  // group sum minus 1
  std::array<double, 8> no_signaling_residuals{};   // lhs minus rhs, fixed order
  bool range_ok{}, normalized{}, no_signaling{}, valid{};
};

struct ExchangeSymmetryReport {
  // |p5-p9|, |p6-p11|, |p7-p10|, |p8-p12|, |p2-p3|, |p14-p15|
  std::array<double, 6> residuals{};
  double max_residual{};
  bool symmetric{};
};

inline constexpr double kCirelsonBound = 2.8284271247461903;  // 2*sqrt(2)

struct ChshReport {
  double delta{};  // correlator combination with the anticorrelation role on (2,2)
  // All eight sign variants; variant_deltas[0] == delta, [1..3] move the
  // anticorrelation role to (2,1), (1,2), (1,1), and [4..7] negate [0..3].
  std::array<double, 8> variant_deltas{};
  bool is_local_range{};   // every variant within [-2, 2]
  bool within_cirelson{};  // every variant within [-2*sqrt(2), 2*sqrt(2)]
};

// Maps outcomes pi1, pi2 in {+1,-1} and settings a, b in {1,2} to the
// 1-based entry index. Throws std::invalid_argument on anything else.
int outcome_index(int pi1, int pi2, int a, int b);

BoxValidation validate_box(const ProbabilityBox& box, double tol = kDefaultTol);

// Builds the product box of the given single-party probabilities.
// Throws std::domain_error when a parameter leaves [0,1].
ProbabilityBox box_from_factorizable(const FactorizableParams& params);

// Recovers product parameters when the box factorizes within tol;
// returns std::nullopt otherwise.
std::optional<FactorizableParams> product_form_test(const ProbabilityBox& box,
                                                    double tol = kDefaultTol);

// Fills in the eight dependent probabilities from the independent octet.
// The result is normalized and no-signaling by construction for any input;
// entries may leave [0,1], which validate_box will report.
ProbabilityBox complete_from_independent(const IndependentOctet& octet);

IndependentOctet octet_of(const ProbabilityBox& box);

ExchangeSymmetryReport exchange_symmetry_residuals(const ProbabilityBox& box,
                                                   double tol = kDefaultTol);

ChshReport chsh_report(const ProbabilityBox& box);

}  // namespace eprgame
