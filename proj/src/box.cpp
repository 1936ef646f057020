#include "eprgame/box.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eprgame {

bool FactorizableParams::in_range() const {
  for (double v : values()) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
  }
  return true;
}

int outcome_index(int pi1, int pi2, int a, int b) {
  if ((pi1 != 1 && pi1 != -1) || (pi2 != 1 && pi2 != -1)) {
    throw std::invalid_argument("outcomes must be +1 or -1");
  }
  if ((a != 1 && a != 2) || (b != 1 && b != 2)) {
    throw std::invalid_argument("settings must be 1 or 2");
  }
  return 1 + (1 - pi2) / 2 + (1 - pi1) + 4 * (b - 1) + 8 * (a - 1);
}

BoxValidation validate_box(const ProbabilityBox& box, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  BoxValidation v;
  v.tol = tol;
  for (int i = 1; i <= 16; ++i) {
    const double p = box.at(i);
    double viol = 0.0;
    if (!std::isfinite(p)) {
      viol = std::numeric_limits<double>::infinity();
    } else if (p < 0.0) {
      viol = -p;
    } else if (p > 1.0) {
      viol = p - 1.0;
    }
    v.range_violations[static_cast<std::size_t>(i - 1)] = viol;
    v.max_range_violation = std::max(v.max_range_violation, viol);
  }
  for (int g = 0; g < 4; ++g) {
    const int base = 4 * g + 1;
    v.normalization_residuals[static_cast<std::size_t>(g)] =
        box.at(base) + box.at(base + 1) + box.at(base + 2) + box.at(base + 3) - 1.0;
  }
  // Marginal-equality constraints: player 1's +1 marginal cannot depend on
  // player 2's setting, and vice versa.
  const auto& q = box;
  v.no_signaling_residuals = {
      q.at(1) + q.at(2) - (q.at(5) + q.at(6)),     // A(+|1), B setting 1 vs 2
      q.at(1) + q.at(3) - (q.at(9) + q.at(11)),    // B(+|1), A setting 1 vs 2
      q.at(9) + q.at(10) - (q.at(13) + q.at(14)),  // A(+|2)
      q.at(5) + q.at(7) - (q.at(13) + q.at(15)),   // B(+|2)
      q.at(3) + q.at(4) - (q.at(7) + q.at(8)),     // A(-|1)
      q.at(11) + q.at(12) - (q.at(15) + q.at(16)), // A(-|2)
      q.at(2) + q.at(4) - (q.at(10) + q.at(12)),   // B(-|1)
      q.at(6) + q.at(8) - (q.at(14) + q.at(16)),   // B(-|2)
  };
  v.range_ok = v.max_range_violation <= tol;
  v.normalized = true;
  for (double r : v.normalization_residuals) {
    if (!(std::abs(r) <= tol)) v.normalized = false;
  }
  v.no_signaling = true;
  for (double r : v.no_signaling_residuals) {
    if (!(std::abs(r) <= tol)) v.no_signaling = false;
  }
  v.valid = v.range_ok && v.normalized && v.no_signaling;
  return v;
}

namespace {

// Expected product-box entries for one setting group, q = P(+1) for player 1
// and qp = P(+1) for player 2 under the group's settings.
std::array<double, 4> product_group(double q, double qp) {
  return {q * qp, q * (1.0 - qp), (1.0 - q) * qp, (1.0 - q) * (1.0 - qp)};
}

ProbabilityBox product_box(const FactorizableParams& f) {
  ProbabilityBox box;
  const std::array<std::array<double, 2>, 4> group_params = {{
      {f.r, f.r_prime},
      {f.r, f.s_prime},
      {f.s, f.r_prime},
      {f.s, f.s_prime},
  }};
  for (int g = 0; g < 4; ++g) {
    const auto cells = product_group(group_params[static_cast<std::size_t>(g)][0],
                                     group_params[static_cast<std::size_t>(g)][1]);
    for (int k = 0; k < 4; ++k) box.at(4 * g + 1 + k) = cells[static_cast<std::size_t>(k)];
  }
  return box;
}

bool matches_product(const ProbabilityBox& box, const FactorizableParams& f, double tol) {
  const ProbabilityBox expect = product_box(f);
  for (int i = 1; i <= 16; ++i) {
    if (!(std::abs(box.at(i) - expect.at(i)) <= tol)) return false;
  }
  return true;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

FactorizableParams clamped(const FactorizableParams& f) {
  return {clamp01(f.r), clamp01(f.s), clamp01(f.r_prime), clamp01(f.s_prime)};
}

}  // namespace

ProbabilityBox box_from_factorizable(const FactorizableParams& params) {
  if (!params.in_range()) {
    throw std::domain_error("factorizable parameters must lie in [0,1]");
  }
  return product_box(params);
}

std::optional<FactorizableParams> product_form_test(const ProbabilityBox& box, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  // Primary marginal route: r, r' from group (1,1), s from (2,1), s' from (1,2).
  const FactorizableParams primary{box.at(1) + box.at(2), box.at(9) + box.at(10),
                                   box.at(1) + box.at(3), box.at(5) + box.at(7)};
  if (matches_product(box, primary, tol)) return clamped(primary);
  // Alternative marginal route for boxes whose primary marginals are read
  // from degenerate groups.
  const FactorizableParams alt{box.at(5) + box.at(6), box.at(13) + box.at(14),
                               box.at(9) + box.at(11), box.at(13) + box.at(15)};
  if (matches_product(box, alt, tol)) return clamped(alt);
  return std::nullopt;
}

ProbabilityBox complete_from_independent(const IndependentOctet& o) {
  ProbabilityBox box;
  box.at(1) = o.p1;
  box.at(4) = o.p4;
  box.at(5) = o.p5;
  box.at(8) = o.p8;
  box.at(9) = o.p9;
  box.at(12) = o.p12;
  box.at(14) = o.p14;
  box.at(15) = o.p15;
  // Each dependent entry is the unique value consistent with normalization
  // and the marginal equalities.
  box.at(2) = (1.0 - o.p1 - o.p4 + o.p5 - o.p8 - o.p9 + o.p12 + o.p14 - o.p15) / 2.0;
  box.at(3) = (1.0 - o.p1 - o.p4 - o.p5 + o.p8 + o.p9 - o.p12 - o.p14 + o.p15) / 2.0;
  box.at(6) = (1.0 + o.p1 - o.p4 - o.p5 - o.p8 - o.p9 + o.p12 + o.p14 - o.p15) / 2.0;
  box.at(7) = (1.0 - o.p1 + o.p4 - o.p5 - o.p8 + o.p9 - o.p12 - o.p14 + o.p15) / 2.0;
  box.at(10) = (1.0 - o.p1 + o.p4 + o.p5 - o.p8 - o.p9 - o.p12 + o.p14 - o.p15) / 2.0;
  box.at(11) = (1.0 + o.p1 - o.p4 - o.p5 + o.p8 - o.p9 - o.p12 - o.p14 + o.p15) / 2.0;
  box.at(13) = (1.0 - o.p1 + o.p4 + o.p5 - o.p8 + o.p9 - o.p12 - o.p14 - o.p15) / 2.0;
  box.at(16) = (1.0 + o.p1 - o.p4 - o.p5 + o.p8 - o.p9 + o.p12 - o.p14 - o.p15) / 2.0;
  return box;
}

IndependentOctet octet_of(const ProbabilityBox& box) {
  return {box.at(1), box.at(4), box.at(5), box.at(8),
          box.at(9), box.at(12), box.at(14), box.at(15)};
}

ExchangeSymmetryReport exchange_symmetry_residuals(const ProbabilityBox& box, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  ExchangeSymmetryReport rep;
  rep.residuals = {
      std::abs(box.at(5) - box.at(9)),  std::abs(box.at(6) - box.at(11)),
      std::abs(box.at(7) - box.at(10)), std::abs(box.at(8) - box.at(12)),
      std::abs(box.at(2) - box.at(3)),  std::abs(box.at(14) - box.at(15)),
  };
  rep.max_residual = 0.0;
  for (double r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r);
  rep.symmetric = rep.max_residual <= tol;
  return rep;
}

ChshReport chsh_report(const ProbabilityBox& box) {
  ChshReport rep;
  // Per setting group: probability mass on equal outcomes and on opposite
  // outcomes. The correlator of a group is 2*corr - 1 = 1 - 2*anti.
  std::array<double, 4> corr{}, anti{};
  for (int g = 0; g < 4; ++g) {
    const int base = 4 * g + 1;
    corr[static_cast<std::size_t>(g)] = box.at(base) + box.at(base + 3);
    anti[static_cast<std::size_t>(g)] = box.at(base + 1) + box.at(base + 2);
  }
  // Variant with the anticorrelation role on group g, in probability form.
  const auto variant = [&](int g) {
    double sum = anti[static_cast<std::size_t>(g)];
    for (int h = 0; h < 4; ++h) {
      if (h != g) sum += corr[static_cast<std::size_t>(h)];
    }
    return 2.0 * (sum - 2.0);
  };
  rep.delta = 2.0 * (box.at(1) + box.at(4) + box.at(5) + box.at(8) + box.at(9) +
                     box.at(12) + box.at(14) + box.at(15) - 2.0);
  rep.variant_deltas[0] = rep.delta;
  rep.variant_deltas[1] = variant(2);
  rep.variant_deltas[2] = variant(1);
  rep.variant_deltas[3] = variant(0);
  for (int k = 0; k < 4; ++k) {
    rep.variant_deltas[static_cast<std::size_t>(k + 4)] =
        -rep.variant_deltas[static_cast<std::size_t>(k)];
  }
  rep.is_local_range = true;
  rep.within_cirelson = true;
  for (double d : rep.variant_deltas) {
    if (!(d >= -2.0 && d <= 2.0)) rep.is_local_range = false;
    if (!(d >= -kCirelsonBound && d <= kCirelsonBound)) rep.within_cirelson = false;
  }
  return rep;
}

}  // namespace eprgame
