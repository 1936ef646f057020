#include "eprgame/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace eprgame {

AxisRange SweepGrid::axis(std::size_t i) const {
  if (axes.empty()) return AxisRange{};
  return axes[std::min(i, axes.size() - 1)];
}

SweepGrid SweepGrid::uniform(double step, std::uint64_t seed, int sample_count) {
  SweepGrid grid;
  grid.axes = {AxisRange{0.0, 1.0, step}};
  grid.seed = seed;
  grid.sample_count = sample_count;
  return grid;
}

std::vector<double> lattice(const AxisRange& axis) {
  if (!(axis.step > 0.0)) throw std::invalid_argument("lattice step must be positive");
  if (!(axis.hi >= axis.lo)) throw std::invalid_argument("lattice range is empty");
  const auto count = static_cast<long>(std::floor((axis.hi - axis.lo) / axis.step + 1e-9));
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) {
    double v = axis.lo + static_cast<double>(i) * axis.step;
    if (v > axis.hi) v = axis.hi;
    pts.push_back(v);
  }
  return pts;
}

namespace {

using Inputs = std::vector<std::pair<std::string, double>>;

struct RowTable {
  double ss{}, ssp{}, sps{}, spsp{};
};

double cell_coeff(const GameMatrix& g, int pi1, int pi2) {
  if (pi1 == 1) return pi2 == 1 ? g.a1 : g.a2;
  return pi2 == 1 ? g.a3 : g.a4;
}

// Direct route: contract the box against the game by enumerating outcomes
// through the index map rather than slicing groups.
RowTable direct_row_table(const ProbabilityBox& box, const GameMatrix& g) {
  RowTable t;
  std::array<std::array<double*, 2>, 2> slot = {{{&t.ss, &t.ssp}, {&t.sps, &t.spsp}}};
  for (int a : {1, 2}) {
    for (int b : {1, 2}) {
      double sum = 0.0;
      for (int pi1 : {1, -1}) {
        for (int pi2 : {1, -1}) {
          sum += cell_coeff(g, pi1, pi2) * box.at(outcome_index(pi1, pi2, a, b));
        }
      }
      *slot[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = sum;
    }
  }
  return t;
}

double mixed_row(const RowTable& t, double x, double y) {
  return x * y * t.ss + x * (1.0 - y) * t.ssp + (1.0 - x) * y * t.sps +
         (1.0 - x) * (1.0 - y) * t.spsp;
}

double input_value(const Inputs& in, const char* name) {
  for (const auto& [k, v] : in) {
    if (k == name) return v;
  }
  throw std::invalid_argument(std::string("missing counterexample input: ") + name);
}

std::pair<double, double> eval_identity(const GameMatrix& game, const std::string& id,
                                        const Inputs& in) {
  const OmegaTriple w = omegas(game);
  if (id == "eq16_first" || id == "eq16_second") {
    RowTable t;
    t.ss = input_value(in, "ss");
    t.ssp = input_value(in, "ssp");
    t.sps = input_value(in, "sps");
    t.spsp = input_value(in, "spsp");
    const double xs = input_value(in, "x_star");
    const double x = input_value(in, "x");
    const double d1 = t.ss - t.sps - t.ssp + t.spsp;
    const double d2 = t.ssp - t.spsp;
    if (id == "eq16_first") {
      return {mixed_row(t, xs, xs) - mixed_row(t, x, xs), (xs - x) * (xs * d1 + d2)};
    }
    return {mixed_row(t, xs, x) - mixed_row(t, x, x), (xs - x) * (x * d1 + d2)};
  }
  if (id == "eq17_delta1" || id == "eq17_delta2" || id == "eq18_first" ||
      id == "eq18_second") {
    const FactorizableParams f{input_value(in, "r"), input_value(in, "s"),
                               input_value(in, "r_prime"), input_value(in, "s_prime")};
    const RowTable t = direct_row_table(box_from_factorizable(f), game);
    if (id == "eq17_delta1") {
      return {t.ss - t.sps - t.ssp + t.spsp,
              (f.r - f.s) * (f.r_prime - f.s_prime) * w.omega1};
    }
    if (id == "eq17_delta2") {
      return {t.ssp - t.spsp, (f.r - f.s) * (f.s_prime * w.omega1 - w.omega2)};
    }
    const double x = input_value(in, "x");
    if (id == "eq18_first") {
      return {mixed_row(t, 0.0, 0.0) - mixed_row(t, x, 0.0), 0.0};
    }
    return {mixed_row(t, 0.0, x) - mixed_row(t, x, x),
            -x * x * (f.r - f.s) * (f.r - f.s) * w.omega1};
  }
  if (id == "eq25_gap" || id == "eq30_gap" || id == "eq31_quadratic" ||
      id == "eq32_reduction") {
    const ConstrainedFreeParams f{input_value(in, "p4"), input_value(in, "p5"),
                                  input_value(in, "p8"), input_value(in, "p9"),
                                  input_value(in, "kappa")};
    const ConstrainedBoxResult built = build_constrained_box(f);
    if (!built.feasible()) throw std::domain_error("infeasible free tuple");
    const ProbabilityBox& box = *built.box;
    const RowTable t = direct_row_table(box, game);
    if (id == "eq25_gap") {
      const double x = input_value(in, "x");
      return {mixed_row(t, 0.0, 0.0) - mixed_row(t, x, 0.0), 0.0};
    }
    if (id == "eq30_gap") {
      return {t.sps - t.ss,
              w.omega3 * (box.at(1) - f.p9) + w.omega2 * (box.at(12) - f.p4)};
    }
    if (id == "eq31_quadratic") {
      const double x = input_value(in, "x");
      return {mixed_row(t, 0.0, x) - mixed_row(t, x, x),
              x * x * (f.p8 + f.p9 - f.p4 - f.p5) * w.omega1};
    }
    return {2.0 * (box.at(1) + box.at(4) + box.at(5) + box.at(8) + box.at(9) +
                   box.at(12) + box.at(14) + box.at(15) - 2.0),
            4.0 * (f.p4 + f.p9) - 2.0};
  }
  throw std::invalid_argument("unknown identity: " + id);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + uniform01(rng) * (hi - lo);
}

}  // namespace

std::pair<double, double> replay_counterexample(const GameMatrix& game,
                                                const Counterexample& ce) {
  return eval_identity(game, ce.identity, ce.inputs);
}

OracleReport verify_identities(const GameMatrix& game, const SweepGrid& grid, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  OracleReport rep;
  rep.tol = tol;
  for (const char* id :
       {"eq16_first", "eq16_second", "eq17_delta1", "eq17_delta2", "eq18_first",
        "eq18_second", "eq25_gap", "eq30_gap", "eq31_quadratic", "eq32_reduction"}) {
    rep.identities.push_back({id, 0, 0.0});
  }
  const auto check = [&rep, &game, tol](const std::string& id, Inputs inputs) {
    const auto [lhs, rhs] = eval_identity(game, id, inputs);
    for (auto& st : rep.identities) {
      if (st.identity == id) {
        ++st.checks;
        st.max_abs_discrepancy = std::max(st.max_abs_discrepancy, std::abs(lhs - rhs));
        break;
      }
    }
    ++rep.checks_run;
    if (!(std::abs(lhs - rhs) <= tol)) {
      ++rep.counterexample_count;
      if (rep.counterexamples.size() < kMaxCounterexamples) {
        rep.counterexamples.push_back({id, std::move(inputs), lhs, rhs});
      }
    }
  };
  std::mt19937_64 rng(grid.seed);

  // Random payoff tables: the bilinear stability differences hold for any
  // table, symmetric or not.
  const int tables = 200 + std::max(0, grid.sample_count);
  const std::array<double, 5> mix_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < tables; ++i) {
    const double ss = uniform_in(rng, -5.0, 5.0);
    const double ssp = uniform_in(rng, -5.0, 5.0);
    const double sps = uniform_in(rng, -5.0, 5.0);
    const double spsp = uniform_in(rng, -5.0, 5.0);
    const double xs_rand = uniform01(rng);
    const double x_rand = uniform01(rng);
    std::vector<std::array<double, 2>> pairs;
    for (double xs : mix_grid) {
      for (double x : mix_grid) pairs.push_back({xs, x});
    }
    pairs.push_back({xs_rand, x_rand});
    for (const auto& [xs, x] : pairs) {
      const Inputs base = {{"ss", ss},      {"ssp", ssp}, {"sps", sps},
                           {"spsp", spsp},  {"x_star", xs}, {"x", x}};
      check("eq16_first", base);
      check("eq16_second", base);
    }
  }

  const EmbeddingConstraints cons = classical_embedding(game);
  const std::vector<double> x_grid = lattice({0.1, 1.0, 0.1});

  // Embedded factorizable family.
  if (cons.feasible) {
    std::vector<std::array<double, 2>> points;
    for (double r : lattice(grid.axis(0))) {
      for (double rp : lattice(grid.axis(1))) points.push_back({r, rp});
    }
    for (int i = 0; i < grid.sample_count; ++i) {
      const AxisRange a0 = grid.axis(0), a1 = grid.axis(1);
      const double r = uniform_in(rng, a0.lo, a0.hi);
      const double rp = uniform_in(rng, a1.lo, a1.hi);
      points.push_back({r, rp});
    }
    for (const auto& [r, rp] : points) {
      const auto params = sample_classical_params(cons, r, rp);
      if (!params.has_value()) {
        ++rep.skipped_infeasible;
        continue;
      }
      const Inputs base = {{"r", params->r},
                           {"s", params->s},
                           {"r_prime", params->r_prime},
                           {"s_prime", params->s_prime}};
      check("eq17_delta1", base);
      check("eq17_delta2", base);
      for (double x : x_grid) {
        Inputs with_x = base;
        with_x.emplace_back("x", x);
        check("eq18_first", with_x);
        check("eq18_second", with_x);
      }
    }
  }

  // Constrained no-signaling family.
  if (cons.feasible) {
    const double kappa = *cons.kappa;
    std::vector<std::array<double, 4>> tuples;
    for (double p4 : lattice(grid.axis(0))) {
      for (double p5 : lattice(grid.axis(1))) {
        for (double p8 : lattice(grid.axis(2))) {
          for (double p9 : lattice(grid.axis(3))) tuples.push_back({p4, p5, p8, p9});
        }
      }
    }
    for (int i = 0; i < grid.sample_count; ++i) {
      std::array<double, 4> t{};
      for (std::size_t k = 0; k < 4; ++k) {
        const AxisRange a = grid.axis(k);
        t[k] = uniform_in(rng, a.lo, a.hi);
      }
      tuples.push_back(t);
    }
    for (const auto& [p4, p5, p8, p9] : tuples) {
      const ConstrainedBoxResult built =
          build_constrained_box({p4, p5, p8, p9, kappa}, tol);
      if (!built.feasible()) {
        ++rep.skipped_infeasible;
        continue;
      }
      const Inputs base = {
          {"p4", p4}, {"p5", p5}, {"p8", p8}, {"p9", p9}, {"kappa", kappa}};
      check("eq30_gap", base);
      check("eq32_reduction", base);
      ++rep.short_form_checks;
      const double delta = chsh_report(*built.box).delta;
      if (!(std::abs(delta - 2.0 * (2.0 * p4 + p9 - 1.0)) <= tol)) {
        ++rep.short_form_mismatches;
      }
      for (double x : x_grid) {
        Inputs with_x = base;
        with_x.emplace_back("x", x);
        check("eq25_gap", with_x);
        check("eq31_quadratic", with_x);
      }
    }
  }

  return rep;
}

FactorizableSweepReport sweep_factorizable(const GameMatrix& game, const SweepGrid& grid,
                                           double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  FactorizableSweepReport rep;
  const EmbeddingConstraints cons = classical_embedding(game);
  if (!cons.feasible) return rep;
  std::mt19937_64 rng(grid.seed);
  std::vector<std::array<double, 2>> points;
  for (double r : lattice(grid.axis(0))) {
    for (double rp : lattice(grid.axis(1))) points.push_back({r, rp});
  }
  for (int i = 0; i < grid.sample_count; ++i) {
    const AxisRange a0 = grid.axis(0), a1 = grid.axis(1);
    points.push_back({uniform_in(rng, a0.lo, a0.hi), uniform_in(rng, a1.lo, a1.hi)});
  }
  rep.lattice_points = static_cast<long>(points.size());
  const std::vector<double> x_grid = lattice({0.1, 1.0, 0.1});
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [r, rp] : points) {
    const auto params = sample_classical_params(cons, r, rp);
    if (!params.has_value()) {
      ++rep.infeasible_count;
      continue;
    }
    ++rep.embedded_count;
    const RowTable t = direct_row_table(box_from_factorizable(*params), game);
    for (double x : x_grid) {
      const double diff = mixed_row(t, 0.0, x) - mixed_row(t, x, x);
      if (diff > tol) ++rep.positive_second_difference_count;
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
    }
  }
  if (rep.embedded_count > 0) {
    rep.min_second_difference = lo;
    rep.max_second_difference = hi;
  }
  return rep;
}

ConstrainedSweepReport sweep_constrained(const GameMatrix& game, const SweepGrid& grid,
                                         double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  ConstrainedSweepReport rep;
  rep.delta_min = std::numeric_limits<double>::quiet_NaN();
  rep.delta_max = std::numeric_limits<double>::quiet_NaN();
  const OmegaTriple w = omegas(game);
  rep.kappa = w.kappa.value_or(std::numeric_limits<double>::quiet_NaN());
  if (!w.kappa.has_value() || !(*w.kappa >= 0.0 && *w.kappa <= 1.0)) return rep;
  const double kappa = *w.kappa;
  std::mt19937_64 rng(grid.seed);
  std::vector<std::array<double, 4>> tuples;
  for (double p4 : lattice(grid.axis(0))) {
    for (double p5 : lattice(grid.axis(1))) {
      for (double p8 : lattice(grid.axis(2))) {
        for (double p9 : lattice(grid.axis(3))) tuples.push_back({p4, p5, p8, p9});
      }
    }
  }
  for (int i = 0; i < grid.sample_count; ++i) {
    std::array<double, 4> t{};
    for (std::size_t k = 0; k < 4; ++k) {
      const AxisRange a = grid.axis(k);
      t[k] = uniform_in(rng, a.lo, a.hi);
    }
    tuples.push_back(t);
  }
  rep.lattice_points = static_cast<long>(tuples.size());
  rep.rows.reserve(tuples.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [p4, p5, p8, p9] : tuples) {
    ConstrainedSweepRow row;
    row.p4 = p4;
    row.p5 = p5;
    row.p8 = p8;
    row.p9 = p9;
    row.margin = p8 + p9 - p4 - p5;
    row.delta = std::numeric_limits<double>::quiet_NaN();
    const ConstrainedBoxResult built = build_constrained_box({p4, p5, p8, p9, kappa}, tol);
    if (built.feasible()) {
      row.feasible = true;
      ++rep.feasible_count;
      const ProbabilityBox& box = *built.box;
      row.symmetric = exchange_symmetry_residuals(box, tol).symmetric;
      if (row.symmetric) ++rep.symmetric_count;
      const ChshReport chsh = chsh_report(box);
      row.delta = chsh.delta;
      row.local_range = chsh.is_local_range;
      lo = std::min(lo, chsh.delta);
      hi = std::max(hi, chsh.delta);
      if (row.symmetric) {
        const PurePayoffTable table = pure_payoffs(box, game, tol);
        const EssVerdict verdict = ess_classify(0.0, table, tol);
        if (verdict.status == EssStatus::EssByCondition1 ||
            verdict.status == EssStatus::EssByCondition2) {
          ++rep.ess_count;
          if (row.local_range) ++rep.ess_without_violation_count;
        }
      }
    }
    rep.rows.push_back(row);
  }
  if (rep.feasible_count > 0) {
    rep.delta_min = lo;
    rep.delta_max = hi;
  }
  rep.contains_ess_without_violation = rep.ess_without_violation_count > 0;
  return rep;
}

std::string sweep_csv(const ConstrainedSweepReport& report) {
  std::string out = "p4,p5,p8,p9,feasible,symmetric,margin,delta,local_range\n";
  char buf[256];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%d,%.17g,%.17g,%d\n",
                  row.p4, row.p5, row.p8, row.p9, row.feasible ? 1 : 0,
                  row.symmetric ? 1 : 0, row.margin, row.delta, row.local_range ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace eprgame
