#include "eprgame/report.hpp"

#include <cmath>
#include <fstream>

namespace eprgame {

namespace {

Json parse_json_file(const std::string& path, const char* kind) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::string(kind) + " file: cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(std::string(kind) + " file " + path + ": " + e.what());
  }
}

std::vector<double> number_array_field(const Json& doc, const std::string& path,
                                       const char* kind, const char* field,
                                       std::size_t want) {
  const std::string where = std::string(kind) + " file " + path;
  if (!doc.is_object() || !doc.contains(field)) {
    throw ParseError(where + ": missing field \"" + field + "\"");
  }
  const Json& arr = doc.at(field);
  if (!arr.is_array() || arr.size() != want) {
    throw ParseError(where + ": field \"" + field + "\" must be an array of " +
                     std::to_string(want) + " numbers (got " +
                     (arr.is_array() ? std::to_string(arr.size()) + " entries"
                                     : std::string("a non-array")) +
                     ")");
  }
  std::vector<double> out;
  out.reserve(want);
  for (const Json& v : arr) {
    if (!v.is_number()) {
      throw ParseError(where + ": field \"" + field + "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
    if (!std::isfinite(out.back())) {
      throw ParseError(where + ": field \"" + field + "\" must contain only finite numbers");
    }
  }
  return out;
}

}  // namespace

GameMatrix load_game_file(const std::string& path) {
  const Json doc = parse_json_file(path, "game");
  const auto a = number_array_field(doc, path, "game", "a", 4);
  return {a[0], a[1], a[2], a[3]};
}

ProbabilityBox load_box_file(const std::string& path) {
  const Json doc = parse_json_file(path, "box");
  const auto p = number_array_field(doc, path, "box", "p", 16);
  ProbabilityBox box;
  for (int i = 0; i < 16; ++i) box.p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
  return box;
}

void write_box_file(const std::string& path, const ProbabilityBox& box) {
  Json doc;
  doc["p"] = box.p;
  std::ofstream out(path);
  if (!out) throw ParseError("box file: cannot write " + path);
  out << doc.dump(2) << "\n";
}

Json omega_json(const OmegaTriple& w) {
  Json j;
  j["eq17_omega1"] = w.omega1;
  j["eq17_omega2"] = w.omega2;
  j["eq17_omega3"] = w.omega3;
  j["eq17_identity_residual"] = w.omega1 - w.omega2 + w.omega3;
  if (w.kappa.has_value()) {
    j["eq19_kappa"] = *w.kappa;
  } else {
    j["eq19_kappa"] = nullptr;
  }
  return j;
}

Json ordering_json(const OrderingClass& c) {
  Json j;
  j["is_strict_pd"] = c.is_strict_pd;
  j["eq23_generalized_pd_inequality"] = c.satisfies_generalized_pd_inequality;
  j["kappa_in_unit_interval"] = c.kappa_in_unit_interval;
  j["label"] = to_string(c.label);
  return j;
}

Json validation_json(const BoxValidation& v) {
  Json j;
  j["valid"] = v.valid;
  j["range_ok"] = v.range_ok;
  j["normalized"] = v.normalized;
  j["no_signaling"] = v.no_signaling;
  j["max_range_violation"] = v.max_range_violation;
  j["range_violations"] = v.range_violations;
  j["eq10_normalization_residuals"] = v.normalization_residuals;
  j["eq20_no_signaling_residuals"] = v.no_signaling_residuals;
  return j;
}

Json exchange_json(const ExchangeSymmetryReport& rep) {
  Json j;
  j["symmetric"] = rep.symmetric;
  j["residuals"] = rep.residuals;
  j["max_residual"] = rep.max_residual;
  return j;
}

Json payoffs_json(const PurePayoffTable& table, double tol) {
  Json j;
  Json row, col;
  row["ss"] = table.row_ss;
  row["ssp"] = table.row_ssp;
  row["sps"] = table.row_sps;
  row["spsp"] = table.row_spsp;
  col["ss"] = table.col_ss;
  col["ssp"] = table.col_ssp;
  col["sps"] = table.col_sps;
  col["spsp"] = table.col_spsp;
  j["eq9_row"] = row;
  j["eq9_col"] = col;
  const TableSymmetryReport sym = symmetry_residuals(table, tol);
  j["eq12_residuals"] = sym.residuals;
  j["eq12_symmetric"] = sym.symmetric;
  return j;
}

Json constraints_json(const ConstraintResiduals& r) {
  Json j;
  j["eq26_balance_first"] = r.balance_first;
  j["eq26_balance_second"] = r.balance_second;
  j["eq27_s_prime"] = r.s_prime;
  j["eq27_cross_balance"] = r.cross_balance;
  j["eq29_p5_p15"] = r.p5_p15;
  j["eq29_p8_p14"] = r.p8_p14;
  j["max_abs_residual"] = r.max_abs();
  return j;
}

Json chsh_json(const ChshReport& rep, const ProbabilityBox& box, double tol) {
  Json j;
  j["eq32_delta"] = rep.delta;
  j["eq32_variants"] = rep.variant_deltas;
  j["is_local_range"] = rep.is_local_range;
  j["within_cirelson"] = rep.within_cirelson;
  const double derived = 4.0 * (box.at(4) + box.at(9)) - 2.0;
  const double printed = 2.0 * (2.0 * box.at(4) + box.at(9) - 1.0);
  j["eq33_derived_delta"] = derived;
  j["eq33_derived_matches_eq32"] = std::abs(derived - rep.delta) <= tol;
  j["eq33_printed_delta"] = printed;
  j["eq33_printed_matches_eq32"] = std::abs(printed - rep.delta) <= tol;
  return j;
}

Json oracle_json(const OracleReport& rep) {
  Json j;
  j["tolerance"] = rep.tol;
  j["checks_run"] = rep.checks_run;
  j["skipped_infeasible"] = rep.skipped_infeasible;
  j["all_within_tol"] = rep.all_within_tol();
  Json ids = Json::array();
  for (const auto& st : rep.identities) {
    Json entry;
    entry["identity"] = st.identity;
    entry["checks"] = st.checks;
    entry["max_abs_discrepancy"] = st.max_abs_discrepancy;
    ids.push_back(entry);
  }
  j["identities"] = ids;
  j["counterexample_count"] = rep.counterexample_count;
  Json ces = Json::array();
  for (const auto& ce : rep.counterexamples) {
    Json entry;
    entry["identity"] = ce.identity;
    Json inputs;
    for (const auto& [k, v] : ce.inputs) inputs[k] = v;
    entry["inputs"] = inputs;
    entry["lhs"] = ce.lhs;
    entry["rhs"] = ce.rhs;
    ces.push_back(entry);
  }
  j["counterexamples"] = ces;
  Json short_form;
  short_form["checks"] = rep.short_form_checks;
  short_form["mismatches"] = rep.short_form_mismatches;
  short_form["mismatch_rate"] =
      rep.short_form_checks > 0
          ? static_cast<double>(rep.short_form_mismatches) /
                static_cast<double>(rep.short_form_checks)
          : 0.0;
  j["eq33_printed_short_form"] = short_form;
  return j;
}

Json factorizable_sweep_json(const FactorizableSweepReport& rep) {
  Json j;
  j["lattice_points"] = rep.lattice_points;
  j["embedded_count"] = rep.embedded_count;
  j["infeasible_count"] = rep.infeasible_count;
  j["eq18_positive_second_difference_count"] = rep.positive_second_difference_count;
  j["eq18_max_second_difference"] = rep.max_second_difference;
  j["eq18_min_second_difference"] = rep.min_second_difference;
  return j;
}

Json constrained_sweep_json(const ConstrainedSweepReport& rep) {
  Json j;
  if (std::isfinite(rep.kappa)) {
    j["eq19_kappa"] = rep.kappa;
  } else {
    j["eq19_kappa"] = nullptr;
  }
  j["lattice_points"] = rep.lattice_points;
  j["feasible_count"] = rep.feasible_count;
  j["symmetric_count"] = rep.symmetric_count;
  j["ess_count"] = rep.ess_count;
  j["ess_without_violation_count"] = rep.ess_without_violation_count;
  j["contains_ess_without_violation"] = rep.contains_ess_without_violation;
  if (rep.feasible_count > 0) {
    j["eq32_delta_min"] = rep.delta_min;
    j["eq32_delta_max"] = rep.delta_max;
  } else {
    j["eq32_delta_min"] = nullptr;
    j["eq32_delta_max"] = nullptr;
  }
  return j;
}

Json analyze_json(const GameMatrix& game, const ProbabilityBox& box, double tol) {
  Json j;
  j["tolerance"] = tol;
  j["game"] = Json{{"a", game.row_cells()}};
  const OmegaTriple w = omegas(game);
  j["omega"] = omega_json(w);
  j["ordering"] = ordering_json(classify_ordering(game));
  const BoxValidation validation = validate_box(box, tol);
  j["validation"] = validation_json(validation);
  if (!validation.valid) return j;

  Json fact;
  const auto params = product_form_test(box, tol);
  fact["eq13_is_factorizable"] = params.has_value();
  if (params.has_value()) {
    fact["eq13_params"] = Json{{"r", params->r},
                               {"s", params->s},
                               {"r_prime", params->r_prime},
                               {"s_prime", params->s_prime}};
  } else {
    fact["eq13_params"] = nullptr;
  }
  j["factorizable"] = fact;

  const ExchangeSymmetryReport exchange = exchange_symmetry_residuals(box, tol);
  j["exchange_symmetry"] = exchange_json(exchange);

  if (w.kappa.has_value()) {
    j["constraints"] = constraints_json(quantum_constraint_residuals(box, game));
  } else {
    j["constraints"] = nullptr;
  }

  const PurePayoffTable table = pure_payoffs(box, game, tol);
  j["payoffs"] = payoffs_json(table, tol);

  const NashCheck nash = nash_check({0.0, 0.0}, table, tol);
  Json nash_j;
  nash_j["profile"] = Json::array({0.0, 0.0});
  nash_j["eq11_row_gap"] = nash.row_gap;
  nash_j["eq11_col_gap"] = nash.col_gap;
  nash_j["eq11_is_ne"] = nash.is_ne;
  j["nash"] = nash_j;

  Json quantum;
  quantum["eq28_margin"] = box.at(8) + box.at(9) - box.at(4) - box.at(5);
  quantum["eq31_coefficient"] =
      (box.at(8) + box.at(9) - box.at(4) - box.at(5)) * w.omega1;
  quantum["eq25_value"] = table.row_spsp - table.row_ssp;
  quantum["eq25_ne_preserved"] = std::abs(table.row_spsp - table.row_ssp) <= tol;
  const double gap30 = table.row_sps - table.row_ss;
  const double rhs30 =
      w.omega3 * (box.at(1) - box.at(9)) + w.omega2 * (box.at(12) - box.at(4));
  quantum["eq30_value"] = gap30;
  quantum["eq30_rhs"] = rhs30;
  quantum["eq30_residual"] = gap30 - rhs30;
  j["quantum"] = quantum;

  if (exchange.symmetric) {
    const EssVerdict verdict = ess_classify(0.0, table, tol);
    Json ess;
    ess["x_star"] = 0.0;
    ess["is_symmetric_nash"] = verdict.is_symmetric_nash;
    ess["eq16_delta1"] = verdict.delta1;
    ess["eq16_delta2"] = verdict.delta2;
    ess["eq16_margin"] = verdict.margin;
    ess["status"] = to_string(verdict.status);
    j["ess"] = ess;
  }

  j["chsh"] = chsh_json(chsh_report(box), box, tol);
  return j;
}

Json classify_json(const GameMatrix& game) {
  Json j;
  j["game"] = Json{{"a", game.row_cells()}};
  const OmegaTriple w = omegas(game);
  j["omega"] = omega_json(w);
  const OrderingClass ordering = classify_ordering(game);
  j["ordering"] = ordering_json(ordering);
  Json embedding;
  embedding["defined"] = w.kappa.has_value();
  if (w.kappa.has_value()) {
    embedding["eq19_kappa"] = *w.kappa;
  } else {
    embedding["eq19_kappa"] = nullptr;
  }
  embedding["feasible"] = w.kappa.has_value() && *w.kappa > 0.0 && *w.kappa < 1.0;
  j["embedding"] = embedding;
  if (ordering.is_strict_pd && !ordering.kappa_in_unit_interval) {
    j["feasibility_note"] =
        "The strict ordering a3 > a1 > a4 > a2 forces kappa = omega2/omega1 "
        "outside (0,1): omega3 = a3 - a1 > 0, so omega1 > 0 implies "
        "kappa = 1 + omega3/omega1 > 1, omega1 < 0 makes kappa <= 0, and "
        "omega1 = 0 leaves kappa undefined. The constrained construction "
        "needs 0 < kappa < 1, so no constrained box family exists for this "
        "game; which weaker ordering admits one is left open here.";
  }
  return j;
}

Json build_json(const ConstrainedFreeParams& params, const ProbabilityBox& box,
                const GameMatrix* game, double tol) {
  Json j;
  j["eq19_kappa"] = params.kappa;
  j["free"] = Json{{"p4", params.p4}, {"p5", params.p5}, {"p8", params.p8},
                   {"p9", params.p9}};
  Json derived;
  derived["eq26_p1"] = box.at(1);
  derived["eq27_p12"] = box.at(12);
  derived["eq29_p14"] = box.at(14);
  derived["eq29_p15"] = box.at(15);
  j["derived"] = derived;
  const double margin = params.p8 + params.p9 - params.p4 - params.p5;
  j["eq28_margin"] = margin;
  if (game != nullptr) {
    const OmegaTriple w = omegas(*game);
    j["eq31_coefficient"] = margin * w.omega1;
    const PurePayoffTable table = pure_payoffs(box, *game, tol);
    j["eq25_value"] = table.row_spsp - table.row_ssp;
    j["eq25_ne_preserved"] = std::abs(table.row_spsp - table.row_ssp) <= tol;
  }
  j["exchange_symmetric"] = exchange_symmetry_residuals(box, tol).symmetric;
  j["chsh"] = chsh_json(chsh_report(box), box, tol);
  return j;
}

}  // namespace eprgame
