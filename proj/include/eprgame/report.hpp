#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "eprgame/box.hpp"
#include "eprgame/embedding.hpp"
#include "eprgame/game.hpp"
#include "eprgame/oracle.hpp"
#include "eprgame/payoff.hpp"

namespace eprgame {

using Json = nlohmann::ordered_json;

// Raised on unreadable or malformed input files; the message names the
// offending file and field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File formats: a game file is {"a": [a1, a2, a3, a4]}, a box file is
// {"p": [p1, ..., p16]}, both UTF-8 JSON.
GameMatrix load_game_file(const std::string& path);
ProbabilityBox load_box_file(const std::string& path);
void write_box_file(const std::string& path, const ProbabilityBox& box);

// JSON report fragments. Numbers that instantiate one of the source
// relations carry its tag in the key (eq9, eq32, ...); plumbing values use
// plain names.
Json omega_json(const OmegaTriple& w);
Json ordering_json(const OrderingClass& c);
Json validation_json(const BoxValidation& v);
Json exchange_json(const ExchangeSymmetryReport& rep);
Json payoffs_json(const PurePayoffTable& table, double tol);
Json constraints_json(const ConstraintResiduals& residuals);
Json chsh_json(const ChshReport& rep, const ProbabilityBox& box, double tol);
Json oracle_json(const OracleReport& rep);
Json factorizable_sweep_json(const FactorizableSweepReport& rep);
Json constrained_sweep_json(const ConstrainedSweepReport& rep);

// Full analysis of a game/box pair. Sections beyond "validation" appear only
// for a valid box; the "ess" section only when the box is exchange-symmetric.
Json analyze_json(const GameMatrix& game, const ProbabilityBox& box, double tol);

// Game-only classification, with a feasibility note when the strict-PD
// ordering blocks the constrained construction.
Json classify_json(const GameMatrix& game);

// Construction report for a feasible constrained box.
Json build_json(const ConstrainedFreeParams& params, const ProbabilityBox& box,
                const GameMatrix* game, double tol);

}  // namespace eprgame
