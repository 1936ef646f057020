#include "eprgame/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "eprgame/report.hpp"

namespace eprgame {

namespace {

void emit(const Json& doc, const std::string& out_path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  out << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot write output file: " + out_path);
    f << text;
  }
}

SweepGrid make_grid(double step, std::uint64_t seed, int samples) {
  SweepGrid grid;
  grid.axes = {AxisRange{0.0, 1.0, step}};
  grid.seed = seed;
  grid.sample_count = samples;
  return grid;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint-probability quantum game analyzer"};
  app.require_subcommand(1);

  std::string game_path, box_path, out_path;
  double tol = kDefaultTol;
  double step = 0.1;
  std::uint64_t seed = 1;
  int samples = 0;
  std::vector<double> free_vals;
  std::optional<double> kappa_flag;

  auto* validate = app.add_subcommand("validate", "Check a box file against the validity rules");
  validate->add_option("--box", box_path, "box file ({\"p\": [p1..p16]})")->required();
  validate->add_option("--tol", tol, "absolute tolerance")->check(CLI::PositiveNumber);
  validate->add_option("--out", out_path, "also write the JSON report to this path");

  auto* analyze = app.add_subcommand("analyze", "Full analysis of a game/box pair");
  analyze->add_option("--game", game_path, "game file ({\"a\": [a1..a4]})")->required();
  analyze->add_option("--box", box_path, "box file")->required();
  analyze->add_option("--tol", tol, "absolute tolerance")->check(CLI::PositiveNumber);
  analyze->add_option("--out", out_path, "also write the JSON report to this path");

  auto* build = app.add_subcommand("build", "Build a constrained box from free probabilities");
  auto* build_game_opt = build->add_option("--game", game_path, "game file fixing kappa");
  auto* build_kappa_opt =
      build->add_option("--kappa", kappa_flag, "use this kappa instead of a game file");
  build_game_opt->excludes(build_kappa_opt);
  build->add_option("--free", free_vals, "free probabilities p4 p5 p8 p9")
      ->expected(4)
      ->required();
  build->add_option("--tol", tol, "absolute tolerance")->check(CLI::PositiveNumber);
  build->add_option("--out", out_path, "box file to write")->required();

  auto* classify = app.add_subcommand("classify", "Classify a game's ordering and feasibility");
  classify->add_option("--game", game_path, "game file")->required();
  classify->add_option("--out", out_path, "also write the JSON report to this path");

  auto* sweep = app.add_subcommand("sweep", "Sweep the constrained family over a lattice");
  sweep->add_option("--game", game_path, "game file")->required();
  sweep->add_option("--step", step, "lattice step")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "seed for the random fill-in samples");
  sweep->add_option("--samples", samples, "random fill-in samples")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--tol", tol, "absolute tolerance")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "CSV file for the per-point rows");

  auto* oracle = app.add_subcommand("oracle", "Re-check every closed form by direct arithmetic");
  oracle->add_option("--game", game_path, "game file")->required();
  oracle->add_option("--step", step, "lattice step")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", seed, "seed for the random fill-in samples");
  oracle->add_option("--samples", samples, "random fill-in samples")
      ->check(CLI::NonNegativeNumber);
  oracle->add_option("--tol", tol, "absolute tolerance")->check(CLI::PositiveNumber);
  oracle->add_option("--out", out_path, "also write the JSON report to this path");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("eprgame");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) {
      const ProbabilityBox box = load_box_file(box_path);
      const BoxValidation v = validate_box(box, tol);
      Json doc;
      doc["tolerance"] = tol;
      doc.update(validation_json(v));
      emit(doc, out_path, out);
      return v.valid ? 0 : 1;
    }

    if (analyze->parsed()) {
      const GameMatrix game = load_game_file(game_path);
      const ProbabilityBox box = load_box_file(box_path);
      const Json doc = analyze_json(game, box, tol);
      emit(doc, out_path, out);
      return doc["validation"]["valid"].get<bool>() ? 0 : 1;
    }

    if (build->parsed()) {
      double kappa = 0.0;
      if (kappa_flag.has_value()) {
        kappa = *kappa_flag;
      } else if (!game_path.empty()) {
        const GameMatrix game = load_game_file(game_path);
        const OmegaTriple w = omegas(game);
        if (!w.kappa.has_value()) {
          err << "kappa undefined (omega1 = 0); the construction needs 0 < kappa < 1\n";
          return 2;
        }
        kappa = *w.kappa;
      } else {
        err << "build requires --game or --kappa\n";
        return 2;
      }
      if (!(kappa > 0.0 && kappa < 1.0)) {
        err << "kappa = " << kappa << " outside (0,1)\n";
        return 2;
      }
      const ConstrainedFreeParams params{free_vals[0], free_vals[1], free_vals[2],
                                         free_vals[3], kappa};
      const ConstrainedBoxResult built = build_constrained_box(params, tol);
      if (!built.feasible()) {
        err << "infeasible free tuple:";
        for (const auto& v : built.violations) {
          err << " " << v.name << " = " << v.value << " out of range;";
        }
        err << "\n";
        return 1;
      }
      write_box_file(out_path, *built.box);
      std::optional<GameMatrix> game;
      if (!game_path.empty()) game = load_game_file(game_path);
      Json doc = build_json(params, *built.box, game ? &*game : nullptr, tol);
      doc["out"] = out_path;
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (classify->parsed()) {
      const GameMatrix game = load_game_file(game_path);
      emit(classify_json(game), out_path, out);
      return 0;
    }

    if (sweep->parsed()) {
      const GameMatrix game = load_game_file(game_path);
      const SweepGrid grid = make_grid(step, seed, samples);
      const ConstrainedSweepReport rep = sweep_constrained(game, grid, tol);
      const FactorizableSweepReport fact = sweep_factorizable(game, grid, tol);
      Json doc;
      doc["tolerance"] = tol;
      doc["step"] = step;
      doc["seed"] = seed;
      doc["sample_count"] = samples;
      doc["constrained"] = constrained_sweep_json(rep);
      doc["factorizable"] = factorizable_sweep_json(fact);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw ParseError("cannot write output file: " + out_path);
        f << sweep_csv(rep);
        doc["csv"] = out_path;
      }
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (oracle->parsed()) {
      const GameMatrix game = load_game_file(game_path);
      const SweepGrid grid = make_grid(step, seed, samples);
      const OracleReport rep = verify_identities(game, grid, tol);
      Json doc = oracle_json(rep);
      doc["step"] = step;
      doc["seed"] = seed;
      doc["sample_count"] = samples;
      emit(doc, out_path, out);
      return rep.all_within_tol() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  err << "no subcommand given\n";
  return 2;
}

}  // namespace eprgame
