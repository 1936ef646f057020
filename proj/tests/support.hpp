#pragma once

#include <unistd.h>

#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "eprgame/box.hpp"
#include "eprgame/game.hpp"
#include "eprgame/payoff.hpp"

namespace support {

// Reference game: a = (5, 1, 2, 3), so omega = (5, 2, -3) and kappa = 0.4.
inline eprgame::GameMatrix game_g() { return {5.0, 1.0, 2.0, 3.0}; }

inline eprgame::ProbabilityBox make_box(const std::array<double, 16>& p) {
  eprgame::ProbabilityBox box;
  box.p = p;
  return box;
}

// Exchange-symmetric constrained box built from the free tuple
// (p4, p5, p8, p9) = (0.2, 0.1, 0.3, 0.1) at kappa = 0.4.
inline eprgame::ProbabilityBox box_a() {
  return make_box({0.0, 0.4, 0.4, 0.2, 0.1, 0.3, 0.3, 0.3, 0.1, 0.3, 0.3, 0.3, 0.1,
                   0.3, 0.3, 0.3});
}

// Constrained but exchange-asymmetric box from the free tuple
// (0.1, 0.1, 0.2, 0.3) at kappa = 0.4.
inline eprgame::ProbabilityBox box_b() {
  return make_box({0.0, 0.5, 0.4, 0.1, 0.1, 0.4, 0.3, 0.2, 0.3, 0.2, 0.1, 0.4, 0.1,
                   0.4, 0.3, 0.2});
}

inline eprgame::ProbabilityBox uniform_box() {
  eprgame::ProbabilityBox box;
  box.p.fill(0.25);
  return box;
}

// Independent payoff route: enumerate outcome pairs through the index map
// instead of slicing probability groups. For the column player the
// coefficient of outcome (pi1, pi2) is the transposed cell (pi2, pi1).
inline double payoff_by_enumeration(const eprgame::ProbabilityBox& box,
                                    const eprgame::GameMatrix& game, bool row_player,
                                    int a, int b) {
  const auto cell = [&game](int pi1, int pi2) {
    if (pi1 == 1) return pi2 == 1 ? game.a1 : game.a2;
    return pi2 == 1 ? game.a3 : game.a4;
  };
  double sum = 0.0;
  for (int pi1 : {1, -1}) {
    for (int pi2 : {1, -1}) {
      const double coeff = row_player ? cell(pi1, pi2) : cell(pi2, pi1);
      sum += coeff * box.at(eprgame::outcome_index(pi1, pi2, a, b));
    }
  }
  return sum;
}

inline eprgame::PurePayoffTable table_by_enumeration(const eprgame::ProbabilityBox& box,
                                                     const eprgame::GameMatrix& game) {
  eprgame::PurePayoffTable t;
  t.row_ss = payoff_by_enumeration(box, game, true, 1, 1);
  t.row_ssp = payoff_by_enumeration(box, game, true, 1, 2);
  t.row_sps = payoff_by_enumeration(box, game, true, 2, 1);
  t.row_spsp = payoff_by_enumeration(box, game, true, 2, 2);
  t.col_ss = payoff_by_enumeration(box, game, false, 1, 1);
  t.col_ssp = payoff_by_enumeration(box, game, false, 1, 2);
  t.col_sps = payoff_by_enumeration(box, game, false, 2, 1);
  t.col_spsp = payoff_by_enumeration(box, game, false, 2, 2);
  return t;
}

// Independent CHSH route: per-group correlators E = 2(q1 + q4) - 1 combined
// as E11 + E12 + E21 - E22.
inline double chsh_by_correlators(const eprgame::ProbabilityBox& box) {
  const auto corr = [&box](int g) {
    const int base = 4 * g + 1;
    return 2.0 * (box.at(base) + box.at(base + 3)) - 1.0;
  };
  return corr(0) + corr(1) + corr(2) - corr(3);
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + uniform01(rng) * (hi - lo);
}

// Scratch directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& stem) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (stem + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    const std::string p = file(name);
    std::ofstream out(p);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace support
