#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qrc/semantics.hpp"
#include "qrc/syntax.hpp"

namespace qrc::testgen {

struct GenConfig {
  std::vector<std::string> constants{"c0", "c1"};
  std::vector<std::pair<std::string, int>> relations{{"S", 1}, {"R", 2}};
  std::vector<std::string> variables{"x", "y", "z"};
  int max_mdepth = 2;
  int max_udepth = 1;
  int max_size = 7;
  // Probability weight (in percent) that a term is a variable.
  int variable_percent = 40;
};

// Deterministic generator; all choices go through below(n) so the streams
// are identical across standard libraries.
class Gen {
 public:
  explicit Gen(std::uint64_t seed, GenConfig cfg = {}) : rng_(seed), cfg_(std::move(cfg)) {}

  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return below(100) < percent; }

  Term term();
  Term constant();
  Formula atom();
  // Respects the depth limits in the config and the size budget.
  Formula formula();
  Formula formula(int mdepth, int udepth, int size);
  // A closed formula (no free variables).
  Formula closed_formula();

  // Random adequate model over the config's signature.
  Model model(int max_worlds = 3, int max_elements = 3);
  // Random assignment at w over the config's variables.
  Assignment assignment(const Model& m, World w);

  const GenConfig& config() const { return cfg_; }
  Signature signature() const;

 private:
  Formula gen(int mdepth, int udepth, int size, std::vector<std::string>& bound, bool closed);
  Term gen_term(const std::vector<std::string>& bound, bool closed);

  std::mt19937_64 rng_;
  GenConfig cfg_;
};

}  // namespace qrc::testgen
