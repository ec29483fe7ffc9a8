#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qrc/syntax.hpp"

namespace qrc {

using World = int;
// Element ids are global across worlds: the inclusion of a world's domain
// into a successor's domain is the identity.
using Element = int;
using Tuple = std::vector<Element>;

struct WorldData {
  std::set<Element> domain;
  std::map<std::string, Element> constants;
  std::map<std::string, std::set<Tuple>> relations;

  bool operator==(const WorldData&) const = default;
};

class Model {
 public:
  Model() = default;
  explicit Model(std::vector<WorldData> worlds);

  int size() const { return static_cast<int>(worlds_.size()); }
  bool has_world(World w) const { return w >= 0 && w < size(); }
  const WorldData& world(World w) const { return worlds_.at(w); }
  WorldData& world(World w) { return worlds_.at(w); }
  const std::vector<WorldData>& worlds() const { return worlds_; }

  World add_world(WorldData data);
  void add_edge(World from, World to);
  bool related(World from, World to) const;
  // Sorted successors.
  const std::vector<World>& successors(World w) const { return succ_.at(w); }
  std::vector<std::pair<World, World>> edges() const;
  void transitive_closure();

  // Display names for elements (term models name them after constants).
  std::map<Element, std::string> element_labels;
  std::map<World, std::string> world_labels;

  bool operator==(const Model& o) const { return worlds_ == o.worlds_ && succ_ == o.succ_; }

 private:
  std::vector<WorldData> worlds_;
  std::vector<std::vector<World>> succ_;
};

// Finite representation of a w-assignment: explicit values on a support, a
// default element of domain(world) elsewhere.
struct Assignment {
  World world = 0;
  std::map<std::string, Element> values;
  Element fallback = 0;

  Element operator()(const std::string& x) const {
    auto it = values.find(x);
    return it == values.end() ? fallback : it->second;
  }
  Assignment with(const std::string& x, Element d) const {
    Assignment g = *this;
    g.values[x] = d;
    return g;
  }
};

// The assignment at w sending every variable to the least element of w.
Assignment default_assignment(const Model& m, World w);

struct AdequacyReport {
  bool well_formed = true;
  bool inclusive = true;
  bool transitive = true;
  bool concordant = true;
  std::vector<std::string> problems;  // one line per violation, with witness

  bool ok() const { return well_formed && inclusive && transitive && concordant; }
};

AdequacyReport check_adequate(const Model& m);

// M, w ⊩^g φ. Throws Error on unknown worlds, uninterpreted constants or
// assignment values outside domain(w).
bool forces(const Model& m, World w, const Assignment& g, const Formula& f);

struct Restriction {
  Model model;
  std::vector<World> origin;  // new world id -> world of the original model
  std::optional<World> image(World old) const;
};

// M↾r: r becomes world 0, the other worlds keep their relative order.
Restriction restrict_at(const Model& m, World r);
Model restrict(const Model& m, World r);
// M↾r[c/d], d ∈ domain(r).
Model reinterpret_constant(const Model& m, World r, const std::string& c, Element d);

struct Countermodel {
  Model model;
  World root = 0;
  Assignment assignment;
  Sequent sequent;
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
  std::string summary() const;
};

// Adequacy, well-formed assignment, lhs forced and rhs not forced at root.
ValidationReport validate_countermodel(const Countermodel& cm);

struct EnumerationBounds {
  int max_worlds = 1;
  // Bound on the number of distinct element ids in the model.
  int max_domain = 1;
  // Reserved constants '#e0'.. added to the enumerated signature.
  int extra_constants = 0;
};

// Visits every adequate model over sig within the bounds, in a fixed order,
// until the visitor returns false. Worlds are 0..n-1, the union of the
// domains is exactly {0..k-1}, R ranges over all transitive relations.
// Returns false when stopped early.
bool enumerate_models(const Signature& sig, const EnumerationBounds& bounds,
                      const std::function<bool(const Model&)>& visit);
std::size_t count_models(const Signature& sig, const EnumerationBounds& bounds);

// Relations and constants occurring in the sequent.
Signature signature_of(const Sequent& s);

// Searches enumerated models over the sequent's own symbols; every world is
// tried as root and every assignment of the free variables into its domain.
std::optional<Countermodel> refute(const Sequent& s, const EnumerationBounds& bounds);

std::string render_model(const Model& m);
std::string render_countermodel(const Countermodel& cm);

}  // namespace qrc
