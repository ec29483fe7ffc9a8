#include "qrc/semantics.hpp"

#include <algorithm>
#include <sstream>

namespace qrc {

Model::Model(std::vector<WorldData> worlds)
    : worlds_(std::move(worlds)), succ_(worlds_.size()) {}

World Model::add_world(WorldData data) {
  worlds_.push_back(std::move(data));
  succ_.emplace_back();
  return size() - 1;
}

void Model::add_edge(World from, World to) {
  if (!has_world(from) || !has_world(to)) throw Error("edge between unknown worlds");
  auto& s = succ_[from];
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

bool Model::related(World from, World to) const {
  const auto& s = succ_.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<std::pair<World, World>> Model::edges() const {
  std::vector<std::pair<World, World>> out;
  for (World w = 0; w < size(); ++w)
    for (World v : succ_[w]) out.emplace_back(w, v);
  return out;
}

void Model::transitive_closure() {
  const int n = size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
  for (World w = 0; w < n; ++w)
    for (World v : succ_[w]) r[w][v] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (r[i][k])
        for (int j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  for (World w = 0; w < n; ++w) {
    succ_[w].clear();
    for (World v = 0; v < n; ++v)
      if (r[w][v]) succ_[w].push_back(v);
  }
}

Assignment default_assignment(const Model& m, World w) {
  const auto& dom = m.world(w).domain;
  if (dom.empty()) throw Error("world " + std::to_string(w) + " has an empty domain");
  return Assignment{w, {}, *dom.begin()};
}

namespace {

std::string tuple_string(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

struct Evaluator {
  const Model& m;
  const Assignment& g;
  std::vector<std::pair<const std::string*, Element>> bound;

  Element value(const Term& t, World w) {
    if (t.is_const()) {
      const auto& cs = m.world(w).constants;
      auto it = cs.find(t.name);
      if (it == cs.end())
        throw Error("constant '" + t.name + "' is not interpreted at world " + std::to_string(w));
      return it->second;
    }
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      if (*it->first == t.name) return it->second;
    return g(t.name);
  }

  bool eval(World w, const Formula& f) {
    switch (f.kind()) {
      case Kind::Top:
        return true;
      case Kind::Pred: {
        Tuple t;
        t.reserve(f.args().size());
        for (const auto& a : f.args()) t.push_back(value(a, w));
        const auto& rels = m.world(w).relations;
        auto it = rels.find(f.name());
        return it != rels.end() && it->second.count(t);
      }
      case Kind::And:
        return eval(w, f.left()) && eval(w, f.right());
      case Kind::Diamond:
        for (World v : m.successors(w))
          if (eval(v, f.body())) return true;
        return false;
      case Kind::Forall:
        for (Element d : m.world(w).domain) {
          bound.emplace_back(&f.name(), d);
          bool ok = eval(w, f.body());
          bound.pop_back();
          if (!ok) return false;
        }
        return true;
    }
    return false;
  }
};

}  // namespace

AdequacyReport check_adequate(const Model& m) {
  AdequacyReport r;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    r.problems.push_back(std::move(msg));
  };
  for (World w = 0; w < m.size(); ++w) {
    const auto& wd = m.world(w);
    if (wd.domain.empty()) fail(r.well_formed, "world " + std::to_string(w) + ": empty domain");
    for (const auto& [c, d] : wd.constants)
      if (!wd.domain.count(d))
        fail(r.well_formed, "world " + std::to_string(w) + ": constant " + c +
                                " outside the domain");
    for (const auto& [s, tuples] : wd.relations)
      for (const auto& t : tuples)
        for (Element d : t)
          if (!wd.domain.count(d)) {
            fail(r.well_formed, "world " + std::to_string(w) + ": tuple " + s + tuple_string(t) +
                                    " outside the domain");
            break;
          }
  }
  for (World w = 0; w < m.size(); ++w) {
    for (World u : m.successors(w)) {
      for (Element d : m.world(w).domain)
        if (!m.world(u).domain.count(d)) {
          fail(r.inclusive, "not inclusive: (" + std::to_string(w) + "," + std::to_string(u) +
                                "," + std::to_string(d) + ")");
          break;
        }
      for (World v : m.successors(u))
        if (!m.related(w, v))
          fail(r.transitive, "not transitive: (" + std::to_string(w) + "," + std::to_string(u) +
                                 "," + std::to_string(v) + ")");
      const auto& cu = m.world(u).constants;
      for (const auto& [c, d] : m.world(w).constants) {
        auto it = cu.find(c);
        if (it == cu.end() || it->second != d)
          fail(r.concordant, "not concordant: (" + std::to_string(w) + "," + std::to_string(u) +
                                 "," + c + ")");
      }
    }
  }
  return r;
}

bool forces(const Model& m, World w, const Assignment& g, const Formula& f) {
  if (!m.has_world(w)) throw Error("unknown world " + std::to_string(w));
  for (const auto& x : f.free_vars())
    if (!m.world(w).domain.count(g(x)))
      throw Error("assignment sends " + x + " outside the domain of world " + std::to_string(w));
  Evaluator e{m, g, {}};
  return e.eval(w, f);
}

std::optional<World> Restriction::image(World old) const {
  auto it = std::find(origin.begin(), origin.end(), old);
  if (it == origin.end()) return std::nullopt;
  return static_cast<World>(it - origin.begin());
}

Restriction restrict_at(const Model& m, World r) {
  if (!m.has_world(r)) throw Error("unknown world " + std::to_string(r));
  Restriction out;
  out.origin.push_back(r);
  for (World v : m.successors(r))
    if (v != r) out.origin.push_back(v);
  std::vector<World> index(m.size(), -1);
  for (std::size_t i = 0; i < out.origin.size(); ++i) index[out.origin[i]] = static_cast<World>(i);
  for (World old : out.origin) out.model.add_world(m.world(old));
  for (World old : out.origin)
    for (World v : m.successors(old))
      if (index[v] >= 0) out.model.add_edge(index[old], index[v]);
  out.model.element_labels = m.element_labels;
  for (std::size_t i = 0; i < out.origin.size(); ++i) {
    auto it = m.world_labels.find(out.origin[i]);
    if (it != m.world_labels.end()) out.model.world_labels[static_cast<World>(i)] = it->second;
  }
  return out;
}

Model restrict(const Model& m, World r) { return restrict_at(m, r).model; }

Model reinterpret_constant(const Model& m, World r, const std::string& c, Element d) {
  if (!m.has_world(r)) throw Error("unknown world " + std::to_string(r));
  if (!m.world(r).domain.count(d))
    throw Error("element " + std::to_string(d) + " is not in the domain of world " +
                std::to_string(r));
  Model out = restrict(m, r);
  for (World w = 0; w < out.size(); ++w) out.world(w).constants[c] = d;
  return out;
}

std::string ValidationReport::summary() const {
  std::string s;
  for (const auto& p : problems) s += p + "\n";
  return s;
}

ValidationReport validate_countermodel(const Countermodel& cm) {
  ValidationReport rep;
  const Model& m = cm.model;
  auto adequacy = check_adequate(m);
  rep.problems = adequacy.problems;
  if (!m.has_world(cm.root)) {
    rep.problems.push_back("root " + std::to_string(cm.root) + " is not a world");
    return rep;
  }
  const auto& dom = m.world(cm.root).domain;
  if (!dom.count(cm.assignment.fallback))
    rep.problems.push_back("assignment default is outside the root domain");
  for (const auto& [x, d] : cm.assignment.values)
    if (!dom.count(d)) rep.problems.push_back("assignment sends " + x + " outside the root domain");
  for (const auto& f : {cm.sequent.lhs, cm.sequent.rhs})
    for (const auto& c : f.constants())
      for (World w = 0; w < m.size(); ++w)
        if (!m.world(w).constants.count(c))
          rep.problems.push_back("constant " + c + " is not interpreted at world " +
                                 std::to_string(w));
  if (!rep.ok()) return rep;
  if (!forces(m, cm.root, cm.assignment, cm.sequent.lhs))
    rep.problems.push_back("root does not force the antecedent");
  if (forces(m, cm.root, cm.assignment, cm.sequent.rhs))
    rep.problems.push_back("root forces the consequent");
  return rep;
}

namespace {

bool transitive_mask(int n, std::uint64_t mask) {
  auto at = [&](int i, int j) { return (mask >> (i * n + j)) & 1; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j))
        for (int k = 0; k < n; ++k)
          if (at(j, k) && !at(i, k)) return false;
  return true;
}

std::vector<Tuple> all_tuples(const std::set<Element>& dom, int arity) {
  std::vector<Tuple> out{{}};
  for (int i = 0; i < arity; ++i) {
    std::vector<Tuple> next;
    for (const auto& t : out)
      for (Element d : dom) {
        Tuple u = t;
        u.push_back(d);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(const Signature& sig, const EnumerationBounds& b,
             const std::function<bool(const Model&)>& visit)
      : visit_(visit), bounds_(b) {
    constants_ = sig.constants();
    for (int i = 0; i < b.extra_constants; ++i) constants_.push_back("#e" + std::to_string(i));
    for (const auto& [r, n] : sig.relations()) relations_.emplace_back(r, n);
  }

  bool run() {
    for (n_ = 1; n_ <= bounds_.max_worlds; ++n_) {
      if (n_ > 7) throw Error("enumeration supports at most 7 worlds");
      std::vector<std::uint64_t> rels;
      const std::uint64_t limit = std::uint64_t{1} << (n_ * n_);
      for (std::uint64_t mask = 0; mask < limit; ++mask)
        if (transitive_mask(n_, mask)) rels.push_back(mask);
      for (k_ = 1; k_ <= bounds_.max_domain; ++k_) {
        for (auto mask : rels) {
          r_ = mask;
          worlds_.assign(n_, WorldData{});
          if (!domains(0)) return false;
        }
      }
    }
    return true;
  }

 private:
  bool rel(int i, int j) const { return (r_ >> (i * n_ + j)) & 1; }

  bool domains(int w) {
    if (w == n_) {
      std::set<Element> all;
      for (const auto& wd : worlds_) all.insert(wd.domain.begin(), wd.domain.end());
      if (static_cast<int>(all.size()) != k_) return true;
      return constants(0, 0);
    }
    for (unsigned mask = 1; mask < (1u << k_); ++mask) {
      std::set<Element> dom;
      for (int e = 0; e < k_; ++e)
        if (mask & (1u << e)) dom.insert(e);
      bool ok = true;
      for (int v = 0; v < w && ok; ++v) {
        if (rel(v, w) && !std::includes(dom.begin(), dom.end(), worlds_[v].domain.begin(),
                                        worlds_[v].domain.end()))
          ok = false;
        if (rel(w, v) && !std::includes(worlds_[v].domain.begin(), worlds_[v].domain.end(),
                                        dom.begin(), dom.end()))
          ok = false;
      }
      if (!ok) continue;
      worlds_[w].domain = std::move(dom);
      if (!domains(w + 1)) return false;
    }
    return true;
  }

  bool constants(std::size_t ci, int w) {
    if (ci == constants_.size()) return relations(0, 0);
    if (w == n_) return constants(ci + 1, 0);
    const std::string& c = constants_[ci];
    for (Element d : worlds_[w].domain) {
      bool ok = true;
      for (int v = 0; v < w && ok; ++v)
        if ((rel(v, w) || rel(w, v)) && worlds_[v].constants.at(c) != d) ok = false;
      if (!ok) continue;
      worlds_[w].constants[c] = d;
      if (!constants(ci, w + 1)) return false;
    }
    worlds_[w].constants.erase(c);
    return true;
  }

  bool relations(std::size_t ri, int w) {
    if (ri == relations_.size()) return emit();
    if (w == n_) return relations(ri + 1, 0);
    const auto& [name, arity] = relations_[ri];
    auto tuples = all_tuples(worlds_[w].domain, arity);
    if (tuples.size() > 20) throw Error("enumeration bound too large");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tuples.size()); ++mask) {
      std::set<Tuple> ext;
      for (std::size_t i = 0; i < tuples.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) ext.insert(tuples[i]);
      worlds_[w].relations[name] = std::move(ext);
      if (!relations(ri, w + 1)) return false;
    }
    return true;
  }

  bool emit() {
    Model m(worlds_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (rel(i, j)) m.add_edge(i, j);
    return visit_(m);
  }

  const std::function<bool(const Model&)>& visit_;
  EnumerationBounds bounds_;
  std::vector<std::string> constants_;
  std::vector<std::pair<std::string, int>> relations_;
  int n_ = 0;
  int k_ = 0;
  std::uint64_t r_ = 0;
  std::vector<WorldData> worlds_;
};

void collect_symbols(const Formula& f, Signature& sig) {
  switch (f.kind()) {
    case Kind::Top:
      return;
    case Kind::Pred:
      if (!sig.has_relation(f.name())) sig.add_relation(f.name(), f.args().size());
      for (const auto& t : f.args())
        if (t.is_const() && !sig.has_constant(t.name)) sig.add_constant(t.name);
      return;
    case Kind::And:
      collect_symbols(f.left(), sig);
      collect_symbols(f.right(), sig);
      return;
    case Kind::Diamond:
    case Kind::Forall:
      collect_symbols(f.body(), sig);
      return;
  }
}

}  // namespace

bool enumerate_models(const Signature& sig, const EnumerationBounds& bounds,
                      const std::function<bool(const Model&)>& visit) {
  if (bounds.max_worlds < 1 || bounds.max_domain < 1 || bounds.extra_constants < 0)
    throw Error("enumeration bounds must be positive");
  Enumerator e(sig, bounds, visit);
  return e.run();
}

std::size_t count_models(const Signature& sig, const EnumerationBounds& bounds) {
  std::size_t n = 0;
  enumerate_models(sig, bounds, [&](const Model&) {
    ++n;
    return true;
  });
  return n;
}

Signature signature_of(const Sequent& s) {
  Signature sig;
  collect_symbols(s.lhs, sig);
  collect_symbols(s.rhs, sig);
  return sig;
}

std::optional<Countermodel> refute(const Sequent& s, const EnumerationBounds& bounds) {
  std::set<std::string> fv = free_vars(s.lhs);
  for (const auto& x : s.rhs.free_vars()) fv.insert(x);
  std::vector<std::string> vars(fv.begin(), fv.end());
  std::optional<Countermodel> found;
  enumerate_models(signature_of(s), bounds, [&](const Model& m) {
    for (World w = 0; w < m.size(); ++w) {
      std::vector<Element> dom(m.world(w).domain.begin(), m.world(w).domain.end());
      Assignment g{w, {}, dom.front()};
      std::vector<std::size_t> idx(vars.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) g.values[vars[i]] = dom[idx[i]];
        if (forces(m, w, g, s.lhs) && !forces(m, w, g, s.rhs)) {
          found = Countermodel{m, w, g, s};
          return false;
        }
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == dom.size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
    return true;
  });
  return found;
}

std::string render_model(const Model& m) {
  std::ostringstream out;
  auto label = [&](Element e) {
    auto it = m.element_labels.find(e);
    return it == m.element_labels.end() ? std::to_string(e)
                                        : std::to_string(e) + "[" + it->second + "]";
  };
  for (World w = 0; w < m.size(); ++w) {
    const auto& wd = m.world(w);
    out << "world " << w;
    if (auto it = m.world_labels.find(w); it != m.world_labels.end()) out << " (" << it->second << ")";
    out << "\n  domain {";
    bool first = true;
    for (Element d : wd.domain) {
      out << (first ? "" : ", ") << label(d);
      first = false;
    }
    out << "}\n";
    for (const auto& [c, d] : wd.constants) out << "  " << c << " = " << d << "\n";
    for (const auto& [s, ts] : wd.relations) {
      out << "  " << s << " = {";
      first = true;
      for (const auto& t : ts) {
        out << (first ? "" : ", ") << tuple_string(t);
        first = false;
      }
      out << "}\n";
    }
    out << "  sees {";
    first = true;
    for (World v : m.successors(w)) {
      out << (first ? "" : ", ") << v;
      first = false;
    }
    out << "}\n";
  }
  return out.str();
}

std::string render_countermodel(const Countermodel& cm) {
  std::ostringstream out;
  out << "countermodel for " << to_string(cm.sequent) << "\n";
  out << "root " << cm.root << ", assignment";
  if (cm.assignment.values.empty()) out << " (any)";
  for (const auto& [x, d] : cm.assignment.values) out << " " << x << "=" << d;
  out << "\n" << render_model(cm.model);
  return out.str();
}

}  // namespace qrc
