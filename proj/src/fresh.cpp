#include "qrc/fresh.hpp"

namespace qrc {

namespace {

void collect(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Top:
      return;
    case Kind::Pred:
      for (const auto& t : f.args()) out.insert(t.name);
      return;
    case Kind::And:
      collect(f.left(), out);
      collect(f.right(), out);
      return;
    case Kind::Diamond:
      collect(f.body(), out);
      return;
    case Kind::Forall:
      out.insert(f.name());
      collect(f.body(), out);
      return;
  }
}

std::string first_free(const std::set<std::string>& used, const std::string& prefix) {
  for (std::size_t k = 0;; ++k) {
    std::string n = prefix + std::to_string(k);
    if (!used.count(n)) return n;
  }
}

}  // namespace

std::set<std::string> names_in(const Formula& f) {
  std::set<std::string> out;
  collect(f, out);
  return out;
}

std::string fresh_variable(const std::vector<Formula>& avoid, const std::string& prefix) {
  std::set<std::string> used;
  for (const auto& f : avoid) collect(f, used);
  return first_free(used, prefix);
}

std::string fresh_variable(std::initializer_list<Formula> avoid, const std::string& prefix) {
  return fresh_variable(std::vector<Formula>(avoid), prefix);
}

std::string fresh_witness(std::initializer_list<Formula> avoid) {
  std::set<std::string> used;
  for (const auto& f : avoid) collect(f, used);
  return first_free(used, "#");
}

}  // namespace qrc
