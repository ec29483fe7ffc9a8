#pragma once

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "qrc/syntax.hpp"

namespace qrc {

// Every name (variable, bound variable, constant) occurring in the formulas.
std::set<std::string> names_in(const Formula& f);

// prefix + k for the smallest k whose result occurs in none of the formulas.
std::string fresh_variable(std::initializer_list<Formula> avoid, const std::string& prefix);
std::string fresh_variable(const std::vector<Formula>& avoid, const std::string& prefix);

// "#k" for the smallest k not occurring in the formulas.
std::string fresh_witness(std::initializer_list<Formula> avoid);

}  // namespace qrc
