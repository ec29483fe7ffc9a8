#pragma once

#include <string>

#include "json.hpp"
#include "qrc/calculus.hpp"
#include "qrc/decider.hpp"
#include "qrc/semantics.hpp"
#include "qrc/termmodel.hpp"

namespace qrc {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class FormatError : public Error {
 public:
  using Error::Error;
};

Json to_json(const Derivation& d);
Json to_json(const Model& m);
Json to_json(const Countermodel& cm);
Json to_json(const Verdict& v, const Signature& sig);
Json to_json(const TermModel& tm, const TruthLemmaReport& report);

// Formula strings are parsed against sig; with infer set, undeclared
// relations are added to it. Throws FormatError (or ParseError) on
// malformed documents.
Derivation derivation_from_json(const Json& j, Signature& sig, bool infer = false);
Model model_from_json(const Json& j);
Countermodel countermodel_from_json(const Json& j, Signature& sig, bool infer = false);

}  // namespace qrc
