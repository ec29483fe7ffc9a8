#include "qrc/serialize.hpp"

#include "qrc/parse.hpp"

namespace qrc {

Json to_json(const Derivation& d) {
  Json j;
  j["rule"] = rule_name(d.rule);
  j["conclusion"] = to_string(d.conclusion);
  if (d.inst.var || d.inst.term) {
    Json inst = Json::object();
    if (d.inst.var) inst["var"] = *d.inst.var;
    if (d.inst.term) inst["term"] = to_string(*d.inst.term);
    j["instantiation"] = inst;
  }
  Json ps = Json::array();
  for (const auto& p : d.premises) ps.push_back(to_json(p));
  j["premises"] = ps;
  return j;
}

namespace {

Json model_fields(const Model& m) {
  Json j;
  Json worlds = Json::array();
  for (World w = 0; w < m.size(); ++w) {
    const auto& wd = m.world(w);
    Json jw;
    jw["id"] = w;
    jw["domain"] = Json(std::vector<Element>(wd.domain.begin(), wd.domain.end()));
    Json cs = Json::object();
    for (const auto& [c, d] : wd.constants) cs[c] = d;
    jw["constants"] = cs;
    Json rs = Json::object();
    for (const auto& [r, ts] : wd.relations) {
      Json arr = Json::array();
      for (const auto& t : ts) arr.push_back(Json(t));
      rs[r] = arr;
    }
    jw["relations"] = rs;
    worlds.push_back(jw);
  }
  j["worlds"] = worlds;
  Json edges = Json::array();
  for (const auto& [a, b] : m.edges()) edges.push_back(Json::array({a, b}));
  j["edges"] = edges;
  if (!m.element_labels.empty() || !m.world_labels.empty()) {
    Json labels;
    Json el = Json::object();
    for (const auto& [e, s] : m.element_labels) el[std::to_string(e)] = s;
    labels["elements"] = el;
    Json wl = Json::object();
    for (const auto& [w, s] : m.world_labels) wl[std::to_string(w)] = s;
    labels["worlds"] = wl;
    j["labels"] = labels;
  }
  return j;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Sequent sequent_field(const Json& j, Signature& sig, bool infer) {
  const Json& s = field(j, j.contains("conclusion") ? "conclusion" : "sequent");
  if (!s.is_string()) throw FormatError("sequent must be a string");
  return infer ? parse_sequent_infer(s.get<std::string>(), sig)
               : parse_sequent(s.get<std::string>(), sig);
}

}  // namespace

Json to_json(const Model& m) { return model_fields(m); }

Json to_json(const Countermodel& cm) {
  Json j;
  j["sequent"] = to_string(cm.sequent);
  j["root"] = cm.root;
  Json a;
  a["default"] = cm.assignment.fallback;
  Json vals = Json::object();
  for (const auto& [x, d] : cm.assignment.values) vals[x] = d;
  a["values"] = vals;
  j["assignment"] = a;
  Json fields = model_fields(cm.model);
  for (auto& [k, v] : fields.items()) j[k] = v;
  return j;
}

Json to_json(const Verdict& v, const Signature& sig) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["sequent"] = to_string(v.sequent);
  j["signature"] = sig.to_header();
  j["status"] = status_name(v.status);
  if (v.derivation) {
    j["certificate"] = Json{{"derivation", to_json(*v.derivation)}};
  } else if (v.countermodel) {
    j["certificate"] = Json{{"countermodel", to_json(*v.countermodel)}};
  } else {
    j["certificate"] = nullptr;
  }
  Json st;
  st["method"] = v.stats.method;
  st["expansions"] = v.stats.expansions;
  st["cache_hits"] = v.stats.cache_hits;
  st["term_model_worlds"] = v.stats.term_model_worlds;
  st["enumeration_rounds"] = v.stats.enumeration_rounds;
  st["closure_diamonds"] = v.stats.closure_diamonds;
  st["world_ceiling"] = v.stats.world_ceiling;
  if (v.derivation) st["derivation_size"] = v.derivation->size();
  j["stats"] = st;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const TermModel& tm, const TruthLemmaReport& report) {
  Json j = to_json(tm.model);
  Json pairs = Json::array();
  for (World w = 0; w < tm.model.size(); ++w) {
    Json p;
    p["world"] = w;
    Json pos = Json::array(), neg = Json::array();
    for (const auto& f : tm.worlds[w].pair.pos) pos.push_back(to_string(f));
    for (const auto& f : tm.worlds[w].pair.neg) neg.push_back(to_string(f));
    p["positive"] = pos;
    p["negative"] = neg;
    p["constants"] = Json(std::vector<std::string>(tm.worlds[w].constants.begin(),
                                                   tm.worlds[w].constants.end()));
    pairs.push_back(p);
  }
  j["pairs"] = pairs;
  Json tree = Json::array();
  for (const auto& [a, b] : tm.tree) tree.push_back(Json::array({a, b}));
  j["tree"] = tree;
  Json tl;
  tl["checked"] = report.checked;
  Json viol = Json::array();
  for (const auto& v : report.violations)
    viol.push_back({{"world", v.world},
                    {"formula", v.formula},
                    {"assignment", v.assignment},
                    {"forced", v.forced},
                    {"member", v.member}});
  tl["violations"] = viol;
  j["truth_lemma"] = tl;
  return j;
}

Derivation derivation_from_json(const Json& j, Signature& sig, bool infer) {
  Derivation d;
  const Json& rule = field(j, "rule");
  if (!rule.is_string()) throw FormatError("rule must be a string");
  auto r = rule_from_name(rule.get<std::string>());
  if (!r) throw FormatError("unknown rule '" + rule.get<std::string>() + "'");
  d.rule = *r;
  d.conclusion = sequent_field(j, sig, infer);
  if (j.contains("instantiation")) {
    const Json& inst = j.at("instantiation");
    if (!inst.is_object()) throw FormatError("instantiation must be an object");
    if (inst.contains("var")) d.inst.var = inst.at("var").get<std::string>();
    if (inst.contains("term")) d.inst.term = parse_term(inst.at("term").get<std::string>(), sig);
  }
  if (j.contains("premises")) {
    const Json& ps = j.at("premises");
    if (!ps.is_array()) throw FormatError("premises must be an array");
    for (const auto& p : ps) d.premises.push_back(derivation_from_json(p, sig, infer));
  }
  return d;
}

Model model_from_json(const Json& j) {
  try {
    Model m;
    const Json& worlds = field(j, "worlds");
    for (std::size_t i = 0; i < worlds.size(); ++i) {
      const Json& jw = worlds.at(i);
      if (jw.contains("id") && jw.at("id").get<int>() != static_cast<int>(i))
        throw FormatError("world ids must be 0..n-1 in order");
      WorldData wd;
      for (const auto& e : field(jw, "domain")) wd.domain.insert(e.get<Element>());
      if (jw.contains("constants"))
        for (const auto& [c, d] : jw.at("constants").items()) wd.constants[c] = d.get<Element>();
      if (jw.contains("relations"))
        for (const auto& [r, ts] : jw.at("relations").items()) {
          auto& ext = wd.relations[r];
          for (const auto& t : ts) ext.insert(t.get<Tuple>());
        }
      m.add_world(std::move(wd));
    }
    for (const auto& e : field(j, "edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("edges must be pairs");
      m.add_edge(e.at(0).get<World>(), e.at(1).get<World>());
    }
    if (j.contains("labels")) {
      const Json& l = j.at("labels");
      if (l.contains("elements"))
        for (const auto& [k, v] : l.at("elements").items())
          m.element_labels[std::stoi(k)] = v.get<std::string>();
      if (l.contains("worlds"))
        for (const auto& [k, v] : l.at("worlds").items())
          m.world_labels[std::stoi(k)] = v.get<std::string>();
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed model: ") + e.what());
  } catch (const Error& e) {
    throw FormatError(std::string("malformed model: ") + e.what());
  }
}

Countermodel countermodel_from_json(const Json& j, Signature& sig, bool infer) {
  Countermodel cm;
  cm.model = model_from_json(j);
  cm.sequent = sequent_field(j, sig, infer);
  try {
    cm.root = field(j, "root").get<World>();
    const Json& a = field(j, "assignment");
    cm.assignment.world = cm.root;
    cm.assignment.fallback = field(a, "default").get<Element>();
    if (a.contains("values"))
      for (const auto& [x, d] : a.at("values").items()) cm.assignment.values[x] = d.get<Element>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed countermodel: ") + e.what());
  }
  return cm;
}

}  // namespace qrc
