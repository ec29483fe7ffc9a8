#include "cli.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qrc/arith.hpp"
#include "qrc/decider.hpp"
#include "qrc/parse.hpp"
#include "qrc/serialize.hpp"

namespace qrc::cli {

namespace {

struct Options {
  std::string sig_file;
  std::size_t budget = ProverOptions{}.budget;
  int max_worlds = 2;
  int max_domain = 3;
  std::string format = "text";
  std::uint64_t seed = 1;
  int jobs = 1;
  std::vector<std::string> inputs;
  std::vector<std::string> exprs;
  std::string realization;
  std::vector<std::string> constants;
  int count = 50;

  bool json() const { return format == "json-lines"; }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Entry {
  std::string origin;  // "file:line" or "-e:k"
  std::string text;
  std::size_t sig_index;
};

struct Batch {
  std::vector<Signature> sigs;
  std::vector<bool> inferred;
  std::vector<Entry> entries;
};

Signature load_signature(const std::string& path) {
  CorpusFile cf = split_corpus(read_file(path));
  if (!cf.has_header) throw UsageError(path + ": no 'sig:' header found");
  return cf.sig;
}

// Items from the input files and -e expressions. Each file gets its own
// signature: --sig if given, else its header, else inferred from its items.
Batch load_batch(const Options& o) {
  Batch b;
  std::optional<Signature> forced;
  if (!o.sig_file.empty()) forced = load_signature(o.sig_file);
  auto new_sig = [&](std::optional<Signature> header) {
    Signature s = forced ? *forced : header ? *header : Signature{};
    for (const auto& c : o.constants)
      if (!s.has_constant(c)) s.add_constant(c);
    b.sigs.push_back(s);
    b.inferred.push_back(!forced && !header);
    return b.sigs.size() - 1;
  };
  for (const auto& path : o.inputs) {
    CorpusFile cf;
    try {
      cf = split_corpus(read_file(path));
    } catch (const ParseError& e) {
      throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    std::size_t si = new_sig(cf.has_header ? std::optional<Signature>(cf.sig) : std::nullopt);
    for (const auto& item : cf.items)
      b.entries.push_back({path + ":" + std::to_string(item.line), item.text, si});
  }
  if (!o.exprs.empty()) {
    std::size_t si = new_sig(std::nullopt);
    for (std::size_t i = 0; i < o.exprs.size(); ++i)
      b.entries.push_back({"-e:" + std::to_string(i + 1), o.exprs[i], si});
  }
  if (b.entries.empty()) throw UsageError("no input: give files or -e expressions");
  return b;
}

[[noreturn]] void parse_failure(const Entry& e, const ParseError& p) {
  throw UsageError(e.origin + ":" + std::to_string(p.column()) + ": " + p.message());
}

Sequent parse_entry_sequent(Batch& b, const Entry& e) {
  try {
    Signature& s = b.sigs[e.sig_index];
    return b.inferred[e.sig_index] ? parse_sequent_infer(e.text, s) : parse_sequent(e.text, s);
  } catch (const ParseError& p) {
    parse_failure(e, p);
  }
}

Formula parse_entry_formula(Batch& b, const Entry& e, std::string_view text) {
  try {
    Signature& s = b.sigs[e.sig_index];
    return b.inferred[e.sig_index] ? parse_formula_infer(text, s) : parse_formula(text, s);
  } catch (const ParseError& p) {
    parse_failure(e, p);
  }
}

struct Result {
  std::string text;
  int code = kOk;
};

// Runs fn over 0..n-1 on `jobs` threads; results keep the input order.
std::vector<Result> parallel(std::size_t n, int jobs, const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (const std::exception& e) {
        out[i] = {std::string("error: ") + e.what() + "\n", kValidation};
      }
    }
  };
  const int k = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < k; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

int emit(const std::vector<Result>& rs, std::ostream& out) {
  int code = kOk;
  for (const auto& r : rs) {
    out << r.text;
    if (r.code == kValidation || (r.code == kUndecided && code != kValidation)) code = r.code;
    else if (r.code == kUsage && code == kOk) code = r.code;
  }
  return code;
}

std::string indent(const std::string& text, int n) {
  std::string pad(n, ' '), out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out += pad + line + "\n";
  return out;
}

void render_derivation(const Derivation& d, int depth, std::string& out) {
  out += std::string(2 * depth, ' ') + rule_name(d.rule);
  if (d.inst.var || d.inst.term) {
    out += " [";
    if (d.inst.var) out += *d.inst.var;
    if (d.inst.var && d.inst.term) out += " := ";
    if (d.inst.term) out += to_string(*d.inst.term);
    out += "]";
  }
  out += "  " + to_string(d.conclusion) + "\n";
  for (const auto& p : d.premises) render_derivation(p, depth + 1, out);
}

DeciderOptions decider_options(const Options& o) {
  DeciderOptions d;
  d.budget = o.budget;
  d.max_worlds = o.max_worlds;
  d.max_domain = o.max_domain;
  return d;
}

std::vector<Sequent> parse_sequents(Batch& b) {
  std::vector<Sequent> out;
  for (const auto& e : b.entries) out.push_back(parse_entry_sequent(b, e));
  return out;
}

// ------------------------------------------------------------- commands

int cmd_decide(const Options& o, std::ostream& out) {
  Batch b = load_batch(o);
  auto seqs = parse_sequents(b);
  auto rs = parallel(seqs.size(), o.jobs, [&](std::size_t i) {
    const Signature& sig = b.sigs[b.entries[i].sig_index];
    Verdict v = decide(seqs[i], sig, decider_options(o));
    Result r;
    r.code = v.status == Status::Undecided ? kUndecided : kOk;
    if (v.status == Status::Undecided && v.note.rfind("internal", 0) == 0) r.code = kValidation;
    if (o.json()) {
      r.text = to_json(v, sig).dump() + "\n";
      return r;
    }
    r.text = to_string(seqs[i]) + ": " + status_name(v.status) + " (" + v.stats.method + ")\n";
    if (v.derivation) {
      std::string d;
      render_derivation(*v.derivation, 1, d);
      r.text += d;
    } else if (v.countermodel) {
      r.text += indent(render_countermodel(*v.countermodel), 2);
    } else if (!v.note.empty()) {
      r.text += "  " + v.note + "\n";
    }
    return r;
  });
  return emit(rs, out);
}

int cmd_prove(const Options& o, std::ostream& out) {
  Batch b = load_batch(o);
  auto seqs = parse_sequents(b);
  auto rs = parallel(seqs.size(), o.jobs, [&](std::size_t i) {
    const Signature& sig = b.sigs[b.entries[i].sig_index];
    ProverOptions po;
    po.budget = o.budget;
    Prover p(po);
    std::optional<Derivation> d;
    Status status = Status::Undecided;
    try {
      check_well_formed(seqs[i].lhs, sig);
      check_well_formed(seqs[i].rhs, sig);
      d = p.derive(seqs[i]);
      status = d ? Status::Derivable : Status::NotDerivable;
    } catch (const BudgetExhausted&) {
    }
    Result r;
    if (d && !check_derivation(*d, sig).ok()) r.code = kValidation;
    if (status == Status::Undecided) r.code = kUndecided;
    if (o.json()) {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["sequent"] = to_string(seqs[i]);
      j["signature"] = sig.to_header();
      j["status"] = status_name(status);
      j["certificate"] = d ? Json{{"derivation", to_json(*d)}} : Json(nullptr);
      j["stats"] = Json{{"expansions", p.stats().expansions}, {"cache_hits", p.stats().cache_hits}};
      r.text = j.dump() + "\n";
    } else {
      r.text = to_string(seqs[i]) + ": " + status_name(status) + "\n";
      if (d) render_derivation(*d, 1, r.text);
    }
    return r;
  });
  return emit(rs, out);
}

int cmd_refute(const Options& o, std::ostream& out) {
  Batch b = load_batch(o);
  auto seqs = parse_sequents(b);
  auto rs = parallel(seqs.size(), o.jobs, [&](std::size_t i) {
    const Signature& sig = b.sigs[b.entries[i].sig_index];
    check_well_formed(seqs[i].lhs, sig);
    check_well_formed(seqs[i].rhs, sig);
    auto cm = refute(seqs[i], {o.max_worlds, o.max_domain, 0});
    Result r;
    if (cm && !validate_countermodel(*cm).ok()) r.code = kValidation;
    if (o.json()) {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["sequent"] = to_string(seqs[i]);
      j["signature"] = sig.to_header();
      j["status"] = cm ? "underivable" : "unrefuted";
      j["certificate"] = cm ? Json{{"countermodel", to_json(*cm)}} : Json(nullptr);
      j["bounds"] = Json{{"max_worlds", o.max_worlds}, {"max_domain", o.max_domain}};
      r.text = j.dump() + "\n";
    } else {
      r.text = to_string(seqs[i]) + ": " +
               (cm ? "underivable" : "no countermodel within the bounds") + "\n";
      if (cm) r.text += indent(render_countermodel(*cm), 2);
    }
    return r;
  });
  return emit(rs, out);
}

std::vector<Json> read_documents(const std::string& path) {
  std::string text = read_file(path);
  try {
    return {Json::parse(text)};
  } catch (const nlohmann::json::parse_error&) {
  }
  std::vector<Json> docs;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(Json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return docs;
}

struct Certificate {
  std::string origin;
  Json body;
  std::optional<Signature> sig;
};

std::vector<Certificate> collect(const Options& o, const char* kind) {
  std::optional<Signature> forced;
  if (!o.sig_file.empty()) forced = load_signature(o.sig_file);
  std::vector<Certificate> out;
  if (o.inputs.empty()) throw UsageError("no input files");
  for (const auto& path : o.inputs) {
    auto docs = read_documents(path);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const Json& d = docs[i];
      std::string origin = path + "#" + std::to_string(i + 1);
      std::optional<Signature> sig = forced;
      if (!sig && d.is_object() && d.contains("signature"))
        sig = parse_signature_header(d.at("signature").get<std::string>());
      const Json* body = nullptr;
      if (d.is_object() && d.contains("certificate")) {
        const Json& c = d.at("certificate");
        if (c.is_object() && c.contains(kind)) body = &c.at(kind);
      } else if (d.is_object() &&
                 (std::string(kind) == "derivation" ? d.contains("rule") : d.contains("worlds"))) {
        body = &d;
      }
      if (body) out.push_back({origin, *body, sig});
    }
  }
  return out;
}

int cmd_check_derivation(const Options& o, std::ostream& out) {
  auto certs = collect(o, "derivation");
  std::vector<Result> rs;
  for (const auto& c : certs) {
    Result r;
    try {
      Signature sig = c.sig.value_or(Signature{});
      Derivation d = derivation_from_json(c.body, sig, !c.sig);
      CheckResult cr = check_derivation(d, sig);
      if (cr.ok()) {
        r.text = c.origin + ": ok  " + to_string(*cr.conclusion) + "\n";
      } else {
        r.code = kValidation;
        r.text = c.origin + ": invalid\n" + indent(cr.summary(), 2);
      }
    } catch (const Error& e) {
      r.code = kValidation;
      r.text = c.origin + ": invalid: " + e.what() + "\n";
    }
    rs.push_back(r);
  }
  if (certs.empty()) out << "no derivations found\n";
  return emit(rs, out);
}

int cmd_check_model(const Options& o, std::ostream& out) {
  auto certs = collect(o, "countermodel");
  std::vector<Result> rs;
  for (const auto& c : certs) {
    Result r;
    try {
      Signature sig = c.sig.value_or(Signature{});
      Countermodel cm = countermodel_from_json(c.body, sig, !c.sig);
      auto rep = validate_countermodel(cm);
      if (rep.ok()) {
        r.text = c.origin + ": ok  " + to_string(cm.sequent) + "\n";
      } else {
        r.code = kValidation;
        r.text = c.origin + ": invalid\n" + indent(rep.summary(), 2);
      }
    } catch (const Error& e) {
      r.code = kValidation;
      r.text = c.origin + ": invalid: " + e.what() + "\n";
    }
    rs.push_back(r);
  }
  if (certs.empty()) out << "no countermodels found\n";
  return emit(rs, out);
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string::npos ? std::string::npos : p - start));
    if (p == std::string::npos) break;
    start = p + sep.size();
  }
  return out;
}

int cmd_termmodel(const Options& o, std::ostream& out) {
  Batch b = load_batch(o);
  std::vector<PairPM> pairs;
  for (const auto& e : b.entries) {
    auto sides = split(e.text, "=>");
    if (sides.size() != 2) throw UsageError(e.origin + ": expected 'F1 ; F2 => G1 ; G2'");
    PairPM p;
    for (int side = 0; side < 2; ++side)
      for (const auto& part : split(sides[side], ";")) {
        if (part.find_first_not_of(" \t") == std::string::npos) continue;
        Formula f = parse_entry_formula(b, e, part);
        if (!f.free_vars().empty())
          throw UsageError(e.origin + ": pair formulas must be closed: " + to_string(f));
        (side == 0 ? p.pos : p.neg).insert(f);
      }
    pairs.push_back(std::move(p));
  }
  auto rs = parallel(pairs.size(), o.jobs, [&](std::size_t i) {
    const Signature& sig = b.sigs[b.entries[i].sig_index];
    std::set<std::string> C(sig.constants().begin(), sig.constants().end());
    for (const auto* side : {&pairs[i].pos, &pairs[i].neg})
      for (const auto& f : *side) C.insert(f.constants().begin(), f.constants().end());
    ProverOptions po;
    po.budget = o.budget;
    Entailment oracle(po);
    Result r;
    if (!oracle.consistent(pairs[i])) {
      r.code = kUsage;
      r.text = b.entries[i].origin + ": inconsistent pair " + pairs[i].to_string() + "\n";
      return r;
    }
    TermModel tm = build_term_model(pairs[i], C, oracle);
    auto report = truth_lemma_check(tm);
    auto adequacy = check_adequate(tm.model);
    if (!report.ok() || !adequacy.ok()) r.code = kValidation;
    if (o.json()) {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["pair"] = pairs[i].to_string();
      j["signature"] = sig.to_header();
      j["adequate"] = adequacy.ok();
      j["model"] = to_json(tm, report);
      r.text = j.dump() + "\n";
    } else {
      r.text = pairs[i].to_string() + ": " + std::to_string(tm.model.size()) + " worlds, " +
               (adequacy.ok() ? "adequate" : "NOT adequate") + ", truth lemma " +
               std::to_string(report.checked) + " checks, " +
               std::to_string(report.violations.size()) + " violations\n";
      r.text += indent(render_term_model(tm), 2);
      for (const auto& v : report.violations)
        r.text += "  violation at world " + std::to_string(v.world) + ": " + v.formula + " [" +
                  v.assignment + "]\n";
      for (const auto& p : adequacy.problems) r.text += "  " + p + "\n";
    }
    return r;
  });
  return emit(rs, out);
}

int cmd_translate(const Options& o, std::ostream& out, std::ostream& err) {
  Batch b = load_batch(o);
  std::optional<arith::Realization> given;
  if (!o.realization.empty()) {
    try {
      given = arith::Realization::parse(read_file(o.realization));
    } catch (const arith::ParseError& e) {
      throw UsageError(o.realization + ": " + e.what());
    }
    for (const auto& w : given->warnings()) err << o.realization << ": warning: " << w << "\n";
  }
  std::vector<Result> rs;
  for (const auto& e : b.entries) {
    bool is_sequent = e.text.find("|-") != std::string::npos;
    std::optional<Sequent> s;
    std::optional<Formula> f;
    if (is_sequent)
      s = parse_entry_sequent(b, e);
    else
      f = parse_entry_formula(b, e, e.text);
    const Signature& sig = b.sigs[e.sig_index];
    arith::Realization r = given ? *given : arith::Realization::opaque(sig);
    arith::Formula a;
    try {
      a = s ? arith::arith_sequent(*s, r) : arith::realize(*f, r);
    } catch (const Error& x) {
      throw UsageError(e.origin + ": " + x.what());
    }
    Result res;
    std::string input = s ? to_string(*s) : to_string(*f);
    if (o.json()) {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["input"] = input;
      j["statement"] = arith::render(a);
      j["tree"] = Json::parse(arith::render_json(a));
      res.text = j.dump() + "\n";
    } else {
      res.text = input + "\n  " + arith::render(a) + "\n";
    }
    rs.push_back(res);
  }
  return emit(rs, out);
}

int cmd_closure(const Options& o, std::ostream& out) {
  Batch b = load_batch(o);
  std::set<std::string> C(o.constants.begin(), o.constants.end());
  std::vector<Result> rs;
  for (const auto& e : b.entries) {
    Formula f = parse_entry_formula(b, e, e.text);
    FormulaSet cl;
    try {
      cl = closure(f, C);
    } catch (const Error& x) {
      throw UsageError(e.origin + ": " + x.what());
    }
    Result r;
    if (o.json()) {
      Json j;
      j["formula"] = to_string(f);
      j["constants"] = Json(std::vector<std::string>(C.begin(), C.end()));
      Json items = Json::array();
      for (const auto& g : cl) items.push_back(to_string(g));
      j["closure"] = items;
      j["size"] = cl.size();
      j["mdepth"] = mdepth(cl);
      j["udepth"] = udepth(cl);
      r.text = j.dump() + "\n";
    } else {
      r.text = to_string(f) + "\n";
      for (const auto& g : cl) r.text += "  " + to_string(g) + "\n";
      r.text += "  size " + std::to_string(cl.size()) + ", mdepth " + std::to_string(mdepth(cl)) +
                ", udepth " + std::to_string(udepth(cl)) + "\n";
    }
    rs.push_back(r);
  }
  return emit(rs, out);
}

// Random formulas for the self-test, independent of the test-suite
// generators.
class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}
  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  Formula formula(int md, int ud, int size) {
    static const char* vars[] = {"x", "y"};
    static const char* consts[] = {"c0", "c1"};
    auto term = [&]() {
      return below(2) ? Term::var(vars[below(2)]) : Term::constant(consts[below(2)]);
    };
    int pick = size <= 1 ? below(2) : below(5);
    if (pick == 2 && size < 3) pick = 1;
    if (pick == 3 && md == 0) pick = 1;
    if (pick == 4 && ud == 0) pick = 1;
    switch (pick) {
      case 0:
        return Formula::top();
      case 1:
        return below(2) ? Formula::pred("S", {term()}) : Formula::pred("R", {term(), term()});
      case 2: {
        int l = 1 + below(size - 2);
        return Formula::conj(formula(md, ud, l), formula(md, ud, size - 1 - l));
      }
      case 3:
        return Formula::diamond(formula(md - 1, ud, size - 1));
      default:
        return Formula::forall(vars[below(2)], formula(md, ud - 1, size - 1));
    }
  }

 private:
  std::mt19937_64 rng_;
};

int cmd_selftest(const Options& o, std::ostream& out) {
  Signature sig = parse_signature_header("sig: constants c0 c1; relations S/1 R/2;");
  Random rnd(o.seed);
  int yes = 0, no = 0, undecided = 0, failures = 0;
  for (int i = 0; i < o.count; ++i) {
    Sequent s{rnd.formula(2, 1, 1 + rnd.below(6)), rnd.formula(2, 1, 1 + rnd.below(6))};
    Verdict v = decide(s, sig, decider_options(o));
    Json doc = to_json(v, sig);
    Json back = Json::parse(doc.dump());
    bool ok = true;
    Signature copy = sig;
    if (v.derivation) {
      ++yes;
      Derivation d = derivation_from_json(back["certificate"]["derivation"], copy);
      auto cr = check_derivation(d, sig);
      ok = cr.ok() && *cr.conclusion == s;
    } else if (v.countermodel) {
      ++no;
      ok = validate_countermodel(countermodel_from_json(back["certificate"]["countermodel"], copy)).ok();
    } else {
      ++undecided;
    }
    if (!ok) {
      ++failures;
      out << "FAIL " << to_string(s) << "\n";
    }
  }
  out << "selftest seed " << o.seed << ": " << o.count << " sequents, " << yes << " derivable, "
      << no << " underivable, " << undecided << " undecided, " << failures << " failures\n";
  if (failures) return kValidation;
  return undecided ? kUndecided : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"qrc: decide, prove, refute and translate sequents of QRC1", "qrc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--sig", o.sig_file, "File whose 'sig:' header fixes the signature");
  app.add_option("--budget", o.budget, "Proof-search expansions per sequent")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-worlds", o.max_worlds, "World bound for model enumeration")
      ->check(CLI::Range(1, 7));
  app.add_option("--max-domain", o.max_domain, "Element bound for model enumeration")
      ->check(CLI::Range(1, 6));
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json-lines"}));
  app.add_option("--seed", o.seed, "Seed for randomized suites");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256));

  auto inputs = [&](CLI::App* sub, const char* what) {
    sub->add_option("inputs", o.inputs, what);
    sub->add_option("-e,--expr", o.exprs, "Inline input instead of a file");
  };
  auto* decide_cmd = app.add_subcommand("decide", "Decide sequents, with a certificate either way");
  inputs(decide_cmd, "Sequent files");
  auto* prove_cmd = app.add_subcommand("prove", "Proof search only");
  inputs(prove_cmd, "Sequent files");
  auto* refute_cmd = app.add_subcommand("refute", "Countermodel enumeration only");
  inputs(refute_cmd, "Sequent files");
  auto* check_d = app.add_subcommand("check-derivation", "Re-check derivation documents");
  check_d->add_option("inputs", o.inputs, "JSON or JSON-lines files")->required();
  auto* check_m = app.add_subcommand("check-model", "Re-validate countermodel documents");
  check_m->add_option("inputs", o.inputs, "JSON or JSON-lines files")->required();
  auto* tm_cmd = app.add_subcommand("termmodel", "Build M[p] for pairs 'F1 ; F2 => G1 ; G2'");
  inputs(tm_cmd, "Pair files");
  auto* tr_cmd = app.add_subcommand("translate", "Arithmetical reading of sequents or formulas");
  inputs(tr_cmd, "Sequent or formula files");
  tr_cmd->add_option("-r,--realization", o.realization, "Realization file (default: opaque)");
  auto* cl_cmd = app.add_subcommand("closure", "List Cl_C of formulas");
  inputs(cl_cmd, "Formula files");
  cl_cmd->add_option("-c,--constants", o.constants, "The constant set C")->delimiter(',');
  auto* st_cmd = app.add_subcommand("selftest", "Random decide/serialize/re-check round trips");
  st_cmd->add_option("--count", o.count, "Number of random sequents")->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*decide_cmd) return cmd_decide(o, out);
    if (*prove_cmd) return cmd_prove(o, out);
    if (*refute_cmd) return cmd_refute(o, out);
    if (*check_d) return cmd_check_derivation(o, out);
    if (*check_m) return cmd_check_model(o, out);
    if (*tm_cmd) return cmd_termmodel(o, out);
    if (*tr_cmd) return cmd_translate(o, out, err);
    if (*cl_cmd) return cmd_closure(o, out);
    if (*st_cmd) return cmd_selftest(o, out);
  } catch (const UsageError& e) {
    err << "qrc: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "qrc: " << e.what() << "\n";
    return kUsage;
  } catch (const SignatureError& e) {
    err << "qrc: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "qrc: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

}  // namespace qrc::cli
