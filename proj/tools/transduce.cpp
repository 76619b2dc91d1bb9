// Copyright 2026 The transduce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line surface. Exit codes: 0 holds/success, 1 property fails or
// construction refused (witness in the report), 2 usage or parse error,
// 3 bound or cap exhausted, 4 input not in domain (eval).

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "transduce/report.hpp"

using namespace transduce;
using nlohmann::json;

namespace {

std::chrono::steady_clock::time_point g_start;

long long elapsed_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - g_start)
      .count();
}

MetricKind parse_metric(const std::string& name) {
  if (name == "hamming") return MetricKind::hamming;
  if (name == "lcs") return MetricKind::lcs;
  if (name == "levenshtein") return MetricKind::levenshtein;
  if (name == "damerau") return MetricKind::damerau;
  throw CLI::ValidationError("--metric", "unknown metric " + name);
}

struct CommonOpts {
  std::string metric = "levenshtein";
  std::string htp_range = "defn";
  std::size_t cap = 200000;
  std::size_t cycle_bound = 500000;
  bool as_json = false;
  std::string out_path;
  std::string report_path;
};

void emit_report(json& rep, const CommonOpts& o, const std::string& human) {
  rep["timings"] = {{"total_ms", elapsed_ms()}};
  std::string text = canonical_json(rep);
  if (!o.report_path.empty()) {
    std::ofstream f(o.report_path);
    if (!f) throw ParseError("cannot write " + o.report_path);
    f << text;
  }
  if (o.as_json)
    std::cout << text;
  else if (!human.empty())
    std::cout << human << "\n";
}

json base_report(const std::string& command, const std::string& input) {
  json rep;
  rep["command"] = command;
  rep["provenance"] = {{"input", input}, {"tool", "transduce"}};
  return rep;
}

int run_check(const std::string& file, const std::string& prop,
              const CommonOpts& o) {
  Transducer t = load_machine(file);
  json rep = base_report("check", file);
  rep["property"] = prop;
  rep["bounds"] = {{"cap", o.cap}, {"cycle_bound", o.cycle_bound}};

  bool holds = true;
  std::string notes;
  json witness;

  if (prop == "tp" || prop == "atp" || prop == "stp" || prop == "htp") {
    PropertyVerdict v;
    if (prop == "tp") v = check_tp(t, std::nullopt, o.cap);
    if (prop == "atp") v = check_atp(t, o.cycle_bound);
    if (prop == "stp") v = check_stp(t, o.cap);
    if (prop == "htp") {
      HtpRange r =
          o.htp_range == "proof" ? HtpRange::proof : HtpRange::defn;
      rep["bounds"]["htp_range"] = o.htp_range;
      v = check_htp(t, r, o.cap);
    }
    holds = v.holds;
    notes = v.notes;
    if (v.witness)
      witness = pattern_witness_json(t, *v.witness, prop, o.htp_range);
  } else if (prop == "functional") {
    auto fv = find_functionality_violation(t);
    holds = !fv.has_value();
    if (fv) witness = runs_witness_json(t, *fv, "outputs-differ");
  } else if (prop == "unambiguous") {
    auto av = find_ambiguity(t);
    holds = !av.has_value();
    if (av) witness = runs_witness_json(t, *av);
  } else if (prop == "diff-finite") {
    MetricKind m = parse_metric(o.metric);
    rep["bounds"]["metric"] = o.metric;
    Transducer w = trim(t);
    DiffVerdict v = diff_finite(w, m, o.cycle_bound);
    holds = v.finite;
    notes = v.notes;
    if (v.pattern)
      witness = pattern_witness_json(w, *v.pattern, "diff", o.metric);
    else if (v.runs)
      witness = runs_witness_json(w, *v.runs, "lengths-differ");
  } else {
    throw CLI::ValidationError("property", "unknown property " + prop);
  }

  rep["verdict"] = {{"holds", holds}, {"notes", notes}};
  if (!witness.is_null()) rep["witness"] = witness;
  emit_report(rep, o,
              "check " + prop + ": " + (holds ? "holds" : "fails") +
                  (notes.empty() ? "" : " (" + notes + ")"));
  return holds ? 0 : 1;
}

int refuse(json& rep, const CommonOpts& o, const std::string& property,
           json witness, const std::string& notes) {
  rep["verdict"] = {{"holds", false},
                    {"refused", property},
                    {"notes", notes}};
  if (!witness.is_null()) rep["witness"] = std::move(witness);
  emit_report(rep, o, "refused: " + property + " fails");
  return 1;
}

int emit_machine(json& rep, const CommonOpts& o, const Transducer& result) {
  rep["verdict"] = {{"holds", true}, {"notes", ""}};
  rep["result"] = {{"states", result.states.size()},
                   {"transitions", result.transitions.size()},
                   {"sequential", is_sequential(result)},
                   {"machine", machine_to_json(result)}};
  if (!o.out_path.empty()) save_machine(result, o.out_path);
  std::string human;
  if (o.out_path.empty() && !o.as_json)
    std::cout << canonical_json(machine_to_json(result));
  else
    human = "wrote " + std::to_string(result.states.size()) +
            "-state machine" +
            (o.out_path.empty() ? "" : " to " + o.out_path);
  emit_report(rep, o, human);
  return 0;
}

int run_determinise(const std::string& file, const std::string& mode,
                    const CommonOpts& o) {
  Transducer t = load_machine(file);
  json rep = base_report("determinise", file);
  rep["mode"] = mode;
  rep["bounds"] = {{"cap", o.cap}, {"cycle_bound", o.cycle_bound}};
  HtpRange range = o.htp_range == "proof" ? HtpRange::proof : HtpRange::defn;
  json stages = json::array();
  stages.push_back("trim");
  Transducer w = trim(t);

  auto check_functional = [&](int* rc) {
    auto fv = find_functionality_violation(w);
    if (!fv) return false;
    *rc = refuse(rep, o, "functional",
                 runs_witness_json(w, *fv, "outputs-differ"),
                 "two runs with different outputs");
    return true;
  };
  auto check_prop = [&](const char* name, PropertyVerdict v, int* rc) {
    if (v.holds) return false;
    json wit;
    if (v.witness)
      wit = pattern_witness_json(w, *v.witness, name, o.htp_range);
    *rc = refuse(rep, o, name, wit, v.notes);
    return true;
  };
  auto disambiguate_stage = [&] {
    if (!is_unambiguous(w)) {
      w = disambiguate(w, o.cap);
      stages.push_back("disambiguate");
    }
  };

  int rc = 0;
  Transducer result;
  if (mode == "exact") {
    if (check_functional(&rc)) return rc;
    if (check_prop("tp", check_tp(w, std::nullopt, o.cap), &rc)) return rc;
    stages.push_back("delay-subset");
    result = exact_determinise(w, o.cap);
  } else if (mode == "lev") {
    if (check_functional(&rc)) return rc;
    disambiguate_stage();
    if (check_prop("atp", check_atp(w, o.cycle_bound), &rc)) return rc;
    if (check_prop("stp", check_stp(w, o.cap), &rc)) return rc;
    stages.push_back("scc-paths");
    stages.push_back("series-bullet");
    stages.push_back("union");
    result = approx_determinise_lev(w, o.cap);
  } else if (mode == "ham") {
    rep["bounds"]["htp_range"] = o.htp_range;
    if (check_functional(&rc)) return rc;
    disambiguate_stage();
    if (check_prop("htp", check_htp(w, range, o.cap), &rc)) return rc;
    if (check_prop("stp", check_stp(w, o.cap), &rc)) return rc;
    stages.push_back("scc-paths");
    stages.push_back("series-suffix");
    stages.push_back("union");
    result = approx_determinise_ham(w, range, o.cap);
  } else if (mode == "relation-lev") {
    if (check_prop("atp", check_atp(w, o.cycle_bound), &rc)) return rc;
    if (check_prop("stp", check_stp(w, o.cap), &rc)) return rc;
    DiffVerdict dv = diff_finite(w, MetricKind::levenshtein, o.cycle_bound);
    if (!dv.finite) {
      json wit;
      if (dv.pattern)
        wit = pattern_witness_json(w, *dv.pattern, "diff", "levenshtein");
      else if (dv.runs)
        wit = runs_witness_json(w, *dv.runs, "lengths-differ");
      return refuse(rep, o, "diff-finite", wit, dv.notes);
    }
    stages.push_back("functionalise");
    stages.push_back("lev-pipeline");
    result = approx_determinise_relation(w, MetricKind::levenshtein, o.cap);
  } else {
    throw CLI::ValidationError("mode", "unknown mode " + mode);
  }
  rep["provenance"]["stages"] = stages;
  return emit_machine(rep, o, result);
}

int run_functionalise(const std::string& file, const CommonOpts& o) {
  Transducer t = load_machine(file);
  json rep = base_report("functionalise", file);
  rep["bounds"] = {{"cap", o.cap},
                   {"cycle_bound", o.cycle_bound},
                   {"metric", o.metric}};
  MetricKind m = parse_metric(o.metric);
  Transducer w = trim(t);
  DiffVerdict v = diff_finite(w, m, o.cycle_bound);
  if (!v.finite) {
    json wit;
    if (v.pattern) wit = pattern_witness_json(w, *v.pattern, "diff", o.metric);
    else if (v.runs) wit = runs_witness_json(w, *v.runs, "lengths-differ");
    return refuse(rep, o, "diff-finite", wit, v.notes);
  }
  return emit_machine(rep, o, uniformise(w, o.cap));
}

int run_distance(const std::string& file_a, const std::string& file_b,
                 std::size_t max_len, const CommonOpts& o) {
  Transducer a = load_machine(file_a);
  Transducer b = load_machine(file_b);
  MetricKind m = parse_metric(o.metric);
  DistanceProfile p = empirical_distance(a, b, m, max_len);
  p.lhs = file_a;
  p.rhs = file_b;
  bool flat = plateau(p);

  json rep = base_report("distance", file_a + "," + file_b);
  rep["bounds"] = {{"max_len", max_len}, {"metric", o.metric}};
  json values = json::array();
  for (const DistanceValue& v : p.values)
    values.push_back(v.infinite ? json("inf") : json(v.value));
  rep["result"] = {{"values", values}, {"plateau", flat}};
  if (o.as_json || !o.report_path.empty()) {
    emit_report(rep, o, "");
    if (o.as_json) return 0;
  }
  std::cout << "length,distance,metric,lhs,rhs\n";
  for (size_t l = 0; l < p.values.size(); l++) {
    const DistanceValue& v = p.values[l];
    std::cout << l << ","
              << (v.infinite ? std::string("inf")
                             : std::to_string(v.value))
              << "," << metric_name(m) << "," << p.lhs << "," << p.rhs
              << "\n";
  }
  std::cout << "plateau: " << (flat ? "yes" : "no") << "\n";
  return 0;
}

int run_eval(const std::string& file, const std::string& input,
             const CommonOpts& o) {
  Transducer t = load_machine(file);
  Word u = word_from_json(json(input), t.input_alphabet);
  std::set<Word> outs = evaluate(t, u);
  json rep = base_report("eval", file);
  rep["input"] = input;
  json rendered = json::array();
  for (const Word& v : outs) rendered.push_back(word_to_json(v, t.output_alphabet));
  rep["result"] = {{"outputs", rendered},
                   {"in_domain", !outs.empty()}};
  if (o.as_json || !o.report_path.empty()) {
    emit_report(rep, o, "");
  }
  if (outs.empty()) {
    if (!o.as_json) std::cerr << "input not in domain\n";
    return 4;
  }
  if (!o.as_json)
    for (const json& r : rendered)
      std::cout << (r.is_string() ? r.get<std::string>() : r.dump()) << "\n";
  return 0;
}

int run_verify(const std::string& file, const CommonOpts& o) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSON in ") + file + ": " + e.what());
  }
  VerifyResult r = verify_witness(j);
  json rep = base_report("verify-witness", file);
  rep["verdict"] = {{"holds", r.ok}, {"notes", r.message}};
  emit_report(rep, o, (r.ok ? "verified: " : "rejected: ") + r.message);
  return r.ok ? 0 : 1;
}

int run_generate(std::uint64_t seed, int states, double density,
                 const CommonOpts& o) {
  GeneratorParams g;
  g.seed = seed;
  g.state_count = states;
  g.density = density;
  Transducer t = random_transducer(g);
  json rep = base_report("generate", "seed:" + std::to_string(seed));
  rep["bounds"] = {{"seed", seed}, {"states", states}, {"density", density}};
  return emit_machine(rep, o, t);
}

}  // namespace

int main(int argc, char** argv) {
  g_start = std::chrono::steady_clock::now();
  CLI::App app{"twinning properties and approximate determinisation of "
               "real-time word transducers"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string file, file_b, prop, mode, input;
  std::size_t max_len = 10;
  std::uint64_t seed = 1;
  int gen_states = 3;
  double gen_density = 0.3;

  auto add_common = [&](CLI::App* c, bool with_out) {
    c->add_flag("--json", o.as_json, "print the report as JSON");
    c->add_option("--report", o.report_path, "also write the report here");
    c->add_option("--cap", o.cap, "configuration cap for the searches");
    c->add_option("--cycle-bound", o.cycle_bound,
                  "budget for the loop-conjugacy layers");
    c->add_option("--metric", o.metric,
                  "hamming | lcs | levenshtein | damerau");
    c->add_option("--htp-range", o.htp_range,
                  "mismatch position range: defn | proof")
        ->check(CLI::IsMember({"defn", "proof"}));
    if (with_out)
      c->add_option("-o,--output", o.out_path, "write the machine here");
  };

  int rc = 0;

  CLI::App* check = app.add_subcommand("check", "decide a property");
  check->add_option("file", file, "machine file")->required();
  check
      ->add_option("property", prop,
                   "tp | atp | stp | htp | functional | unambiguous | "
                   "diff-finite")
      ->required();
  add_common(check, false);
  check->callback([&] { rc = run_check(file, prop, o); });

  CLI::App* det =
      app.add_subcommand("determinise", "construct a sequential machine");
  det->add_option("file", file, "machine file")->required();
  det->add_option("mode", mode, "exact | lev | ham | relation-lev")
      ->required();
  add_common(det, true);
  det->callback([&] { rc = run_determinise(file, mode, o); });

  CLI::App* fun = app.add_subcommand(
      "functionalise", "select a functional sub-relation");
  fun->add_option("file", file, "machine file")->required();
  add_common(fun, true);
  fun->callback([&] { rc = run_functionalise(file, o); });

  CLI::App* dist =
      app.add_subcommand("distance", "empirical distance profile (CSV)");
  dist->add_option("fileA", file, "machine file")->required();
  dist->add_option("fileB", file_b, "machine file")->required();
  dist->add_option("--max-len", max_len, "input length bound");
  add_common(dist, false);
  dist->callback([&] { rc = run_distance(file, file_b, max_len, o); });

  CLI::App* ev = app.add_subcommand("eval", "apply a machine to one input");
  ev->add_option("file", file, "machine file")->required();
  ev->add_option("input", input, "input word")->required();
  add_common(ev, false);
  ev->callback([&] { rc = run_eval(file, input, o); });

  CLI::App* ver = app.add_subcommand(
      "verify-witness", "replay a witness from a report file");
  ver->add_option("file", file, "report or witness JSON file")->required();
  add_common(ver, false);
  ver->callback([&] { rc = run_verify(file, o); });

  CLI::App* gen =
      app.add_subcommand("generate", "seeded random machine for testing");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--states", gen_states, "state count");
  gen->add_option("--density", gen_density, "transition density");
  add_common(gen, true);
  gen->callback([&] { rc = run_generate(seed, gen_states, gen_density, o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exhausted: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const OffsetExplosion& e) {
    std::cerr << "bound exhausted: " << e.what() << "\n";
    return 3;
  } catch (const PathExplosion& e) {
    std::cerr << "bound exhausted: " << e.what() << "\n";
    return 3;
  } catch (const SuffixOverflow& e) {
    std::cerr << "bound exhausted: " << e.what() << "\n";
    return 3;
  } catch (const GenerationExhausted& e) {
    std::cerr << "bound exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
