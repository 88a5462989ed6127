#pragma once

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "classify.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "limit_closure.hpp"
#include "kobayashi.hpp"
#include "morphism.hpp"
#include "nevanlinna.hpp"
#include "orbifold.hpp"
#include "pi1.hpp"
#include "quotient.hpp"
#include "rational_map.hpp"
#include "unfolding.hpp"

namespace orbicurve {
namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Input document: inline JSON (--inline) or a file path (positional). With
// neither, an empty object; the per-subcommand flags then supply the fields.
inline nlohmann::json input_document(const std::string& path, const std::string& inline_text) {
  if (!path.empty() && !inline_text.empty())
    throw InputError("give either an input file or --inline, not both");
  if (!inline_text.empty()) return parse_json(inline_text, "--inline");
  if (!path.empty()) return parse_json(read_file(path), path);
  return nlohmann::json::object();
}

// Flag value wins over the document field of the same name.
inline std::string pick_string(const nlohmann::json& doc, const char* key,
                               const std::string& flag_value, const char* what) {
  if (!flag_value.empty()) return flag_value;
  if (doc.contains(key)) {
    if (!doc[key].is_string()) throw InputError(std::string(what) + ": expected a string");
    return doc[key].get<std::string>();
  }
  throw InputError(std::string(what) + ": missing (set \"" + key + "\" or the matching flag)");
}

// Like pick_string, but an absent key yields the empty string.
inline std::string pick_optional_string(const nlohmann::json& doc, const char* key,
                                        const std::string& flag_value, const char* what) {
  if (flag_value.empty() && !doc.contains(key)) return "";
  return pick_string(doc, key, flag_value, what);
}

inline nlohmann::json pick_json(const nlohmann::json& doc, const char* key,
                                const std::string& flag_value) {
  if (!flag_value.empty()) return parse_json(flag_value, key);
  if (doc.contains(key)) return doc[key];
  return nlohmann::json::array();  // empty divisor / bare projective line
}

inline MorphismMode mode_from_string(const std::string& s) {
  if (s == "nonclassical" || s == "non-classical") return MorphismMode::NonClassical;
  if (s == "classical") return MorphismMode::Classical;
  throw InputError("--mode: expected \"classical\" or \"nonclassical\"");
}

inline Rational parse_rational_str(const std::string& s) {
  std::string t = s;
  t.erase(0, t.find_first_not_of(" \t"));
  if (!t.empty()) t.erase(t.find_last_not_of(" \t") + 1);
  if (t.empty()) throw InputError("rational: empty string");
  auto digits_ok = [](const std::string& d) {
    if (d.empty()) return false;
    size_t i = d[0] == '-' ? 1 : 0;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  size_t slash = t.find('/');
  if (slash == std::string::npos) {
    if (!digits_ok(t)) throw InputError("rational: cannot parse \"" + s + "\"");
    return Rational(Int(t));
  }
  std::string a = t.substr(0, slash), b = t.substr(slash + 1);
  if (!digits_ok(a) || !digits_ok(b))
    throw InputError("rational: cannot parse \"" + s + "\"");
  Int den(b);
  if (den == 0) throw InputError("rational: zero denominator in \"" + s + "\"");
  return make_rat(Int(a), den);
}

inline void emit(const JsonNode& out, const std::string& text, bool json_mode) {
  if (json_mode)
    std::cout << out.dump() << "\n";
  else
    std::cout << text;
}

inline JsonNode witness_to_json(const MorphismWitness& w) {
  JsonNode n = JsonNode::object();
  n["condition"] = JsonNode(w.condition);
  n["multiplicity"] = JsonNode(w.multiplicity);
  n["satisfied"] = JsonNode(w.satisfied);
  n["source_mult"] = multiplicity_to_json(w.source_mult);
  n["source_place"] = JsonNode(w.source_place.str());
  n["target_mult"] = multiplicity_to_json(w.target_mult);
  n["target_place"] = JsonNode(w.target_place.str());
  return n;
}

inline JsonNode verdict_to_json(const MorphismVerdict& v) {
  JsonNode n = JsonNode::object();
  n["image_in_support"] = JsonNode(v.image_in_support);
  n["ok"] = JsonNode(v.ok);
  JsonNode ws = JsonNode::array();
  for (const auto& w : v.witnesses) ws.push_back(witness_to_json(w));
  n["witnesses"] = std::move(ws);
  return n;
}

inline std::string witness_lines(const std::vector<MorphismWitness>& ws) {
  std::string text;
  for (const auto& w : ws) {
    text += "  [" + w.source_place.str() + "] -> [" + w.target_place.str() +
            "]: d=" + std::to_string(w.multiplicity) + ", " + w.condition +
            (w.satisfied ? ", ok" : ", FAIL") + "\n";
  }
  return text;
}

struct CommonArgs {
  std::string input_path;
  std::string inline_json;
  std::string map_text;
  std::string mode = "nonclassical";
  bool json = false;
};

inline void add_common(CLI::App* sub, CommonArgs& a, bool with_map, bool with_mode) {
  sub->add_option("input", a.input_path, "Path to a JSON input document");
  sub->add_option("--inline", a.inline_json, "Inline JSON input document");
  if (with_map) sub->add_option("--map", a.map_text, "Rational map in z, e.g. \"z^2/(z-1)\"");
  if (with_mode)
    sub->add_option("--mode", a.mode, "Morphism mode: classical|nonclassical")
        ->check(CLI::IsMember({"classical", "nonclassical", "non-classical"}));
  sub->add_flag("--json", a.json, "Emit canonical JSON instead of text");
}

// ---- subcommand handlers ----

inline void run_morphism(const CommonArgs& a, const std::string& source_flag,
                         const std::string& target_flag) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  RationalMap f = RationalMap::parse(pick_string(doc, "map", a.map_text, "map"));
  OrbifoldCurve source = orbifold_curve_from_json(pick_json(doc, "source", source_flag));
  OrbifoldCurve target = orbifold_curve_from_json(pick_json(doc, "target", target_flag));
  MorphismMode mode = mode_from_string(a.mode);
  MorphismVerdict v = check_morphism(f, source, target, mode);

  JsonNode out = report_header("morphism");
  out["map"] = JsonNode(f.str());
  out["mode"] = JsonNode(mode_name(mode));
  out["verdict"] = verdict_to_json(v);
  std::string text = "map: " + f.str() + "\n" + "mode: " + mode_name(mode) + "\n" +
                     "orbifold morphism: " + (v.ok ? "yes" : "no") + "\n" +
                     witness_lines(v.witnesses);
  emit(out, text, a.json);
}

inline void run_ramification(const CommonArgs& a) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  RationalMap f = RationalMap::parse(pick_string(doc, "map", a.map_text, "map"));
  Divisor r = ramification_divisor(f);

  JsonNode out = report_header("ramification");
  out["divisor"] = divisor_to_json(r);
  out["divisor_degree"] = JsonNode(r.degree());
  out["map"] = JsonNode(f.str());
  out["map_degree"] = JsonNode(static_cast<long long>(f.degree()));
  std::string text = "map: " + f.str() + "\n" + "map degree: " + std::to_string(f.degree()) +
                     "\n" + "ramification divisor: " + r.str() + "\n" +
                     "ramification degree: " + rat_str(r.degree()) + "\n";
  emit(out, text, a.json);
}

inline void run_compose_check(const CommonArgs& a, const std::string& outer_flag) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  RationalMap f = RationalMap::parse(pick_string(doc, "map", a.map_text, "inner map"));
  RationalMap g = RationalMap::parse(pick_string(doc, "outer", outer_flag, "outer map"));
  CompositionCheck c = composition_rule_check(f, g);

  JsonNode out = report_header("compose-check");
  out["composite"] = JsonNode(g.compose(f).str());
  out["equal"] = JsonNode(c.equal);
  out["inner"] = JsonNode(f.str());
  out["lhs"] = divisor_to_json(c.lhs);
  out["outer"] = JsonNode(g.str());
  out["rhs"] = divisor_to_json(c.rhs);
  std::string text = "inner map: " + f.str() + "\n" + "outer map: " + g.str() + "\n" +
                     "R(outer o inner): " + c.lhs.str() + "\n" +
                     "R(inner) + pullback R(outer): " + c.rhs.str() + "\n" +
                     "composition rule holds: " + (c.equal ? "yes" : "no") + "\n";
  emit(out, text, a.json);
}

inline void run_orbifold_base(const CommonArgs& a) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  RationalMap f = RationalMap::parse(pick_string(doc, "map", a.map_text, "map"));
  MorphismMode mode = mode_from_string(a.mode);
  OrbifoldDivisor base = orbifold_base(f, mode);

  JsonNode out = report_header("orbifold-base");
  out["base"] = orbifold_divisor_to_json(base);
  out["map"] = JsonNode(f.str());
  out["mode"] = JsonNode(mode_name(mode));
  std::string text = "map: " + f.str() + "\n" + "mode: " + mode_name(mode) + "\n" +
                     "orbifold base: " + base.str() + "\n";
  emit(out, text, a.json);
}

inline void run_etale(const CommonArgs& a, const std::string& source_flag,
                      const std::string& target_flag) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  RationalMap f = RationalMap::parse(pick_string(doc, "map", a.map_text, "map"));
  OrbifoldCurve source = orbifold_curve_from_json(pick_json(doc, "source", source_flag));
  OrbifoldCurve target = orbifold_curve_from_json(pick_json(doc, "target", target_flag));
  bool e = etale_check(f, source, target);

  JsonNode out = report_header("etale");
  out["etale"] = JsonNode(e);
  out["map"] = JsonNode(f.str());
  std::string text = "map: " + f.str() + "\n" + std::string("etale: ") + (e ? "yes" : "no") + "\n";
  emit(out, text, a.json);
}

inline void run_limit_closure(const CommonArgs& a, const std::string& family_flag,
                              const std::string& source_flag, const std::string& target_flag,
                              const std::vector<std::string>& sample_flags) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  std::string family_text = pick_string(doc, "family", family_flag, "family");
  FamilyMap fam = parse_family(family_text);
  OrbifoldDivisor delta = orbifold_divisor_from_json(pick_json(doc, "source", source_flag));
  OrbifoldDivisor delta_prime = orbifold_divisor_from_json(pick_json(doc, "target", target_flag));
  MorphismMode mode = mode_from_string(a.mode);

  std::vector<Rational> samples;
  for (const auto& s : sample_flags) samples.push_back(parse_rational_str(s));
  if (samples.empty() && doc.contains("samples")) {
    if (!doc["samples"].is_array()) throw InputError("samples: expected an array of rationals");
    for (const auto& s : doc["samples"]) {
      if (!s.is_string()) throw InputError("samples: expected rational strings like \"1/2\"");
      samples.push_back(parse_rational_str(s.get<std::string>()));
    }
  }

  LimitClosureReport rep =
      samples.empty() ? limit_closure_check(fam, delta, delta_prime, mode)
                      : limit_closure_check(fam, delta, delta_prime, mode, samples);

  JsonNode out = report_header("limit-closure");
  out["branch"] =
      JsonNode(rep.branch == LimitBranch::Morphism ? "morphism" : "image-in-support");
  out["family"] = JsonNode(family_text);
  out["limit"] = JsonNode(rep.limit.str());
  out["limit_constant"] = JsonNode(rep.limit_constant);
  out["limit_verdict"] = verdict_to_json(rep.limit_verdict);
  out["mode"] = JsonNode(mode_name(mode));
  JsonNode sj = JsonNode::array();
  for (const auto& t : rep.samples) sj.push_back(JsonNode(t));
  out["samples"] = std::move(sj);

  std::string sample_list;
  for (const auto& t : rep.samples) {
    if (!sample_list.empty()) sample_list += ", ";
    sample_list += rat_str(t);
  }
  std::string text =
      "family: " + family_text + "\n" + "mode: " + mode_name(mode) + "\n" +
      "samples checked: " + sample_list + "\n" + "limit map: " + rep.limit.str() + "\n" +
      "branch: " +
      (rep.branch == LimitBranch::Morphism ? "morphism" : "image-in-support") + "\n" +
      witness_lines(rep.limit_verdict.witnesses);
  emit(out, text, a.json);
}

inline void run_blowup_threshold(const CommonArgs& a,
                                 const std::vector<std::string>& component_flags) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  std::vector<std::pair<Multiplicity, int>> pairs;
  for (const auto& c : component_flags) {
    size_t colon = c.find(':');
    if (colon == std::string::npos)
      throw InputError("--component: expected MULT:ORDER, e.g. 2:1 or inf:3");
    std::string ms = c.substr(0, colon), ds = c.substr(colon + 1);
    Multiplicity m = ms == "inf" ? Multiplicity::infinite()
                                 : Multiplicity::finite(std::stoll(ms));
    pairs.emplace_back(m, std::stoi(ds));
  }
  if (pairs.empty() && doc.contains("components")) {
    if (!doc["components"].is_array())
      throw InputError("components: expected an array of {\"mult\", \"contact\"}");
    for (const auto& c : doc["components"]) {
      if (!c.is_object() || !c.contains("mult") || !c.contains("contact") ||
          !c["contact"].is_number_integer())
        throw InputError("components: entries need \"mult\" and integer \"contact\"");
      pairs.emplace_back(multiplicity_from_json(c["mult"]), c["contact"].get<int>());
    }
  }
  BlowupThreshold t = blowup_exceptional_threshold(pairs);

  JsonNode out = report_header("blowup-threshold");
  JsonNode comps = JsonNode::array();
  for (const auto& [m, d] : pairs) {
    JsonNode item = JsonNode::object();
    item["contact"] = JsonNode(static_cast<long long>(d));
    item["mult"] = multiplicity_to_json(m);
    comps.push_back(std::move(item));
  }
  out["components"] = std::move(comps);
  out["infinite"] = JsonNode(t.infinite);
  out["k_min"] = multiplicity_to_json(t.k_min);
  out["threshold"] = t.infinite ? JsonNode("inf") : JsonNode(t.m);
  std::string text =
      t.infinite ? std::string("threshold: inf\nminimal integer multiplicity: inf\n")
                 : "threshold: " + rat_str(t.m) +
                       "\nminimal integer multiplicity: " + t.k_min.str() + "\n";
  emit(out, text, a.json);
}

inline void run_classify(const CommonArgs& a) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  OrbifoldCurve o = orbifold_curve_from_json(doc);
  ClassificationVerdict v = classify(o);

  JsonNode out = report_header("classify");
  out["classical_hyperbolic"] = JsonNode(v.classical_hyperbolic);
  if (v.degree) out["degree"] = JsonNode(*v.degree);
  out["hyperbolic"] = JsonNode(v.hyperbolic);
  out["notes"] = JsonNode(v.notes);
  out["reason"] = JsonNode(reason_code(v.reason));

  std::string text = std::string("hyperbolic: ") + (v.hyperbolic ? "yes" : "no") + "\n" +
                     "classically hyperbolic: " + (v.classical_hyperbolic ? "yes" : "no") +
                     "\n" + "reason: " + reason_code(v.reason) + "\n";
  if (v.degree) text += "canonical degree: " + rat_str(*v.degree) + "\n";
  if (!v.notes.empty()) text += "notes: " + v.notes + "\n";
  emit(out, text, a.json);
}

inline void run_pi1(const CommonArgs& a) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  OrbifoldCurve o = orbifold_curve_from_json(doc);
  Pi1Result r = pi1_presentation(o);

  JsonNode out = report_header("pi1");
  JsonNode gens = JsonNode::array();
  for (const auto& g : r.presentation.generators) gens.push_back(JsonNode(g));
  out["generators"] = std::move(gens);
  JsonNode rels = JsonNode::array();
  for (const auto& rel : r.presentation.relators) rels.push_back(JsonNode(rel));
  out["relators"] = std::move(rels);
  out["genus"] = JsonNode(static_cast<long long>(r.presentation.genus));
  out["trivial"] = JsonNode(r.trivial);
  JsonNode tors = JsonNode::array();
  for (const Int& t : r.abelianization.torsion) tors.push_back(JsonNode(t.str()));
  out["torsion"] = std::move(tors);
  out["free_rank"] = JsonNode(static_cast<long long>(r.abelianization.free_rank));

  std::string gen_list, rel_list, tor_list;
  for (const auto& g : r.presentation.generators) {
    if (!gen_list.empty()) gen_list += ", ";
    gen_list += g;
  }
  for (const auto& rel : r.presentation.relators) {
    if (!rel_list.empty()) rel_list += ", ";
    rel_list += rel;
  }
  for (const Int& t : r.abelianization.torsion) {
    if (!tor_list.empty()) tor_list += " + ";
    tor_list += "Z/" + t.str();
  }
  for (int i = 0; i < r.abelianization.free_rank; ++i) {
    if (!tor_list.empty()) tor_list += " + ";
    tor_list += "Z";
  }
  if (tor_list.empty()) tor_list = "trivial";
  std::string text = "generators: " + gen_list + "\n" + "relators: " + rel_list + "\n" +
                     "abelianization: " + tor_list + "\n" +
                     "trivial: " + (r.trivial ? "yes" : "no") + "\n";
  emit(out, text, a.json);
}

inline void run_quotient(const CommonArgs& a, const std::string& group_flag,
                         const std::string& n_flag) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  std::string group_text = pick_optional_string(doc, "group", group_flag, "group");
  if (group_text.empty())
    throw InputError("quotient: missing group "
                     "(cyclic, dihedral, tetrahedral, octahedral, icosahedral)");
  int n = 0;
  if (!n_flag.empty()) {
    n = std::stoi(n_flag);
  } else if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) throw InputError("quotient: \"n\" must be an integer");
    n = doc["n"].get<int>();
  }
  GroupPreset preset = group_from_name(group_text);
  bool parametric = preset == GroupPreset::Cyclic || preset == GroupPreset::Dihedral;
  if (parametric && n == 0)
    throw InputError("quotient: the " + group_text + " preset needs --n");
  if (!parametric && n != 0)
    throw InputError("quotient: --n applies only to cyclic and dihedral groups");
  QuotientReport rep = quotient_analysis(preset, n);

  JsonNode out = report_header("quotient");
  OrbifoldCurve qc;
  qc.delta = rep.divisor;
  out["degree"] = JsonNode(canonical_degree(qc));
  out["divisor"] = orbifold_divisor_to_json(rep.divisor);
  out["group"] = JsonNode(group_name(preset));
  out["group_order"] = JsonNode(rep.group_order);
  if (parametric) out["n"] = JsonNode(static_cast<long long>(n));
  JsonNode orbits = JsonNode::array();
  for (const auto& o : rep.orbits) {
    JsonNode item = JsonNode::object();
    item["size"] = JsonNode(o.orbit_size);
    item["stabilizer"] = JsonNode(o.stabilizer);
    orbits.push_back(std::move(item));
  }
  out["orbits"] = std::move(orbits);

  std::string text = "group: " + std::string(group_name(preset)) +
                     (parametric ? " (n = " + std::to_string(n) + ")" : "") + "\n" +
                     "order: " + std::to_string(rep.group_order) + "\n";
  for (const auto& o : rep.orbits)
    text += "branch orbit: stabilizer " + std::to_string(o.stabilizer) + ", " +
            std::to_string(o.orbit_size) + " points\n";
  text += "quotient divisor: " + rep.divisor.str() + "\n" +
          "canonical degree: " + rat_str(canonical_degree(qc)) + "\n";
  emit(out, text, a.json);
}

inline void run_unfold(const CommonArgs& a, const std::string& preset_flag,
                       const std::string& lambda_flag) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  std::string preset_text = pick_optional_string(doc, "preset", preset_flag, "preset");
  if (preset_text.empty()) throw InputError("unfold: missing preset (2222, 244, 236, 333)");
  std::string lambda_text = pick_optional_string(doc, "lambda", lambda_flag, "lambda");
  std::optional<Rational> lambda;
  if (!lambda_text.empty()) lambda = parse_rational_str(lambda_text);

  UnfoldingPreset preset = preset_from_name(preset_text);
  CoveringData data = build_unfolding(preset, lambda);
  bool verified = verify_etale_cover(data);

  JsonNode out = report_header("unfold");
  out["curve"] = JsonNode(print_poly(data.curve.h(), 'x'));
  out["degree"] = JsonNode(data.degree);
  out["map"] = JsonNode(data.map.str());
  out["preset"] = JsonNode(preset_name(preset));
  if (lambda) out["lambda"] = JsonNode(*lambda);
  out["target_divisor"] = orbifold_divisor_to_json(data.target.delta);
  JsonNode fibers = JsonNode::array();
  for (const auto& fiber : data.profile) {
    JsonNode fj = JsonNode::object();
    fj["value"] = fiber.value ? JsonNode(*fiber.value) : JsonNode("inf");
    JsonNode pts = JsonNode::array();
    for (const auto& [p, d] : fiber.points) {
      JsonNode pj = JsonNode::object();
      pj["mult"] = JsonNode(d);
      pj["point"] = elliptic_point_to_json(p);
      pts.push_back(std::move(pj));
    }
    fj["points"] = std::move(pts);
    fibers.push_back(std::move(fj));
  }
  out["profile"] = std::move(fibers);
  out["verified"] = JsonNode(verified);

  std::string text = "preset: " + preset_name(preset) +
                     (lambda ? " (lambda = " + rat_str(*lambda) + ")" : "") + "\n" +
                     "curve: " + data.curve.str() + "\n" + "map: " + data.map.str() + "\n" +
                     "degree: " + std::to_string(data.degree) + "\n" +
                     "target divisor: " + data.target.delta.str() + "\n";
  for (const auto& fiber : data.profile) {
    text += "fiber over " + (fiber.value ? rat_str(*fiber.value) : std::string("inf")) + ":";
    for (const auto& [p, d] : fiber.points)
      text += " " + p.str() + " x" + std::to_string(d);
    text += "\n";
  }
  text += std::string("unfolding verified: ") + (verified ? "yes" : "NO") + "\n";
  emit(out, text, a.json);
}

// A place flag is either "inf", a rational value a (naming the place z - a),
// or a monic irreducible polynomial in z.
inline Place place_from_text(const std::string& text) {
  if (text == "inf") return Place::infinity();
  try {
    return Place::of_rational(parse_rational_str(text));
  } catch (const InputError&) {
    return Place::parse(text);
  }
}

inline Multiplicity multiplicity_from_text(const std::string& text) {
  if (text == "inf") return Multiplicity::infinite();
  try {
    size_t pos = 0;
    long long m = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return Multiplicity::finite(m);
  } catch (const std::exception&) {
    throw InputError("multiplicity: expected a positive integer or \"inf\", got \"" +
                     text + "\"");
  }
}

inline std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double r = 0.0;
    try {
      r = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw InputError("radii: cannot parse \"" + item + "\"");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw InputError("radii: cannot parse \"" + item + "\"");
    out.push_back(r);
  }
  if (out.empty()) throw InputError("radii: expected a comma-separated list, e.g. 2,10,100");
  return out;
}

inline std::string double_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void run_nevanlinna(const CommonArgs& a, const std::string& place_flag,
                           const std::string& mult_flag, const std::string& radii_flag,
                           const std::string& csv_path, const std::string& tol_flag) {
  nlohmann::json doc = input_document(a.input_path, a.inline_json);
  RationalMap f = RationalMap::parse(pick_string(doc, "map", a.map_text, "map"));
  std::string place_text = pick_optional_string(doc, "place", place_flag, "place");
  if (place_text.empty()) throw InputError("nevanlinna: missing target place (--place)");
  Place H = place_from_text(place_text);

  Multiplicity m = Multiplicity::finite(1);
  if (!mult_flag.empty())
    m = multiplicity_from_text(mult_flag);
  else if (doc.contains("mult"))
    m = multiplicity_from_json(doc["mult"]);
  else
    throw InputError("nevanlinna: missing target multiplicity (--mult)");

  std::vector<double> radii = {2.0, 10.0, 100.0};
  if (!radii_flag.empty()) {
    radii = parse_radii(radii_flag);
  } else if (doc.contains("radii")) {
    if (doc["radii"].is_string()) {
      radii = parse_radii(doc["radii"].get<std::string>());
    } else if (doc["radii"].is_array()) {
      radii.clear();
      for (const auto& x : doc["radii"]) {
        if (!x.is_number()) throw InputError("nevanlinna: radii entries must be numbers");
        radii.push_back(x.get<double>());
      }
      if (radii.empty()) throw InputError("nevanlinna: radii list is empty");
    } else {
      throw InputError("nevanlinna: \"radii\" must be a comma string or a number array");
    }
  }
  double rel_tol = tol_flag.empty() ? 1e-6 : std::stod(tol_flag);

  NevanlinnaReport rep = orbi_trunc_check(f, H, m, radii, rel_tol);

  JsonNode out = report_header("nevanlinna");
  out["alpha"] = JsonNode(rep.alpha);
  out["any_flagged"] = JsonNode(rep.any_flagged);
  out["map"] = JsonNode(f.str());
  out["mult"] = multiplicity_to_json(m);
  out["place"] = JsonNode(H.str());
  out["slack"] = JsonNode(rep.slack);
  auto number_array = [](const std::vector<double>& v) {
    JsonNode arr = JsonNode::array();
    for (double x : v) arr.push_back(JsonNode(x));
    return arr;
  };
  out["margin"] = number_array(rep.margin);
  out["n"] = number_array(rep.n);
  out["n1"] = number_array(rep.n1);
  out["quad_error"] = number_array(rep.quad_error);
  out["radii"] = number_array(rep.radii);
  out["t"] = number_array(rep.t);
  out["t_divisor"] = number_array(rep.t_divisor);
  JsonNode flags = JsonNode::array();
  for (bool b : rep.flagged) flags.push_back(JsonNode(b));
  out["flagged"] = std::move(flags);

  std::string text = "map: " + f.str() + ", target [" + H.str() + "] with multiplicity " +
                     m.str() + ", alpha = " + double_str(rep.alpha) + "\n";
  for (size_t i = 0; i < rep.radii.size(); ++i) {
    text += "r = " + double_str(rep.radii[i]) + ": T = " + double_str(rep.t[i]) +
            ", T_div = " + double_str(rep.t_divisor[i]) + ", N = " + double_str(rep.n[i]) +
            ", N1 = " + double_str(rep.n1[i]) + ", margin = " + double_str(rep.margin[i]) +
            (rep.flagged[i] ? " FLAGGED" : "") + "\n";
  }
  text += std::string("truncation inequality: ") +
          (rep.any_flagged ? "VIOLATED beyond quadrature error" : "satisfied at all radii") +
          "\n";

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw InputError("nevanlinna: cannot open CSV output \"" + csv_path + "\"");
    csv << "r,T,N,N1,margin\n";
    for (size_t i = 0; i < rep.radii.size(); ++i)
      csv << double_str(rep.radii[i]) << ',' << double_str(rep.t[i]) << ','
          << double_str(rep.n[i]) << ',' << double_str(rep.n1[i]) << ','
          << double_str(rep.margin[i]) << "\n";
  }
  emit(out, text, a.json);
}

// A complex flag is "re" or "re,im".
inline std::complex<double> complex_from_text(const std::string& text, const char* what) {
  size_t comma = text.find(',');
  try {
    size_t pos = 0;
    double re = std::stod(text.substr(0, comma), &pos);
    if (comma == std::string::npos) {
      if (pos != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    std::string imag_part = text.substr(comma + 1);
    double im = std::stod(imag_part, &pos);
    if (pos != imag_part.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw InputError(std::string(what) + ": expected a complex number as re or re,im, got \"" +
                     text + "\"");
  }
}

inline long long parse_order_flag(const std::string& text, const char* what) {
  if (text.empty()) throw InputError(std::string(what) + ": missing --n");
  try {
    size_t pos = 0;
    long long n = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return n;
  } catch (const std::exception&) {
    throw InputError(std::string(what) + ": --n must be an integer, got \"" + text + "\"");
  }
}

inline void run_kobayashi_density(bool json_mode, const std::string& n_flag,
                                  const std::string& z_flag, const std::string& csv_path,
                                  const std::string& samples_flag) {
  Multiplicity n = Multiplicity::finite(parse_order_flag(n_flag, "kobayashi density"));

  JsonNode out = report_header("kobayashi-density");
  out["n"] = multiplicity_to_json(n);
  std::string text;
  if (!z_flag.empty()) {
    std::complex<double> z = complex_from_text(z_flag, "kobayashi density");
    double value = metric_density(n, z);
    double limit = limit_density(z);
    out["density"] = JsonNode(value);
    out["limit_density"] = JsonNode(limit);
    out["z"] = JsonNode(z_flag);
    text += "density at z = " + z_flag + ": " + double_str(value) + "\n" +
            "punctured-disc limit density: " + double_str(limit) + "\n";
  } else if (csv_path.empty()) {
    throw InputError("kobayashi density: need --z or --csv");
  }

  if (!csv_path.empty()) {
    long long samples = 19;
    if (!samples_flag.empty()) samples = parse_order_flag(samples_flag, "kobayashi density");
    if (samples < 1 || samples > 100000)
      throw InputError("kobayashi density: --samples must be between 1 and 100000");
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw InputError("kobayashi density: cannot open CSV output \"" + csv_path + "\"");
    csv << "r,density,limit\n";
    for (long long k = 1; k <= samples; ++k) {
      double r = double(k) / double(samples + 1);
      std::complex<double> z(r, 0.0);
      csv << double_str(r) << ',' << double_str(metric_density(n, z)) << ','
          << double_str(limit_density(z)) << "\n";
    }
    out["csv_rows"] = JsonNode(samples);
    text += "density profile written: " + std::to_string(samples) + " rows\n";
  }
  emit(out, text, json_mode);
}

inline void run_kobayashi_distance(bool json_mode, const std::string& n_flag,
                                   const std::string& p_flag, const std::string& q_flag,
                                   bool experimental_chain, const std::string& budget_flag) {
  Multiplicity n = Multiplicity::finite(parse_order_flag(n_flag, "kobayashi distance"));
  if (p_flag.empty() || q_flag.empty())
    throw InputError("kobayashi distance: need both --p and --q");
  std::complex<double> p = complex_from_text(p_flag, "kobayashi distance");
  std::complex<double> q = complex_from_text(q_flag, "kobayashi distance");

  double classical = classical_distance_disc(n, p, q);
  JsonNode out = report_header("kobayashi-distance");
  out["classical"] = JsonNode(classical);
  out["n"] = multiplicity_to_json(n);
  out["p"] = JsonNode(p_flag);
  out["q"] = JsonNode(q_flag);
  std::string text = "classical pseudodistance: " + double_str(classical) + "\n";

  if (experimental_chain) {
    long long budget = 8192;
    if (!budget_flag.empty()) budget = parse_order_flag(budget_flag, "kobayashi distance");
    ChainBound cb = chain_upper_bound(n, p, q, budget);
    JsonNode chain = JsonNode::object();
    chain["evaluated"] = JsonNode(cb.evaluated);
    chain["used_fallback"] = JsonNode(cb.used_fallback);
    chain["value"] = JsonNode(cb.value);
    out["chain"] = std::move(chain);
    text += "experimental chain upper bound: " + double_str(cb.value) + " (" +
            std::to_string(cb.evaluated) + " candidates" +
            (cb.used_fallback ? ", fallback to classical" : "") + ")\n";
  }
  emit(out, text, json_mode);
}

}  // namespace cli_detail

inline int cli_main(int argc, char** argv) {
  using namespace cli_detail;
  CLI::App app{"orbicurve: exact computations on one-dimensional orbifold curves"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string source_flag, target_flag, outer_flag, family_flag;
  std::vector<std::string> sample_flags, component_flags;

  const char* divisor_schema =
      "Orbifold divisor JSON: [{\"place\": \"z-1\", \"mult\": 2|\"inf\"}, ...];\n"
      "places are monic irreducible polynomials in z, or \"inf\".";
  const char* curve_schema =
      "Orbifold curve JSON: {\"base\": {\"kind\": \"P1\"|\"Disc\"|\"Elliptic\"|\n"
      "\"CompactGenus\"|\"NonCompactifiable\", \"h\": cubic (Elliptic), \"genus\": g},\n"
      "\"divisor\": [...], \"punctures\": n}; a bare divisor array means (P1, divisor).";

  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Decide hyperbolicity of an orbifold curve by the degree criterion");
  add_common(classify_cmd, args, false, false);
  classify_cmd->footer(std::string("Input document: an orbifold curve.\n") + curve_schema);
  classify_cmd->callback([&] { run_classify(args); });

  CLI::App* pi1_cmd = app.add_subcommand(
      "pi1", "Present the orbifold fundamental group and test triviality");
  add_common(pi1_cmd, args, false, false);
  pi1_cmd->footer(std::string("Input document: an orbifold curve.\n") + curve_schema);
  pi1_cmd->callback([&] { run_pi1(args); });

  CLI::App* quotient_cmd = app.add_subcommand(
      "quotient", "Branch signature of the sphere quotient by a finite rotation group");
  add_common(quotient_cmd, args, false, false);
  std::string group_flag, n_flag;
  quotient_cmd->add_option("--group", group_flag,
                           "cyclic, dihedral, tetrahedral, octahedral, or icosahedral");
  quotient_cmd->add_option("--n", n_flag, "Rotation order for cyclic/dihedral presets");
  quotient_cmd->footer("Input document: {\"group\": \"dihedral\", \"n\": 3}.");
  quotient_cmd->callback([&] { run_quotient(args, group_flag, n_flag); });

  CLI::App* morphism = app.add_subcommand(
      "morphism", "Check whether a rational map is an orbifold morphism");
  add_common(morphism, args, true, true);
  morphism->add_option("--source", source_flag, "Source orbifold (JSON divisor or curve)");
  morphism->add_option("--target", target_flag, "Target orbifold (JSON divisor or curve)");
  morphism->footer(std::string("Input document: {\"map\", \"source\", \"target\"}.\n") +
                   divisor_schema + "\n" + curve_schema);
  morphism->callback([&] { run_morphism(args, source_flag, target_flag); });

  CLI::App* ramification = app.add_subcommand(
      "ramification", "Ramification divisor of a rational self-map of the projective line");
  add_common(ramification, args, true, false);
  ramification->footer("Input document: {\"map\": \"z^3 - 3*z\"}.");
  ramification->callback([&] { run_ramification(args); });

  CLI::App* compose = app.add_subcommand(
      "compose-check", "Verify R(g o f) = R(f) + f* R(g) for given maps");
  add_common(compose, args, true, false);
  compose->add_option("--outer", outer_flag, "Outer map g (composition is outer o map)");
  compose->footer("Input document: {\"map\": inner f, \"outer\": g}.");
  compose->callback([&] { run_compose_check(args, outer_flag); });

  CLI::App* base = app.add_subcommand(
      "orbifold-base", "Maximal target orbifold divisor making the map a morphism");
  add_common(base, args, true, true);
  base->footer("Input document: {\"map\"}. Fiber multiplicities over each critical value\n"
               "combine by minimum (nonclassical) or gcd (classical).");
  base->callback([&] { run_orbifold_base(args); });

  CLI::App* etale = app.add_subcommand(
      "etale", "Check the etale condition between orbifold curves (projective line or disc)");
  add_common(etale, args, true, false);
  etale->add_option("--source", source_flag, "Source orbifold curve (JSON)");
  etale->add_option("--target", target_flag, "Target orbifold curve (JSON)");
  etale->footer(std::string("Input document: {\"map\", \"source\", \"target\"}.\n") +
                curve_schema);
  etale->callback([&] { run_etale(args, source_flag, target_flag); });

  CLI::App* limit = app.add_subcommand(
      "limit-closure", "Degenerate a family f_t of morphisms and classify the limit");
  add_common(limit, args, false, true);
  limit->add_option("--family", family_flag, "Family in z and t, e.g. \"(z^2-t)^2\"");
  limit->add_option("--source", source_flag, "Source orbifold divisor (JSON)");
  limit->add_option("--target", target_flag, "Target orbifold divisor (JSON)");
  limit->add_option("--sample", sample_flags, "Parameter value to premise-check (repeatable)");
  limit->footer(std::string("Input document: {\"family\", \"source\", \"target\",\n"
                            "\"samples\": [\"1/2\", ...]}. Default samples: 1/2, 1/4, 1/8.\n") +
                divisor_schema);
  limit->callback(
      [&] { run_limit_closure(args, family_flag, source_flag, target_flag, sample_flags); });

  CLI::App* unfold = app.add_subcommand(
      "unfold", "Elliptic unfolding of a euclidean orbifold signature on the projective line");
  add_common(unfold, args, false, false);
  std::string preset_flag, lambda_flag;
  unfold->add_option("--preset", preset_flag, "Signature preset: 2222, 244, 236, or 333");
  unfold->add_option("--lambda", lambda_flag,
                     "Branch point parameter (2222 only), rational, not 0 or 1");
  unfold->footer("Input document: {\"preset\": \"244\", \"lambda\": \"2\"}. Emits the covering\n"
                 "curve, map, degree, marked fiber profile, and the verification verdict.");
  unfold->callback([&] { run_unfold(args, preset_flag, lambda_flag); });

  CLI::App* blowup = app.add_subcommand(
      "blowup-threshold", "Exceptional multiplicity threshold of a weighted blow-up");
  add_common(blowup, args, false, false);
  blowup->add_option("--component", component_flags,
                     "Component as MULT:ORDER, e.g. 2:1 or inf:3 (repeatable)");
  blowup->footer("Input document: {\"components\": [{\"mult\": 2|\"inf\", \"contact\": 1}, ...]}.");
  blowup->callback([&] { run_blowup_threshold(args, component_flags); });

  CLI::App* nevanlinna_cmd = app.add_subcommand(
      "nevanlinna", "Counting, characteristic, and orbifold truncation report for a map");
  add_common(nevanlinna_cmd, args, true, false);
  std::string place_flag, mult_flag, radii_flag, csv_flag, tol_flag;
  nevanlinna_cmd->add_option("--place", place_flag,
                             "Target place: a value like 0 or 1/2, a polynomial, or inf");
  nevanlinna_cmd->add_option("--mult", mult_flag, "Target multiplicity: integer >= 1 or inf");
  nevanlinna_cmd->add_option("--radii", radii_flag, "Comma-separated radii >= 1, e.g. 2,10,100");
  nevanlinna_cmd->add_option("--csv", csv_flag, "Write r,T,N,N1,margin rows to this CSV file");
  nevanlinna_cmd->add_option("--tolerance", tol_flag,
                             "Relative quadrature tolerance (default 1e-6)");
  nevanlinna_cmd->footer("Input document: {\"map\": \"z^2\", \"place\": \"0\", "
                         "\"mult\": 2, \"radii\": \"2,10,100\"}.");
  nevanlinna_cmd->callback(
      [&] { run_nevanlinna(args, place_flag, mult_flag, radii_flag, csv_flag, tol_flag); });

  CLI::App* kobayashi_cmd = app.add_subcommand(
      "kobayashi", "Marked-disc metric density and classical pseudodistance");
  kobayashi_cmd->require_subcommand(1);
  bool kob_json = false, kob_chain = false;
  std::string kob_n, kob_z, kob_p, kob_q, kob_csv, kob_samples, kob_budget;

  CLI::App* kob_density = kobayashi_cmd->add_subcommand(
      "density", "Push-forward metric density and its punctured-disc limit");
  kob_density->add_option("--n", kob_n, "Marking order at the origin (integer >= 1)");
  kob_density->add_option("--z", kob_z, "Evaluation point, re or re,im with 0 < |z| < 1");
  kob_density->add_option("--csv", kob_csv, "Write a radial r,density,limit profile");
  kob_density->add_option("--samples", kob_samples, "Rows in the CSV profile (default 19)");
  kob_density->add_flag("--json", kob_json, "Emit canonical JSON instead of text");
  kob_density->callback(
      [&] { run_kobayashi_density(kob_json, kob_n, kob_z, kob_csv, kob_samples); });

  CLI::App* kob_distance = kobayashi_cmd->add_subcommand(
      "distance", "Classical pseudodistance through the z^n unfolding");
  kob_distance->add_option("--n", kob_n, "Marking order at the origin (integer >= 1)");
  kob_distance->add_option("--p", kob_p, "First point, re or re,im inside the unit disc");
  kob_distance->add_option("--q", kob_q, "Second point, re or re,im inside the unit disc");
  kob_distance->add_flag("--experimental-chain", kob_chain,
                         "Also search chains of disc morphisms for an upper bound");
  kob_distance->add_option("--budget", kob_budget,
                           "Candidate evaluations for the chain search (default 8192)");
  kob_distance->add_flag("--json", kob_json, "Emit canonical JSON instead of text");
  kob_distance->callback(
      [&] { run_kobayashi_distance(kob_json, kob_n, kob_p, kob_q, kob_chain, kob_budget); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const PremiseError& e) {
    std::cerr << "premise error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace orbicurve
