#include "resurgence/job.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "resurgence/closures.hpp"
#include "resurgence/errors.hpp"

namespace resurgence {

using nlohmann::json;

namespace {

const std::set<std::string> kFamilyKinds = {"powers", "symbolic", "closure_powers", "ceiling", "table",
                                            "constant", "pattern", "closure_of", "veronese"};

const std::set<std::string> kPairOps = {"beta_table",  "lambda_table",  "beta_v_table", "lambda_v_table",
                                        "nc_table",    "rho_window",    "rho_n",        "rho_lim",
                                        "rho_hat_rees", "rho_hat_beta", "rho_exact",    "veronese_scaling",
                                        "linearly_finer", "waldschmidt_ratio"};

const std::set<std::string> kOps = [] {
  std::set<std::string> s = kPairOps;
  for (const char* op : {"waldschmidt", "validate", "containment_order", "integral_closure", "rees_valuations"}) {
    s.insert(op);
  }
  return s;
}();

class Reader {
 public:
  std::vector<std::string> errors;

  void error(const std::string& where, const std::string& message) { errors.push_back(where + ": " + message); }

  void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& item : obj.items()) {
      bool ok = false;
      for (const char* k : allowed) ok = ok || item.key() == k;
      if (!ok) error(where, "unknown key '" + item.key() + "'");
    }
  }

  std::optional<std::int64_t> integer(const json& obj, const char* key, const std::string& where,
                                      bool required = false, std::optional<std::int64_t> min = std::nullopt) {
    if (!obj.contains(key)) {
      if (required) error(where, std::string("missing '") + key + "'");
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      error(where, std::string("'") + key + "' must be an integer");
      return std::nullopt;
    }
    auto x = v.get<std::int64_t>();
    if (min && x < *min) {
      error(where, std::string("'") + key + "' must be at least " + std::to_string(*min));
      return std::nullopt;
    }
    return x;
  }

  std::string string(const json& obj, const char* key, const std::string& where, bool required = false) {
    if (!obj.contains(key)) {
      if (required) error(where, std::string("missing '") + key + "'");
      return "";
    }
    if (!obj.at(key).is_string()) {
      error(where, std::string("'") + key + "' must be a string");
      return "";
    }
    return obj.at(key).get<std::string>();
  }

  bool boolean(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return false;
    if (!obj.at(key).is_boolean()) {
      error(where, std::string("'") + key + "' must be true or false");
      return false;
    }
    return obj.at(key).get<bool>();
  }

  std::optional<Rational> rational(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(Integer(static_cast<long>(v.get<std::int64_t>())));
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      Rational q;
      bool ok = !s.empty() && s.find_first_not_of("0123456789/-") == std::string::npos && q.set_str(s, 10) == 0;
      if (ok && q.get_den() != 0) {
        q.canonicalize();
        return q;
      }
    }
    error(where, "malformed number " + v.dump());
    return std::nullopt;
  }

  std::vector<std::int64_t> int_list(const json& obj, const char* key, const std::string& where) {
    std::vector<std::int64_t> out;
    if (!obj.contains(key)) return out;
    const json& v = obj.at(key);
    if (!v.is_array()) {
      error(where, std::string("'") + key + "' must be a list of integers");
      return out;
    }
    for (const auto& x : v) {
      if (!x.is_number_integer()) {
        error(where, std::string("'") + key + "' must be a list of integers");
        return {};
      }
      out.push_back(x.get<std::int64_t>());
    }
    return out;
  }
};

FactorSpec parse_factor(Reader& r, const json& f, const std::string& where) {
  FactorSpec out;
  if (!f.is_object()) {
    r.error(where, "factor must be an object");
    return out;
  }
  r.check_keys(f, {"ideal", "num", "add", "den", "member", "offset"}, where);
  if (f.contains("member")) {
    out.member = r.string(f, "member", where, true);
    out.offset = r.integer(f, "offset", where).value_or(0);
    if (out.member == "self" && out.offset >= 0) r.error(where, "a self reference needs a negative offset");
  } else {
    out.ideal = r.string(f, "ideal", where, true);
    out.num = r.integer(f, "num", where).value_or(0);
    out.add = r.integer(f, "add", where).value_or(1);
    out.den = r.integer(f, "den", where, false, 1).value_or(1);
  }
  return out;
}

FamilySpec parse_family(Reader& r, const json& f, const std::string& where) {
  FamilySpec out;
  if (!f.is_object()) {
    r.error(where, "family must be an object");
    return out;
  }
  out.kind = r.string(f, "kind", where, true);
  if (!out.kind.empty() && !kFamilyKinds.count(out.kind)) {
    r.error(where, "unknown family kind '" + out.kind + "'");
    return out;
  }
  if (out.kind == "powers" || out.kind == "symbolic" || out.kind == "closure_powers" || out.kind == "constant") {
    r.check_keys(f, {"kind", "ideal"}, where);
    out.ideal = r.string(f, "ideal", where, true);
  } else if (out.kind == "ceiling") {
    r.check_keys(f, {"kind", "ideal", "alpha"}, where);
    out.ideal = r.string(f, "ideal", where, true);
    if (!f.contains("alpha")) r.error(where, "missing 'alpha'");
    else if (auto q = r.rational(f.at("alpha"), where + ".alpha")) {
      if (*q < 0) r.error(where, "'alpha' must be nonnegative");
      else out.alpha = *q;
    }
  } else if (out.kind == "table") {
    r.check_keys(f, {"kind", "prefix", "tail"}, where);
    if (f.contains("prefix")) {
      if (!f.at("prefix").is_array()) r.error(where, "'prefix' must be a list of ideal names");
      else
        for (const auto& p : f.at("prefix")) {
          if (p.is_string()) out.prefix.push_back(p.get<std::string>());
          else r.error(where, "'prefix' must be a list of ideal names");
        }
    }
    if (f.contains("tail")) {
      const json& t = f.at("tail");
      const std::string tw = where + ".tail";
      if (!t.is_object()) {
        r.error(tw, "tail must be an object");
      } else {
        r.check_keys(t, {"kind", "ideal", "exponent"}, tw);
        out.tail.kind = r.string(t, "kind", tw, true);
        if (out.tail.kind == "constant") {
          out.tail.ideal = r.string(t, "ideal", tw, true);
        } else if (out.tail.kind == "power") {
          out.tail.ideal = r.string(t, "ideal", tw, true);
          if (!t.contains("exponent")) {
            r.error(tw, "missing 'exponent'");
          } else if (t.at("exponent").is_string() &&
                     (t.at("exponent") == "sqrt" || t.at("exponent") == "log2")) {
            out.tail.exponent = t.at("exponent").get<std::string>();
          } else if (auto q = r.rational(t.at("exponent"), tw + ".exponent")) {
            if (*q < 0) r.error(tw, "'exponent' must be nonnegative");
            out.tail.exponent = q->get_str();
          }
        } else if (out.tail.kind != "none") {
          r.error(tw, "unknown tail kind '" + out.tail.kind + "'");
        }
      }
    }
    if (out.prefix.empty() && out.tail.kind == "none") r.error(where, "table has neither prefix nor tail");
  } else if (out.kind == "pattern") {
    r.check_keys(f, {"kind", "period", "residues", "prefix"}, where);
    out.period = r.integer(f, "period", where, false, 1).value_or(1);
    if (f.contains("prefix")) {
      if (!f.at("prefix").is_array()) r.error(where, "'prefix' must be a list of ideal names");
      else
        for (const auto& p : f.at("prefix")) {
          if (p.is_string()) out.prefix.push_back(p.get<std::string>());
          else r.error(where, "'prefix' must be a list of ideal names");
        }
    }
    if (!f.contains("residues") || !f.at("residues").is_array()) {
      r.error(where, "'residues' must be a list of sums");
    } else {
      const json& res = f.at("residues");
      if (static_cast<std::int64_t>(res.size()) != out.period) {
        r.error(where, "expected " + std::to_string(out.period) + " residues, got " + std::to_string(res.size()));
      }
      for (std::size_t i = 0; i < res.size(); ++i) {
        const std::string rw = where + ".residues[" + std::to_string(i) + "]";
        std::vector<std::vector<FactorSpec>> expr;
        if (!res[i].is_array()) {
          r.error(rw, "residue must be a list of products");
        } else {
          for (std::size_t j = 0; j < res[i].size(); ++j) {
            const std::string tw = rw + "[" + std::to_string(j) + "]";
            std::vector<FactorSpec> term;
            if (!res[i][j].is_array()) r.error(tw, "product must be a list of factors");
            else
              for (std::size_t l = 0; l < res[i][j].size(); ++l) {
                term.push_back(parse_factor(r, res[i][j][l], tw + "[" + std::to_string(l) + "]"));
              }
            expr.push_back(std::move(term));
          }
        }
        out.residues.push_back(std::move(expr));
      }
    }
  } else if (out.kind == "closure_of") {
    r.check_keys(f, {"kind", "family"}, where);
    out.family = r.string(f, "family", where, true);
  } else if (out.kind == "veronese") {
    r.check_keys(f, {"kind", "family", "k"}, where);
    out.family = r.string(f, "family", where, true);
    out.k = r.integer(f, "k", where, true, 1).value_or(1);
  }
  return out;
}

Assertions parse_assertions(Reader& r, const json& a, const std::string& where) {
  Assertions out;
  if (!a.is_object()) {
    r.error(where, "assertions must be an object");
    return out;
  }
  r.check_keys(a,
               {"finite_generation", "b_veronese", "rho_hat", "valuation_equality", "closure_gap", "a_filtration",
                "b_filtration"},
               where);
  out.finite_generation = r.boolean(a, "finite_generation", where);
  out.b_veronese = r.integer(a, "b_veronese", where, false, 1);
  if (a.contains("rho_hat")) out.rho_hat = r.rational(a.at("rho_hat"), where + ".rho_hat");
  out.valuation_equality = r.boolean(a, "valuation_equality", where);
  out.closure_gap = r.integer(a, "closure_gap", where, false, 1);
  out.a_filtration = r.boolean(a, "a_filtration", where);
  out.b_filtration = r.boolean(a, "b_filtration", where);
  return out;
}

TaskSpec parse_task(Reader& r, const json& t, const std::string& where) {
  TaskSpec out;
  if (!t.is_object()) {
    r.error(where, "task must be an object");
    return out;
  }
  r.check_keys(t,
               {"op", "a", "b", "family", "ideal", "prime", "property", "search", "valuation", "grid", "s_max",
                "r_max", "cutoff", "n", "k", "window", "horizon", "kmax", "budget", "assertions"},
               where);
  out.op = r.string(t, "op", where, true);
  if (!out.op.empty() && !kOps.count(out.op)) r.error(where, "unknown op '" + out.op + "'");
  out.a = r.string(t, "a", where, kPairOps.count(out.op) > 0);
  out.b = r.string(t, "b", where, kPairOps.count(out.op) > 0);
  out.family = r.string(t, "family", where, out.op == "waldschmidt" || out.op == "validate");
  const bool needs_ideal =
      out.op == "containment_order" || out.op == "integral_closure" || out.op == "rees_valuations";
  out.ideal = r.string(t, "ideal", where, needs_ideal);
  out.prime = r.string(t, "prime", where, out.op == "containment_order");
  out.property = r.string(t, "property", where, out.op == "validate");
  if (out.op == "validate" && !out.property.empty() && out.property != "graded" && out.property != "filtration" &&
      out.property != "veronese") {
    r.error(where, "unknown property '" + out.property + "'");
  }
  if (t.contains("search")) {
    out.search = r.string(t, "search", where);
    if (out.search != "auto" && out.search != "binary" && out.search != "linear") {
      r.error(where, "search must be auto, binary or linear");
    }
  }
  out.valuation = r.int_list(t, "valuation", where);
  const bool needs_valuation = out.op == "beta_v_table" || out.op == "lambda_v_table" || out.op == "waldschmidt" ||
                               out.op == "waldschmidt_ratio";
  if (needs_valuation && out.valuation.empty()) r.error(where, "missing 'valuation'");
  out.grid = r.int_list(t, "grid", where);
  if (out.op == "rho_lim" && out.grid.empty()) r.error(where, "missing 'grid'");
  for (auto g : out.grid) {
    if (g < 1) r.error(where, "grid indices must be positive");
  }
  out.s_max = r.integer(t, "s_max", where, false, 1);
  out.r_max = r.integer(t, "r_max", where, false, 1);
  out.cutoff = r.integer(t, "cutoff", where, false, 1);
  const bool needs_n = out.op == "rho_n" || out.op == "rho_hat_beta" || out.op == "lambda_table" ||
                       out.op == "beta_v_table" || out.op == "lambda_v_table";
  out.n = r.integer(t, "n", where, needs_n, 1);
  const bool needs_k = out.op == "veronese_scaling" || (out.op == "validate" && out.property == "veronese");
  out.k = r.integer(t, "k", where, needs_k, 1);
  out.window = r.integer(t, "window", where, false, 1);
  out.horizon = r.integer(t, "horizon", where, false, 1);
  out.kmax = r.integer(t, "kmax", where, false, 1);
  out.budget = r.integer(t, "budget", where, false, 2);
  if (t.contains("assertions")) out.assertions = parse_assertions(r, t.at("assertions"), where + ".assertions");
  return out;
}

void check_references(Reader& r, const JobConfig& c) {
  auto need_ideal = [&](const std::string& name, const std::string& where) {
    if (!name.empty() && !c.ideals.count(name)) r.error(where, "undefined ideal '" + name + "'");
  };
  auto need_family = [&](const std::string& name, const std::string& where) {
    if (!name.empty() && !c.families.count(name)) r.error(where, "undefined family '" + name + "'");
  };
  for (const auto& [name, f] : c.families) {
    const std::string where = "families." + name;
    need_ideal(f.ideal, where);
    for (const auto& p : f.prefix) need_ideal(p, where);
    need_ideal(f.tail.ideal, where);
    need_family(f.family, where);
    for (const auto& expr : f.residues) {
      for (const auto& term : expr) {
        for (const auto& factor : term) {
          need_ideal(factor.ideal, where);
          if (factor.member != "self") need_family(factor.member, where);
        }
      }
    }
  }
  // Cycles among family definitions.
  std::map<std::string, int> state;
  std::function<void(const std::string&)> visit = [&](const std::string& name) {
    auto it = c.families.find(name);
    if (it == c.families.end()) return;
    if (state[name] == 2) return;
    if (state[name] == 1) {
      r.error("families." + name, "cyclic family definition");
      return;
    }
    state[name] = 1;
    const FamilySpec& f = it->second;
    if (!f.family.empty()) visit(f.family);
    for (const auto& expr : f.residues) {
      for (const auto& term : expr) {
        for (const auto& factor : term) {
          if (!factor.member.empty() && factor.member != "self") visit(factor.member);
        }
      }
    }
    state[name] = 2;
  };
  for (const auto& entry : c.families) visit(entry.first);

  for (std::size_t i = 0; i < c.tasks.size(); ++i) {
    const TaskSpec& t = c.tasks[i];
    const std::string where = "tasks[" + std::to_string(i) + "]";
    for (const std::string* name : {&t.a, &t.b}) {
      if (!name->empty() && !c.families.count(*name) && !c.ideals.count(*name)) {
        r.error(where, "undefined family or ideal '" + *name + "'");
      }
    }
    need_family(t.family, where);
    need_ideal(t.ideal, where);
    need_ideal(t.prime, where);
    if (!t.valuation.empty()) {
      if (t.valuation.size() != c.vars) r.error(where, "valuation length differs from vars");
      bool positive = false;
      for (auto w : t.valuation) {
        if (w < 0) r.error(where, "valuation weights must be nonnegative");
        positive = positive || w > 0;
      }
      if (!positive) r.error(where, "valuation weights must not all vanish");
    }
  }
}

}  // namespace

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    result.errors.push_back(std::string("syntax: ") + e.what());
    return result;
  }
  Reader r;
  if (!doc.is_object()) {
    result.errors.push_back("config: top level must be an object");
    return result;
  }
  r.check_keys(doc, {"vars", "ideals", "families", "tasks", "defaults", "output"}, "config");
  JobConfig c;
  c.vars = static_cast<std::size_t>(r.integer(doc, "vars", "config", true, 1).value_or(0));

  if (doc.contains("ideals")) {
    const json& ideals = doc.at("ideals");
    if (!ideals.is_object()) r.error("ideals", "must be an object");
    else
      for (const auto& item : ideals.items()) {
        const std::string where = "ideals." + item.key();
        std::vector<std::vector<std::int64_t>> gens;
        bool ok = item.value().is_array();
        if (ok) {
          for (const auto& g : item.value()) {
            if (!g.is_array()) {
              ok = false;
              break;
            }
            std::vector<std::int64_t> e;
            for (const auto& x : g) {
              if (!x.is_number_integer() || x.get<std::int64_t>() < 0) {
                r.error(where, "exponents must be nonnegative integers");
                e.clear();
                break;
              }
              e.push_back(x.get<std::int64_t>());
            }
            if (c.vars && g.size() != c.vars) {
              r.error(where, "exponent vector of length " + std::to_string(g.size()) + " in a ring with " +
                                 std::to_string(c.vars) + " variables");
            }
            gens.push_back(std::move(e));
          }
        }
        if (!ok) r.error(where, "must be a list of exponent vectors");
        c.ideals[item.key()] = std::move(gens);
      }
  }
  if (doc.contains("families")) {
    const json& fams = doc.at("families");
    if (!fams.is_object()) r.error("families", "must be an object");
    else
      for (const auto& item : fams.items()) {
        c.families[item.key()] = parse_family(r, item.value(), "families." + item.key());
      }
  }
  if (doc.contains("tasks")) {
    const json& tasks = doc.at("tasks");
    if (!tasks.is_array()) r.error("tasks", "must be a list");
    else
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        c.tasks.push_back(parse_task(r, tasks[i], "tasks[" + std::to_string(i) + "]"));
      }
  }
  if (doc.contains("defaults")) {
    const json& d = doc.at("defaults");
    if (!d.is_object()) {
      r.error("defaults", "must be an object");
    } else {
      r.check_keys(d, {"window", "horizon", "kmax", "cutoff", "budget", "s_max", "r_max"}, "defaults");
      c.defaults.window = r.integer(d, "window", "defaults", false, 1);
      c.defaults.horizon = r.integer(d, "horizon", "defaults", false, 1);
      c.defaults.kmax = r.integer(d, "kmax", "defaults", false, 1);
      c.defaults.cutoff = r.integer(d, "cutoff", "defaults", false, 1);
      c.defaults.budget = r.integer(d, "budget", "defaults", false, 2);
      c.defaults.s_max = r.integer(d, "s_max", "defaults", false, 1);
      c.defaults.r_max = r.integer(d, "r_max", "defaults", false, 1);
    }
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) {
      r.error("output", "must be an object");
    } else {
      r.check_keys(o, {"format", "path"}, "output");
      if (o.contains("format")) c.output.format = r.string(o, "format", "output");
      if (c.output.format != "json" && c.output.format != "csv") r.error("output", "format must be json or csv");
      c.output.path = r.string(o, "path", "output");
    }
  }
  check_references(r, c);
  result.errors = std::move(r.errors);
  if (result.errors.empty()) result.config = std::move(c);
  return result;
}

json config_to_json(const JobConfig& c) {
  json doc = json::object();
  doc["vars"] = c.vars;
  json ideals = json::object();
  for (const auto& [name, gens] : c.ideals) ideals[name] = gens;
  doc["ideals"] = ideals;
  json fams = json::object();
  for (const auto& [name, f] : c.families) {
    json j = {{"kind", f.kind}};
    if (!f.ideal.empty()) j["ideal"] = f.ideal;
    if (f.kind == "ceiling") j["alpha"] = f.alpha.get_str();
    if (f.kind == "table" || (f.kind == "pattern" && !f.prefix.empty())) j["prefix"] = f.prefix;
    if (f.kind == "table" && f.tail.kind != "none") {
      json t = {{"kind", f.tail.kind}, {"ideal", f.tail.ideal}};
      if (f.tail.kind == "power") t["exponent"] = f.tail.exponent;
      j["tail"] = t;
    }
    if (f.kind == "pattern") {
      j["period"] = f.period;
      json res = json::array();
      for (const auto& expr : f.residues) {
        json e = json::array();
        for (const auto& term : expr) {
          json p = json::array();
          for (const auto& factor : term) {
            if (!factor.member.empty()) {
              p.push_back({{"member", factor.member}, {"offset", factor.offset}});
            } else {
              p.push_back({{"ideal", factor.ideal}, {"num", factor.num}, {"add", factor.add}, {"den", factor.den}});
            }
          }
          e.push_back(p);
        }
        res.push_back(e);
      }
      j["residues"] = res;
    }
    if (!f.family.empty()) j["family"] = f.family;
    if (f.kind == "veronese") j["k"] = f.k;
    fams[name] = j;
  }
  doc["families"] = fams;
  json tasks = json::array();
  for (const auto& t : c.tasks) {
    json j = {{"op", t.op}};
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) j[key] = v;
    };
    auto put_int = [&](const char* key, const std::optional<std::int64_t>& v) {
      if (v) j[key] = *v;
    };
    put("a", t.a);
    put("b", t.b);
    put("family", t.family);
    put("ideal", t.ideal);
    put("prime", t.prime);
    put("property", t.property);
    if (t.search != "auto") j["search"] = t.search;
    if (!t.valuation.empty()) j["valuation"] = t.valuation;
    if (!t.grid.empty()) j["grid"] = t.grid;
    put_int("s_max", t.s_max);
    put_int("r_max", t.r_max);
    put_int("cutoff", t.cutoff);
    put_int("n", t.n);
    put_int("k", t.k);
    put_int("window", t.window);
    put_int("horizon", t.horizon);
    put_int("kmax", t.kmax);
    put_int("budget", t.budget);
    if (!(t.assertions == Assertions{})) {
      const Assertions& a = t.assertions;
      json aj = json::object();
      if (a.finite_generation) aj["finite_generation"] = true;
      if (a.b_veronese) aj["b_veronese"] = *a.b_veronese;
      if (a.rho_hat) aj["rho_hat"] = a.rho_hat->get_str();
      if (a.valuation_equality) aj["valuation_equality"] = true;
      if (a.closure_gap) aj["closure_gap"] = *a.closure_gap;
      if (a.a_filtration) aj["a_filtration"] = true;
      if (a.b_filtration) aj["b_filtration"] = true;
      j["assertions"] = aj;
    }
    tasks.push_back(j);
  }
  doc["tasks"] = tasks;
  json d = json::object();
  auto put_default = [&](const char* key, const std::optional<std::int64_t>& v) {
    if (v) d[key] = *v;
  };
  put_default("window", c.defaults.window);
  put_default("horizon", c.defaults.horizon);
  put_default("kmax", c.defaults.kmax);
  put_default("cutoff", c.defaults.cutoff);
  put_default("budget", c.defaults.budget);
  put_default("s_max", c.defaults.s_max);
  put_default("r_max", c.defaults.r_max);
  doc["defaults"] = d;
  json o = {{"format", c.output.format}};
  if (!c.output.path.empty()) o["path"] = c.output.path;
  doc["output"] = o;
  return doc;
}

std::string config_digest(const JobConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : config_to_json(config).dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Encoding

json to_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

json to_json(const ExtendedRational& x) {
  if (x.is_finite()) return to_json(x.value());
  return x.to_string();
}

json to_json(const SequenceValue& v) {
  switch (v.tag()) {
    case SequenceValue::Tag::Finite: return {{"tag", "finite"}, {"value", v.value()}};
    case SequenceValue::Tag::ExceedsBound: return {{"tag", "exceeds"}, {"bound", v.value()}};
    case SequenceValue::Tag::EmptySet: return {{"tag", "empty"}};
  }
  return nullptr;
}

namespace {

json monomial_json(const Monomial& m) { return m.exponents(); }

json weights_json(const IntegerVector& w) {
  json out = json::array();
  for (const auto& x : w) out.push_back(x.get_str());
  return out;
}

json counterexample_json(const std::optional<Counterexample>& c) {
  if (!c) return nullptr;
  return {{"indices", c->indices}, {"witness", monomial_json(c->witness)}};
}

std::string sequence_tag(const SequenceValue& v) { return v.is_finite() ? "finite" : v.to_string(); }

std::vector<std::string> sequence_row(std::int64_t index, const SequenceValue& v) {
  return {std::to_string(index), v.is_finite() ? std::to_string(v.value()) : "", sequence_tag(v)};
}

}  // namespace

json to_json(const ValidationReport& r) {
  return {{"property", r.property},
          {"horizon", r.horizon},
          {"holds", r.holds},
          {"certificate", to_string(r.certificate)},
          {"counterexample", counterexample_json(r.counterexample)},
          {"note", r.note}};
}

json to_json(const ResurgenceReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"s", w.s}, {"r", w.r}, {"monomial", monomial_json(w.monomial)}});
  }
  json hypotheses = json::array();
  for (const auto& h : r.hypotheses) {
    hypotheses.push_back(
        {{"name", h.name}, {"status", to_string(h.status)}, {"horizon", h.horizon}, {"note", h.note}});
  }
  json series = json::array();
  for (const auto& p : r.series) series.push_back({{"index", p.index}, {"value", to_json(p.value)}, {"tag", p.tag}});
  return {{"quantity", to_string(r.quantity)},
          {"value", to_json(r.value)},
          {"certified", r.certified},
          {"labels", r.labels},
          {"witnesses", witnesses},
          {"hypotheses", hypotheses},
          {"search",
           {{"s_max", r.search.s_max},
            {"r_max", r.search.r_max},
            {"cutoff", r.search.cutoff},
            {"horizon", r.search.horizon},
            {"kmax", r.search.kmax},
            {"window", r.search.window}}},
          {"notes", r.notes},
          {"assertions_used", r.assertions_used},
          {"maximizer", r.maximizer ? weights_json(r.maximizer->weights()) : json(nullptr)},
          {"series", series}};
}

// ---------------------------------------------------------------------------
// Execution

bool RunReport::any_error() const {
  for (const auto& t : tasks) {
    if (!t.ok) return true;
  }
  return false;
}

namespace {

class Context {
 public:
  Context(const JobConfig& c) : config_(c) {}

  MonomialIdeal ideal(const std::string& name) const {
    std::vector<Monomial> gens;
    for (const auto& e : config_.ideals.at(name)) gens.emplace_back(e);
    return MonomialIdeal::from_generators(config_.vars, std::move(gens));
  }

  FamilyPtr family(const std::string& name) {
    if (auto it = built_.find(name); it != built_.end()) return it->second;
    if (!config_.families.count(name)) return GradedFamily::powers(ideal(name));
    const FamilySpec& f = config_.families.at(name);
    FamilyPtr out;
    if (f.kind == "powers") out = GradedFamily::powers(ideal(f.ideal));
    else if (f.kind == "symbolic") out = GradedFamily::symbolic(ideal(f.ideal));
    else if (f.kind == "closure_powers") out = GradedFamily::closure_powers(ideal(f.ideal));
    else if (f.kind == "constant") out = GradedFamily::constant(ideal(f.ideal));
    else if (f.kind == "ceiling") out = GradedFamily::ceiling(ideal(f.ideal), f.alpha);
    else if (f.kind == "closure_of") out = GradedFamily::closure_of(family(f.family));
    else if (f.kind == "veronese") out = GradedFamily::veronese(family(f.family), f.k);
    else if (f.kind == "table") {
      std::vector<MonomialIdeal> prefix;
      for (const auto& p : f.prefix) prefix.push_back(ideal(p));
      TableTail tail;
      if (f.tail.kind == "constant") {
        tail.kind = TableTail::Kind::Constant;
        tail.ideal = ideal(f.tail.ideal);
      } else if (f.tail.kind == "power") {
        tail.kind = TableTail::Kind::Power;
        tail.ideal = ideal(f.tail.ideal);
        if (f.tail.exponent == "sqrt") tail.exponent.kind = ExponentFn::Kind::Sqrt;
        else if (f.tail.exponent == "log2") tail.exponent.kind = ExponentFn::Kind::Log2;
        else tail.exponent.alpha = Rational(f.tail.exponent);
      }
      out = GradedFamily::table(config_.vars, std::move(prefix), std::move(tail));
    } else if (f.kind == "pattern") {
      Pattern p;
      p.period = static_cast<std::size_t>(f.period);
      for (const auto& name_p : f.prefix) p.prefix.push_back(ideal(name_p));
      for (const auto& expr : f.residues) {
        PatternExpr e;
        for (const auto& term : expr) {
          PatternTerm t;
          for (const auto& factor : term) {
            if (!factor.member.empty()) {
              t.push_back(PatternFactor::member(factor.member == "self" ? nullptr : family(factor.member),
                                                factor.offset));
            } else {
              t.push_back(PatternFactor::affine(ideal(factor.ideal), factor.num, factor.add, factor.den));
            }
          }
          e.push_back(std::move(t));
        }
        p.residues.push_back(std::move(e));
      }
      out = GradedFamily::pattern(config_.vars, std::move(p));
    }
    built_[name] = out;
    return out;
  }

 private:
  const JobConfig& config_;
  std::map<std::string, FamilyPtr> built_;
};

std::int64_t pick(std::optional<std::int64_t> flag, std::optional<std::int64_t> task,
                  std::optional<std::int64_t> config, std::int64_t builtin) {
  if (flag) return *flag;
  if (task) return *task;
  if (config) return *config;
  return builtin;
}

Search search_mode(const std::string& s) {
  if (s == "binary") return Search::Binary;
  if (s == "linear") return Search::Linear;
  return Search::Auto;
}

Table series_table(const std::string& name, const ResurgenceReport& r) {
  Table t{name, {}};
  for (const auto& p : r.series) t.rows.push_back({std::to_string(p.index), p.value.to_string(), p.tag});
  return t;
}

void execute(const TaskSpec& t, const JobConfig& c, const Overrides& o, Context& ctx, TaskOutcome& out) {
  SearchOptions opts;
  opts.window = pick(o.window, t.window, c.defaults.window, opts.window);
  opts.horizon = pick(o.horizon, t.horizon, c.defaults.horizon, opts.horizon);
  opts.kmax = pick(o.kmax, t.kmax, c.defaults.kmax, opts.kmax);
  opts.budget = pick(std::nullopt, t.budget, c.defaults.budget, opts.budget);
  const std::int64_t cutoff = pick(o.cutoff, t.cutoff, c.defaults.cutoff, 1000);
  const std::int64_t s_max = pick(std::nullopt, t.s_max, c.defaults.s_max, 20);
  const std::int64_t r_max = pick(std::nullopt, t.r_max, c.defaults.r_max, 20);
  const Search mode = search_mode(t.search);
  const Assertions& as = t.assertions;
  json& res = out.result;

  FamilyPtr a, b;
  if (!t.a.empty()) a = ctx.family(t.a);
  if (!t.b.empty()) b = ctx.family(t.b);
  std::optional<MonomialValuation> v;
  if (!t.valuation.empty()) {
    IntegerVector w;
    for (auto x : t.valuation) w.emplace_back(static_cast<long>(x));
    v = MonomialValuation(w);
  }

  if (t.op == "beta_table" || t.op == "lambda_table" || t.op == "beta_v_table" || t.op == "lambda_v_table") {
    const std::int64_t last = t.op == "beta_table" ? s_max : *t.n;
    Table table{t.op == "beta_table" ? "beta" : t.op.substr(0, t.op.size() - 6), {}};
    json values = json::array();
    for (std::int64_t i = 1; i <= last; ++i) {
      SequenceValue x = t.op == "beta_table"     ? beta(*a, *b, i, cutoff, mode)
                        : t.op == "lambda_table" ? lambda(*a, *b, i, cutoff, mode)
                        : t.op == "beta_v_table" ? beta_v(*v, *a, *b, i, cutoff, mode)
                                                 : lambda_v(*v, *a, *b, i, cutoff, mode);
      values.push_back(to_json(x));
      table.rows.push_back(sequence_row(i, x));
    }
    res = {{"cutoff", cutoff}, {"values", values}};
    out.tables.push_back(std::move(table));
  } else if (t.op == "nc_table") {
    json entries = json::array();
    Table table{"nc", {}};
    for (const auto& e : nc_table(*a, *b, s_max, cutoff, mode)) {
      entries.push_back({{"s", e.s},
                         {"beta", to_json(e.beta)},
                         {"witness", e.witness ? monomial_json(*e.witness) : json(nullptr)}});
      table.rows.push_back(sequence_row(e.s, e.beta));
    }
    res = {{"cutoff", cutoff}, {"entries", entries}};
    out.tables.push_back(std::move(table));
  } else if (t.op == "rho_window" || t.op == "rho_n" || t.op == "rho_lim" || t.op == "rho_hat_rees" ||
             t.op == "rho_hat_beta" || t.op == "rho_exact") {
    ResurgenceReport r;
    if (t.op == "rho_window") r = rho_window(*a, *b, s_max, r_max, mode);
    else if (t.op == "rho_n") r = rho_n(*a, *b, *t.n, s_max, cutoff, mode);
    else if (t.op == "rho_lim") r = rho_lim_estimate(*a, *b, t.grid, s_max, cutoff, opts, as);
    else if (t.op == "rho_hat_rees") r = rho_hat_rees(*a, *b, opts, as);
    else if (t.op == "rho_hat_beta") r = rho_hat_beta_limit(*a, *b, *t.n, cutoff, opts, as);
    else r = rho_exact_certified(*a, *b, opts, as);
    res = to_json(r);
    if (!r.series.empty()) out.tables.push_back(series_table(t.op, r));
  } else if (t.op == "waldschmidt") {
    FamilyPtr f = ctx.family(t.family);
    WaldschmidtResult w = skew_waldschmidt(*v, *f, static_cast<std::size_t>(opts.window), as.b_veronese, opts.kmax);
    res = {{"value", to_json(w.upper)},
           {"lower", w.lower ? to_json(*w.lower) : json(nullptr)},
           {"certified", w.certified},
           {"method", to_string(w.method)},
           {"note", w.note}};
    if (w.certificate) {
      json dual = json::array();
      for (const auto& u : w.certificate->dual) dual.push_back(to_json(u));
      json primal = json::array();
      for (const auto& y : w.certificate->argmin) primal.push_back(to_json(y));
      res["certificate"] = {{"primal", primal}, {"dual", dual}};
    }
  } else if (t.op == "waldschmidt_ratio") {
    ResurgenceReport r;
    r.quantity = Quantity::WaldschmidtRatio;
    r.search.window = opts.window;
    r.search.kmax = opts.kmax;
    const auto win = static_cast<std::size_t>(opts.window);
    WaldschmidtResult wa = skew_waldschmidt(*v, *a, win, std::nullopt, opts.kmax);
    WaldschmidtResult wb = skew_waldschmidt(*v, *b, win, as.b_veronese, opts.kmax);
    r.value = wa.value() == 0 ? ExtendedRational::pos_inf() : ExtendedRational(wb.value() / wa.value());
    r.certified = wa.certified && wb.certified;
    r.maximizer = *v;
    r.labels.push_back("lower bound for rho_hat(a, closure(b))");
    r.notes.push_back("v_hat(a): " + wa.note);
    r.notes.push_back("v_hat(b): " + wb.note);
    res = to_json(r);
  } else if (t.op == "validate") {
    FamilyPtr f = ctx.family(t.family);
    const auto h = static_cast<std::size_t>(opts.horizon);
    ValidationReport r = t.property == "graded"       ? validate_graded(*f, h)
                         : t.property == "filtration" ? validate_filtration(*f, h)
                                                      : is_standard_veronese(*f, *t.k, h);
    res = to_json(r);
  } else if (t.op == "veronese_scaling") {
    VeroneseScalingReport r = veronese_scaling_check(*a, b, *t.k, s_max, r_max, opts, as);
    res = {{"validation", to_json(r.validation)},
           {"rho_powers", to_json(r.rho_powers)},
           {"rho_family", to_json(r.rho_family)},
           {"rees_powers", r.rees_powers ? to_json(*r.rees_powers) : json(nullptr)},
           {"rees_family", r.rees_family ? to_json(*r.rees_family) : json(nullptr)},
           {"rees_equal", r.rees_equal ? json(*r.rees_equal) : json(nullptr)}};
  } else if (t.op == "linearly_finer") {
    LinearlyFinerReport r =
        linearly_finer_check(*a, *b, static_cast<std::size_t>(opts.window), s_max, r_max, mode);
    res = {{"finer", r.finer},
           {"rho_star", to_json(r.rho_star)},
           {"f", r.f ? json{{"slope", r.f->slope}, {"intercept", r.f->intercept}} : json(nullptr)},
           {"counterexample", counterexample_json(r.counterexample)},
           {"window", r.window},
           {"note", r.note}};
  } else if (t.op == "containment_order") {
    res = {{"order", containment_order(ctx.ideal(t.ideal), ctx.ideal(t.prime), cutoff)}};
  } else if (t.op == "integral_closure") {
    MonomialIdeal closure = integral_closure(ctx.ideal(t.ideal));
    json gens = json::array();
    for (const auto& g : closure.materialized()) gens.push_back(monomial_json(g));
    res = {{"generators", gens}};
  } else if (t.op == "rees_valuations") {
    json vals = json::array();
    for (const auto& rv : rees_valuations(ctx.ideal(t.ideal)).valuations) {
      vals.push_back({{"weights", weights_json(rv.weights)}, {"value", rv.value.get_str()}});
    }
    res = {{"valuations", vals}};
  }
}

}  // namespace

RunReport run(const JobConfig& config, const Overrides& overrides) {
  RunReport report;
  report.digest = config_digest(config);
  Context ctx(config);
  for (std::size_t i = 0; i < config.tasks.size(); ++i) {
    TaskOutcome out;
    out.index = i;
    out.op = config.tasks[i].op;
    const auto start = std::chrono::steady_clock::now();
    try {
      execute(config.tasks[i], config, overrides, ctx, out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
      out.result = nullptr;
      out.tables.clear();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.tasks.push_back(std::move(out));
  }
  return report;
}

std::string emit_json(const RunReport& report, bool include_timing) {
  json doc = json::object();
  doc["tool"] = "resurgence";
  doc["version"] = report.version;
  doc["config_digest"] = report.digest;
  json tasks = json::array();
  for (const auto& t : report.tasks) {
    json j = {{"index", t.index}, {"op", t.op}, {"status", t.ok ? "ok" : "error"}};
    if (!t.ok) j["error"] = t.error;
    j["result"] = t.result;
    tasks.push_back(j);
  }
  doc["tasks"] = tasks;
  if (include_timing) {
    json secs = json::array();
    for (const auto& t : report.tasks) secs.push_back(t.seconds);
    doc["timing"] = {{"unit", "seconds"}, {"tasks", secs}};
  }
  return doc.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> emit_csv(const RunReport& report) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& t : report.tasks) {
    for (const auto& table : t.tables) {
      std::string body = "index,value,tag\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) body += (i ? "," : "") + row[i];
        body += "\n";
      }
      files.emplace_back("task" + std::to_string(t.index) + "_" + table.name + ".csv", std::move(body));
    }
  }
  return files;
}

}  // namespace resurgence
