#include "ptor/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ptor::io {

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  fail(Err::Schema, path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::set<std::string>& required, const std::string& path) {
  require_object(j, path);
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) schema_fail(path + "." + k, "unknown field");
  for (const auto& k : required)
    if (!j.contains(k)) schema_fail(path, "missing required field '" + k + "'");
}

long get_long(const json& j, const std::string& key, const std::string& path) {
  if (!j.at(key).is_number_integer()) schema_fail(path + "." + key, "expected an integer");
  return j.at(key).get<long>();
}

mpq_class parse_rational(const std::string& s, const std::string& path) {
  try {
    mpq_class q;
    if (q.set_str(s, 10) != 0) schema_fail(path, "malformed rational '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    schema_fail(path, "malformed rational '" + s + "'");
  }
}

} // namespace

json scalar_to_json(const PAdic& a) {
  json j;
  j["p"] = a.p();
  switch (a.kind()) {
    case PAdic::Kind::ExactZero:
      j["val"] = "inf";
      break;
    case PAdic::Kind::BigOh:
      j["val"] = a.val();
      j["unit"] = "0";
      j["prec"] = 0;
      break;
    case PAdic::Kind::Regular:
      j["val"] = a.val();
      j["unit"] = a.unit().get_str();
      j["prec"] = a.prec();
      break;
  }
  return j;
}

json scalar_to_json(const mpq_class& q, long p, int prec) {
  return scalar_to_json(PAdic::from_rational(p, q, prec));
}

PAdic scalar_from_json(const json& j, const std::string& path) {
  check_keys(j, {"p", "val", "unit", "prec"}, {"p", "val"}, path);
  long p = get_long(j, "p", path);
  if (p < 2) schema_fail(path + ".p", "p must be a prime >= 2");
  if (j.at("val").is_string()) {
    if (j.at("val").get<std::string>() != "inf") schema_fail(path + ".val", "expected int or 'inf'");
    return PAdic::exact_zero(p);
  }
  long val = get_long(j, "val", path);
  if (!j.contains("unit") || !j.contains("prec"))
    schema_fail(path, "finite-valuation scalar needs 'unit' and 'prec'");
  int prec = static_cast<int>(get_long(j, "prec", path));
  std::string us = j.at("unit").is_string() ? j.at("unit").get<std::string>()
                                            : j.at("unit").dump();
  if (prec == 0) {
    if (us != "0") schema_fail(path, "prec 0 is reserved for O(p^k) values");
    return PAdic::big_oh(p, val);
  }
  mpz_class unit;
  if (unit.set_str(us, 10) != 0) schema_fail(path + ".unit", "malformed integer");
  try {
    return PAdic::from_parts(p, val, unit, prec);
  } catch (const Error& e) {
    schema_fail(path, e.what());
  }
}

mpq_class scalar_rational_from_json(const json& j, long expect_p, const std::string& path) {
  PAdic a = scalar_from_json(j, path);
  if (expect_p != 0 && a.p() != expect_p)
    schema_fail(path + ".p", "prime differs from the session prime");
  if (a.kind() == PAdic::Kind::BigOh)
    schema_fail(path, "O(p^k) coefficients are not accepted as exact input");
  return a.to_rational();
}

namespace {

std::vector<std::string> var_names(const RingSig& sig) {
  std::vector<std::string> v;
  for (int i = 0; i < sig.nx; ++i) v.push_back("x" + std::to_string(i + 1));
  if (sig.has_z) v.push_back("z");
  return v;
}

} // namespace

json series_to_json(const Tate& f, int prec) {
  json j;
  j["vars"] = var_names(f.sig());
  j["order"] = "grlex";
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) {
    json t;
    t["exp"] = e;
    t["coeff"] = scalar_to_json(c, f.sig().p, prec);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Tate series_from_json(const json& j, long p, const std::string& path) {
  check_keys(j, {"vars", "order", "terms"}, {"vars", "terms"}, path);
  if (!j.at("vars").is_array()) schema_fail(path + ".vars", "expected an array");
  RingSig sig;
  sig.p = p;
  const auto& vars = j.at("vars");
  int nx = 0;
  bool has_z = false;
  for (size_t i = 0; i < vars.size(); ++i) {
    std::string name = vars[i].is_string() ? vars[i].get<std::string>() : "";
    if (name == "z") {
      if (i + 1 != vars.size()) schema_fail(path + ".vars", "z must come last");
      has_z = true;
    } else if (name == "x" + std::to_string(nx + 1)) {
      ++nx;
    } else {
      schema_fail(path + ".vars[" + std::to_string(i) + "]",
                  "expected x1..xd in order, then optional z");
    }
  }
  sig.nx = nx;
  sig.has_z = has_z;
  if (j.contains("order") && j.at("order").get<std::string>() != "grlex")
    schema_fail(path + ".order", "only grlex is supported");
  Tate f(sig);
  const auto& terms = j.at("terms");
  if (!terms.is_array()) schema_fail(path + ".terms", "expected an array");
  for (size_t t = 0; t < terms.size(); ++t) {
    std::string tp = path + ".terms[" + std::to_string(t) + "]";
    check_keys(terms[t], {"exp", "coeff"}, {"exp", "coeff"}, tp);
    const auto& ej = terms[t].at("exp");
    if (!ej.is_array() || ej.size() != static_cast<size_t>(sig.nvars()))
      schema_fail(tp + ".exp", "exponent vector must have length " + std::to_string(sig.nvars()));
    Exps e(sig.nvars());
    for (size_t k = 0; k < ej.size(); ++k) {
      if (!ej[k].is_number_integer() || ej[k].get<long>() < 0)
        schema_fail(tp + ".exp[" + std::to_string(k) + "]", "expected a nonnegative integer");
      e[k] = ej[k].get<int>();
    }
    mpq_class c = scalar_rational_from_json(terms[t].at("coeff"), p, tp + ".coeff");
    if (f.coeff(e)) schema_fail(tp + ".exp", "duplicate exponent vector");
    f.set_coeff(e, c);
  }
  return f;
}

json spec_to_json(const AutomorphismSpec& s, int prec) {
  json j;
  j["p"] = s.p();
  j["c"] = s.c.get_str();
  json imgs = json::array();
  for (const auto& f : s.images) imgs.push_back(series_to_json(f, prec));
  j["images"] = std::move(imgs);
  if (s.inverse_images) {
    json inv = json::array();
    for (const auto& f : *s.inverse_images) inv.push_back(series_to_json(f, prec));
    j["inverse_images"] = std::move(inv);
  }
  return j;
}

AutomorphismSpec spec_from_json(const json& j, const std::string& path) {
  check_keys(j, {"p", "c", "images", "inverse_images"}, {"p", "c", "images"}, path);
  AutomorphismSpec s;
  long p = get_long(j, "p", path);
  mpq_class c = j.at("c").is_string() ? parse_rational(j.at("c").get<std::string>(), path + ".c")
                                      : mpq_class(get_long(j, "c", path));
  const auto& imgs = j.at("images");
  if (!imgs.is_array() || imgs.empty()) schema_fail(path + ".images", "expected a nonempty array");
  s.sig = RingSig{static_cast<int>(imgs.size()), false, p};
  s.c = c;
  for (size_t i = 0; i < imgs.size(); ++i) {
    Tate f = series_from_json(imgs[i], p, path + ".images[" + std::to_string(i) + "]");
    if (!(f.sig() == s.sig))
      schema_fail(path + ".images[" + std::to_string(i) + "]",
                  "image ring must be S = K<x1..x" + std::to_string(s.sig.nx) + ">");
    s.images.push_back(std::move(f));
  }
  if (j.contains("inverse_images")) {
    const auto& inv = j.at("inverse_images");
    if (!inv.is_array() || inv.size() != imgs.size())
      schema_fail(path + ".inverse_images", "expected one series per variable");
    std::vector<Tate> invs;
    for (size_t i = 0; i < inv.size(); ++i)
      invs.push_back(series_from_json(inv[i], p, path + ".inverse_images[" + std::to_string(i) + "]"));
    s.inverse_images = std::move(invs);
  }
  validate_contraction(s);
  return s;
}

json presentation_to_json(const Presentation& p, int prec) {
  json j;
  j["ring"] = p.sig.has_z ? "Sz" : "S";
  j["nx"] = p.sig.nx;
  j["p"] = p.sig.p;
  j["rank"] = p.rank;
  json rels = json::array();
  for (const auto& rel : p.relations) {
    json row = json::array();
    for (const auto& f : rel) row.push_back(series_to_json(f, prec));
    rels.push_back(std::move(row));
  }
  j["relations"] = std::move(rels);
  return j;
}

Presentation presentation_from_json(const json& j, long p_hint, const std::string& path) {
  check_keys(j, {"ring", "nx", "p", "rank", "relations"}, {"ring", "rank", "relations"}, path);
  std::string ring = j.at("ring").get<std::string>();
  if (ring != "S" && ring != "Sz") schema_fail(path + ".ring", "expected 'S' or 'Sz'");
  Presentation pres;
  long p = j.contains("p") ? get_long(j, "p", path) : p_hint;
  if (p < 2) schema_fail(path, "prime not determined; give 'p'");
  pres.rank = static_cast<int>(get_long(j, "rank", path));
  if (pres.rank < 0) schema_fail(path + ".rank", "rank must be >= 0");
  const auto& rels = j.at("relations");
  if (!rels.is_array()) schema_fail(path + ".relations", "expected an array");
  std::optional<int> nx;
  if (j.contains("nx")) nx = static_cast<int>(get_long(j, "nx", path));
  std::vector<VecPoly> parsed;
  for (size_t r = 0; r < rels.size(); ++r) {
    std::string rp = path + ".relations[" + std::to_string(r) + "]";
    if (!rels[r].is_array() || rels[r].size() != static_cast<size_t>(pres.rank))
      schema_fail(rp, "relation must be an array of length rank");
    VecPoly v;
    for (size_t c = 0; c < rels[r].size(); ++c) {
      Tate f = series_from_json(rels[r][c], p, rp + "[" + std::to_string(c) + "]");
      if (f.sig().has_z != (ring == "Sz"))
        schema_fail(rp + "[" + std::to_string(c) + "]", "series ring does not match 'ring'");
      if (nx && f.sig().nx != *nx)
        schema_fail(rp + "[" + std::to_string(c) + "]", "inconsistent number of x variables");
      if (!nx) nx = f.sig().nx;
      v.push_back(std::move(f));
    }
    parsed.push_back(std::move(v));
  }
  if (!nx) {
    if (!j.contains("nx")) schema_fail(path, "empty relations need explicit 'nx'");
    nx = static_cast<int>(get_long(j, "nx", path));
  }
  pres.sig = RingSig{*nx, ring == "Sz", p};
  // re-normalize signatures of parsed series (possible when rank rows are empty)
  pres.relations = std::move(parsed);
  return pres;
}

json certificate_to_json(const Certificate& c) {
  json j;
  j["p"] = c.p;
  j["r"] = c.r;
  j["modulus"] = c.modulus;
  j["residues"] = c.residues;
  j["added"] = c.added;
  j["removed"] = c.removed;
  j["window"] = json::array({c.win_lo, c.win_hi});
  json balls = json::array();
  for (const auto& b : c.balls) {
    json bj;
    bj["center"] = b.center.get_str();
    bj["radius_exp"] = b.radius_exp;
    if (b.g_val == VAL_INF)
      bj["gauss_norm_g"] = "inf";
    else
      bj["gauss_norm_g"] = b.g_val;
    balls.push_back(std::move(bj));
  }
  j["balls"] = std::move(balls);
  j["prec"] = c.session_prec;
  return j;
}

Certificate certificate_from_json(const json& j, const std::string& path) {
  check_keys(j, {"p", "r", "modulus", "residues", "added", "removed", "window", "balls", "prec"},
             {"p", "residues", "added", "removed", "window"}, path);
  Certificate c;
  c.p = get_long(j, "p", path);
  if (j.contains("r")) c.r = static_cast<int>(get_long(j, "r", path));
  if (j.contains("modulus"))
    c.modulus = get_long(j, "modulus", path);
  else if (c.p > 0 && c.r >= 0) {
    c.modulus = 1;
    for (int k = 0; k < c.r; ++k) c.modulus *= c.p;
  } else {
    schema_fail(path, "need 'modulus' or a p-power exponent 'r'");
  }
  if (c.modulus < 1) schema_fail(path + ".modulus", "modulus must be >= 1");
  auto read_longs = [&](const char* key) {
    std::vector<long> v;
    for (const auto& x : j.at(key)) {
      if (!x.is_number_integer()) schema_fail(path + "." + key, "expected integers");
      v.push_back(x.get<long>());
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  c.residues = read_longs("residues");
  for (long r : c.residues)
    if (r < 0 || r >= c.modulus) schema_fail(path + ".residues", "residue out of range");
  c.added = read_longs("added");
  c.removed = read_longs("removed");
  const auto& w = j.at("window");
  if (!w.is_array() || w.size() != 2) schema_fail(path + ".window", "expected [lo, hi]");
  c.win_lo = w[0].get<long>();
  c.win_hi = w[1].get<long>();
  if (j.contains("prec")) c.session_prec = static_cast<int>(get_long(j, "prec", path));
  if (j.contains("balls")) {
    for (size_t i = 0; i < j.at("balls").size(); ++i) {
      const auto& bj = j.at("balls")[i];
      std::string bp = path + ".balls[" + std::to_string(i) + "]";
      check_keys(bj, {"center", "radius_exp", "gauss_norm_g"}, {"center", "radius_exp"}, bp);
      BallWitness b;
      b.center = bj.at("center").is_string()
                     ? parse_rational(bj.at("center").get<std::string>(), bp + ".center")
                     : mpq_class(bj.at("center").get<long>());
      b.radius_exp = get_long(bj, "radius_exp", bp);
      if (bj.contains("gauss_norm_g"))
        b.g_val = bj.at("gauss_norm_g").is_string() ? VAL_INF
                                                    : get_long(bj, "gauss_norm_g", bp);
      c.balls.push_back(std::move(b));
    }
  }
  return c;
}

std::string certificate_table(const Certificate& c) {
  std::ostringstream os;
  os << "window [" << c.win_lo << ", " << c.win_hi << "]  prec " << c.session_prec << "\n";
  if (c.residues.empty()) {
    os << "progression: (empty)\n";
  } else {
    for (long r : c.residues) {
      os << "n = " << r << " (mod " << c.modulus << ")";
      os << "\n";
    }
  }
  auto list = [&](const char* name, const std::vector<long>& v) {
    os << name << ": {";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "}\n";
  };
  list("added", c.added);
  list("removed", c.removed);
  os << "balls: " << c.balls.size() << "\n";
  for (const auto& b : c.balls) {
    os << "  center " << b.center.get_str() << "  radius p^-" << b.radius_exp << "  ||g|| ";
    if (b.g_val == VAL_INF)
      os << "0";
    else
      os << "p^" << -b.g_val;
    os << "\n";
  }
  return os.str();
}

json support_to_json(const SupportDatum& s) {
  json j;
  json comps = json::array();
  for (const auto& c : s.components) {
    json cj;
    cj["id"] = c.id;
    cj["kind"] = c.is_curve ? "curve" : "point";
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  json orbits = json::array();
  for (const auto& cyc : s.cycles) orbits.push_back(cyc);
  for (const auto& id : s.aperiodic) {
    json oj;
    oj["id"] = id;
    oj["aperiodic"] = true;
    orbits.push_back(std::move(oj));
  }
  j["orbits"] = std::move(orbits);
  return j;
}

SupportDatum support_from_json(const json& j, const std::string& path) {
  check_keys(j, {"components", "orbits"}, {"components", "orbits"}, path);
  SupportDatum s;
  const auto& comps = j.at("components");
  if (!comps.is_array()) schema_fail(path + ".components", "expected an array");
  for (size_t i = 0; i < comps.size(); ++i) {
    std::string cp = path + ".components[" + std::to_string(i) + "]";
    check_keys(comps[i], {"id", "kind"}, {"id", "kind"}, cp);
    SurfaceComponent c;
    c.id = comps[i].at("id").get<std::string>();
    std::string kind = comps[i].at("kind").get<std::string>();
    if (kind != "point" && kind != "curve") schema_fail(cp + ".kind", "expected 'point' or 'curve'");
    c.is_curve = kind == "curve";
    s.components.push_back(std::move(c));
  }
  const auto& orbits = j.at("orbits");
  if (!orbits.is_array()) schema_fail(path + ".orbits", "expected an array");
  for (size_t i = 0; i < orbits.size(); ++i) {
    std::string op = path + ".orbits[" + std::to_string(i) + "]";
    if (orbits[i].is_array()) {
      std::vector<std::string> cyc;
      for (const auto& id : orbits[i]) cyc.push_back(id.get<std::string>());
      if (cyc.empty()) schema_fail(op, "empty cycle");
      s.cycles.push_back(std::move(cyc));
    } else if (orbits[i].is_object()) {
      check_keys(orbits[i], {"id", "aperiodic"}, {"id", "aperiodic"}, op);
      if (!orbits[i].at("aperiodic").get<bool>()) schema_fail(op, "aperiodic must be true");
      s.aperiodic.insert(orbits[i].at("id").get<std::string>());
    } else {
      schema_fail(op, "expected a cycle array or an aperiodic marker");
    }
  }
  return s;
}

ProblemFile parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Err::Schema, std::string("malformed JSON: ") + e.what());
  }
  check_keys(j,
             {"schema_version", "command", "prec", "rmax", "r_max", "window", "out", "format",
              "payload"},
             {"schema_version", "command", "payload"}, "$");
  ProblemFile pf;
  pf.schema_version = static_cast<int>(get_long(j, "schema_version", "$"));
  if (pf.schema_version != 1) schema_fail("$.schema_version", "only version 1 is supported");
  pf.command = j.at("command").get<std::string>();
  static const std::set<std::string> commands{"sigma-z", "tor",    "strassman",     "dml",
                                              "surface", "oracle", "cross-validate"};
  if (!commands.count(pf.command)) schema_fail("$.command", "unknown command '" + pf.command + "'");
  if (j.contains("prec")) {
    pf.prec = static_cast<int>(get_long(j, "prec", "$"));
    if (pf.prec < 4 || pf.prec > 4096) schema_fail("$.prec", "prec must lie in [4, 4096]");
  }
  for (const char* key : {"rmax", "r_max"})
    if (j.contains(key)) {
      pf.r_max = static_cast<int>(get_long(j, key, "$"));
      if (pf.r_max < 0 || pf.r_max > 24) schema_fail(std::string("$.") + key, "must lie in [0, 24]");
    }
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer())
      schema_fail("$.window", "expected [lo, hi]");
    pf.window = {w[0].get<long>(), w[1].get<long>()};
    if (pf.window->first > pf.window->second) schema_fail("$.window", "lo must be <= hi");
  }
  if (j.contains("out")) pf.out = j.at("out").get<std::string>();
  if (j.contains("format")) {
    pf.format = j.at("format").get<std::string>();
    if (pf.format != "json" && pf.format != "table")
      schema_fail("$.format", "expected 'json' or 'table'");
  }
  pf.payload = j.at("payload");
  return pf;
}

} // namespace ptor::io
