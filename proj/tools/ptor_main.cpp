// Batch CLI: reads a problem file, dispatches to the owning module, writes
// the certificate JSON and a summary table.  Exit codes: 0 ok, 2 schema,
// 3 precision, 4 undecided, 5 cap.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "ptor/io.hpp"
#include "ptor/strassman.hpp"

namespace {

using ptor::io::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) ptor::fail(ptor::Err::Schema, "cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string file;
  std::optional<int> prec;
  std::optional<int> rmax;
  std::vector<long> window;
  std::string out;
  std::string format;
  bool serial = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("file", o.file, "problem file (JSON)")->required();
  cmd->add_option("--prec", o.prec, "working precision (unit digits)");
  cmd->add_option("--rmax", o.rmax, "max progression exponent r");
  cmd->add_option("--window", o.window, "scan window: lo hi")->expected(2);
  cmd->add_option("--out", o.out, "output path for the JSON artifact");
  cmd->add_option("--format", o.format, "json|table");
  cmd->add_flag("--serial", o.serial, "disable the OpenMP scan kernels");
  cmd->add_option("--threads", o.threads, "OpenMP thread count");
}

struct Loaded {
  ptor::io::ProblemFile pf;
  ptor::Ctx ctx;
  long win_lo = 0, win_hi = 0;
  bool has_window = false;
  std::string format;
  std::string out;
};

Loaded load(const CommonOpts& o, const std::string& expect_cmd) {
  Loaded L;
  L.pf = ptor::io::parse_problem(read_file(o.file));
  if (L.pf.command != expect_cmd)
    ptor::fail(ptor::Err::Schema,
               "problem file declares command '" + L.pf.command + "', invoked as '" + expect_cmd + "'");
  if (o.prec) L.pf.prec = *o.prec;
  if (o.rmax) L.pf.r_max = *o.rmax;
  if (!o.window.empty()) L.pf.window = {o.window[0], o.window[1]};
  L.ctx.prec = L.pf.prec;
  L.ctx.parallel = !o.serial;
  if (o.threads > 0) omp_set_num_threads(o.threads);
  if (L.pf.window) {
    L.win_lo = L.pf.window->first;
    L.win_hi = L.pf.window->second;
    L.has_window = true;
  }
  L.format = !o.format.empty() ? o.format : (!L.pf.format.empty() ? L.pf.format : "json");
  L.out = !o.out.empty() ? o.out : L.pf.out;
  return L;
}

void emit(const Loaded& L, const json& artifact, const std::string& table) {
  if (!L.out.empty()) {
    std::ofstream f(L.out);
    f << artifact.dump(2) << "\n";
  }
  if (L.format == "table")
    std::cout << table;
  else
    std::cout << artifact.dump(2) << "\n";
}

ptor::DmlProblem dml_problem_from_payload(const Loaded& L) {
  const json& p = L.pf.payload;
  ptor::DmlProblem prob;
  if (!p.contains("spec") || !p.contains("M") || !p.contains("N") || !p.contains("i"))
    ptor::fail(ptor::Err::Schema, "$.payload: dml problems need spec, M, N, i");
  prob.spec = ptor::io::spec_from_json(p.at("spec"), "$.payload.spec");
  prob.M = ptor::io::presentation_from_json(p.at("M"), prob.spec.p(), "$.payload.M");
  prob.N = ptor::io::presentation_from_json(p.at("N"), prob.spec.p(), "$.payload.N");
  prob.i = p.at("i").get<int>();
  prob.r_max = L.pf.r_max;
  if (L.has_window) {
    prob.win_lo = L.win_lo;
    prob.win_hi = L.win_hi;
  }
  return prob;
}

int run_sigma_z(const CommonOpts& o) {
  Loaded L = load(o, "sigma-z");
  const json& p = L.pf.payload;
  if (!p.contains("spec") || !p.contains("b"))
    ptor::fail(ptor::Err::Schema, "$.payload: sigma-z needs spec and b");
  ptor::AutomorphismSpec spec = ptor::io::spec_from_json(p.at("spec"), "$.payload.spec");
  ptor::Tate b = ptor::io::series_from_json(p.at("b"), spec.p(), "$.payload.b");
  ptor::SigmaZ sz = ptor::sigma_z(spec, b, L.ctx.prec);
  json out;
  out["value"] = ptor::io::series_to_json(sz.value, L.ctx.prec);
  out["trunc_m"] = sz.trunc_m;
  out["tail_val"] = sz.tail_val;
  std::ostringstream table;
  table << "sigma^z(b) truncated at m = " << sz.trunc_m << ", tail below p^-" << sz.tail_val
        << "\n"
        << sz.value.to_string() << "\n";
  emit(L, out, table.str());
  return 0;
}

int run_tor(const CommonOpts& o) {
  Loaded L = load(o, "tor");
  const json& p = L.pf.payload;
  if (!p.contains("M") || !p.contains("N"))
    ptor::fail(ptor::Err::Schema, "$.payload: tor needs M and N");
  ptor::Presentation M = ptor::io::presentation_from_json(p.at("M"), 0, "$.payload.M");
  ptor::Presentation N = ptor::io::presentation_from_json(p.at("N"), M.sig.p, "$.payload.N");
  int i_max = p.contains("i_max") ? p.at("i_max").get<int>() : M.sig.nvars();
  auto tors = ptor::tor_modules(M, N, i_max, L.ctx);
  json out = json::array();
  std::ostringstream table;
  for (const auto& t : tors) {
    json tj;
    tj["degree"] = t.degree;
    tj["nonzero"] = !t.flag.is_zero;
    tj["certified"] = t.flag.certified;
    tj["note"] = t.flag.note;
    tj["presentation"] = ptor::io::presentation_to_json(t.pres, L.ctx.prec);
    out.push_back(std::move(tj));
    table << "Tor_" << t.degree << ": " << (t.flag.is_zero ? "zero" : "nonzero")
          << (t.flag.certified ? "" : " (polynomial level)") << "  [" << t.flag.note << "]\n";
  }
  emit(L, out, table.str());
  return 0;
}

int run_strassman(const CommonOpts& o) {
  Loaded L = load(o, "strassman");
  const json& p = L.pf.payload;
  if (!p.contains("module")) ptor::fail(ptor::Err::Schema, "$.payload: strassman needs module");
  ptor::Presentation M = ptor::io::presentation_from_json(p.at("module"), 0, "$.payload.module");
  ptor::ScanRing R = ptor::ScanRing::Z;
  if (p.contains("R")) {
    std::string r = p.at("R").get<std::string>();
    if (r == "Zp")
      R = ptor::ScanRing::Zp;
    else if (r != "Z")
      ptor::fail(ptor::Err::Schema, "$.payload.R: expected 'Z' or 'Zp'");
  }
  long lo = L.has_window ? L.win_lo : -100, hi = L.has_window ? L.win_hi : 100;
  ptor::VanishingReport rep = ptor::vanishing_locus(M, R, lo, hi, L.pf.r_max, L.ctx);
  json out;
  out["certificate"] = ptor::io::certificate_to_json(rep.cert);
  out["classes_scanned"] = rep.classes_scanned;
  out["points_tested"] = rep.points_tested;
  out["crosscheck_disagreements"] = rep.crosscheck_disagreements;
  std::ostringstream table;
  table << ptor::io::certificate_table(rep.cert) << "classes scanned: " << rep.classes_scanned
        << ", points tested: " << rep.points_tested
        << ", disagreements: " << rep.crosscheck_disagreements.size() << "\n";
  emit(L, out, table.str());
  return 0;
}

int run_dml(const CommonOpts& o) {
  Loaded L = load(o, "dml");
  ptor::DmlProblem prob = dml_problem_from_payload(L);
  ptor::DmlReport rep = ptor::tor_nonvanishing_set(prob, L.ctx);
  json out;
  out["certificate"] = ptor::io::certificate_to_json(rep.nonvanishing);
  out["branch"] = rep.family_tor_zero ? "family-tor-zero" : "family-tor-nonzero";
  out["branch_certified"] = rep.branch_certified;
  out["branch_note"] = rep.branch_note;
  out["backbone_exceptions"] = rep.backbone_exceptions;
  std::ostringstream table;
  table << ptor::io::certificate_table(rep.nonvanishing) << "branch: " << out["branch"].get<std::string>()
        << (rep.branch_certified ? "" : " (polynomial level)") << "\n"
        << "backbone exceptions: " << rep.backbone_exceptions.size() << " (window-relative)\n";
  emit(L, out, table.str());
  return 0;
}

int run_oracle(const CommonOpts& o) {
  Loaded L = load(o, "oracle");
  ptor::DmlProblem prob = dml_problem_from_payload(L);
  const json& p = L.pf.payload;
  if (!p.contains("n")) ptor::fail(ptor::Err::Schema, "$.payload: oracle needs n");
  long n = p.at("n").get<long>();
  if (p.contains("degree_cap")) {
    // surface the cap through one exact iterate; refuses unsound caps
    int cap = p.at("degree_cap").get<int>();
    for (const auto& rel : prob.M.relations)
      for (const auto& f : rel) ptor::sigma_n_exact(prob.spec, f, n, L.ctx.prec, cap);
  }
  bool nz = ptor::brute_force_tor_at_n(prob, n, L.ctx);
  json out;
  out["n"] = n;
  out["i"] = prob.i;
  out["nonzero"] = nz;
  std::ostringstream table;
  table << "Tor_" << prob.i << " at n = " << n << ": " << (nz ? "nonzero" : "zero") << "\n";
  emit(L, out, table.str());
  return 0;
}

int run_cross_validate(const CommonOpts& o) {
  Loaded L = load(o, "cross-validate");
  ptor::DmlProblem prob = dml_problem_from_payload(L);
  ptor::CrossValidation cv = ptor::cross_validate(prob, L.ctx);
  json rows = json::array();
  for (const auto& r : cv.rows) {
    json rj;
    rj["n"] = r.n;
    rj["certificate"] = r.cert;
    rj["family_route"] = r.family;
    rj["brute_force"] = r.brute;
    rows.push_back(std::move(rj));
  }
  json out;
  out["rows"] = std::move(rows);
  out["disagreements"] = cv.disagreements;
  std::ostringstream table;
  table << "cross-validated " << cv.rows.size() << " points, " << cv.disagreements.size()
        << " disagreements\n";
  for (long n : cv.disagreements) table << "  disagreement at n = " << n << "\n";
  emit(L, out, table.str());
  return 0;
}

int run_surface(const CommonOpts& o) {
  Loaded L = load(o, "surface");
  const json& p = L.pf.payload;
  if (!p.contains("suppM") || !p.contains("suppN"))
    ptor::fail(ptor::Err::Schema, "$.payload: surface needs suppM and suppN");
  ptor::SupportDatum sm = ptor::io::support_from_json(p.at("suppM"), "$.payload.suppM");
  ptor::SupportDatum sn = ptor::io::support_from_json(p.at("suppN"), "$.payload.suppN");
  ptor::IncidenceOracle oracle;
  if (p.contains("p")) oracle.p = p.at("p").get<long>();
  if (p.contains("incidence")) {
    const auto& inc = p.at("incidence");
    for (size_t i = 0; i < inc.size(); ++i) {
      std::string ip = "$.payload.incidence[" + std::to_string(i) + "]";
      if (!inc[i].contains("point") || !inc[i].contains("curve") || !inc[i].contains("certificate"))
        ptor::fail(ptor::Err::Schema, ip + ": need point, curve, certificate");
      oracle.entries[{inc[i].at("point").get<std::string>(), inc[i].at("curve").get<std::string>()}] =
          ptor::io::certificate_from_json(inc[i].at("certificate"), ip + ".certificate");
    }
  }
  long lo = L.has_window ? L.win_lo : 0, hi = L.has_window ? L.win_hi : 29;
  ptor::Certificate cert = ptor::assemble_certificate(sm, sn, oracle, lo, hi);
  json out;
  out["certificate"] = ptor::io::certificate_to_json(cert);
  emit(L, out, ptor::io::certificate_table(cert));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"progression certificates for p-adic families of modules"};
  app.require_subcommand(1);
  CommonOpts o;
  struct Cmd {
    const char* name;
    const char* help;
    int (*fn)(const CommonOpts&);
  };
  const Cmd cmds[] = {
      {"sigma-z", "interpolate the iterates of the automorphism", run_sigma_z},
      {"tor", "Tor modules of two presentations", run_tor},
      {"strassman", "vanishing-locus certificate for a module over S<z>", run_strassman},
      {"dml", "nonvanishing certificate for Tor_i((sigma^n)* M, N)", run_dml},
      {"oracle", "brute-force Tor flag at a single n", run_oracle},
      {"cross-validate", "compare certificate, family route, and brute force", run_cross_validate},
      {"surface", "orbit/incidence progression assembly", run_surface},
  };
  std::map<std::string, int (*)(const CommonOpts&)> dispatch;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    dispatch[c.name] = c.fn;
  }
  CLI11_PARSE(app, argc, argv);
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return dispatch[name](o);
  } catch (const ptor::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptor::err_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
