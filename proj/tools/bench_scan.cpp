// Benchmark: serial reference scan vs the OpenMP scan kernels on the same
// workloads, verifying that both produce identical certificates.

#include <chrono>
#include <iostream>

#include <omp.h>

#include "ptor/dml.hpp"
#include "ptor/io.hpp"
#include "ptor/strassman.hpp"

using namespace ptor;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

Presentation hyperbola_module(long p) {
  RingSig sig{1, true, p};
  Tate rel = Tate::variable(sig, 0) * Tate::z_var(sig) - Tate::constant(sig, 1);
  return Presentation{sig, 1, {{VecPoly{rel}}}};
}

DmlProblem scaling_problem(long p) {
  DmlProblem prob;
  RingSig sig{1, false, p};
  prob.spec.sig = sig;
  prob.spec.c = 1;
  prob.spec.images = {Tate::variable(sig, 0).scaled(1 + p) };
  Tate x = Tate::variable(sig, 0);
  mpq_class u = 1 + p;
  mpq_class u4 = u * u * u * u;
  prob.M = Presentation{sig, 1, {{VecPoly{x - Tate::constant(sig, 1)}}}};
  prob.N = Presentation{sig, 1, {{VecPoly{x - Tate::constant(sig, u4)}}}};
  prob.i = 1;
  prob.win_lo = -20;
  prob.win_hi = 20;
  return prob;
}

template <class F>
double time_run(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds(t0, std::chrono::steady_clock::now());
}

} // namespace

int main() {
  std::cout << "threads available: " << omp_get_max_threads() << "\n\n";

  {
    Presentation M = hyperbola_module(5);
    Ctx serial{32, 8, false}, parallel{32, 8, true};
    VanishingReport rs, rp;
    double ts = time_run([&] { rs = vanishing_locus(M, ScanRing::Z, -625, 625, 6, serial); });
    double tp = time_run([&] { rp = vanishing_locus(M, ScanRing::Z, -625, 625, 6, parallel); });
    bool same = io::certificate_to_json(rs.cert) == io::certificate_to_json(rp.cert);
    std::cout << "strassman scan, window [-625, 625], p = 5\n"
              << "  serial:   " << ts << " s\n"
              << "  openmp:   " << tp << " s  (speedup " << ts / tp << "x)\n"
              << "  certificates identical: " << (same ? "yes" : "NO") << "\n\n";
    if (!same) return 1;
  }

  {
    DmlProblem prob = scaling_problem(5);
    Ctx serial{16, 8, false}, parallel{16, 8, true};
    CrossValidation cs, cp;
    double ts = time_run([&] { cs = cross_validate(prob, serial); });
    double tp = time_run([&] { cp = cross_validate(prob, parallel); });
    bool same = cs.disagreements == cp.disagreements && cs.rows.size() == cp.rows.size();
    std::cout << "dml cross-validate, window [-20, 20], p = 5\n"
              << "  serial:   " << ts << " s\n"
              << "  openmp:   " << tp << " s  (speedup " << ts / tp << "x)\n"
              << "  reports identical: " << (same ? "yes" : "NO") << "\n";
    if (!same) return 1;
  }
  return 0;
}
