// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "ptor/dml.hpp"
#include "ptor/io.hpp"
#include "ptor/strassman.hpp"
#include "ptor/parallel.hpp"
#include "ptor/surface.hpp"

using namespace ptor;

namespace {

int failures = 0;
std::vector<std::pair<std::vector<Tate>, BallWitness>> collected_balls;
std::map<int, std::string> lines;

template <class F>
void run(int idx, const std::string& name, double budget_secs, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && budget_secs > 0 && secs > budget_secs) {
    ok = false;
    detail = "runtime budget " + std::to_string(budget_secs) + " s exceeded";
  }
  std::ostringstream os;
  os << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << idx << ": " << name << " (" << secs
     << " s)" << (detail.empty() ? "" : "  -- " + detail);
  lines[idx] = os.str();
  if (!ok) ++failures;
}

Presentation hyperbola(long p) {
  RingSig sig{1, true, p};
  Tate rel = Tate::variable(sig, 0) * Tate::z_var(sig) - Tate::constant(sig, 1);
  return Presentation{sig, 1, {{VecPoly{rel}}}};
}

AutomorphismSpec scaling_spec(long p) {
  RingSig sig{1, false, p};
  AutomorphismSpec s;
  s.sig = sig;
  s.c = 1;
  s.images = {Tate::variable(sig, 0).scaled(1 + p)};
  return s;
}

AutomorphismSpec affine_quadratic_spec(long p) { // x -> x + p + p x^2
  RingSig sig{1, false, p};
  AutomorphismSpec s;
  s.sig = sig;
  s.c = 1;
  Tate x = Tate::variable(sig, 0);
  s.images = {x + Tate::constant(sig, p) + (x * x).scaled(p)};
  return s;
}

Tate random_element(const RingSig& sig, std::mt19937_64& rng, int max_terms, int max_deg) {
  std::uniform_int_distribution<int> e(0, max_deg);
  std::uniform_int_distribution<long> c(-40, 40);
  Tate f(sig);
  for (int t = 0; t < max_terms; ++t) {
    long cv = c(rng);
    if (cv != 0) f.add_term(Exps{e(rng)}, cv);
  }
  return f;
}

bool congruent(const Tate& a, const Tate& b, long cut) {
  return (a - b).truncated(cut).is_zero();
}

} // namespace

int main() {
  const Ctx ctx{32, 8, true};

  run(1, "hyperbola certificate n = 0 (mod p) for p in {2,3,5}", 30.0, [&](std::string& detail) {
    for (long p : {2L, 3L, 5L}) {
      long w = p * p * p * p;
      Presentation M = hyperbola(p);
      VanishingReport rep = vanishing_locus(M, ScanRing::Z, -w, w, 6, ctx);
      Certificate nonvan = complement_certificate(rep.cert);
      // the vanishing locus is p Z_p: certificate must be exactly the class 0 mod p
      if (rep.cert.modulus != p || rep.cert.residues != std::vector<long>{0} ||
          !rep.cert.added.empty() || !rep.cert.removed.empty()) {
        detail = "p = " + std::to_string(p) + ": unexpected certificate shape";
        return false;
      }
      if (!rep.crosscheck_disagreements.empty()) {
        detail = "p = " + std::to_string(p) + ": crosscheck disagreements";
        return false;
      }
      std::vector<Tate> J = annihilator_reduce(M, ctx);
      for (const auto& b : rep.cert.balls) collected_balls.push_back({J, b});
    }
    return true;
  });

  run(2, "open ball minus a point for S<z>/(z)", 5.0, [&](std::string& detail) {
    RingSig sig{0, true, 5};
    Presentation M{sig, 1, {{VecPoly{Tate::z_var(sig)}}}};
    VanishingReport rep = vanishing_locus(M, ScanRing::Z, -100, 100, 6, ctx);
    if (rep.cert.modulus != 1 || rep.cert.residues != std::vector<long>{0} ||
        rep.cert.removed != std::vector<long>{0} || !rep.cert.added.empty()) {
      detail = "certificate is not 'all of Z minus {0}'";
      return false;
    }
    if (!rep.crosscheck_disagreements.empty()) return false;
    std::vector<Tate> J = annihilator_reduce(M, ctx);
    for (const auto& b : rep.cert.balls) collected_balls.push_back({J, b});
    return true;
  });

  run(3, "interpolation law at p = 3, N = 12, 100 random elements", 60.0,
      [&](std::string& detail) {
        const int N = 12;
        AutomorphismSpec specs[2] = {with_inverse(scaling_spec(3), N),
                                     with_inverse(affine_quadratic_spec(3), N)};
        std::vector<std::string> bad(100);
        parallel_for_index(100, ctx.parallel, [&](long t) {
          std::mt19937_64 rng(2024 + t); // per-trial stream keeps runs schedule-free
          const AutomorphismSpec& spec = specs[t % 2];
          Tate b = random_element(spec.sig, rng, 5, 4);
          SigmaZ sz = sigma_z(spec, b, N);
          Tate fwd = b, bwd = b;
          for (long n = 0; n <= 10; ++n) {
            if (n > 0) {
              fwd = apply_sigma(spec, fwd).truncated(N);
              bwd = bwd.substitute_x(*spec.inverse_images).truncated(N);
            }
            bool ok_fwd = congruent(sz.value.specialize_z(n), fwd, N);
            bool ok_bwd = congruent(sz.value.specialize_z(-n), bwd, N);
            if (!ok_fwd || !ok_bwd) {
              bad[t] = "trial " + std::to_string(t) + " failed at n = " +
                       std::to_string(ok_fwd ? -n : n);
              return;
            }
          }
        });
        for (const auto& msg : bad)
          if (!msg.empty()) {
            detail = msg;
            return false;
          }
        detail = "100/100 trials";
        return true;
      });

  run(4, "composition law sigma^{a+a'} = sigma^{a'} o sigma^a, slack <= 2 digits", 120.0,
      [&](std::string& detail) {
        const int N = 10, slack = 2;
        std::mt19937_64 rng(4096);
        std::uniform_int_distribution<long> d(0, 3L * 3 * 3 * 3 * 3 * 3 - 1);
        AutomorphismSpec spec = affine_quadratic_spec(3);
        for (int t = 0; t < 50; ++t) {
          Tate b = random_element(spec.sig, rng, 3, 3);
          long a = d(rng), a2 = d(rng);
          Tate lhs = sigma_a(spec, sigma_a(spec, b, a, N), a2, N);
          Tate rhs = sigma_a(spec, b, a + a2, N);
          if (!congruent(lhs, rhs, N - slack)) {
            detail = "pair " + std::to_string(t) + " exceeded the slack";
            return false;
          }
        }
        return true;
      });

  run(5, "Tor specializes: exceptions <= 3 and window-stable (20 random families)", 300.0,
      [&](std::string& detail) {
        std::mt19937_64 rng(777);
        const long p = 3;
        const Ctx fast{16, 6, true};
        RingSig zs{1, true, p};
        Tate x = Tate::variable(zs, 0);
        Tate z = Tate::z_var(zs);
        std::uniform_int_distribution<long> cdist(-4, 4), kdist(-5, 5);
        std::uniform_int_distribution<int> twist(0, 2);
        for (int t = 0; t < 20; ++t) {
          Tate g = x - Tate::constant(zs, cdist(rng)) - z.scaled(p * cdist(rng));
          Tate rel = twist(rng) == 0 ? (z - Tate::constant(zs, kdist(rng))) * g : g;
          Presentation Mz{zs, 1, {{VecPoly{rel}}}};
          Tate h = x - Tate::constant(zs, cdist(rng)) - z.scaled(p * cdist(rng));
          if (twist(rng) == 0) h = h * (z - Tate::constant(zs, kdist(rng)));
          Presentation Nz{zs, 1, {{VecPoly{h}}}};
          auto T = tor_modules(Mz, Nz, 1, fast)[1];
          auto exceptions_in = [&](long lo, long hi) {
            std::vector<long> bad;
            for (long n = lo; n <= hi; ++n) {
              bool family = !is_zero_module(specialize_presentation(T.pres, n), fast).is_zero;
              bool direct = !tor_modules(specialize_presentation(Mz, n),
                                         specialize_presentation(Nz, n), 1, fast)[1]
                                 .flag.is_zero;
              if (family != direct) bad.push_back(n);
            }
            return bad;
          };
          auto small = exceptions_in(-15, 15);
          if (small.size() > 3) {
            detail = "family " + std::to_string(t) + " has " + std::to_string(small.size()) +
                     " exceptions";
            return false;
          }
          auto large = exceptions_in(-30, 30);
          if (large != small) {
            detail = "family " + std::to_string(t) + " grew exceptions on the doubled window";
            return false;
          }
        }
        return true;
      });

  run(6, "end-to-end dml: added {-4}, zero cross-validation disagreements", 60.0,
      [&](std::string& detail) {
        const long p = 5;
        const Ctx fast{16, 6, true};
        DmlProblem prob;
        prob.spec = scaling_spec(p);
        RingSig sig = prob.spec.sig;
        Tate x = Tate::variable(sig, 0);
        mpq_class u4 = mpq_class(1 + p) * (1 + p) * (1 + p) * (1 + p);
        prob.M = Presentation{sig, 1, {{VecPoly{x - Tate::constant(sig, 1)}}}};
        prob.N = Presentation{sig, 1, {{VecPoly{x - Tate::constant(sig, u4)}}}};
        prob.win_lo = -20;
        prob.win_hi = 20;
        prob.r_max = 4;
        for (int i : {0, 1}) {
          prob.i = i;
          DmlReport rep = tor_nonvanishing_set(prob, fast);
          if (!(rep.nonvanishing.added == std::vector<long>{-4} &&
                rep.nonvanishing.residues.empty())) {
            detail = "i = " + std::to_string(i) + ": certificate is not 'added {-4}'";
            return false;
          }
          CrossValidation cv = cross_validate(prob, fast);
          if (!cv.disagreements.empty()) {
            detail = "i = " + std::to_string(i) + ": " +
                     std::to_string(cv.disagreements.size()) + " disagreements";
            return false;
          }
          FamilyModule famM = build_family(prob.spec, prob.M, fast.prec);
          auto T = tor_modules(famM.family, constant_family(normalized(prob.N)), prob.i, fast);
          std::vector<Tate> J = annihilator_reduce(T[prob.i].pres, fast);
          for (const auto& b : rep.nonvanishing.balls) collected_balls.push_back({J, b});
        }
        return true;
      });

  run(7, "classical Strassman: counts bounded by nu; Hensel oracle mod 5^6", 60.0,
      [&](std::string& detail) {
        std::mt19937_64 rng(31337);
        RingSig sig{0, true, 5};
        Tate z = Tate::z_var(sig);
        std::uniform_int_distribution<long> coef(-60, 60);
        std::uniform_int_distribution<int> nu_pick(0, 4), tail_pick(0, 3);
        for (int t = 0; t < 100; ++t) {
          int nu = nu_pick(rng);
          Tate f(sig);
          for (int i = 0; i < nu; ++i) {
            long c = coef(rng);
            if (c != 0) f.add_term(Exps{i}, c);
          }
          long lead = coef(rng);
          if (lead % 5 == 0) ++lead;
          f.add_term(Exps{nu}, lead);
          int tail = tail_pick(rng);
          for (int i = nu + 1; i <= nu + tail; ++i) f.add_term(Exps{i}, 5 * coef(rng));
          long got_nu = weierstrass_degree(f).nu;
          if (got_nu > nu) {
            detail = "Weierstrass degree exceeded the construction bound";
            return false;
          }
          auto roots = padic_roots(f, 6, ctx);
          long count = 0;
          for (const auto& r : roots) count += r.multiplicity;
          if (count > got_nu) {
            detail = "root count " + std::to_string(count) + " > nu " + std::to_string(got_nu);
            return false;
          }
        }
        auto roots = padic_roots(z * z + Tate::constant(sig, 1), 6, ctx);
        mpz_class h = oracle::hensel_sqrt_m1_p5(6);
        mpz_class other = oracle::pow_int(5, 6) - h;
        if (roots.size() != 2) {
          detail = "z^2 + 1 over Q_5 must have two roots";
          return false;
        }
        bool match = (roots[0].approx == h && roots[1].approx == other) ||
                     (roots[0].approx == other && roots[1].approx == h);
        if (!match) detail = "roots disagree with the Hensel iterates";
        return match;
      });

  run(9, "surface calculator: 3-cycle progression and 2,3-cycle union", 30.0,
      [&](std::string& detail) {
        IncidenceOracle oracle;
        SupportDatum m, n;
        m.components.push_back({"A0", true});
        m.cycles.push_back({"A0", "A1", "A2"});
        n.components.push_back({"A0", true});
        n.cycles.push_back({"A0", "A1", "A2"});
        Certificate three = assemble_certificate(m, n, oracle, 0, 29);
        for (long k = 0; k <= 29; ++k)
          if (three.member(k) != (k % 3 == 0)) {
            detail = "3-cycle certificate wrong at n = " + std::to_string(k);
            return false;
          }
        SupportDatum m2;
        m2.components.push_back({"B0", true});
        m2.components.push_back({"A0", true});
        m2.cycles.push_back({"B0", "B1"});
        m2.cycles.push_back({"A0", "A1", "A2"});
        SupportDatum n2 = m2;
        Certificate uni = assemble_certificate(m2, n2, oracle, 0, 29);
        for (long k = 0; k <= 29; ++k)
          if (uni.member(k) != ((k % 2 == 0) || (k % 3 == 0))) {
            detail = "union certificate wrong at n = " + std::to_string(k);
            return false;
          }
        return true;
      });

  run(10, "T_J = intersection of T_{Q_i} on five hand-decomposed ideals", 120.0,
      [&](std::string& detail) {
        RingSig kz{0, true, 5};
        Tate z = Tate::z_var(kz);
        RingSig xz{1, true, 5};
        Tate x = Tate::variable(xz, 0), zz = Tate::z_var(xz);
        RingSig k7{0, true, 7};
        Tate z7 = Tate::z_var(k7);
        struct Case {
          Tate product;
          Tate q1, q2;
          long lo, hi;
        };
        std::vector<Case> cases;
        cases.push_back({z * (z - Tate::constant(kz, 1)), z, z - Tate::constant(kz, 1), -40, 40});
        cases.push_back({z * (z - Tate::constant(kz, 5)), z, z - Tate::constant(kz, 5), -40, 40});
        cases.push_back({(z - Tate::constant(kz, 1)) * (z + Tate::constant(kz, 1)),
                         z - Tate::constant(kz, 1), z + Tate::constant(kz, 1), -40, 40});
        cases.push_back({zz * (x * zz - Tate::constant(xz, 1)), zz,
                         x * zz - Tate::constant(xz, 1), -30, 30});
        cases.push_back({(z7 - Tate::constant(k7, 3)) * (z7 - Tate::constant(k7, 5)),
                         z7 - Tate::constant(k7, 3), z7 - Tate::constant(k7, 5), -35, 35});
        for (size_t i = 0; i < cases.size(); ++i) {
          const Case& cs = cases[i];
          RingSig sig = cs.product.sig();
          Presentation J{sig, 1, {{VecPoly{cs.product}}}};
          Presentation Q1{sig, 1, {{VecPoly{cs.q1}}}};
          Presentation Q2{sig, 1, {{VecPoly{cs.q2}}}};
          VanishingReport rj = vanishing_locus(J, ScanRing::Z, cs.lo, cs.hi, 5, ctx);
          VanishingReport r1 = vanishing_locus(Q1, ScanRing::Z, cs.lo, cs.hi, 5, ctx);
          VanishingReport r2 = vanishing_locus(Q2, ScanRing::Z, cs.lo, cs.hi, 5, ctx);
          Certificate inter = intersect_certificates(r1.cert, r2.cert);
          for (long n = cs.lo; n <= cs.hi; ++n)
            if (rj.cert.member(n) != inter.member(n)) {
              detail = "case " + std::to_string(i) + " disagrees at n = " + std::to_string(n);
              return false;
            }
          std::vector<Tate> ann = annihilator_reduce(J, ctx);
          for (const auto& b : rj.cert.balls) collected_balls.push_back({ann, b});
        }
        return true;
      });

  run(8, "ball soundness: 20-point re-verification of every emitted ball", 120.0,
      [&](std::string& detail) {
        if (collected_balls.empty()) {
          detail = "no balls collected";
          return false;
        }
        unsigned seed = 97;
        for (const auto& [J, ball] : collected_balls)
          if (!verify_ball(J, ball, 20, seed++, ctx)) {
            detail = "a ball failed re-verification at center " + ball.center.get_str();
            return false;
          }
        detail = std::to_string(collected_balls.size()) + " balls verified";
        return true;
      });

  for (const auto& [idx, line] : lines) std::cout << line << "\n";

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}
