#include "ptor/strassman.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "ptor/parallel.hpp"

namespace ptor {

namespace {

// Coefficient view of an element of K<z> (or any one-variable ring).
UniPoly series_in_z(const Tate& f) {
  if (f.sig().nvars() == 1) return uni_from_tate(f);
  if (f.sig().has_z) {
    for (int i = 0; i < f.sig().nx; ++i)
      if (f.degree_in(i) > 0) fail(Err::SignatureMismatch, "series involves x variables");
    UniPoly r;
    for (const auto& [e, c] : f.terms()) {
      size_t k = e[f.sig().nx];
      if (k >= r.size()) r.resize(k + 1, 0);
      r[k] = c;
    }
    return uni_trim(std::move(r));
  }
  fail(Err::SignatureMismatch, "expected a series in z");
}

} // namespace

WeierstrassData weierstrass_degree(const Tate& f) {
  UniPoly u = series_in_z(f);
  if (u.empty()) fail(Err::ZeroSeries, "Weierstrass data of the zero series");
  long p = f.sig().p;
  WeierstrassData w;
  w.mu_val = uni_gauss_val(u, p);
  w.nu = uni_weierstrass_nu(u, p);
  return w;
}

namespace {

// g(d + p t) expanded exactly.
UniPoly recenter(const UniPoly& g, long d, long p) {
  const size_t n = g.size();
  UniPoly h(n, 0);
  mpz_class bin;
  for (size_t i = 0; i < n; ++i) {
    if (g[i] == 0) continue;
    mpq_class dpow = 1;
    for (size_t j = 0; j <= i; ++j) {
      // coefficient of t^(i-j): C(i, j) * g_i * d^j * p^(i-j)
      mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(j));
      mpz_class ppow;
      mpz_ui_pow_ui(ppow.get_mpz_t(), static_cast<unsigned long>(p),
                    static_cast<unsigned long>(i - j));
      h[i - j] += g[i] * bin * dpow * ppow;
      dpow *= d;
    }
  }
  return uni_trim(std::move(h));
}

void roots_descend(const UniPoly& g, long p, int depth, int max_depth, const mpz_class& center,
                   std::vector<PadicRoot>& out, bool strict) {
  long nu = uni_weierstrass_nu(g, p);
  if (nu == 0) return;
  if (depth == max_depth) {
    if (nu >= 2 && strict)
      fail(Err::PrecisionExhausted, "root cluster of multiplicity " + std::to_string(nu) +
                                        " not separated at precision");
    PadicRoot r;
    r.approx = center;
    r.digits = depth;
    r.multiplicity = nu;
    r.resolved = (nu == 1);
    out.push_back(std::move(r));
    return;
  }
  mpz_class step = pow_p(p, depth);
  for (long d = 0; d < p; ++d) {
    UniPoly h = recenter(g, d, p);
    if (h.empty()) fail(Err::Internal, "recentred series vanished");
    long e = uni_gauss_val(h, p);
    if (e > 0) h = uni_scaled(h, pow_p_q(p, -e));
    roots_descend(h, p, depth + 1, max_depth, center + d * step, out, strict);
  }
}

} // namespace

std::vector<PadicRoot> padic_roots(const Tate& f, int digits, const Ctx& ctx, bool strict) {
  (void)ctx;
  UniPoly u = series_in_z(f);
  if (u.empty()) fail(Err::ZeroSeries, "root search on the zero series");
  long p = f.sig().p;
  long v = uni_gauss_val(u, p);
  if (v != 0) u = uni_scaled(u, pow_p_q(p, -v));
  std::vector<PadicRoot> out;
  roots_descend(u, p, 0, digits, 0, out, strict);
  return out;
}

std::vector<Tate> annihilator_reduce(const Presentation& pres, const Ctx& ctx) {
  Presentation np = normalized(pres);
  const RingSig sig = np.sig;
  if (np.rank == 0) return {Tate::constant(sig, 1)};
  if (np.rank == 1) {
    std::vector<Tate> out;
    for (const auto& rel : np.relations) out.push_back(rel[0]);
    return out;
  }
  std::vector<Tate> gens;
  const bool quotient_feasible = np.rank <= 6 && np.relations.size() <= 40;
  if (quotient_feasible) {
    // ann = intersection over i of (relations : e_i).
    std::vector<Tate> acc;
    bool first = true;
    for (int i = 0; i < np.rank && (first || !acc.empty()); ++i) {
      std::vector<VecPoly> cols;
      VecPoly ei = vecpoly_zero(sig, np.rank);
      ei[i] = Tate::constant(sig, 1);
      cols.push_back(ei);
      for (const auto& r : np.relations) cols.push_back(r);
      TaggedGB tg = tagged_gb(sig, np.rank, cols, ctx);
      std::vector<Tate> quot;
      for (const auto& s : tg.syzygies) {
        Tate c0 = s[0].truncated(ctx.drop_cut());
        if (!c0.is_zero()) quot.push_back(c0.normalized());
      }
      if (first) {
        acc = quot;
        first = false;
      } else {
        acc = ideal_intersect(acc, quot, ctx);
      }
    }
    gens = acc;
  }
  try {
    for (auto& m : fitting_ideal(np, ctx)) gens.push_back(std::move(m));
  } catch (const Error&) {
    // minor expansion too large; quotient generators must carry the day
  }
  if (gens.empty() && !quotient_feasible)
    fail(Err::UndecidedGeneralD, "annihilator reduction infeasible for this presentation");
  if (gens.empty()) return {};
  // Compact generating set.
  std::vector<VecPoly> as_vec;
  for (const auto& g : gens) as_vec.push_back(VecPoly{g});
  std::vector<Tate> out;
  for (const auto& v : module_gb(sig, 1, as_vec, ctx)) out.push_back(v[0]);
  return out;
}

namespace {

// Exact division of g by (z - c) when g(z = c) = 0.
Tate divide_z_minus_c(const Tate& g, const mpq_class& c) {
  const RingSig& sig = g.sig();
  if (!sig.has_z) fail(Err::SignatureMismatch, "division by z - c in a z-free ring");
  Tate r = g;
  Tate q(sig);
  const int zi = sig.nx;
  while (!r.is_zero()) {
    int k = r.degree_in_z();
    if (k == 0) break;
    // peel the top z-layer
    Tate top(sig);
    for (const auto& [e, cf] : r.terms())
      if (e[zi] == k) {
        Exps e2 = e;
        e2[zi] = k - 1;
        top.add_term(e2, cf);
      }
    q = q + top;
    // r -= top * (z - c)
    Tate zc = Tate::z_var(sig) - Tate::constant(sig, c);
    r = r - top * zc;
  }
  if (!r.is_zero()) fail(Err::Internal, "nonzero remainder dividing by z - c");
  return q;
}

BallCertify certify_at(const std::vector<Tate>& J, const mpq_class& c, const Ctx& ctx,
                       bool build_witness) {
  BallCertify out{BallCertify::Status::Undecided, std::nullopt, ""};
  if (J.empty()) {
    out.status = BallCertify::Status::NotComaximal;
    out.note = "zero annihilator";
    return out;
  }
  const RingSig zsig = J.front().sig();
  if (!zsig.has_z) fail(Err::SignatureMismatch, "ball certification needs z");
  std::vector<Tate> spec;
  spec.reserve(J.size());
  for (const auto& f : J) spec.push_back(f.specialize_z(c));
  UnitIdealResult u = tate_unit_ideal(spec, ctx);
  if (u.decide == Decide::No) {
    out.status = BallCertify::Status::NotComaximal;
    out.note = u.note;
    return out;
  }
  if (u.decide == Decide::Undecided) {
    out.status = BallCertify::Status::Undecided;
    out.note = u.note;
    return out;
  }
  out.status = BallCertify::Status::Comaximal;
  if (!build_witness) return out;
  // Lift 1 = sum v_i pi_c(f_i) to 1 = q + (z-c) g.
  Tate q = Tate::zero(zsig);
  Tate gco = Tate::zero(zsig);
  for (size_t i = 0; i < J.size(); ++i) {
    if (u.combo[i].is_zero()) continue;
    Tate vi = u.combo[i].with_z();
    q = q + vi * J[i];
    Tate wi = divide_z_minus_c(J[i] - spec[i].with_z(), c);
    gco = gco - vi * wi;
  }
  Tate zc = Tate::z_var(zsig) - Tate::constant(zsig, c);
  Tate delta = Tate::constant(zsig, 1) - q - zc * gco;
  const long slack = 2;
  if (!delta.is_zero() && delta.gauss_val() < ctx.prec - slack)
    fail(Err::Internal, "ball witness identity fails at precision");
  BallWitness ball;
  ball.center = c;
  long gval = gco.is_zero() ? VAL_INF : gco.gauss_val();
  ball.g_val = gval;
  ball.radius_exp = gval == VAL_INF ? 0 : std::max(0L, 1 - gval);
  ball.qg = std::make_pair(q, gco);
  out.ball = std::move(ball);
  return out;
}

} // namespace

BallCertify ball_certify(const std::vector<Tate>& J, const mpq_class& c, const Ctx& ctx) {
  return certify_at(J, c, ctx, true);
}

Decide comaximal_at(const std::vector<Tate>& J, const mpq_class& c, const Ctx& ctx) {
  BallCertify b = certify_at(J, c, ctx, false);
  switch (b.status) {
    case BallCertify::Status::Comaximal: return Decide::Yes;
    case BallCertify::Status::NotComaximal: return Decide::No;
    default: return Decide::Undecided;
  }
}

VanishingReport vanishing_locus(const Presentation& Mp, ScanRing R, long win_lo, long win_hi,
                                int r_max, const Ctx& ctx, bool crosscheck) {
  if (win_hi < win_lo) fail(Err::WindowMismatch, "empty window");
  Presentation np = normalized(Mp);
  if (!np.sig.has_z) fail(Err::SignatureMismatch, "vanishing locus needs a module over S<z>");
  const long p = np.sig.p;
  std::vector<Tate> J = annihilator_reduce(np, ctx);

  VanishingReport rep;
  struct ClassItem {
    int level;
    long rep;
  };
  std::deque<ClassItem> queue{{0, 0}};
  std::vector<BallWitness> balls;
  std::vector<long> pending; // window points needing an individual decision

  auto class_intersects_window = [&](const ClassItem& it) {
    mpz_class step = pow_p(p, it.level);
    if (step > win_hi - win_lo + 1) {
      // at most one candidate congruent point
      mpz_class lo(win_lo);
      mpz_class r = (mpz_class(it.rep) - lo) % step;
      if (r < 0) r += step;
      return lo + r <= win_hi;
    }
    return true;
  };

  while (!queue.empty()) {
    std::vector<ClassItem> level_batch(queue.begin(), queue.end());
    queue.clear();
    std::vector<BallCertify> results(level_batch.size(),
                                     BallCertify{BallCertify::Status::Undecided, std::nullopt, ""});
    std::vector<char> skip(level_batch.size(), 0);
    parallel_for_index(static_cast<long>(level_batch.size()), ctx.parallel, [&](long idx) {
      const ClassItem& it = level_batch[idx];
      if (!class_intersects_window(it)) {
        skip[idx] = 1;
        return;
      }
      BallCertify r = certify_at(J, it.rep, ctx, true);
      if (r.status == BallCertify::Status::Undecided) {
        // most undecided outcomes are precision artifacts: double N once
        Ctx boosted = ctx;
        boosted.prec *= 2;
        r = certify_at(J, it.rep, boosted, true);
      }
      results[idx] = std::move(r);
    });
    for (size_t idx = 0; idx < level_batch.size(); ++idx) {
      if (skip[idx]) continue;
      const ClassItem& it = level_batch[idx];
      const BallCertify& r = results[idx];
      ++rep.classes_scanned;
      if (r.status == BallCertify::Status::Undecided)
        fail(J.front().sig().nx >= 2 ? Err::UndecidedGeneralD : Err::UndecidedAtPrecision,
             "class " + std::to_string(it.rep) + " mod p^" + std::to_string(it.level) + ": " +
                 r.note);
      const bool absorbed = r.status == BallCertify::Status::Comaximal && r.ball &&
                            r.ball->radius_exp <= it.level;
      if (absorbed) {
        balls.push_back(*r.ball);
        continue;
      }
      if (it.level < r_max) {
        mpz_class step = pow_p(p, it.level);
        if (step * p > 4'000'000'000L) fail(Err::RMaxExceeded, "class modulus overflow");
        for (long d = 0; d < p; ++d)
          queue.push_back({it.level + 1, it.rep + d * mpz_class(step).get_si()});
        continue;
      }
      // Unabsorbed at r_max.
      if (R == ScanRing::Zp && r.status == BallCertify::Status::Comaximal)
        fail(Err::RMaxExceeded, "vanishing class " + std::to_string(it.rep) + " mod p^" +
                                    std::to_string(r_max) + " not expressible at this radius");
      mpz_class step = pow_p(p, r_max);
      mpz_class lo(win_lo), hi(win_hi);
      mpz_class first = lo + (((mpz_class(it.rep) - lo) % step) + step) % step;
      for (mpz_class n = first; n <= hi; n += step) pending.push_back(n.get_si());
    }
  }

  std::sort(pending.begin(), pending.end());
  std::vector<char> pending_bit(pending.size(), 0);
  std::vector<std::optional<BallWitness>> pending_ball(pending.size());
  parallel_for_index(static_cast<long>(pending.size()), ctx.parallel, [&](long i) {
    BallCertify r = certify_at(J, pending[i], ctx, true);
    if (r.status == BallCertify::Status::Undecided) {
      Ctx boosted = ctx;
      boosted.prec *= 2;
      r = certify_at(J, pending[i], boosted, true);
    }
    if (r.status == BallCertify::Status::Undecided)
      fail(Err::UndecidedGeneralD, "point " + std::to_string(pending[i]) + " undecided");
    if (r.status == BallCertify::Status::Comaximal) {
      pending_bit[i] = 1;
      pending_ball[i] = r.ball; // openness: every vanishing point sits in a ball
    }
  });
  rep.points_tested = static_cast<long>(pending.size());
  for (auto& b : pending_ball)
    if (b) balls.push_back(std::move(*b));

  const long width = win_hi - win_lo + 1;
  std::vector<char> bits(width, 0);
  for (long n = win_lo; n <= win_hi; ++n) {
    bool covered = false;
    for (const auto& b : balls)
      if (b.covers(n, p)) {
        covered = true;
        break;
      }
    bits[n - win_lo] = covered ? 1 : 0;
  }
  for (size_t i = 0; i < pending.size(); ++i)
    if (pending_bit[i]) bits[pending[i] - win_lo] = 1;

  if (crosscheck) {
    std::vector<char> direct(width, 0);
    parallel_for_index(width, ctx.parallel, [&](long i) {
      Presentation at = specialize_presentation(np, win_lo + i);
      direct[i] = is_zero_module(at, ctx).is_zero ? 1 : 0;
    });
    for (long i = 0; i < width; ++i)
      if (direct[i] != bits[i]) rep.crosscheck_disagreements.push_back(win_lo + i);
  }

  rep.cert = certificate_from_bitmap(p, win_lo, win_hi, bits, p_power_moduli(p, r_max), ctx.prec);
  rep.cert.balls = std::move(balls);
  return rep;
}

long unit_stability_radius_exp(const std::vector<Tate>& coeffs, const mpq_class& eps,
                               const Ctx& ctx) {
  (void)ctx;
  if (eps <= 0) fail(Err::NonpositiveBound, "lower bound must be positive");
  int deg = -1;
  long minval = VAL_INF;
  long p = 0;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    deg = static_cast<int>(k);
    minval = std::min(minval, coeffs[k].gauss_val());
    p = coeffs[k].sig().p;
  }
  if (deg < 0) fail(Err::NonpositiveBound, "zero polynomial cannot stay a unit");
  if (deg == 0) return 0; // constant: the whole ring
  // X = eps / (2 N p^deg) with N the coefficient norm bound p^(-minval).
  mpq_class X = eps / (2 * pow_p_q(p, -minval) * pow_p_q(p, deg));
  long k = 0;
  while (!(pow_p_q(p, -k) < X)) {
    ++k;
    if (k > 100000) fail(Err::Internal, "radius search diverged");
  }
  return k;
}

bool verify_ball(const std::vector<Tate>& J, const BallWitness& ball, int samples, unsigned seed,
                 const Ctx& ctx) {
  std::mt19937_64 rng(seed);
  long p = J.empty() ? 2 : J.front().sig().p;
  std::uniform_int_distribution<long> off(-1000, 1000);
  for (int s = 0; s < samples; ++s) {
    mpq_class alpha = ball.center + mpq_class(off(rng)) * pow_p_q(p, ball.radius_exp);
    if (comaximal_at(J, alpha, ctx) != Decide::Yes) return false;
  }
  return true;
}

} // namespace ptor
