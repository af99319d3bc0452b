#include "ptor/ideal.hpp"

#include <algorithm>

namespace ptor {

UniPoly uni_trim(UniPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int uni_degree(const UniPoly& f) { return static_cast<int>(f.size()) - 1; }

UniPoly uni_from_tate(const Tate& f) {
  if (f.sig().nvars() != 1) fail(Err::SignatureMismatch, "univariate view needs one variable");
  UniPoly r;
  for (const auto& [e, c] : f.terms()) {
    if (static_cast<size_t>(e[0]) >= r.size()) r.resize(e[0] + 1, 0);
    r[e[0]] = c;
  }
  return uni_trim(std::move(r));
}

Tate uni_to_tate(const UniPoly& f, const RingSig& sig) {
  if (sig.nvars() != 1) fail(Err::SignatureMismatch, "target ring must have one variable");
  Tate r(sig);
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0) r.set_coeff(Exps{static_cast<int>(i)}, f[i]);
  return r;
}

mpq_class uni_eval(const UniPoly& f, const mpq_class& a) {
  mpq_class s = 0;
  for (size_t i = f.size(); i-- > 0;) s = s * a + f[i];
  return s;
}

UniPoly uni_scaled(const UniPoly& f, const mpq_class& c) {
  if (c == 0) return {};
  UniPoly r = f;
  for (auto& x : r) x *= c;
  return r;
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
  UniPoly r = a;
  if (b.size() > r.size()) r.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return uni_trim(std::move(r));
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return uni_trim(std::move(r));
}

long uni_gauss_val(const UniPoly& f, long p) {
  long v = VAL_INF;
  for (const auto& c : f)
    if (c != 0) v = std::min(v, pval(c, p));
  return v;
}

long uni_weierstrass_nu(const UniPoly& f, long p) {
  long v = uni_gauss_val(f, p);
  if (v == VAL_INF) fail(Err::ZeroSeries, "Weierstrass degree of 0");
  long nu = 0;
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0 && pval(f[i], p) == v) nu = static_cast<long>(i);
  return nu;
}

UniBezout uni_gcd_bezout(const UniPoly& f1, const UniPoly& f2, long p, const Ctx& ctx) {
  // Extended Euclid over K[t], exact arithmetic, zero identified at the
  // working precision: a remainder with every coefficient at valuation
  // >= prec is the zero the data can no longer distinguish.
  auto drop_small = [&](UniPoly f) -> UniPoly {
    if (f.empty()) return f;
    if (uni_gauss_val(f, p) < ctx.drop_cut()) return f;
    return {};
  };
  UniPoly r0 = drop_small(uni_trim(f1)), r1 = drop_small(uni_trim(f2));
  UniPoly a0{mpq_class(1)}, a1{}, b0{}, b1{mpq_class(1)};
  while (!r1.empty()) {
    long lcv = pval(r1.back(), p);
    if (lcv >= ctx.pivot_limit() && lcv < VAL_INF)
      fail(Err::PrecisionExhausted,
           "univariate pivot at valuation " + std::to_string(lcv) +
               " inside the guard band of precision " + std::to_string(ctx.prec));
    // divide r0 by r1
    UniPoly q;
    UniPoly rem = r0;
    while (uni_degree(rem) >= uni_degree(r1) && !rem.empty()) {
      int shift = uni_degree(rem) - uni_degree(r1);
      mpq_class c = rem.back() / r1.back();
      UniPoly qt(shift + 1, 0);
      qt[shift] = c;
      q = uni_sub(q, uni_scaled(qt, -1));
      rem = uni_sub(rem, uni_mul(qt, r1));
    }
    rem = drop_small(std::move(rem));
    UniPoly a2 = uni_sub(a0, uni_mul(q, a1));
    UniPoly b2 = uni_sub(b0, uni_mul(q, b1));
    r0 = r1;
    r1 = rem;
    a0 = a1;
    a1 = a2;
    b0 = b1;
    b1 = b2;
  }
  if (!r0.empty()) {
    mpq_class lc = r0.back();
    r0 = uni_scaled(r0, 1 / lc);
    a0 = uni_scaled(a0, 1 / lc);
    b0 = uni_scaled(b0, 1 / lc);
  }
  return {r0, a0, b0};
}

namespace {

std::optional<int> constant_gen_index(const std::vector<Tate>& gens) {
  for (size_t i = 0; i < gens.size(); ++i) {
    const Tate& g = gens[i];
    if (g.is_zero()) continue;
    if (g.total_degree() == 0) return static_cast<int>(i);
  }
  return std::nullopt;
}

} // namespace

UnitIdealResult tate_unit_ideal(const std::vector<Tate>& gens, const Ctx& ctx) {
  UnitIdealResult out;
  std::vector<size_t> live;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    // generators living at valuation >= prec are the zero the data cannot
    // distinguish; they must not decide anything
    if (gens[i].gauss_val() >= ctx.drop_cut()) continue;
    live.push_back(i);
  }
  if (live.empty()) {
    out.decide = Decide::No;
    out.note = "zero ideal at precision";
    return out;
  }
  std::vector<Tate> kept;
  for (size_t i : live) kept.push_back(gens[i]);
  const RingSig sig = gens[live.front()].sig();
  out.combo.assign(gens.size(), Tate::zero(sig));

  if (auto ci = constant_gen_index(kept)) {
    const Tate& g = kept[*ci];
    long v = g.gauss_val();
    if (v >= ctx.pivot_limit())
      fail(Err::PrecisionExhausted,
           "constant generator at valuation " + std::to_string(v) +
               " inside the guard band of precision " + std::to_string(ctx.prec));
    out.decide = Decide::Yes;
    out.combo[live[*ci]] = Tate::constant(sig, 1 / g.constant_term());
    out.note = "constant generator";
    return out;
  }

  if (sig.nvars() == 1) {
    // Single variable: fold Euclid with Bezout tracking, then the
    // Weierstrass degree of the gcd decides, with no undecided outcomes.
    UniPoly g = uni_from_tate(kept[0]);
    std::vector<UniPoly> cof(gens.size());
    cof[live[0]] = UniPoly{mpq_class(1)};
    for (size_t k = 1; k < live.size(); ++k) {
      UniBezout bez = uni_gcd_bezout(g, uni_from_tate(kept[k]), sig.p, ctx);
      for (auto& c : cof) c = uni_mul(c, bez.a);
      cof[live[k]] = bez.b;
      g = bez.g;
    }
    long nu = uni_weierstrass_nu(g, sig.p);
    if (nu > 0) {
      out.decide = Decide::No;
      out.note = "gcd has Weierstrass degree " + std::to_string(nu) +
                 ": zeros in the closed unit disc";
      return out;
    }
    Tate gt = uni_to_tate(g, sig);
    UnitWitness w = is_unit_tate(gt, ctx.prec);
    if (!w.is_unit) fail(Err::Internal, "nu = 0 element failed the unit criterion");
    out.decide = Decide::Yes;
    for (size_t i = 0; i < gens.size(); ++i)
      out.combo[i] = (uni_to_tate(cof[i], sig) * *w.inverse).truncated(ctx.prec);
    out.note = "univariate Bezout";
    return out;
  }

  // General case: Groebner with tags, then the element-wise unit criterion.
  std::vector<VecPoly> as_vecs;
  for (const auto& g : kept) as_vecs.push_back(VecPoly{g});
  TaggedGB tg = tagged_gb(sig, 1, as_vecs, ctx);
  for (size_t k = 0; k < tg.module_gb.size(); ++k) {
    const Tate& b = tg.module_gb[k][0];
    if (b.is_zero()) continue;
    if (b.gauss_val() >= ctx.pivot_limit()) continue; // inside the guard band
    UnitWitness w = is_unit_tate(b, ctx.prec);
    if (!w.is_unit) continue;
    out.decide = Decide::Yes;
    for (size_t i = 0; i < kept.size(); ++i)
      out.combo[live[i]] = (tg.gb_tags[k][i] * *w.inverse).truncated(ctx.prec);
    out.note = b.total_degree() == 0 ? "unit in basis" : "Tate-unit basis element";
    return out;
  }
  // Common zero at the origin certifies properness cheaply.
  bool all_vanish_at_origin = true;
  for (const auto& g : kept)
    if (g.constant_term() != 0) all_vanish_at_origin = false;
  if (all_vanish_at_origin) {
    out.decide = Decide::No;
    out.note = "all generators vanish at the origin";
    return out;
  }
  if (sig.nvars() <= 1) fail(Err::Internal, "unreachable");
  out.decide = Decide::Undecided;
  out.note = "no polynomial certificate and no Tate-unit basis element (d >= 2)";
  return out;
}

std::vector<Tate> ideal_intersect(const std::vector<Tate>& A, const std::vector<Tate>& B,
                                  const Ctx& ctx) {
  // h in A cap B <=> h = sum u_i A_i = sum v_j B_j, i.e. (u, v) is a syzygy
  // of [A | -B]; the A-halves of the syzygies generate the intersection.
  if (A.empty() || B.empty()) return {};
  const RingSig sig = A.front().sig();
  std::vector<VecPoly> gens;
  for (const auto& a : A) gens.push_back(VecPoly{a});
  for (const auto& b : B) gens.push_back(VecPoly{-b});
  TaggedGB tg = tagged_gb(sig, 1, gens, ctx);
  std::vector<Tate> out;
  for (const auto& syz : tg.syzygies) {
    Tate h = Tate::zero(sig);
    for (size_t i = 0; i < A.size(); ++i) h = h + syz[i] * A[i];
    h = h.truncated(ctx.drop_cut());
    if (!h.is_zero()) out.push_back(h.normalized());
  }
  return out;
}

} // namespace ptor
