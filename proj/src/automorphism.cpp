#include "ptor/automorphism.hpp"

#include <sstream>

namespace ptor {

namespace {

// c is rational; valuation comparisons against m*c are done over Z via
// cross-multiplication, never through floating point.
bool val_at_least_mc(long val, long m, const mpq_class& c) {
  // val >= m * c  <=>  val * den >= m * num
  return mpz_class(val) * c.get_den() >= mpz_class(m) * c.get_num();
}

} // namespace

void validate_contraction(const AutomorphismSpec& spec) {
  if (spec.sig.has_z) fail(Err::Schema, "automorphism images must be z-free");
  if (static_cast<int>(spec.images.size()) != spec.sig.nx)
    fail(Err::Schema, "expected one image per variable");
  // c > 1/(p-1), strict.
  if (!(spec.c * (spec.p() - 1) > 1))
    fail(Err::ContractionViolated,
         "c = " + spec.c.get_str() + " fails c > 1/(p-1) for p = " + std::to_string(spec.p()));
  if (!(spec.c > 0)) fail(Err::ContractionViolated, "c must be positive");
  for (int i = 0; i < spec.sig.nx; ++i) {
    const Tate& f = spec.images[i];
    if (!(f.sig() == spec.sig)) fail(Err::SignatureMismatch, "image ring mismatch");
    if (!f.is_zero() && f.gauss_val() < 0)
      fail(Err::ContractionViolated, "image of x" + std::to_string(i + 1) + " leaves o<x>");
    Tate d = f - Tate::variable(spec.sig, i);
    if (!d.is_zero() && !val_at_least_mc(d.gauss_val(), 1, spec.c)) {
      std::ostringstream os;
      os << "||sigma(x" << (i + 1) << ") - x" << (i + 1) << "|| = p^(" << -d.gauss_val()
         << ") exceeds p^(-" << spec.c.get_str() << ")";
      fail(Err::ContractionViolated, os.str());
    }
  }
}

Tate apply_sigma(const AutomorphismSpec& spec, const Tate& b) {
  if (!(b.sig() == spec.sig)) fail(Err::SignatureMismatch, "element ring mismatch");
  return b.substitute_x(spec.images);
}

Tate delta_iterate(const AutomorphismSpec& spec, const Tate& b, long m) {
  Tate d = b;
  long base = b.is_zero() ? VAL_INF : b.gauss_val();
  for (long k = 1; k <= m; ++k) {
    d = apply_sigma(spec, d) - d;
    if (!d.is_zero() && base < VAL_INF && !val_at_least_mc(d.gauss_val() - base, k, spec.c))
      fail(Err::Internal, "contraction bound violated by Delta^m");
  }
  return d;
}

long sigma_z_truncation(const AutomorphismSpec& spec, long norm_val_b, int N) {
  const long p = spec.p();
  // Need m*c - v_p(m!) - norm_val_b >= N for all m > M.  Since
  // v_p(m!) <= m/(p-1), every m >= (N - norm_val_b) / (c - 1/(p-1)) works;
  // scan below that ceiling for the least admissible M.
  mpq_class slope = spec.c - mpq_class(1, p - 1);
  mpq_class bound = mpq_class(N - norm_val_b) / slope;
  long hard = mpz_class(bound.get_num() / bound.get_den()).get_si() + 2;
  if (hard < 0) hard = 0;
  auto tail_ok = [&](long m) {
    // m*c - v_p(m!) >= N - norm_val_b  <=>  m*c*den ... cross multiply
    mpz_class lhs = mpz_class(m) * spec.c.get_num();
    mpz_class rhs = (mpz_class(N - norm_val_b) + factorial_valuation(m, p)) * spec.c.get_den();
    return lhs >= rhs;
  };
  long M = hard;
  for (long m = hard; m >= 1; --m) {
    if (tail_ok(m))
      M = m - 1;
    else
      break;
  }
  return std::max(M, 0L);
}

Tate binomial_poly_z(const RingSig& sig_z, long m) {
  // C(z, m) = z(z-1)...(z-m+1)/m!, built incrementally in exact arithmetic.
  Tate r = Tate::constant(sig_z, 1);
  Tate z = Tate::z_var(sig_z);
  for (long k = 0; k < m; ++k) {
    r = r * (z - Tate::constant(sig_z, k));
    r = r.scaled(mpq_class(1, k + 1));
  }
  return r;
}

SigmaZ sigma_z(const AutomorphismSpec& spec, const Tate& b, int N) {
  validate_contraction(spec);
  if (!b.is_zero() && b.gauss_val() < 0) fail(Err::NormViolation, "||b|| > 1 in sigma_z");
  RingSig zr{spec.sig.nx, true, spec.p()};
  SigmaZ out{Tate::zero(zr), 0, N};
  if (b.is_zero()) return out;
  long M = sigma_z_truncation(spec, b.gauss_val(), N);
  // Iterates are carried mod p^cut with cut = N + v_p(M!): the dropped parts
  // stay below p^-N even after the 1/m! in C(z,m), so the recorded tail
  // bound survives.  This also caps the degree of the iterates, since a
  // monomial's excess degree is paid for in valuation.
  const long cut = N + factorial_valuation(M, spec.p());
  Tate acc = Tate::zero(zr);
  Tate d = b;
  Tate chom = Tate::constant(zr, 1); // C(z, m), updated incrementally
  Tate zv = Tate::z_var(zr);
  for (long m = 0; m <= M; ++m) {
    if (m > 0) {
      d = (apply_sigma(spec, d) - d).truncated(cut);
      if (d.is_zero()) { M = m - 1; break; } // series genuinely terminates
      chom = (chom * (zv - Tate::constant(zr, m - 1))).scaled(mpq_class(1, m));
    }
    acc = acc + chom * d.with_z();
  }
  out.value = acc.truncated(N);
  out.trunc_m = M;
  out.tail_val = N;
  return out;
}

Tate sigma_n_exact(const AutomorphismSpec& spec, const Tate& b, long n, int N,
                   std::optional<int> degree_cap) {
  validate_contraction(spec);
  // Valuation-floor truncation keeps degrees below
  // deg(b) + D0 * ceil(N/c); a smaller user cap is refused as unsound.
  int d0 = 1;
  for (const auto& f : spec.images) d0 = std::max(d0, f.total_degree());
  mpq_class steps_q = mpq_class(N) / spec.c;
  long steps = mpz_class(steps_q.get_num() / steps_q.get_den()).get_si() + 1;
  long sound = std::max(0, b.total_degree()) + static_cast<long>(d0) * steps;
  if (degree_cap && *degree_cap < sound)
    fail(Err::DegreeCapExceeded,
         "cap " + std::to_string(*degree_cap) + " below sound threshold " + std::to_string(sound));
  const std::vector<Tate>* imgs = &spec.images;
  std::vector<Tate> inv;
  if (n < 0) {
    if (spec.inverse_images)
      inv = *spec.inverse_images;
    else
      inv = compute_inverse_images(spec, N);
    imgs = &inv;
  }
  Tate r = b;
  long count = n < 0 ? -n : n;
  for (long k = 0; k < count; ++k) r = r.substitute_x(*imgs).truncated(N);
  return r;
}

Tate sigma_a(const AutomorphismSpec& spec, const Tate& b, const mpq_class& a, int N) {
  if (a != 0 && pval(a, spec.p()) < 0) fail(Err::NormViolation, "|a| > 1 in sigma_a");
  return sigma_z(spec, b, N).value.specialize_z(a);
}

std::vector<Tate> compute_inverse_images(const AutomorphismSpec& spec, int N) {
  validate_contraction(spec);
  std::vector<Tate> g;
  for (int i = 0; i < spec.sig.nx; ++i) g.push_back(Tate::variable(spec.sig, i));
  // g <- g + (x - sigma(g)); the error contracts by p^-c per round.
  mpq_class steps_q = mpq_class(N) / spec.c;
  long steps = mpz_class(steps_q.get_num() / steps_q.get_den()).get_si() + 2;
  for (long it = 0; it < steps; ++it) {
    bool done = true;
    for (int i = 0; i < spec.sig.nx; ++i) {
      Tate err = Tate::variable(spec.sig, i) - g[i].substitute_x(spec.images);
      err = err.truncated(N);
      if (!err.is_zero()) done = false;
      g[i] = (g[i] + err).truncated(N);
    }
    if (done) break;
  }
  for (int i = 0; i < spec.sig.nx; ++i) {
    Tate rt = g[i].substitute_x(spec.images) - Tate::variable(spec.sig, i);
    if (!rt.truncated(N).is_zero())
      fail(Err::PrecisionExhausted, "inverse images failed round-trip validation");
  }
  return g;
}

AutomorphismSpec with_inverse(const AutomorphismSpec& spec, int N) {
  AutomorphismSpec s = spec;
  if (!s.inverse_images) s.inverse_images = compute_inverse_images(spec, N);
  return s;
}

} // namespace ptor
