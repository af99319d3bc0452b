#include "ptor/dml.hpp"

#include <algorithm>

#include "ptor/parallel.hpp"

namespace ptor {

void validate_problem(const DmlProblem& prob) {
  validate_contraction(prob.spec);
  if (!(prob.M.sig == prob.spec.sig) || !(prob.N.sig == prob.spec.sig))
    fail(Err::SignatureMismatch, "module presentations must live over the automorphism ring");
  if (prob.i < 0) fail(Err::Schema, "homological degree must be >= 0");
  if (prob.i > prob.spec.sig.nx + 1)
    fail(Err::Schema, "Tor vanishes above the global dimension d + 1");
  if (prob.win_hi < prob.win_lo) fail(Err::WindowMismatch, "empty window");
}

namespace {

ZeroDecision tor_flag_over_S(const Presentation& Mn, const Presentation& Nn, int i,
                             const Ctx& ctx) {
  auto tors = tor_modules(Mn, Nn, i, ctx);
  return tors[i].flag;
}

} // namespace

bool family_route_tor_at_n(const DmlProblem& prob, const FamilyModule& famM,
                           const Presentation& famN, long n, const Ctx& ctx) {
  Presentation Mn = specialize_presentation(famM.family, n);
  Presentation Nn = specialize_presentation(famN, n);
  return !tor_flag_over_S(Mn, Nn, prob.i, ctx).is_zero;
}

bool brute_force_tor_at_n(const DmlProblem& prob, long n, const Ctx& ctx) {
  AutomorphismSpec spec = with_inverse(prob.spec, ctx.prec);
  Presentation Mn{prob.M.sig, prob.M.rank, {}};
  for (const auto& rel : normalized(prob.M).relations) {
    VecPoly v;
    for (const auto& f : rel) v.push_back(sigma_n_exact(spec, f, n, ctx.prec));
    Mn.relations.push_back(std::move(v));
  }
  return !tor_flag_over_S(Mn, prob.N, prob.i, ctx).is_zero;
}

DmlReport tor_nonvanishing_set(const DmlProblem& prob, const Ctx& ctx) {
  validate_problem(prob);
  DmlReport rep;
  FamilyModule famM = build_family(prob.spec, prob.M, ctx.prec);
  Presentation famN = constant_family(normalized(prob.N));

  auto family_tor = tor_modules(famM.family, famN, prob.i, ctx);
  const TorResult& T = family_tor[prob.i];
  rep.family_tor_zero = T.flag.is_zero;
  rep.branch_certified = T.flag.certified;
  rep.branch_note = T.flag.note;

  const long width = prob.win_hi - prob.win_lo + 1;
  std::vector<char> truth(width, 0);
  parallel_for_index(width, ctx.parallel, [&](long idx) {
    truth[idx] = family_route_tor_at_n(prob, famM, famN, prob.win_lo + idx, ctx) ? 1 : 0;
  });

  std::vector<char> backbone(width, 0);
  if (T.flag.is_zero) {
    // Family Tor vanishes: nonvanishing can only happen at finitely many n,
    // all of which the window scan surfaces.
  } else {
    // Nonvanishing set = complement of the vanishing locus of the family
    // Tor module, up to the finitely many specialization exceptions.
    VanishingReport vrep =
        vanishing_locus(T.pres, ScanRing::Z, prob.win_lo, prob.win_hi, prob.r_max, ctx,
                        /*crosscheck=*/false);
    for (long idx = 0; idx < width; ++idx)
      backbone[idx] = vrep.cert.member(prob.win_lo + idx) ? 0 : 1;
    rep.nonvanishing.balls = vrep.cert.balls; // witnesses of the complement's interior
  }
  for (long idx = 0; idx < width; ++idx)
    if (backbone[idx] != truth[idx]) rep.backbone_exceptions.push_back(prob.win_lo + idx);

  auto balls = std::move(rep.nonvanishing.balls);
  rep.nonvanishing = certificate_from_bitmap(prob.spec.p(), prob.win_lo, prob.win_hi, truth,
                                             p_power_moduli(prob.spec.p(), prob.r_max), ctx.prec);
  rep.nonvanishing.balls = std::move(balls);
  return rep;
}

CrossValidation cross_validate(const DmlProblem& prob, const Ctx& ctx) {
  CrossValidation cv;
  DmlReport rep = tor_nonvanishing_set(prob, ctx);
  FamilyModule famM = build_family(prob.spec, prob.M, ctx.prec);
  Presentation famN = constant_family(normalized(prob.N));
  const long width = prob.win_hi - prob.win_lo + 1;
  cv.rows.resize(width);
  parallel_for_index(width, ctx.parallel, [&](long idx) {
    long n = prob.win_lo + idx;
    CrossValidation::Row row;
    row.n = n;
    row.cert = rep.nonvanishing.member(n);
    row.family = family_route_tor_at_n(prob, famM, famN, n, ctx);
    row.brute = brute_force_tor_at_n(prob, n, ctx);
    cv.rows[idx] = row;
  });
  for (const auto& row : cv.rows)
    if (row.cert != row.family || row.family != row.brute) cv.disagreements.push_back(row.n);
  return cv;
}

} // namespace ptor
