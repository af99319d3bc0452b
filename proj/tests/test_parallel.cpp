#include <doctest.h>

#include "ptor/dml.hpp"
#include "ptor/io.hpp"
#include "ptor/parallel.hpp"
#include "ptor/strassman.hpp"

using namespace ptor;

TEST_CASE("parallel_for_index writes every slot once") {
  std::vector<long> out(257, -1);
  parallel_for_index(257, true, [&](long i) { out[i] = 3 * i; });
  for (long i = 0; i < 257; ++i) CHECK(out[i] == 3 * i);
}

TEST_CASE("OpenMP scan matches the serial reference certificate") {
  RingSig sig{1, true, 5};
  Tate hyp = Tate::variable(sig, 0) * Tate::z_var(sig) - Tate::constant(sig, 1);
  Presentation M{sig, 1, {{VecPoly{hyp}}}};
  Ctx serial{16, 6, false}, parallel{16, 6, true};
  VanishingReport a = vanishing_locus(M, ScanRing::Z, -125, 125, 5, serial);
  VanishingReport b = vanishing_locus(M, ScanRing::Z, -125, 125, 5, parallel);
  CHECK(io::certificate_to_json(a.cert).dump() == io::certificate_to_json(b.cert).dump());
  CHECK(a.crosscheck_disagreements == b.crosscheck_disagreements);
}

TEST_CASE("OpenMP cross-validation matches the serial reference") {
  const long p = 5;
  RingSig sig{1, false, p};
  DmlProblem prob;
  prob.spec.sig = sig;
  prob.spec.c = 1;
  prob.spec.images = {Tate::variable(sig, 0).scaled(1 + p)};
  Tate x = Tate::variable(sig, 0);
  prob.M = Presentation{sig, 1, {{VecPoly{x - Tate::constant(sig, 1)}}}};
  prob.N = Presentation{sig, 1, {{VecPoly{x - Tate::constant(sig, 36)}}}};
  prob.i = 1;
  prob.win_lo = -10;
  prob.win_hi = 10;
  Ctx serial{16, 6, false}, parallel{16, 6, true};
  CrossValidation a = cross_validate(prob, serial);
  CrossValidation b = cross_validate(prob, parallel);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].cert == b.rows[i].cert);
    CHECK(a.rows[i].family == b.rows[i].family);
    CHECK(a.rows[i].brute == b.rows[i].brute);
  }
  CHECK(a.disagreements == b.disagreements);
}

TEST_CASE("exceptions from worker iterations surface on the caller") {
  auto boom = [&] {
    parallel_for_index(64, true, [&](long i) {
      if (i == 17) fail(Err::Internal, "worker failure");
    });
  };
  CHECK_THROWS_AS(boom(), Error);
}
