#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ptor/automorphism.hpp"

using namespace ptor;

namespace {

AutomorphismSpec translation(long p) { // x -> x + p
  RingSig sig{1, false, p};
  AutomorphismSpec s;
  s.sig = sig;
  s.c = 1;
  s.images = {Tate::variable(sig, 0) + Tate::constant(sig, p)};
  return s;
}

AutomorphismSpec scaling(long p) { // x -> (1+p) x
  RingSig sig{1, false, p};
  AutomorphismSpec s;
  s.sig = sig;
  s.c = 1;
  s.images = {Tate::variable(sig, 0).scaled(1 + p)};
  return s;
}

AutomorphismSpec quadratic(long p) { // x -> x + p x^2
  RingSig sig{1, false, p};
  AutomorphismSpec s;
  s.sig = sig;
  s.c = 1;
  Tate x = Tate::variable(sig, 0);
  s.images = {x + (x * x).scaled(p)};
  return s;
}

// x * (1+p)^n mod p^k, the closed form of the scaling iterates.
Tate scaled_iterate(const RingSig& sig, long p, long n, long k) {
  mpq_class c(oracle::one_plus_p_pow(p, n, k));
  return Tate::variable(sig, 0).scaled(c);
}

bool congruent(const Tate& a, const Tate& b, long cut) {
  return (a - b).truncated(cut).is_zero();
}

Tate random_small(const RingSig& sig, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, 4);
  std::uniform_int_distribution<long> c(-20, 20);
  Tate f(sig);
  for (int t = 0; t < 5; ++t) {
    long cv = c(rng);
    if (cv != 0) f.add_term(Exps{e(rng)}, cv);
  }
  return f;
}

} // namespace

TEST_CASE("contraction validation accepts and rejects per the hypothesis") {
  CHECK_NOTHROW(validate_contraction(translation(3)));

  AutomorphismSpec bad = translation(3);
  bad.images = {Tate::variable(bad.sig, 0) + Tate::constant(bad.sig, 1)};
  CHECK_THROWS_AS(validate_contraction(bad), Error);

  // p = 2: c = 1 fails the strict bound c > 1/(p-1) = 1
  RingSig sig2{1, false, 2};
  AutomorphismSpec s2;
  s2.sig = sig2;
  s2.c = 1;
  s2.images = {Tate::variable(sig2, 0).scaled(3)}; // x + 2x
  CHECK_THROWS_AS(validate_contraction(s2), Error);
  s2.c = 2;
  s2.images = {Tate::variable(sig2, 0).scaled(5)}; // x + 4x meets c = 2
  CHECK_NOTHROW(validate_contraction(s2));
}

TEST_CASE("delta iterates: translation, scaling, quadratic") {
  AutomorphismSpec tr = translation(5);
  Tate x = Tate::variable(tr.sig, 0);
  CHECK(delta_iterate(tr, x, 1) == Tate::constant(tr.sig, 5));
  CHECK(delta_iterate(tr, x, 2).is_zero());

  AutomorphismSpec sc = scaling(5);
  CHECK(delta_iterate(sc, x, 3) == x.scaled(125));

  AutomorphismSpec qd = quadratic(3);
  Tate x3 = Tate::variable(qd.sig, 0);
  Tate expect = (x3 * x3 * x3).scaled(2 * 9) + (x3 * x3 * x3 * x3).scaled(27);
  CHECK(delta_iterate(qd, x3, 2) == expect); // hand composition
}

TEST_CASE("sigma_z terminates exactly for the translation") {
  AutomorphismSpec tr = translation(7);
  Tate x = Tate::variable(tr.sig, 0);
  SigmaZ sz = sigma_z(tr, x, 20);
  RingSig zr{1, true, 7};
  Tate expect = Tate::variable(zr, 0) + Tate::z_var(zr).scaled(7);
  CHECK(sz.value == expect);
  CHECK(sz.trunc_m <= 1);
}

TEST_CASE("sigma_z of a constant is the constant") {
  AutomorphismSpec qd = quadratic(3);
  SigmaZ sz = sigma_z(qd, Tate::constant(qd.sig, 1), 12);
  CHECK(sz.value.degree_in_z() <= 0);
  CHECK(sz.value.constant_term() == 1);
}

TEST_CASE("scaling family specializes to (1+p)^n x (binomial theorem oracle)") {
  const long p = 3;
  const int N = 12;
  AutomorphismSpec sc = scaling(p);
  Tate x = Tate::variable(sc.sig, 0);
  SigmaZ sz = sigma_z(sc, x, N);
  for (long n = -10; n <= 10; ++n) {
    Tate got = sz.value.specialize_z(n).truncated(N);
    Tate expect = scaled_iterate(sc.sig, p, n, N).truncated(N);
    CHECK(congruent(got, expect, N));
  }
}

TEST_CASE("exact iterates: translation, inverse scaling, quadratic hand expansion") {
  AutomorphismSpec tr = translation(5);
  Tate x = Tate::variable(tr.sig, 0);
  CHECK(sigma_n_exact(tr, x, 7, 24) == x + Tate::constant(tr.sig, 35));

  AutomorphismSpec sc = scaling(5);
  const int N = 14;
  Tate inv1 = sigma_n_exact(sc, x, -1, N);
  CHECK(congruent(inv1, scaled_iterate(sc.sig, 5, -1, N), N));

  AutomorphismSpec qd = quadratic(5);
  Tate got = sigma_n_exact(qd, x, 2, 10);
  Tate expect = x + (x * x).scaled(2 * 5) + (x * x * x).scaled(2 * 25) + (x * x * x * x).scaled(125);
  CHECK(got == expect);
}

TEST_CASE("degree cap below the sound threshold is refused") {
  AutomorphismSpec qd = quadratic(5);
  Tate x = Tate::variable(qd.sig, 0);
  CHECK_THROWS_AS(sigma_n_exact(qd, x, 3, 20, 2), Error);
}

TEST_CASE("sigma_a at 0, 1, and an integer approximation") {
  AutomorphismSpec qd = quadratic(3);
  std::mt19937_64 rng(5);
  Tate b = random_small(qd.sig, rng);
  const int N = 10;
  CHECK(congruent(sigma_a(qd, b, 0, N), b, N));
  CHECK(congruent(sigma_a(qd, b, 1, N), apply_sigma(qd, b).truncated(N), N));
  Tate lhs = sigma_a(qd, b, 13, N);
  Tate rhs = sigma_n_exact(qd, b, 13, N);
  CHECK(congruent(lhs, rhs, N - 2));
}

TEST_CASE("interpolation law on random elements") {
  const int N = 12;
  std::mt19937_64 rng(17);
  for (AutomorphismSpec spec : {with_inverse(scaling(3), N), with_inverse(quadratic(3), N)}) {
    for (int t = 0; t < 10; ++t) {
      Tate b = random_small(spec.sig, rng);
      SigmaZ sz = sigma_z(spec, b, N);
      for (long n = -10; n <= 10; ++n) {
        Tate via_family = sz.value.specialize_z(n);
        Tate exact = sigma_n_exact(spec, b, n, N);
        CHECK(congruent(via_family, exact, N));
      }
    }
  }
}

TEST_CASE("sigma_z is a ring homomorphism at precision") {
  const int N = 10;
  std::mt19937_64 rng(29);
  AutomorphismSpec qd = quadratic(3);
  for (int t = 0; t < 10; ++t) {
    Tate b = random_small(qd.sig, rng), b2 = random_small(qd.sig, rng);
    SigmaZ sb = sigma_z(qd, b, N), sb2 = sigma_z(qd, b2, N);
    SigmaZ ssum = sigma_z(qd, b + b2, N);
    CHECK(congruent(ssum.value, sb.value + sb2.value, N));
    SigmaZ sprod = sigma_z(qd, (b * b2).truncated(N), N);
    CHECK(congruent(sprod.value, sb.value * sb2.value, N));
  }
}

TEST_CASE("composition and invertibility laws with documented slack") {
  const int N = 10;
  const int slack = 2;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> d(0, 3L * 3 * 3 * 3 * 3 - 1);
  AutomorphismSpec qd = quadratic(3);
  for (int t = 0; t < 10; ++t) {
    Tate b = random_small(qd.sig, rng);
    long a = d(rng), a2 = d(rng);
    Tate lhs = sigma_a(qd, sigma_a(qd, b, a, N), a2, N);
    Tate rhs = sigma_a(qd, b, a + a2, N);
    CHECK(congruent(lhs, rhs, N - slack));
    Tate back = sigma_a(qd, sigma_a(qd, b, a, N), -a, N);
    CHECK(congruent(back, b, N - slack));
  }
}

TEST_CASE("inverse images validate by round trip") {
  AutomorphismSpec qd = quadratic(5);
  auto inv = compute_inverse_images(qd, 12);
  Tate x = Tate::variable(qd.sig, 0);
  Tate round = inv[0].substitute_x(qd.images);
  CHECK(congruent(round, x, 12));
}
