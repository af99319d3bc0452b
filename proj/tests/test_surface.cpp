#include <doctest.h>

#include "ptor/surface.hpp"

using namespace ptor;

namespace {

SupportDatum single(const std::string& id, bool curve) {
  SupportDatum s;
  s.components.push_back({id, curve});
  return s;
}

} // namespace

TEST_CASE("curve shrinking to a point never contains it") {
  SupportDatum m = single("C", true);
  SupportDatum n = single("P", false);
  m.aperiodic.insert("C");
  n.aperiodic.insert("P");
  OrbitData orbits = merge_orbits(m, n);
  IncidenceOracle oracle;
  Certificate c =
      containment_progressions(m.components[0], n.components[0], orbits, oracle, -10, 10);
  CHECK(c.empty_set());
}

TEST_CASE("points on one 3-cycle meet on a progression") {
  SupportDatum m = single("P0", false);
  SupportDatum n = single("P1", false);
  m.cycles.push_back({"P0", "P1", "P2"});
  OrbitData orbits = merge_orbits(m, n);
  IncidenceOracle oracle;
  Certificate c =
      containment_progressions(m.components[0], n.components[0], orbits, oracle, -12, 12);
  // sigma^{-n}(P0) = P1 iff -n = 1 mod 3 iff n = 2 mod 3
  for (long k = -12; k <= 12; ++k) CHECK(c.member(k) == (((k % 3) + 3) % 3 == 2));
}

TEST_CASE("aperiodic point on a curve passes through the oracle") {
  SupportDatum m = single("P", false);
  m.aperiodic.insert("P");
  SupportDatum n = single("C", true);
  n.aperiodic.insert("C");
  OrbitData orbits = merge_orbits(m, n);
  IncidenceOracle oracle;
  Certificate given = empty_certificate(2, -20, 20, 0);
  given.modulus = 4;
  given.residues = {2};
  given.removed = {6};
  oracle.entries[{"P", "C"}] = given;
  Certificate c =
      containment_progressions(m.components[0], n.components[0], orbits, oracle, -20, 20);
  for (long k = -20; k <= 20; ++k) CHECK(c.member(k) == given.member(k));

  IncidenceOracle missing;
  CHECK_THROWS_AS(
      containment_progressions(m.components[0], n.components[0], orbits, missing, -20, 20), Error);
}

TEST_CASE("tor1 criterion: equality, disjointness, cycle scan") {
  SupportDatum m = single("C", true);
  SupportDatum n = single("C", true);
  m.aperiodic.insert("C");
  n.aperiodic.insert("C");
  IncidenceOracle oracle;
  CHECK(tor1_criterion(m, n, 0, oracle, -5, 5));
  CHECK_FALSE(tor1_criterion(m, n, 1, oracle, -5, 5));

  SupportDatum mp = single("P", false);
  SupportDatum np = single("Q", false);
  mp.aperiodic.insert("P");
  np.aperiodic.insert("Q");
  for (long k = -3; k <= 3; ++k) CHECK_FALSE(tor1_criterion(mp, np, k, oracle, -5, 5));

  // 3-cycle of curves against a fixed curve
  SupportDatum mc = single("A0", true);
  mc.cycles.push_back({"A0", "A1", "A2"});
  SupportDatum nc = single("A0", true);
  nc.cycles.push_back({"A0", "A1", "A2"});
  for (long k = 0; k <= 11; ++k) CHECK(tor1_criterion(mc, nc, k, oracle, 0, 11) == (k % 3 == 0));
}

TEST_CASE("assembled certificates match the pointwise scan") {
  IncidenceOracle oracle;
  SupportDatum empty_m, empty_n;
  Certificate none = assemble_certificate(empty_m, empty_n, oracle, 0, 20);
  CHECK(none.empty_set());

  SupportDatum mc = single("A0", true);
  mc.cycles.push_back({"A0", "A1", "A2"});
  SupportDatum nc = single("A0", true);
  nc.cycles.push_back({"A0", "A1", "A2"});
  Certificate three = assemble_certificate(mc, nc, oracle, 0, 29);
  for (long k = 0; k <= 29; ++k) CHECK(three.member(k) == (k % 3 == 0));
  CHECK(three.modulus == 3);

  // two independent cycles: {0 mod 2} union {0 mod 3}
  SupportDatum m2;
  m2.components.push_back({"B0", true});
  m2.components.push_back({"A0", true});
  m2.cycles.push_back({"B0", "B1"});
  m2.cycles.push_back({"A0", "A1", "A2"});
  SupportDatum n2 = m2;
  Certificate uni = assemble_certificate(m2, n2, oracle, 0, 29);
  long members = 0;
  for (long k = 0; k <= 29; ++k) {
    bool expect = (k % 2 == 0) || (k % 3 == 0);
    CHECK(uni.member(k) == expect);
    if (expect) ++members;
  }
  CHECK(members == 20); // density 4/6 on [0, 29]
}

TEST_CASE("support swap negates the certificate; swap plus orbit reversal undoes it") {
  IncidenceOracle oracle;
  SupportDatum m = single("A0", true);
  m.cycles.push_back({"A0", "A1", "A2"});
  SupportDatum n = single("A1", true);
  n.cycles.push_back({"A0", "A1", "A2"});
  Certificate fwd = assemble_certificate(m, n, oracle, -12, 12);

  // swap alone: Tor symmetry sends n to -n
  Certificate swapped = assemble_certificate(n, m, oracle, -12, 12);
  for (long k = -12; k <= 12; ++k) CHECK(swapped.member(k) == fwd.member(-k));

  // swapping and inverting sigma (reversed cycles) composes to the identity
  SupportDatum mr = single("A1", true);
  mr.cycles.push_back({"A2", "A1", "A0"});
  SupportDatum nr = single("A0", true);
  nr.cycles.push_back({"A2", "A1", "A0"});
  Certificate both = assemble_certificate(mr, nr, oracle, -12, 12);
  for (long k = -12; k <= 12; ++k) CHECK(both.member(k) == fwd.member(k));
}
