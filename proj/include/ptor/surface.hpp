#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ptor/certificate.hpp"

namespace ptor {

// Symbolic support data: labeled points and irreducible curves with the
// automorphism acting by permutation on the labels.  Aperiodic components
// have infinite orbits leaving the labeled set.
struct SurfaceComponent {
  std::string id;
  bool is_curve = false;
};

struct SupportDatum {
  std::vector<SurfaceComponent> components;
  std::vector<std::vector<std::string>> cycles; // sigma(c[k]) = c[(k+1) mod L]
  std::set<std::string> aperiodic;

  const SurfaceComponent* find(const std::string& id) const;
};

// {n : sigma^{-n}(point) in curve} certificates, the [BGT]-style inputs.
struct IncidenceOracle {
  long p = 0;
  std::map<std::pair<std::string, std::string>, Certificate> entries;

  const Certificate* lookup(const std::string& point, const std::string& curve) const;
};

// Orbit data merged from both supports (consistency-checked).
struct OrbitData {
  std::vector<std::vector<std::string>> cycles;
  std::set<std::string> aperiodic;

  // position of id in its cycle, or -1 when aperiodic/unknown
  bool locate(const std::string& id, int& cycle, int& pos) const;
};

OrbitData merge_orbits(const SupportDatum& a, const SupportDatum& b);

// {n : sigma^{-n}(V) is contained in W} on the window.
Certificate containment_progressions(const SurfaceComponent& V, const SurfaceComponent& W,
                                     const OrbitData& orbits, const IncidenceOracle& oracle,
                                     long win_lo, long win_hi);

// Prop-style pointwise criterion: some component of suppM (moved by
// sigma^{-n}) contains or is contained in some component of suppN.
bool tor1_criterion(const SupportDatum& suppM, const SupportDatum& suppN, long n,
                    const IncidenceOracle& oracle, long win_lo, long win_hi);

// Union over all pairs in both directions; agrees pointwise with
// tor1_criterion on the window.
Certificate assemble_certificate(const SupportDatum& suppM, const SupportDatum& suppN,
                                 const IncidenceOracle& oracle, long win_lo, long win_hi);

} // namespace ptor
