#include "ptor/surface.hpp"

#include <algorithm>

namespace ptor {

const SurfaceComponent* SupportDatum::find(const std::string& id) const {
  for (const auto& c : components)
    if (c.id == id) return &c;
  return nullptr;
}

const Certificate* IncidenceOracle::lookup(const std::string& point,
                                           const std::string& curve) const {
  auto it = entries.find({point, curve});
  return it == entries.end() ? nullptr : &it->second;
}

namespace {

std::vector<std::string> canonical_rotation(std::vector<std::string> c) {
  if (c.empty()) return c;
  auto mn = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), mn, c.end());
  return c;
}

} // namespace

OrbitData merge_orbits(const SupportDatum& a, const SupportDatum& b) {
  OrbitData o;
  std::map<std::string, std::vector<std::string>> seen;
  auto add_cycles = [&](const SupportDatum& d) {
    for (const auto& cyc : d.cycles) {
      std::vector<std::string> canon = canonical_rotation(cyc);
      bool fresh = true;
      for (const auto& id : cyc) {
        auto it = seen.find(id);
        if (it != seen.end()) {
          if (it->second != canon)
            fail(Err::Schema, "component " + id + " lies in two different orbits");
          fresh = false;
        }
      }
      if (fresh) {
        for (const auto& id : cyc) seen[id] = canon;
        o.cycles.push_back(cyc);
      }
    }
    for (const auto& id : d.aperiodic) o.aperiodic.insert(id);
  };
  add_cycles(a);
  add_cycles(b);
  for (const auto& id : o.aperiodic)
    if (seen.count(id)) fail(Err::Schema, "component " + id + " both periodic and aperiodic");
  return o;
}

bool OrbitData::locate(const std::string& id, int& cycle, int& pos) const {
  for (size_t c = 0; c < cycles.size(); ++c)
    for (size_t k = 0; k < cycles[c].size(); ++k)
      if (cycles[c][k] == id) {
        cycle = static_cast<int>(c);
        pos = static_cast<int>(k);
        return true;
      }
  return false;
}

namespace {

long mod_pos(long n, long m) {
  long r = n % m;
  return r < 0 ? r + m : r;
}

// {n : sigma^{-n}(V) = W} for same-kind components: empty, {0}, or one
// progression from the shared cycle.
Certificate equality_set(const SurfaceComponent& V, const SurfaceComponent& W,
                         const OrbitData& orbits, long p, long lo, long hi) {
  int cv = -1, pv = 0, cw = -1, pw = 0;
  bool v_per = orbits.locate(V.id, cv, pv);
  bool w_per = orbits.locate(W.id, cw, pw);
  if (v_per && w_per && cv == cw) {
    long L = static_cast<long>(orbits.cycles[cv].size());
    Certificate c = empty_certificate(p, lo, hi, 0);
    c.modulus = L;
    c.r = -1;
    if (p > 0) {
      long m = L;
      int r = 0;
      while (m > 1 && m % p == 0) m /= p, ++r;
      if (m == 1) c.r = r;
    }
    c.residues = {mod_pos(pv - pw, L)};
    return c;
  }
  Certificate c = empty_certificate(p, lo, hi, 0);
  if (V.id == W.id && !v_per && lo <= 0 && 0 <= hi) c.added = {0};
  return c;
}

Certificate oracle_set(const std::string& point, const std::string& curve,
                       const IncidenceOracle& oracle, long lo, long hi, bool negated) {
  const Certificate* c = oracle.lookup(point, curve);
  if (!c)
    fail(Err::OracleMissing, "no incidence certificate for point " + point + " on curve " + curve);
  Certificate base = negated ? negate_certificate(*c) : *c;
  if (base.win_lo > lo || base.win_hi < hi)
    fail(Err::WindowMismatch, "oracle certificate window does not cover the query window");
  std::vector<char> bits(hi - lo + 1, 0);
  for (long n = lo; n <= hi; ++n) bits[n - lo] = base.member(n) ? 1 : 0;
  std::vector<long> cands = divisor_moduli(base.modulus);
  Certificate out = certificate_from_bitmap(base.p, lo, hi, bits, cands, base.session_prec);
  return out;
}

} // namespace

Certificate containment_progressions(const SurfaceComponent& V, const SurfaceComponent& W,
                                     const OrbitData& orbits, const IncidenceOracle& oracle,
                                     long lo, long hi) {
  if (V.is_curve && !W.is_curve) return empty_certificate(oracle.p, lo, hi, 0);
  if (V.is_curve == W.is_curve) return equality_set(V, W, orbits, oracle.p, lo, hi);
  // point in curve: the [BGT]-style oracle input
  return oracle_set(V.id, W.id, oracle, lo, hi, false);
}

namespace {

// sigma^{-n}(V) = W, evaluated pointwise.
bool equality_at(const SurfaceComponent& V, const SurfaceComponent& W, const OrbitData& orbits,
                 long n) {
  int cv = -1, pv = 0, cw = -1, pw = 0;
  bool v_per = orbits.locate(V.id, cv, pv);
  bool w_per = orbits.locate(W.id, cw, pw);
  if (v_per && w_per && cv == cw) {
    long L = static_cast<long>(orbits.cycles[cv].size());
    return mod_pos(pv - n, L) == mod_pos(pw, L);
  }
  return V.id == W.id && n == 0 && !v_per;
}

bool containment_at(const SurfaceComponent& V, const SurfaceComponent& W, const OrbitData& orbits,
                    const IncidenceOracle& oracle, long n) {
  if (V.is_curve && !W.is_curve) return false;
  if (V.is_curve == W.is_curve) return equality_at(V, W, orbits, n);
  const Certificate* c = oracle.lookup(V.id, W.id);
  if (!c)
    fail(Err::OracleMissing, "no incidence certificate for point " + V.id + " on curve " + W.id);
  if (!c->in_window(n)) fail(Err::WindowMismatch, "oracle window misses n");
  return c->member(n);
}

} // namespace

bool tor1_criterion(const SupportDatum& suppM, const SupportDatum& suppN, long n,
                    const IncidenceOracle& oracle, long, long) {
  OrbitData orbits = merge_orbits(suppM, suppN);
  for (const auto& V : suppM.components)
    for (const auto& W : suppN.components) {
      if (containment_at(V, W, orbits, oracle, n)) return true;
      // reverse containment: W inside sigma^{-n}(V) <=> sigma^{-(-n)}(W) in V
      if (!W.is_curve && V.is_curve) {
        const Certificate* c = oracle.lookup(W.id, V.id);
        if (!c)
          fail(Err::OracleMissing,
               "no incidence certificate for point " + W.id + " on curve " + V.id);
        if (!c->in_window(-n)) fail(Err::WindowMismatch, "oracle window misses -n");
        if (c->member(-n)) return true;
      }
    }
  return false;
}

Certificate assemble_certificate(const SupportDatum& suppM, const SupportDatum& suppN,
                                 const IncidenceOracle& oracle, long lo, long hi) {
  OrbitData orbits = merge_orbits(suppM, suppN);
  Certificate acc = empty_certificate(oracle.p, lo, hi, 0);
  for (const auto& V : suppM.components)
    for (const auto& W : suppN.components) {
      // S(i,j): sigma^{-n}(V) contained in W
      if (!(V.is_curve && !W.is_curve)) {
        Certificate s = V.is_curve == W.is_curve
                            ? equality_set(V, W, orbits, oracle.p, lo, hi)
                            : oracle_set(V.id, W.id, oracle, lo, hi, false);
        acc = union_certificates(acc, s);
      }
      // S'(i,j): sigma^{-n}(V) contains W
      if (V.is_curve && !W.is_curve) {
        // W inside sigma^{-n}(V) <=> sigma^{-m}(W) in V at m = -n
        acc = union_certificates(acc, oracle_set(W.id, V.id, oracle, lo, hi, true));
      } else if (V.is_curve == W.is_curve) {
        // equality, already unioned via S(i,j)
      }
    }
  for (long n = lo; n <= hi; ++n)
    if (acc.member(n) != tor1_criterion(suppM, suppN, n, oracle, lo, hi))
      fail(Err::Internal, "assembled certificate disagrees with the pointwise criterion at n = " +
                              std::to_string(n));
  return acc;
}

} // namespace ptor
