#include "ptor/certificate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ptor {

namespace {

long mod_pos(long n, long m) {
  long r = n % m;
  return r < 0 ? r + m : r;
}

bool sorted_contains(const std::vector<long>& v, long n) {
  return std::binary_search(v.begin(), v.end(), n);
}

} // namespace

bool BallWitness::covers(const mpq_class& a, long p) const {
  mpq_class d = a - center;
  if (d == 0) return true;
  return pval(d, p) >= radius_exp;
}

bool Certificate::base_member(long n) const {
  return sorted_contains(residues, mod_pos(n, modulus));
}

bool Certificate::member(long n) const {
  if (sorted_contains(added, n)) return true;
  if (sorted_contains(removed, n)) return false;
  return base_member(n);
}

std::vector<char> Certificate::bitmap() const {
  std::vector<char> bits(window_size(), 0);
  for (long n = win_lo; n <= win_hi; ++n) bits[n - win_lo] = member(n) ? 1 : 0;
  return bits;
}

bool Certificate::empty_set() const {
  for (long n = win_lo; n <= win_hi; ++n)
    if (member(n)) return false;
  return true;
}

std::vector<long> p_power_moduli(long p, int r_max) {
  std::vector<long> v{1};
  long m = 1;
  for (int r = 1; r <= r_max; ++r) {
    if (m > 2'000'000 / p) break;
    m *= p;
    v.push_back(m);
  }
  return v;
}

std::vector<long> divisor_moduli(long m) {
  std::vector<long> v;
  for (long d = 1; d * d <= m; ++d)
    if (m % d == 0) {
      v.push_back(d);
      if (d != m / d) v.push_back(m / d);
    }
  std::sort(v.begin(), v.end());
  return v;
}

Certificate certificate_from_bitmap(long p, long win_lo, long win_hi,
                                    const std::vector<char>& bits,
                                    const std::vector<long>& candidate_moduli,
                                    int session_prec) {
  if (win_hi < win_lo) fail(Err::WindowMismatch, "empty window");
  if (static_cast<long>(bits.size()) != win_hi - win_lo + 1)
    fail(Err::Internal, "bitmap size does not match window");
  Certificate best;
  long best_cost = -1;
  for (long m : candidate_moduli) {
    if (m <= 0) continue;
    std::vector<long> member_count(m, 0), total_count(m, 0);
    for (long n = win_lo; n <= win_hi; ++n) {
      long cls = mod_pos(n, m);
      ++total_count[cls];
      if (bits[n - win_lo]) ++member_count[cls];
    }
    Certificate cand;
    cand.p = p;
    cand.modulus = m;
    cand.win_lo = win_lo;
    cand.win_hi = win_hi;
    cand.session_prec = session_prec;
    for (long cls = 0; cls < m; ++cls)
      if (total_count[cls] > 0 && 2 * member_count[cls] > total_count[cls])
        cand.residues.push_back(cls);
    for (long n = win_lo; n <= win_hi; ++n) {
      bool base = sorted_contains(cand.residues, mod_pos(n, m));
      bool bit = bits[n - win_lo];
      if (bit && !base) cand.added.push_back(n);
      if (!bit && base) cand.removed.push_back(n);
    }
    // Description length: progression residues plus the exception lists.
    long cost = static_cast<long>(cand.residues.size() + cand.added.size() + cand.removed.size());
    if (best_cost < 0 || cost < best_cost ||
        (cost == best_cost && cand.modulus < best.modulus)) {
      best_cost = cost;
      best = std::move(cand);
    }
  }
  if (best_cost < 0) fail(Err::Internal, "no candidate modulus");
  if (best.p > 0) {
    long m = best.modulus;
    int r = 0;
    while (m > 1 && m % best.p == 0) {
      m /= best.p;
      ++r;
    }
    best.r = (m == 1) ? r : -1;
  }
  return best;
}

namespace {

Certificate combine(const Certificate& a, const Certificate& b, bool is_union) {
  if (a.p != 0 && b.p != 0 && a.p != b.p) fail(Err::PrimeMismatch, "certificates over different primes");
  long lo = std::max(a.win_lo, b.win_lo);
  long hi = std::min(a.win_hi, b.win_hi);
  if (hi < lo) fail(Err::WindowMismatch, "windows do not overlap");
  std::vector<char> bits(hi - lo + 1, 0);
  for (long n = lo; n <= hi; ++n) {
    bool m = is_union ? (a.member(n) || b.member(n)) : (a.member(n) && b.member(n));
    bits[n - lo] = m ? 1 : 0;
  }
  long p = a.p != 0 ? a.p : b.p;
  std::set<long> cands;
  long lcm = std::lcm(a.modulus, b.modulus);
  if (lcm <= 2'000'000)
    for (long d : divisor_moduli(lcm)) cands.insert(d);
  cands.insert(a.modulus);
  cands.insert(b.modulus);
  cands.insert(std::max(a.modulus, b.modulus));
  if (p > 0)
    for (long m : p_power_moduli(p, std::max(a.r, b.r) < 0 ? 6 : std::max(a.r, b.r)))
      cands.insert(m);
  Certificate out = certificate_from_bitmap(
      p, lo, hi, bits, std::vector<long>(cands.begin(), cands.end()),
      std::max(a.session_prec, b.session_prec));
  if (is_union) {
    out.balls = a.balls;
    out.balls.insert(out.balls.end(), b.balls.begin(), b.balls.end());
  } else {
    // Ultrametric: intersecting balls nest, keep the smaller of each pair.
    for (const auto& ba : a.balls)
      for (const auto& bb : b.balls) {
        mpq_class d = ba.center - bb.center;
        long dist = d == 0 ? VAL_INF : pval(d, p > 0 ? p : 2);
        if (dist >= std::min(ba.radius_exp, bb.radius_exp))
          out.balls.push_back(ba.radius_exp >= bb.radius_exp ? ba : bb);
      }
  }
  return out;
}

} // namespace

Certificate intersect_certificates(const Certificate& a, const Certificate& b) {
  return combine(a, b, false);
}

Certificate union_certificates(const Certificate& a, const Certificate& b) {
  return combine(a, b, true);
}

Certificate complement_certificate(const Certificate& a) {
  std::vector<char> bits = a.bitmap();
  for (auto& x : bits) x = x ? 0 : 1;
  std::set<long> cands{a.modulus};
  if (a.p > 0)
    for (long m : p_power_moduli(a.p, a.r < 0 ? 6 : std::max(a.r, 1)))
      cands.insert(m);
  for (long d : divisor_moduli(a.modulus)) cands.insert(d);
  return certificate_from_bitmap(a.p, a.win_lo, a.win_hi, bits,
                                 std::vector<long>(cands.begin(), cands.end()),
                                 a.session_prec);
}

Certificate negate_certificate(const Certificate& a) {
  Certificate out = a;
  out.win_lo = -a.win_hi;
  out.win_hi = -a.win_lo;
  out.residues.clear();
  for (long r : a.residues) out.residues.push_back(mod_pos(-r, a.modulus));
  std::sort(out.residues.begin(), out.residues.end());
  out.residues.erase(std::unique(out.residues.begin(), out.residues.end()), out.residues.end());
  out.added.clear();
  for (long n : a.added) out.added.push_back(-n);
  std::sort(out.added.begin(), out.added.end());
  out.removed.clear();
  for (long n : a.removed) out.removed.push_back(-n);
  std::sort(out.removed.begin(), out.removed.end());
  out.balls.clear();
  for (const auto& b : a.balls) {
    BallWitness w = b;
    w.center = -b.center;
    w.qg.reset();
    out.balls.push_back(std::move(w));
  }
  return out;
}

Certificate full_certificate(long p, long win_lo, long win_hi, int prec) {
  Certificate c;
  c.p = p;
  c.modulus = 1;
  c.r = p > 0 ? 0 : -1;
  c.residues = {0};
  c.win_lo = win_lo;
  c.win_hi = win_hi;
  c.session_prec = prec;
  return c;
}

Certificate empty_certificate(long p, long win_lo, long win_hi, int prec) {
  Certificate c = full_certificate(p, win_lo, win_hi, prec);
  c.residues.clear();
  return c;
}

} // namespace ptor
