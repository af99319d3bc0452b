#include "ptor/tate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ptor {

std::string RingSig::to_string() const {
  std::ostringstream os;
  os << "K<";
  for (int i = 0; i < nx; ++i) os << "x" << (i + 1) << (i + 1 < nx ? "," : "");
  os << ">";
  if (has_z) os << "<z>";
  os << " (p=" << p << ")";
  return os.str();
}

bool mono_greater(const Exps& a, const Exps& b, const RingSig& sig) {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  if (sig.has_z && a[sig.nx] != b[sig.nx]) return a[sig.nx] > b[sig.nx];
  for (int i = 0; i < sig.nx; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Tate Tate::constant(const RingSig& sig, const mpq_class& c) {
  Tate f(sig);
  if (c != 0) f.terms_.emplace(Exps(sig.nvars(), 0), c);
  return f;
}

Tate Tate::variable(const RingSig& sig, int idx) {
  Tate f(sig);
  Exps e(sig.nvars(), 0);
  e.at(idx) = 1;
  f.terms_.emplace(std::move(e), 1);
  return f;
}

Tate Tate::z_var(const RingSig& sig) {
  if (!sig.has_z) fail(Err::SignatureMismatch, "ring has no z");
  return variable(sig, sig.nx);
}

void Tate::check_sig(const Tate& o) const {
  if (!(sig_ == o.sig_)) fail(Err::SignatureMismatch, sig_.to_string() + " vs " + o.sig_.to_string());
}

void Tate::set_coeff(const Exps& e, const mpq_class& c) {
  gauss_cache_.reset();
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

const mpq_class* Tate::coeff(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? nullptr : &it->second;
}

mpq_class Tate::constant_term() const {
  auto it = terms_.find(Exps(sig_.nvars(), 0));
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void Tate::add_term(const Exps& e, const mpq_class& c) {
  if (c == 0) return;
  gauss_cache_.reset();
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Tate Tate::operator+(const Tate& o) const {
  check_sig(o);
  Tate r = *this;
  r.gauss_cache_.reset();
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Tate Tate::operator-() const {
  Tate r = *this;
  r.gauss_cache_.reset();
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Tate Tate::operator-(const Tate& o) const { return *this + (-o); }

Tate Tate::operator*(const Tate& o) const {
  check_sig(o);
  Tate r(sig_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exps e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Tate Tate::scaled(const mpq_class& c) const {
  Tate r(sig_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

bool Tate::operator==(const Tate& o) const { return sig_ == o.sig_ && terms_ == o.terms_; }

long Tate::gauss_val() const {
  if (gauss_cache_) return *gauss_cache_;
  long v = VAL_INF;
  for (const auto& [e, c] : terms_) v = std::min(v, pval(c, sig_.p));
  gauss_cache_ = v;
  return v;
}

int Tate::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int Tate::degree_in_z() const {
  if (!sig_.has_z) return 0;
  return degree_in(sig_.nx);
}

int Tate::degree_in(int var_index) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var_index]);
  return d;
}

Tate Tate::specialize_z(const mpq_class& a) const {
  if (!sig_.has_z) fail(Err::SignatureMismatch, "specialize_z on z-free element");
  if (a != 0 && pval(a, sig_.p) < 0) fail(Err::NormViolation, "|a| > 1 in specialize_z");
  RingSig out{sig_.nx, false, sig_.p};
  Tate r(out);
  for (const auto& [e, c] : terms_) {
    mpq_class apow = 1;
    for (int k = 0; k < e[sig_.nx]; ++k) apow *= a;
    Exps ex(e.begin(), e.begin() + sig_.nx);
    r.add_term(ex, c * apow);
  }
  return r;
}

Tate Tate::substitute_x(const std::vector<Tate>& images) const {
  if (static_cast<int>(images.size()) != sig_.nx)
    fail(Err::SignatureMismatch, "wrong number of substitution images");
  for (const auto& g : images) {
    if (!(g.sig() == sig_)) fail(Err::SignatureMismatch, "image signature mismatch");
    if (!g.is_zero() && g.gauss_val() < 0) fail(Err::NormViolation, "substitution image with Gauss norm > 1");
  }
  // image powers are shared across terms
  std::vector<std::vector<Tate>> powers(sig_.nx);
  for (int i = 0; i < sig_.nx; ++i) powers[i].push_back(Tate::constant(sig_, 1));
  auto power = [&](int i, int k) -> const Tate& {
    while (static_cast<int>(powers[i].size()) <= k)
      powers[i].push_back(powers[i].back() * images[i]);
    return powers[i][k];
  };
  Tate r(sig_);
  for (const auto& [e, c] : terms_) {
    Tate term = Tate::constant(sig_, c);
    for (int i = 0; i < sig_.nx; ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    if (sig_.has_z && e[sig_.nx] > 0) {
      Exps ze(sig_.nvars(), 0);
      ze[sig_.nx] = e[sig_.nx];
      Tate zshift(sig_);
      zshift.set_coeff(ze, 1);
      term = term * zshift;
    }
    r = r + term;
  }
  return r;
}

mpq_class Tate::eval(const std::vector<mpq_class>& point) const {
  if (static_cast<int>(point.size()) != sig_.nvars())
    fail(Err::SignatureMismatch, "evaluation point has wrong arity");
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (size_t i = 0; i < point.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    s += t;
  }
  return s;
}

Tate Tate::truncated(long cut) const {
  Tate r(sig_);
  for (const auto& [e, c] : terms_)
    if (pval(c, sig_.p) < cut) r.terms_.emplace(e, c);
  return r;
}

Tate Tate::normalized() const {
  if (is_zero()) return *this;
  return scaled(pow_p_q(sig_.p, -gauss_val()));
}

Tate Tate::with_z() const {
  if (sig_.has_z) return *this;
  RingSig out{sig_.nx, true, sig_.p};
  Tate r(out);
  for (const auto& [e, c] : terms_) {
    Exps ez = e;
    ez.push_back(0);
    r.terms_.emplace(std::move(ez), c);
  }
  return r;
}

Tate Tate::without_z() const {
  if (!sig_.has_z) return *this;
  if (degree_in_z() > 0) fail(Err::SignatureMismatch, "element genuinely involves z");
  RingSig out{sig_.nx, false, sig_.p};
  Tate r(out);
  for (const auto& [e, c] : terms_) {
    Exps ex(e.begin(), e.begin() + sig_.nx);
    r.terms_.emplace(std::move(ex), c);
  }
  return r;
}

std::string Tate::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    for (int i = 0; i < sig_.nx; ++i)
      if (e[i] > 0) {
        os << "*x" << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
      }
    if (sig_.has_z && e[sig_.nx] > 0) {
      os << "*z";
      if (e[sig_.nx] > 1) os << "^" << e[sig_.nx];
    }
  }
  return os.str();
}

UnitWitness is_unit_tate(const Tate& f, int prec) {
  UnitWitness w;
  if (f.is_zero()) fail(Err::ZeroSeries, "unit test on zero element");
  mpq_class c0 = f.constant_term();
  long v0 = c0 == 0 ? VAL_INF : pval(c0, f.sig().p);
  long vrest = VAL_INF;
  std::optional<std::pair<Exps, mpq_class>> dominant;
  Exps zero(f.sig().nvars(), 0);
  for (const auto& [e, c] : f.terms()) {
    if (e == zero) continue;
    long v = pval(c, f.sig().p);
    if (v < vrest) {
      vrest = v;
      dominant = {e, c};
    }
  }
  if (c0 == 0 || v0 >= vrest) {
    w.is_unit = false;
    w.offender = dominant;
    return w;
  }
  // f = c0 (1 + g) with ||g|| < 1; invert by the geometric series until the
  // partial products agree with 1 to the requested precision.
  w.is_unit = true;
  Tate g = f.scaled(mpq_class(1) / c0) - Tate::constant(f.sig(), 1);
  long gv = g.is_zero() ? VAL_INF : g.gauss_val();
  Tate inv = Tate::constant(f.sig(), 1);
  if (gv < VAL_INF) {
    Tate pw = Tate::constant(f.sig(), 1);
    long steps = (prec + gv - 1) / gv + 1;
    for (long k = 1; k <= steps && gv * k < prec; ++k) {
      pw = (pw * g).truncated(prec);
      inv = (k % 2 == 1) ? inv - pw : inv + pw;
    }
  }
  w.inverse = inv.scaled(mpq_class(1) / c0).truncated(prec + std::max(0L, -pval(c0, f.sig().p)));
  return w;
}

} // namespace ptor
