#include "ptor/groebner.hpp"

#include <algorithm>

namespace ptor {

VecPoly vecpoly_zero(const RingSig& sig, int rank) { return VecPoly(rank, Tate::zero(sig)); }

bool vecpoly_is_zero(const VecPoly& v) {
  return std::all_of(v.begin(), v.end(), [](const Tate& f) { return f.is_zero(); });
}

VecPoly vecpoly_sub(const VecPoly& a, const VecPoly& b) {
  VecPoly r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

VecPoly vecpoly_scaled(const VecPoly& a, const mpq_class& c) {
  VecPoly r = a;
  for (auto& f : r) f = f.scaled(c);
  return r;
}

long vecpoly_gauss_val(const VecPoly& v) {
  long g = VAL_INF;
  for (const auto& f : v)
    if (!f.is_zero()) g = std::min(g, f.gauss_val());
  return g;
}

VecPoly vecpoly_truncated(const VecPoly& v, long cut) {
  VecPoly r = v;
  for (auto& f : r) f = f.truncated(cut);
  return r;
}

VecPoly vecpoly_normalized(const VecPoly& v) {
  long g = vecpoly_gauss_val(v);
  if (g == VAL_INF || g == 0) return v;
  return vecpoly_scaled(v, pow_p_q(v.front().sig().p, -g));
}

bool ModTermCmp::operator()(const ModMono& a, const ModMono& b) const {
  const bool tag_a = a.comp >= split, tag_b = b.comp >= split;
  if (tag_a != tag_b) return !tag_a;
  if (mono_greater(a.e, b.e, sig)) return true;
  if (mono_greater(b.e, a.e, sig)) return false;
  return a.comp < b.comp;
}

ModElem ModElem::from_vec(const VecPoly& v, int split) {
  if (v.empty()) fail(Err::Internal, "empty vector");
  ModElem r(v.front().sig(), static_cast<int>(v.size()), split);
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    for (const auto& [e, c] : v[i].terms()) r.terms_.emplace(ModMono{i, e}, c);
  return r;
}

const std::pair<const ModMono, mpq_class>& ModElem::lead() const {
  if (terms_.empty()) fail(Err::Internal, "lead of zero element");
  return *terms_.begin();
}

void ModElem::add_term(const ModMono& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ModElem ModElem::scaled(const mpq_class& c) const {
  ModElem r(sig_, rank_, split_);
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

void ModElem::sub_mult(const ModElem& g, const mpq_class& c, const Exps& shift) {
  for (const auto& [m, v] : g.terms_) {
    ModMono mm{m.comp, m.e};
    for (size_t i = 0; i < shift.size(); ++i) mm.e[i] += shift[i];
    add_term(mm, -c * v);
  }
}

ModElem ModElem::truncated(long cut) const {
  ModElem r(sig_, rank_, split_);
  for (const auto& [m, c] : terms_)
    if (pval(c, sig_.p) < cut) r.terms_.emplace(m, c);
  return r;
}

long ModElem::gauss_val_block(int lo, int hi) const {
  long g = VAL_INF;
  for (const auto& [m, c] : terms_)
    if (m.comp >= lo && m.comp < hi) g = std::min(g, pval(c, sig_.p));
  return g;
}

bool ModElem::block_is_zero(int lo, int hi) const {
  for (const auto& [m, c] : terms_)
    if (m.comp >= lo && m.comp < hi) return false;
  return true;
}

VecPoly ModElem::block_vec(int lo, int hi) const {
  VecPoly v(hi - lo, Tate::zero(sig_));
  for (const auto& [m, c] : terms_)
    if (m.comp >= lo && m.comp < hi) v[m.comp - lo].add_term(m.e, c);
  return v;
}

namespace {

bool mono_divides(const ModMono& d, const ModMono& m) {
  if (d.comp != m.comp) return false;
  for (size_t i = 0; i < d.e.size(); ++i)
    if (d.e[i] > m.e[i]) return false;
  return true;
}

// Scale so the leading block (components < split, else everything) has
// Gauss valuation 0.  An element whose leading block sits at valuation
// >= prec is zero at precision: untagged it is discarded, tagged it is
// exactly an at-precision syzygy, so the module block is stripped and the
// tags survive.  The guard band in between aborts: the data cannot tell a
// syzygy from a genuinely small element there.
ModElem normalize_for_basis(const ModElem& g, const Ctx& ctx) {
  if (g.is_zero()) return g;
  const int block_hi = std::min(g.split(), g.rank());
  long v = g.gauss_val_block(0, block_hi);
  if (v != VAL_INF && v >= ctx.pivot_limit() && v < ctx.drop_cut())
    fail(Err::PrecisionExhausted,
         "basis element at valuation " + std::to_string(v) + " inside the guard band of precision " +
             std::to_string(ctx.prec));
  if (v != VAL_INF && v >= ctx.drop_cut()) {
    if (g.split() >= g.rank()) return ModElem(g.sig(), g.rank(), g.split());
    ModElem tags(g.sig(), g.rank(), g.split());
    for (const auto& [m, c] : g.terms())
      if (m.comp >= g.split()) tags.add_term(m, c);
    return normalize_for_basis(tags, ctx);
  }
  if (v == VAL_INF) {
    // pure tag rows (already syzygies): normalize by their own scale
    long w = g.gauss_val();
    if (w >= ctx.drop_cut()) return ModElem(g.sig(), g.rank(), g.split());
    return w == 0 ? g : g.scaled(pow_p_q(g.sig().p, -w));
  }
  return v == 0 ? g : g.scaled(pow_p_q(g.sig().p, -v));
}

} // namespace

ModElem normal_form(ModElem v, const std::vector<ModElem>& basis, const Ctx& ctx) {
  (void)ctx;
  // Exact division: the remainder is reduced until no term is divisible by
  // a basis lead, in the elimination-then-graded-lex order.
  bool changed = true;
  while (changed && !v.is_zero()) {
    changed = false;
    for (const auto& [m, c] : v.terms()) {
      for (const auto& g : basis) {
        if (g.is_zero()) continue;
        const auto& gl = g.lead();
        if (!mono_divides(gl.first, m)) continue;
        Exps shift(m.e.size());
        for (size_t i = 0; i < shift.size(); ++i) shift[i] = m.e[i] - gl.first.e[i];
        v.sub_mult(g, c / gl.second, shift);
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  return v;
}

std::vector<ModElem> buchberger(std::vector<ModElem> gens, const Ctx& ctx, bool coprime_skip) {
  std::vector<ModElem> basis;
  std::deque<std::pair<size_t, size_t>> pairs;
  auto push = [&](const ModElem& raw) {
    ModElem g = normalize_for_basis(raw, ctx);
    if (g.is_zero()) return;
    const size_t idx = basis.size();
    for (size_t i = 0; i < idx; ++i)
      if (!basis[i].is_zero() && basis[i].lead().first.comp == g.lead().first.comp)
        pairs.emplace_back(i, idx);
    basis.push_back(std::move(g));
  };
  for (const auto& g : gens) push(g);

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const auto& f = basis[i];
    const auto& g = basis[j];
    const auto& lf = f.lead();
    const auto& lg = g.lead();
    Exps lcm(lf.first.e.size());
    bool coprime = true;
    for (size_t k = 0; k < lcm.size(); ++k) {
      lcm[k] = std::max(lf.first.e[k], lg.first.e[k]);
      if (lf.first.e[k] > 0 && lg.first.e[k] > 0) coprime = false;
    }
    if (coprime_skip && coprime) continue;
    ModElem s(f.sig(), f.rank(), f.split());
    Exps shift_f(lcm.size()), shift_g(lcm.size());
    for (size_t k = 0; k < lcm.size(); ++k) {
      shift_f[k] = lcm[k] - lf.first.e[k];
      shift_g[k] = lcm[k] - lg.first.e[k];
    }
    s.sub_mult(f, mpq_class(-1) / lf.second, shift_f);
    s.sub_mult(g, mpq_class(1) / lg.second, shift_g);
    ModElem rem = normal_form(std::move(s), basis, ctx);
    if (!rem.is_zero()) push(rem);
  }
  return basis;
}

TaggedGB tagged_gb(const RingSig& sig, int r, const std::vector<VecPoly>& gens, const Ctx& ctx) {
  TaggedGB out;
  out.sig = sig;
  out.r = r;
  out.m = static_cast<int>(gens.size());
  std::vector<ModElem> tagged;
  for (int i = 0; i < out.m; ++i) {
    if (static_cast<int>(gens[i].size()) != r) fail(Err::Internal, "generator rank mismatch");
    ModElem e(sig, r + out.m, r);
    for (int c = 0; c < r; ++c)
      for (const auto& [mono, coef] : gens[i][c].terms()) e.add_term(ModMono{c, mono}, coef);
    e.add_term(ModMono{r + i, Exps(sig.nvars(), 0)}, 1);
    tagged.push_back(std::move(e));
  }
  // Tags are combinations: the product criterion would silently discard the
  // Koszul syzygies, so it stays off here.
  out.basis = buchberger(std::move(tagged), ctx, false);
  for (const auto& b : out.basis) {
    if (b.is_zero()) continue;
    if (b.block_is_zero(0, r)) {
      out.syzygies.push_back(b.block_vec(r, r + out.m));
    } else {
      out.module_gb.push_back(b.block_vec(0, r));
      out.gb_tags.push_back(b.block_vec(r, r + out.m));
    }
  }
  return out;
}

std::optional<VecPoly> membership(const VecPoly& w, const TaggedGB& g, const Ctx& ctx) {
  if (static_cast<int>(w.size()) != g.r) fail(Err::Internal, "membership rank mismatch");
  ModElem work(g.sig, g.r + g.m, g.r);
  for (int c = 0; c < g.r; ++c)
    for (const auto& [mono, coef] : w[c].terms()) work.add_term(ModMono{c, mono}, coef);
  // Reduce only by rows whose lead is in the module block; the invariant
  // block1 = w + sum block2_i * gens_i then gives the combination.
  std::vector<ModElem> reducers;
  for (const auto& b : g.basis)
    if (!b.is_zero() && b.lead().first.comp < g.r) reducers.push_back(b);
  bool changed = true;
  while (changed && !work.block_is_zero(0, g.r)) {
    changed = false;
    for (const auto& [m, c] : work.terms()) {
      if (m.comp >= g.r) break; // ordered: tag block only from here on
      for (const auto& red : reducers) {
        const auto& rl = red.lead();
        if (!mono_divides(rl.first, m)) continue;
        Exps shift(m.e.size());
        for (size_t i = 0; i < shift.size(); ++i) shift[i] = m.e[i] - rl.first.e[i];
        work.sub_mult(red, c / rl.second, shift);
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  if (!work.truncated(ctx.drop_cut()).block_is_zero(0, g.r)) return std::nullopt;
  VecPoly tags = work.block_vec(g.r, g.r + g.m);
  for (auto& t : tags) t = (-t).truncated(ctx.drop_cut());
  return tags;
}

std::vector<VecPoly> module_gb(const RingSig& sig, int r, const std::vector<VecPoly>& gens,
                               const Ctx& ctx) {
  std::vector<ModElem> in;
  for (const auto& v : gens) {
    if (vecpoly_is_zero(v)) continue;
    ModElem e(sig, r, r);
    for (int c = 0; c < r; ++c)
      for (const auto& [mono, coef] : v[c].terms()) e.add_term(ModMono{c, mono}, coef);
    in.push_back(std::move(e));
  }
  auto basis = buchberger(std::move(in), ctx, r == 1);
  // Minimal basis: drop rows whose lead is divisible by another row's lead.
  std::vector<VecPoly> out;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j)
      if (i != j && !basis[j].is_zero() &&
          mono_divides(basis[j].lead().first, basis[i].lead().first) &&
          !(mono_divides(basis[i].lead().first, basis[j].lead().first) && j > i))
        redundant = true;
    if (!redundant) out.push_back(basis[i].block_vec(0, r));
  }
  return out;
}

VecPoly vec_normal_form(const VecPoly& w, const std::vector<VecPoly>& gb, const Ctx& ctx) {
  if (gb.empty()) return w;
  int r = static_cast<int>(w.size());
  std::vector<ModElem> basis;
  for (const auto& v : gb)
    if (!vecpoly_is_zero(v)) basis.push_back(ModElem::from_vec(v, r));
  ModElem work = ModElem::from_vec(w, r);
  return normal_form(std::move(work), basis, ctx).truncated(ctx.drop_cut()).block_vec(0, r);
}

} // namespace ptor
