#include "ptor/homology.hpp"

#include <algorithm>

namespace ptor {

Presentation Presentation::zero_module(const RingSig& sig, int rank) {
  Presentation p{sig, rank, {}};
  for (int i = 0; i < rank; ++i) {
    VecPoly e = vecpoly_zero(sig, rank);
    e[i] = Tate::constant(sig, 1);
    p.relations.push_back(std::move(e));
  }
  return p;
}

Presentation normalized(const Presentation& p) {
  Presentation out{p.sig, p.rank, {}};
  for (const auto& rel : p.relations) {
    if (static_cast<int>(rel.size()) != p.rank) fail(Err::Schema, "relation arity mismatch");
    if (vecpoly_is_zero(rel)) continue;
    out.relations.push_back(vecpoly_normalized(rel));
  }
  return out;
}

Presentation specialize_presentation(const Presentation& p, const mpq_class& a) {
  if (!p.sig.has_z) return p;
  RingSig out_sig{p.sig.nx, false, p.sig.p};
  Presentation out{out_sig, p.rank, {}};
  for (const auto& rel : p.relations) {
    VecPoly v;
    v.reserve(rel.size());
    for (const auto& f : rel) v.push_back(f.specialize_z(a));
    if (!vecpoly_is_zero(v)) out.relations.push_back(std::move(v));
  }
  return out;
}

FamilyModule build_family(const AutomorphismSpec& spec, const Presentation& base, int N) {
  validate_contraction(spec);
  if (base.sig.has_z) fail(Err::SignatureMismatch, "base presentation already has z");
  if (!(base.sig == spec.sig)) fail(Err::SignatureMismatch, "base ring differs from spec ring");
  FamilyModule fam;
  fam.base = normalized(base);
  RingSig zsig{base.sig.nx, true, base.sig.p};
  fam.family = Presentation{zsig, base.rank, {}};
  fam.tail_val = N;
  for (const auto& rel : fam.base.relations) {
    VecPoly v;
    for (const auto& f : rel) {
      SigmaZ sz = sigma_z(spec, f, N);
      fam.trunc_m = std::max(fam.trunc_m, sz.trunc_m);
      v.push_back(sz.value);
    }
    fam.family.relations.push_back(std::move(v));
  }
  return fam;
}

Presentation constant_family(const Presentation& base) {
  if (base.sig.has_z) return base;
  RingSig zsig{base.sig.nx, true, base.sig.p};
  Presentation out{zsig, base.rank, {}};
  for (const auto& rel : base.relations) {
    VecPoly v;
    for (const auto& f : rel) v.push_back(f.with_z());
    out.relations.push_back(std::move(v));
  }
  return out;
}

int FreeResolution::rank_at(int k) const {
  if (k == 0) return base_rank;
  return static_cast<int>(maps[k - 1].size());
}

namespace {

// Split off trivial complex summands: a syzygy with a unit scalar entry
// makes the corresponding generator redundant.
void minimize_step(std::vector<VecPoly>& gens, std::vector<VecPoly>& syz) {
  for (;;) {
    int si = -1, gi = -1;
    for (size_t s = 0; s < syz.size() && si < 0; ++s)
      for (size_t g = 0; g < syz[s].size(); ++g) {
        const Tate& entry = syz[s][g];
        if (!entry.is_zero() && entry.total_degree() == 0) {
          si = static_cast<int>(s);
          gi = static_cast<int>(g);
          break;
        }
      }
    if (si < 0) return;
    const mpq_class pivot = syz[si][gi].constant_term();
    for (size_t s = 0; s < syz.size(); ++s) {
      if (static_cast<int>(s) == si) continue;
      const Tate& e = syz[s][gi];
      if (e.is_zero()) continue;
      syz[s] = vecpoly_sub(syz[s], vecpoly_scaled(syz[si], e.constant_term() / pivot));
      // entries may still involve gi through non-constant parts
      Tate rest = syz[s][gi];
      if (!rest.is_zero()) {
        // eliminate the full entry, not just its constant term
        VecPoly corr = syz[si];
        for (auto& c : corr) c = c * rest.scaled(1 / pivot);
        syz[s] = vecpoly_sub(syz[s], corr);
        syz[s][gi] = Tate::zero(syz[s][gi].sig());
      }
    }
    syz.erase(syz.begin() + si);
    gens.erase(gens.begin() + gi);
    for (auto& s : syz) s.erase(s.begin() + gi);
  }
}

} // namespace

FreeResolution free_resolution(const Presentation& p, int max_len, const Ctx& ctx) {
  FreeResolution res;
  res.base_rank = p.rank;
  Presentation np = normalized(p);
  std::vector<VecPoly> cur = np.relations;
  int rank_cur = p.rank;
  while (!cur.empty()) {
    if (static_cast<int>(res.maps.size()) >= max_len)
      fail(Err::ResolutionTooLong,
           "resolution exceeded max length " + std::to_string(max_len));
    TaggedGB tg = tagged_gb(np.sig, rank_cur, cur, ctx);
    std::vector<VecPoly> syz;
    for (const auto& s : tg.syzygies) {
      VecPoly v = vecpoly_truncated(s, ctx.drop_cut());
      if (!vecpoly_is_zero(v)) syz.push_back(vecpoly_normalized(v));
    }
    minimize_step(cur, syz);
    if (cur.empty()) break;
    res.maps.push_back(cur);
    rank_cur = static_cast<int>(cur.size());
    cur.clear();
    for (auto& s : syz)
      if (!vecpoly_is_zero(s)) cur.push_back(vecpoly_normalized(s));
  }
  // d o d = 0 at precision, by construction; verify cheaply.
  for (size_t k = 0; k + 1 < res.maps.size(); ++k) {
    for (const auto& col : res.maps[k + 1]) {
      VecPoly prod = vecpoly_zero(np.sig, res.rank_at(static_cast<int>(k)));
      for (size_t j = 0; j < col.size(); ++j)
        for (size_t i = 0; i < prod.size(); ++i)
          prod[i] = prod[i] + col[j] * res.maps[k][j][i];
      if (!vecpoly_is_zero(vecpoly_truncated(prod, ctx.drop_cut())))
        fail(Err::Internal, "resolution differentials do not compose to zero");
    }
  }
  return res;
}

std::vector<Tate> fitting_ideal(const Presentation& p, const Ctx& ctx, size_t minor_cap) {
  Presentation np = normalized(p);
  const int k = np.rank;
  const int m = static_cast<int>(np.relations.size());
  if (k == 0) return {Tate::constant(np.sig, 1)};
  if (m < k) return {};
  // number of column subsets
  double cnt = 1;
  for (int i = 0; i < k; ++i) cnt *= static_cast<double>(m - i) / (i + 1);
  if (cnt > static_cast<double>(minor_cap))
    fail(Err::PrecisionExhausted, "fitting ideal expansion too large"); // caller catches
  std::vector<Tate> minors;
  std::vector<int> idx(k);
  // iterate over k-subsets of columns
  for (int i = 0; i < k; ++i) idx[i] = i;
  auto det = [&](const std::vector<int>& cols) {
    // Laplace expansion on small matrices; entry (row r, col c).
    std::vector<std::vector<Tate>> a(k, std::vector<Tate>(k, Tate::zero(np.sig)));
    for (int c = 0; c < k; ++c)
      for (int r = 0; r < k; ++r) a[r][c] = np.relations[cols[c]][r];
    std::function<Tate(std::vector<int>, std::vector<int>)> go =
        [&](std::vector<int> rows, std::vector<int> cols2) -> Tate {
      if (rows.size() == 1) return a[rows[0]][cols2[0]];
      Tate s = Tate::zero(np.sig);
      std::vector<int> subrows(rows.begin() + 1, rows.end());
      for (size_t j = 0; j < cols2.size(); ++j) {
        if (a[rows[0]][cols2[j]].is_zero()) continue;
        std::vector<int> subcols;
        for (size_t t = 0; t < cols2.size(); ++t)
          if (t != j) subcols.push_back(cols2[t]);
        Tate minor = go(subrows, subcols);
        Tate term = a[rows[0]][cols2[j]] * minor;
        s = (j % 2 == 0) ? s + term : s - term;
      }
      return s;
    };
    std::vector<int> rows(k), cc(k);
    for (int i = 0; i < k; ++i) rows[i] = i, cc[i] = i;
    (void)cc;
    std::vector<int> allc(k);
    for (int i = 0; i < k; ++i) allc[i] = i;
    return go(rows, allc);
  };
  for (;;) {
    Tate d = det(idx).truncated(ctx.drop_cut());
    if (!d.is_zero()) minors.push_back(d.normalized());
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int t = pos + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return minors;
}

ZeroDecision is_zero_module(const Presentation& p, const Ctx& ctx) {
  if (p.rank == 0) return {true, true, "zero rank"};
  Presentation np = normalized(p);
  if (np.relations.empty()) return {false, true, "free module of positive rank"};
  auto gb = module_gb(np.sig, np.rank, np.relations, ctx);
  bool all_units_reduce = true;
  for (int i = 0; i < np.rank && all_units_reduce; ++i) {
    VecPoly e = vecpoly_zero(np.sig, np.rank);
    e[i] = Tate::constant(np.sig, 1);
    if (!vecpoly_is_zero(vec_normal_form(e, gb, ctx))) all_units_reduce = false;
  }
  if (all_units_reduce) return {true, true, "identity reduces to zero"};
  std::vector<Tate> fitt;
  bool fitt_ok = true;
  try {
    fitt = fitting_ideal(np, ctx);
  } catch (const Error&) {
    fitt_ok = false;
  }
  if (fitt_ok) {
    if (fitt.empty()) return {false, true, "fitting ideal vanishes"};
    UnitIdealResult u = tate_unit_ideal(fitt, ctx);
    if (u.decide == Decide::Yes) return {true, true, "fitting ideal is the unit ideal: " + u.note};
    if (u.decide == Decide::No) return {false, true, "fitting ideal proper: " + u.note};
    return {false, false, "nonzero at the polynomial level; " + u.note};
  }
  return {false, false, "nonzero at the polynomial level (fitting expansion skipped)"};
}

std::vector<VecPoly> kernel_preimage_gens(const RingSig& sig, const std::vector<VecPoly>& map_cols,
                                          int src_rank, int tgt_rank,
                                          const std::vector<VecPoly>& target_rels, const Ctx& ctx) {
  if (static_cast<int>(map_cols.size()) != src_rank)
    fail(Err::Internal, "map column count differs from source rank");
  // Syzygies of [map | target relations]: the map-part of each syzygy is a
  // kernel generator of S^src -> coker(target_rels).
  std::vector<VecPoly> cols = map_cols;
  for (const auto& r : target_rels) cols.push_back(r);
  for (const auto& c : cols)
    if (static_cast<int>(c.size()) != tgt_rank) fail(Err::Internal, "column arity mismatch");
  if (cols.empty()) {
    // zero map into zero-relation target: kernel is everything
    std::vector<VecPoly> out;
    for (int i = 0; i < src_rank; ++i) {
      VecPoly e = vecpoly_zero(sig, src_rank);
      e[i] = Tate::constant(sig, 1);
      out.push_back(std::move(e));
    }
    return out;
  }
  TaggedGB tg = tagged_gb(sig, tgt_rank, cols, ctx);
  std::vector<VecPoly> out;
  for (const auto& s : tg.syzygies) {
    VecPoly v(s.begin(), s.begin() + src_rank);
    v = vecpoly_truncated(v, ctx.drop_cut());
    if (!vecpoly_is_zero(v)) out.push_back(vecpoly_normalized(v));
  }
  return out;
}

bool submodules_equal(const RingSig& sig, int r, const std::vector<VecPoly>& A,
                      const std::vector<VecPoly>& B, const Ctx& ctx) {
  auto gba = module_gb(sig, r, A, ctx);
  auto gbb = module_gb(sig, r, B, ctx);
  for (const auto& a : A)
    if (!vecpoly_is_zero(vec_normal_form(a, gbb, ctx))) return false;
  for (const auto& b : B)
    if (!vecpoly_is_zero(vec_normal_form(b, gba, ctx))) return false;
  return true;
}

namespace {

// Columns of d_k (x) id_{M.rank} at the free level; source blocks are the
// columns of `cols`, each block expanded over the M-generators.
std::vector<VecPoly> kron_with_identity(const RingSig& sig, const std::vector<VecPoly>& cols,
                                        int m_rank, int tgt_free_rank) {
  std::vector<VecPoly> out;
  for (const auto& col : cols) {
    for (int t = 0; t < m_rank; ++t) {
      VecPoly v = vecpoly_zero(sig, tgt_free_rank * m_rank);
      for (size_t b = 0; b < col.size(); ++b) v[b * m_rank + t] = col[b];
      out.push_back(std::move(v));
    }
  }
  return out;
}

// Relations of M^{copies} at the free level (block diagonal).
std::vector<VecPoly> block_relations(const RingSig& sig, const std::vector<VecPoly>& rels,
                                     int m_rank, int copies) {
  std::vector<VecPoly> out;
  for (int b = 0; b < copies; ++b)
    for (const auto& r : rels) {
      VecPoly v = vecpoly_zero(sig, copies * m_rank);
      for (int t = 0; t < m_rank; ++t) v[b * m_rank + t] = r[t];
      out.push_back(std::move(v));
    }
  return out;
}

} // namespace

std::vector<TorResult> tor_modules(const Presentation& M, const Presentation& N, int i_max,
                                   const Ctx& ctx) {
  if (!(M.sig == N.sig)) fail(Err::SignatureMismatch, "Tor arguments over different rings");
  const RingSig sig = M.sig;
  Presentation Mn = normalized(M);
  const int gl_dim = sig.nvars();
  FreeResolution res = free_resolution(N, gl_dim + 1, ctx);
  const int L = res.length();

  std::vector<TorResult> out;
  for (int i = 0; i <= i_max; ++i) {
    TorResult tr;
    tr.degree = i;
    if (i > L) {
      tr.pres = Presentation{sig, 0, {}};
      tr.flag = {true, true, "beyond resolution length"};
      out.push_back(std::move(tr));
      continue;
    }
    const int a_i = res.rank_at(i);
    const int g_i = a_i * Mn.rank;
    std::vector<VecPoly> rel_i = block_relations(sig, Mn.relations, Mn.rank, a_i);

    // Kernel generators at spot i.
    std::vector<VecPoly> kgens;
    if (i == 0) {
      for (int t = 0; t < g_i; ++t) {
        VecPoly e = vecpoly_zero(sig, g_i);
        e[t] = Tate::constant(sig, 1);
        kgens.push_back(std::move(e));
      }
    } else {
      const int a_prev = res.rank_at(i - 1);
      std::vector<VecPoly> psi =
          kron_with_identity(sig, res.maps[i - 1], Mn.rank, a_prev);
      std::vector<VecPoly> rel_prev = block_relations(sig, Mn.relations, Mn.rank, a_prev);
      kgens = kernel_preimage_gens(sig, psi, g_i, a_prev * Mn.rank, rel_prev, ctx);
    }

    // Relations among the kernel generators: combinations landing in the
    // incoming image plus the ambient relations.
    std::vector<VecPoly> targets = kgens;
    size_t n_k = kgens.size();
    std::vector<VecPoly> incoming;
    if (i + 1 <= L) incoming = kron_with_identity(sig, res.maps[i], Mn.rank, a_i);
    for (const auto& c : incoming) targets.push_back(c);
    for (const auto& c : rel_i) targets.push_back(c);

    Presentation h{sig, static_cast<int>(n_k), {}};
    if (n_k > 0) {
      TaggedGB tg = tagged_gb(sig, g_i, targets, ctx);
      for (const auto& s : tg.syzygies) {
        VecPoly v(s.begin(), s.begin() + n_k);
        v = vecpoly_truncated(v, ctx.drop_cut());
        if (!vecpoly_is_zero(v)) h.relations.push_back(vecpoly_normalized(v));
      }
    }
    tr.pres = std::move(h);
    tr.flag = is_zero_module(tr.pres, ctx);
    out.push_back(std::move(tr));
  }
  return out;
}

} // namespace ptor
