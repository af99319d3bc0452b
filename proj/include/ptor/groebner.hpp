#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "ptor/ctx.hpp"
#include "ptor/tate.hpp"

namespace ptor {

// Element of a free module S^rank written as a dense vector of polynomials.
using VecPoly = std::vector<Tate>;

VecPoly vecpoly_zero(const RingSig& sig, int rank);
bool vecpoly_is_zero(const VecPoly& v);
VecPoly vecpoly_sub(const VecPoly& a, const VecPoly& b);
VecPoly vecpoly_scaled(const VecPoly& a, const mpq_class& c);
long vecpoly_gauss_val(const VecPoly& v); // VAL_INF for 0
VecPoly vecpoly_truncated(const VecPoly& v, long cut);
VecPoly vecpoly_normalized(const VecPoly& v);

struct ModMono {
  int comp;
  Exps e;
  bool operator==(const ModMono&) const = default;
};

// Term-over-position order inside each block; everything in components
// < split beats everything in components >= split (elimination of the tag
// block).  Plain module order: split >= rank.
struct ModTermCmp {
  RingSig sig;
  int split;
  bool operator()(const ModMono& a, const ModMono& b) const; // a > b
};

class ModElem {
public:
  using TermMap = std::map<ModMono, mpq_class, ModTermCmp>;

  ModElem(const RingSig& sig, int rank, int split)
      : sig_(sig), rank_(rank), split_(split), terms_(ModTermCmp{sig, split}) {}

  static ModElem from_vec(const VecPoly& v, int split);

  const RingSig& sig() const { return sig_; }
  int rank() const { return rank_; }
  int split() const { return split_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  const std::pair<const ModMono, mpq_class>& lead() const;

  void add_term(const ModMono& m, const mpq_class& c);
  ModElem scaled(const mpq_class& c) const;
  // this -= c * x^shift * g
  void sub_mult(const ModElem& g, const mpq_class& c, const Exps& shift);
  ModElem truncated(long cut) const;

  long gauss_val_block(int comp_lo, int comp_hi) const; // over comps in [lo,hi)
  long gauss_val() const { return gauss_val_block(0, rank_); }
  bool block_is_zero(int comp_lo, int comp_hi) const;
  // Extract components [lo,hi) as a dense vector.
  VecPoly block_vec(int comp_lo, int comp_hi) const;

private:
  RingSig sig_;
  int rank_;
  int split_;
  TermMap terms_;
};

// Full normal form of v against basis (first matching reducer in basis
// order); deterministic.  Enforces the pivot guard.
ModElem normal_form(ModElem v, const std::vector<ModElem>& basis, const Ctx& ctx);

// Buchberger completion.  Inputs and output share (sig, rank, split).  If
// coprime_skip is set the product criterion drops coprime pairs; it must be
// left off whenever tags matter (syzygies).
std::vector<ModElem> buchberger(std::vector<ModElem> gens, const Ctx& ctx, bool coprime_skip);

// Groebner data for the submodule of S^r generated by `gens`, carrying tags:
// every basis row satisfies block1 = sum_i tag_i * gens[i].
struct TaggedGB {
  RingSig sig;
  int r = 0, m = 0;
  std::vector<ModElem> basis;       // rank r+m, split r
  std::vector<VecPoly> module_gb;   // GB of the submodule (length-r vectors)
  std::vector<VecPoly> gb_tags;     // tags of module_gb rows (length-m vectors)
  std::vector<VecPoly> syzygies;    // generators of Syz(gens) (length-m vectors)
};

TaggedGB tagged_gb(const RingSig& sig, int r, const std::vector<VecPoly>& gens, const Ctx& ctx);

// If w lies in the module generated by the tagged gens (at precision),
// return combo with w = sum combo_i * gens_i.
std::optional<VecPoly> membership(const VecPoly& w, const TaggedGB& g, const Ctx& ctx);

// Plain module Groebner basis (no tags kept).
std::vector<VecPoly> module_gb(const RingSig& sig, int r, const std::vector<VecPoly>& gens,
                               const Ctx& ctx);
// Normal form of w against a plain GB.
VecPoly vec_normal_form(const VecPoly& w, const std::vector<VecPoly>& gb, const Ctx& ctx);

} // namespace ptor
