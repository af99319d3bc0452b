#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptor/automorphism.hpp"
#include "ptor/ctx.hpp"
#include "ptor/groebner.hpp"
#include "ptor/ideal.hpp"

namespace ptor {

// Cokernel presentation S^rank / <relations>.
struct Presentation {
  RingSig sig;
  int rank = 0;
  std::vector<VecPoly> relations;

  static Presentation free_module(const RingSig& sig, int rank) { return {sig, rank, {}}; }
  static Presentation zero_module(const RingSig& sig, int rank);
};

// Scale relations to Gauss norm 1 and drop the ones that vanish.
Presentation normalized(const Presentation& p);

// Componentwise z := a; z-free presentations pass through unchanged.
Presentation specialize_presentation(const Presentation& p, const mpq_class& a);

// Relations pushed through sigma^z, with recorded truncation data.
struct FamilyModule {
  Presentation base;   // over S
  Presentation family; // over S<z>
  long trunc_m = 0;    // max truncation index over all entries
  long tail_val = 0;   // certified valuation floor of everything dropped
};

FamilyModule build_family(const AutomorphismSpec& spec, const Presentation& base, int N);
// S<z> tensor_S N: same relations read in S<z>.
Presentation constant_family(const Presentation& base);

// d_1 = maps[0] is the presentation matrix; maps[k] generates the syzygies
// of maps[k-1].  Consecutive products vanish at precision by construction.
struct FreeResolution {
  int base_rank = 0;
  std::vector<std::vector<VecPoly>> maps; // maps[k]: columns over S^{rank_k}
  int length() const { return static_cast<int>(maps.size()); }
  int rank_at(int k) const; // rank of the k-th free module
};

FreeResolution free_resolution(const Presentation& p, int max_len, const Ctx& ctx);

struct ZeroDecision {
  bool is_zero = false;
  // True when the flag is proven over the Tate algebra (always for rings
  // with at most one variable); false marks a polynomial-level answer whose
  // Tate-level confirmation is open.
  bool certified = true;
  std::string note;
};

ZeroDecision is_zero_module(const Presentation& p, const Ctx& ctx);

struct TorResult {
  int degree = 0;
  Presentation pres;
  ZeroDecision flag;
};

// Tor_i(M, N) for i = 0..i_max via a finite free resolution of N tensored
// with M; homology read off through kernel/image syzygies.
std::vector<TorResult> tor_modules(const Presentation& M, const Presentation& N, int i_max,
                                   const Ctx& ctx);

// Generators of ker(S^{src} -> coker(target_rels)) for the map given by
// columns `map_cols` (each a vector over S^{tgt}).
std::vector<VecPoly> kernel_preimage_gens(const RingSig& sig, const std::vector<VecPoly>& map_cols,
                                          int src_rank, int tgt_rank,
                                          const std::vector<VecPoly>& target_rels, const Ctx& ctx);

// Do two generating sets span the same submodule of S^r (at precision)?
bool submodules_equal(const RingSig& sig, int r, const std::vector<VecPoly>& A,
                      const std::vector<VecPoly>& B, const Ctx& ctx);

// 0th Fitting ideal: all rank x rank minors of the relation matrix (empty
// when there are fewer relations than the rank).  Cap guards the expansion.
std::vector<Tate> fitting_ideal(const Presentation& p, const Ctx& ctx, size_t minor_cap = 5000);

} // namespace ptor
