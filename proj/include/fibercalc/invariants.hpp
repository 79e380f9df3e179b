#pragma once

#include <optional>
#include <vector>

#include "fibercalc/arith.hpp"
#include "fibercalc/fiber_graph.hpp"

namespace fibercalc {

/// All local invariants of one fiber, exact. Bar-level values are those of
/// the minimal normal-crossing model; minimal-level Chern numbers apply the
/// blow-up shift by r = blowups: c1sq_min = c1sq_bar + r, c2_min = c2_bar - r.
struct InvariantBundle {
    long long g = 0;         // fiber genus
    long long pa_red = 0;    // p_a of the reduced NC model
    long long n_bar = 0;     // g - pa_red
    std::optional<long long> n_min;  // g - p_a(reduced minimal fiber), needs record
    long long mu = 0;        // node count of the NC model
    Rat alpha = 0;           // sum (m_i - 2)^2 over the resolution record
    Rat beta = 0;            // sum over nodes of gcd(a,b)^2/(ab)
    Rat beta_minus = 0;      // H-J branch total
    Rat beta_plus = 0;       // beta - beta_minus
    Int fred_sq = 0;         // reduced NC model self-intersection
    Rat c1sq_bar = 0, c2_bar = 0;
    Rat c1sq_min = 0, c2_min = 0;
    Rat chi = 0;
    long long blowups = 0;       // r applied in the shift
    long long contractions = 0;  // redundant (-1)-curves removed first
};

/// One Hirzebruch-Jung branch: the walked components from an end point up
/// to (excluding) the terminating bullet.
struct HJBranch {
    HJChain chain;
    Int leaf_mult;                // gamma_1
    std::vector<int> path;        // component indices, leaf first
    int bullet = -1;              // terminating component index
};

struct BranchSet {
    FiberGraph graph;  // the minimized model the branches refer to
    std::vector<HJBranch> branches;
    long long contractions = 0;
};

/// p_a of the reduced model: sum of component genera plus the first Betti
/// number of the dual graph (node count - components + 1).
long long reduced_pa(const FiberGraph& f);

/// Walks every degree-1 genus-0 loop-free component through degree-2
/// genus-0 loop-free components until a bullet (degree >= 3, positive
/// genus, or a self-node). Minimizes first when needed. Verifies the
/// multiplicity laws gamma_i = mu_i gamma_1 and n = gamma_bullet/gamma_1.
BranchSet hj_branches(const FiberGraph& f);

/// The computation formulas, bar level (alpha = 0):
///   c1^2 = 4N + F_red^2 - beta^-,
///   c2   = 2N + mu - beta^+,
///   12chi = 6N + F_red^2 + mu - beta,
/// plus the blow-up shift to the minimal level. When a resolution record
/// is present (and no contraction was needed) the formulas are also
/// evaluated directly at the minimal level and must agree exactly.
InvariantBundle compute_invariants(const FiberGraph& f);

/// Second, independent chi route: N_bar/2 - sum over node pairs of
/// chi(n_i, n_j) C_i C_j, with chi(n,n) = 0 for self-nodes.
Rat chi_via_pairs(const FiberGraph& f);

/// ADE singularity kinds; the parameter k applies to the A/D series.
enum class AdeKind { AOdd, AEven, DEven, DOdd, E6, E7, E8 };

struct AdeInvariants {
    Int mu;
    Int alpha;
    Rat beta;
};

/// Table of (mu, alpha, beta) for an ADE singular point. Branch
/// multiplicity arity: AOdd (A_{2k-1}) takes (n, m); AEven (A_{2k}) one
/// branch; DEven (D_{2k+2}) takes (n, m, l) with n the smooth branch;
/// DOdd (D_{2k+3}) takes (n, m) with n smooth; E6 and E8 one branch;
/// E7 takes (n, m) with n smooth.
AdeInvariants ade_invariants(AdeKind kind, long long k,
                             const std::vector<Int>& branch_mults);

}  // namespace fibercalc
