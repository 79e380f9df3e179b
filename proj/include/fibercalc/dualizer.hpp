#pragma once

#include <vector>

#include "fibercalc/arith.hpp"
#include "fibercalc/fiber_graph.hpp"

namespace fibercalc {

/// lcm of the component multiplicities (M_F).
Int multiplicity_lcm(const FiberGraph& f);

/// The minimal admissible base-change degree: M_F - 1 when M_F >= 2,
/// else 1 (identity dual).
Int default_dual_degree(const FiberGraph& f);

/// The inserted chain at a double point where branches of multiplicities
/// a and b meet, under an n-th root base change. gammas runs gamma_0 = a,
/// gamma_1, ..., gamma_r, gamma_{r+1} = b; gamma_1 sits on the a-side.
struct NodeChain {
    HJChain chain;
    std::vector<Int> gammas;
};

/// q is the unique solution of b + q a == 0 (mod n) in [1, n); the chain
/// shape is hj_expand(n, q) and the multiplicities follow
/// gamma_1 = (q a + b)/n, gamma_{k+1} = e_k gamma_k - gamma_{k-1}.
/// Requires gcd(a, n) = gcd(b, n) = 1 and n >= 2. The divisibility laws
/// gamma_i | gamma_{i-1} + gamma_{i+1} (cyclically) are asserted.
NodeChain node_chain(const Int& a, const Int& b, const Int& n);

/// The dual model: every component keeps its multiplicity and genus, every
/// node (self-nodes included) is replaced by its node_chain of rational
/// curves with self-intersections -e_k, and strict-transform
/// self-intersections are re-solved from the Zariski identity. blowups of
/// the result records how many contractions minimize would perform on it
/// (skipped when count_blowups is false; chi-level data is unaffected).
/// n = 1 returns an identity copy.
FiberGraph dual_fiber(const FiberGraph& f, const Int& n, bool count_blowups);
FiberGraph dual_fiber(const FiberGraph& f, const Int& n);
FiberGraph dual_fiber(const FiberGraph& f);  // default degree

struct DualityCheck {
    Rat chi_f;
    Rat chi_dual;
    long long n_bar = 0;
    bool ok = false;
};

/// ok iff chi_F + chi_F* = N_bar exactly, N_bar(F*) = N_bar(F) and
/// g(F*) = g(F).
DualityCheck duality_check(const FiberGraph& f, const Int& n);
DualityCheck duality_check(const FiberGraph& f);

}  // namespace fibercalc
