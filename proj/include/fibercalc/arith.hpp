#pragma once

#include <vector>

#include "fibercalc/rational.hpp"

namespace fibercalc {

/// Hirzebruch-Jung chain of type (n, q): the resolution chain of the
/// cyclic quotient singularity z^n = x y^(n-q).
///
/// es holds the self-intersection magnitudes e_1..e_r (all >= 2) of the
/// minus-sign continued fraction n/q = e_1 - 1/(e_2 - ...); mus holds the
/// normalized multiplicities mu_1..mu_{r+1} with mu_1 = 1, mu_{r+1} = n,
/// mu_{k+1} = e_k*mu_k - mu_{k-1}.
struct HJChain {
    Int n;
    Int q;
    std::vector<Int> es;
    std::vector<Int> mus;
};

/// chi(p,q) = 1/12 (q/p + p/q + gcd(p,q)^2/(pq)) - 1/4, exact and symmetric.
Rat chi_pair(const Int& p, const Int& q);

/// Dedekind sum s(p,q), computed by the reciprocity recursion
/// (logarithmic depth). Non-coprime arguments reduce first; s(-p,q) = -s(p,q)
/// and s(p+kq,q) = s(p,q).
Rat dedekind_sum(const Int& p, const Int& q);

/// Reference path for s(p,q): the O(q) summation of ((pi/q))((i/q)).
Rat dedekind_sum_direct(const Int& p, const Int& q);

/// Continuant det[e_1..e_r] of the tridiagonal continued-fraction matrix.
Int continuant(const std::vector<Int>& es);

/// Minus-sign continued-fraction expansion of n/q (1 <= q < n, coprime),
/// with the multiplicity sequence. All HJChain invariants are checked.
HJChain hj_expand(const Int& n, const Int& q);

/// Contribution q/n of one H-J branch to beta; also evaluates the
/// telescoping route sum 1/(mu_i mu_{i+1}) and asserts the two agree.
Rat branch_beta(const HJChain& chain);

}  // namespace fibercalc
