#include "fibercalc/arith.hpp"

#include <cstdint>

namespace fibercalc {

Int mod_inverse(const Int& a, const Int& n) {
    Int r0 = n, r1 = mod_floor(a, n);
    Int t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        Int t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw Error("mod_inverse: arguments are not coprime");
    return mod_floor(t0, n);
}

Rat chi_pair(const Int& p, const Int& q) {
    if (p == 0 || q == 0) throw Error("chi_pair: zero argument");
    const Int g = gcd(p, q);
    // 1/12 (q/p + p/q + g^2/(pq)) - 1/4 = (p^2 + q^2 + g^2 - 3pq) / (12pq)
    return make_rat(p * p + q * q + g * g - 3 * p * q, 12 * p * q);
}

Rat dedekind_sum(const Int& p_in, const Int& q_in) {
    if (q_in == 0) throw Error("dedekind_sum: q = 0");
    Int q = q_in < 0 ? Int(-q_in) : q_in;
    Int p = mod_floor(p_in, q);
    if (p == 0) return Rat(0);
    const Int g = gcd(p, q);
    p /= g; q /= g;

    // s(p,q) = chi(p,q) - s(q mod p, p), down to s(0,1) = 0.
    Rat acc = 0;
    int sign = 1;
    while (p != 0) {
        acc += sign * chi_pair(p, q);
        Int next_p = q % p;
        q = p;
        p = next_p;
        sign = -sign;
    }
    return acc;
}

Rat dedekind_sum_direct(const Int& p_in, const Int& q_in) {
    if (q_in == 0) throw Error("dedekind_sum: q = 0");
    Int q = q_in < 0 ? Int(-q_in) : q_in;
    Int p = mod_floor(p_in, q);
    if (p == 0) return Rat(0);
    const Int g = gcd(p, q);
    p /= g; q /= g;
    if (q == 1) return Rat(0);

    // With m_i = p*i mod q (never 0 for coprime p), ((i/q))((pi/q)) sums to
    //   s = (sum i*m_i)/q^2 - (q-1)/4.
    Int sum;
    if (q < (Int(1) << 21)) {
        // i*m_i < q^2 and there are < q terms, so the total fits in 128 bits.
        const std::int64_t qq = q.convert_to<std::int64_t>();
        const std::int64_t pp = p.convert_to<std::int64_t>();
        unsigned __int128 acc = 0;
        std::int64_t m = 0;
        for (std::int64_t i = 1; i < qq; ++i) {
            m += pp;
            if (m >= qq) m -= qq;
            acc += static_cast<unsigned __int128>(i) * static_cast<unsigned __int128>(m);
        }
        sum = Int(static_cast<std::uint64_t>(acc >> 64));
        sum <<= 64;
        sum += Int(static_cast<std::uint64_t>(acc));
    } else {
        sum = 0;
        Int m = 0;
        for (Int i = 1; i < q; ++i) {
            m += p;
            if (m >= q) m -= q;
            sum += i * m;
        }
    }
    return make_rat(4 * sum - q * q * (q - 1), 4 * q * q);
}

Int continuant(const std::vector<Int>& es) {
    Int prev = 0, cur = 1;  // det[] = 1, det[e] = e
    for (const Int& e : es) {
        Int next = e * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

HJChain hj_expand(const Int& n, const Int& q) {
    if (n < 2 || q < 1 || q >= n) throw Error("hj_expand: need 1 <= q < n");
    if (gcd(n, q) != 1) throw Error("hj_expand: gcd(n,q) != 1");

    HJChain chain;
    chain.n = n;
    chain.q = q;
    Int a = n, b = q;
    while (b > 0) {
        Int e = (a + b - 1) / b;  // ceil(a/b)
        chain.es.push_back(e);
        Int next = e * b - a;
        a = b;
        b = next;
    }

    chain.mus.reserve(chain.es.size() + 1);
    Int mu_prev = 0, mu = 1;
    chain.mus.push_back(mu);
    for (const Int& e : chain.es) {
        Int mu_next = e * mu - mu_prev;
        mu_prev = mu;
        mu = mu_next;
        chain.mus.push_back(mu);
    }

    // det[e_1..e_r] = n and det[e_2..e_r] = q characterize the expansion.
    if (continuant(chain.es) != n) throw Error("hj_expand: continuant != n");
    if (continuant(std::vector<Int>(chain.es.begin() + 1, chain.es.end())) != q)
        throw Error("hj_expand: tail continuant != q");
    if (chain.mus.back() != n) throw Error("hj_expand: mu_{r+1} != n");
    for (std::size_t i = 0; i + 1 < chain.mus.size(); ++i)
        if (gcd(chain.mus[i], chain.mus[i + 1]) != 1)
            throw Error("hj_expand: consecutive multiplicities not coprime");
    // q q' == 1 (mod n) with q' = mu_r
    if (mod_floor(q * chain.mus[chain.mus.size() - 2], n) != 1)
        throw Error("hj_expand: q*mu_r != 1 mod n");
    return chain;
}

Rat branch_beta(const HJChain& chain) {
    Rat telescoped = 0;
    for (std::size_t i = 0; i + 1 < chain.mus.size(); ++i)
        telescoped += make_rat(1, chain.mus[i] * chain.mus[i + 1]);
    Rat direct = make_rat(chain.q, chain.n);
    if (telescoped != direct) throw Error("branch_beta: route mismatch");
    return direct;
}

}  // namespace fibercalc
