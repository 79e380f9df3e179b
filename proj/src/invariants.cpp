#include "fibercalc/invariants.hpp"

#include <algorithm>
#include <map>

namespace fibercalc {

long long reduced_pa(const FiberGraph& f) {
    long long genus_sum = 0;
    for (const auto& c : f.components) genus_sum += c.genus;
    long long node_count = 0;
    for (const auto& e : f.nodes) node_count += e.count;
    long long b1 = node_count - static_cast<long long>(f.components.size()) + 1;
    return genus_sum + b1;
}

namespace {

struct WalkInfo {
    std::vector<long long> degree;
    std::vector<long long> loop_count;
    std::vector<std::vector<std::pair<int, long long>>> adj;
};

WalkInfo walk_info(const FiberGraph& f) {
    WalkInfo w;
    const int k = static_cast<int>(f.components.size());
    w.degree.assign(k, 0);
    w.loop_count.assign(k, 0);
    w.adj.assign(k, {});
    std::vector<std::map<int, long long>> acc(k);
    for (const auto& e : f.nodes) {
        int i = f.index_of(e.a), j = f.index_of(e.b);
        if (i == j) {
            w.loop_count[i] += e.count;
            w.degree[i] += 2 * e.count;
        } else {
            acc[i][j] += e.count;
            acc[j][i] += e.count;
            w.degree[i] += e.count;
            w.degree[j] += e.count;
        }
    }
    for (int i = 0; i < k; ++i) w.adj[i].assign(acc[i].begin(), acc[i].end());
    return w;
}

bool is_chain_interior(const FiberGraph& f, const WalkInfo& w, int i) {
    return f.components[i].genus == 0 && w.loop_count[i] == 0 &&
           w.degree[i] == 2 && w.adj[i].size() == 2;
}

bool is_leaf(const FiberGraph& f, const WalkInfo& w, int i) {
    return f.components[i].genus == 0 && w.loop_count[i] == 0 && w.degree[i] == 1;
}

}  // namespace

BranchSet hj_branches(const FiberGraph& f) {
    BranchSet out;
    auto min = minimize(f);
    out.graph = std::move(min.graph);
    out.contractions = min.contractions;
    const FiberGraph& g = out.graph;
    WalkInfo w = walk_info(g);
    const int k = static_cast<int>(g.components.size());

    for (int leaf = 0; leaf < k; ++leaf) {
        if (!is_leaf(g, w, leaf)) continue;
        std::vector<int> path{leaf};
        int prev = leaf;
        int cur = w.adj[leaf][0].first;
        while (is_chain_interior(g, w, cur)) {
            int next = w.adj[cur][0].first == prev ? w.adj[cur][1].first
                                                   : w.adj[cur][0].first;
            path.push_back(cur);
            prev = cur;
            cur = next;
        }
        if (is_leaf(g, w, cur))
            throw Error("internal inconsistency: branch walk from " +
                        g.components[leaf].id + " ends at another end point " +
                        g.components[cur].id);

        HJBranch branch;
        branch.path = path;
        branch.bullet = cur;
        branch.leaf_mult = g.components[leaf].mult;

        std::vector<Int> es;
        es.reserve(path.size());
        for (int idx : path) {
            long long self = g.components[idx].self_int;
            if (self > -2)
                throw Error("internal inconsistency: H-J branch component " +
                            g.components[idx].id + " has self-intersection " +
                            std::to_string(self));
            es.push_back(Int(-self));
        }
        Int n = continuant(es);
        Int q = continuant(std::vector<Int>(es.begin() + 1, es.end()));
        branch.chain = hj_expand(n, q);
        if (branch.chain.es != es)
            throw Error("internal inconsistency: H-J expansion mismatch");

        // gamma_i = mu_i gamma_1 along the walk, and the bullet carries
        // n * gamma_1.
        for (std::size_t i = 0; i < path.size(); ++i)
            if (Int(g.components[path[i]].mult) != branch.chain.mus[i] * branch.leaf_mult)
                throw Error("internal inconsistency: branch multiplicity law fails at " +
                            g.components[path[i]].id);
        if (Int(g.components[cur].mult) != n * branch.leaf_mult)
            throw Error("internal inconsistency: bullet multiplicity law fails at " +
                        g.components[cur].id);

        out.branches.push_back(std::move(branch));
    }
    return out;
}

InvariantBundle compute_invariants(const FiberGraph& f) {
    InvariantBundle b;
    BranchSet bs = hj_branches(f);
    const FiberGraph& g = bs.graph;
    b.contractions = bs.contractions;
    b.blowups = g.blowups;

    b.g = fiber_genus(g);
    b.pa_red = reduced_pa(g);
    b.n_bar = b.g - b.pa_red;
    if (b.n_bar < 0 || b.n_bar > b.g)
        throw Error("invariant violation: N_bar = " + std::to_string(b.n_bar) +
                    " outside [0, g]");

    long long mu = 0;
    Rat beta = 0;
    for (const auto& e : g.nodes) {
        mu += e.count;
        const Int na = g.component(e.a).mult;
        const Int nb = g.component(e.b).mult;
        const Int d = gcd(na, nb);
        beta += Int(e.count) * make_rat(d * d, na * nb);
    }
    b.mu = mu;
    b.beta = beta;

    Rat beta_minus = 0;
    for (const auto& br : bs.branches) beta_minus += branch_beta(br.chain);
    b.beta_minus = beta_minus;
    b.beta_plus = beta - beta_minus;
    if (b.beta_minus < 0 || b.beta_plus < 0)
        throw Error("invariant violation: negative beta part");

    b.fred_sq = g.reduced_self_intersection();

    const Rat n_bar = Rat(b.n_bar);
    b.c1sq_bar = 4 * n_bar + Rat(b.fred_sq) - b.beta_minus;
    b.c2_bar = 2 * n_bar + Rat(b.mu) - b.beta_plus;
    b.chi = (6 * n_bar + Rat(b.fred_sq) + Rat(b.mu) - b.beta) / 12;
    b.c1sq_min = b.c1sq_bar + b.blowups;
    b.c2_min = b.c2_bar - b.blowups;

    if (b.c1sq_bar + b.c2_bar != 12 * b.chi || b.c1sq_min + b.c2_min != 12 * b.chi)
        throw Error("internal inconsistency: Noether equality fails");

    if (g.resolution_mults && bs.contractions == 0) {
        Int alpha = 0, s1 = 0, s2 = 0;
        for (long long m : *g.resolution_mults) {
            alpha += Int(m - 2) * (m - 2);
            s1 += Int(m - 1) * (m - 2);
            s2 += Int(m - 1) * (m - 1);
        }
        b.alpha = Rat(alpha);
        Int n_min = Int(b.n_bar) - s1 / 2;
        b.n_min = n_min.convert_to<long long>();
        if (*b.n_min < 0 || *b.n_min > b.g)
            throw Error("invariant violation: N = " + std::to_string(*b.n_min) +
                        " outside [0, g]");

        // Direct minimal-level evaluation of the same formulas; must agree
        // with the bar-level-plus-shift route exactly.
        const Rat n_min_r = Rat(n_min);
        const Rat fred_min = Rat(b.fred_sq + s2);
        const Rat mu_min = Rat(Int(b.mu) + s1 - b.blowups);
        if (b.c1sq_min != 4 * n_min_r + fred_min + b.alpha - b.beta_minus)
            throw Error("cross-check failure: minimal-level c1^2 route disagrees");
        if (b.c2_min != 2 * n_min_r + mu_min - b.beta_plus)
            throw Error("cross-check failure: minimal-level c2 route disagrees");
        if (12 * b.chi != 6 * n_min_r + fred_min + b.alpha + mu_min - b.beta)
            throw Error("cross-check failure: minimal-level chi route disagrees");
    }
    return b;
}

Rat chi_via_pairs(const FiberGraph& f) {
    long long g = fiber_genus(f);
    long long n_bar = g - reduced_pa(f);
    // Aggregate node counts per multiplicity pair first; large duals have
    // millions of nodes but only a handful of distinct pairs.
    std::map<std::pair<long long, long long>, long long> pairs;
    for (const auto& e : f.nodes) {
        if (e.a == e.b) continue;  // chi(n,n) = 0
        long long a = f.component(e.a).mult;
        long long b = f.component(e.b).mult;
        if (a > b) std::swap(a, b);
        pairs[{a, b}] += e.count;
    }
    Rat sum = 0;
    for (const auto& [pq, count] : pairs)
        sum += Int(count) * chi_pair(pq.first, pq.second);
    return Rat(n_bar) / 2 - sum;
}

namespace {

Rat bracket(const Int& a, const Int& b) {
    const Int d = gcd(a, b);
    return make_rat(d * d, a * b);
}

void need_arity(const std::vector<Int>& ms, std::size_t n, const char* kind) {
    if (ms.size() != n)
        throw Error(std::string("ade_invariants: ") + kind + " expects " +
                    std::to_string(n) + " branch multiplicities, got " +
                    std::to_string(ms.size()));
    for (const Int& m : ms)
        if (m < 1) throw Error("ade_invariants: branch multiplicities are >= 1");
}

}  // namespace

AdeInvariants ade_invariants(AdeKind kind, long long k,
                             const std::vector<Int>& ms) {
    if ((kind == AdeKind::AOdd || kind == AdeKind::AEven ||
         kind == AdeKind::DEven || kind == AdeKind::DOdd) && k < 1)
        throw Error("ade_invariants: k must be >= 1");
    AdeInvariants r;
    switch (kind) {
        case AdeKind::AOdd: {  // A_{2k-1}
            need_arity(ms, 2, "A_{2k-1}");
            const Int &n = ms[0], &m = ms[1];
            r.mu = 2 * k - 1;
            r.alpha = k - 1;
            r.beta = Rat(k - 1, k) + bracket(k * (n + m), n) + bracket(k * (n + m), m);
            break;
        }
        case AdeKind::AEven:  // A_{2k}
            need_arity(ms, 1, "A_{2k}");
            r.mu = 2 * k;
            r.alpha = k;
            r.beta = Rat(3 * k, 2 * k + 1);
            break;
        case AdeKind::DEven: {  // D_{2k+2}
            need_arity(ms, 3, "D_{2k+2}");
            const Int &n = ms[0], &m = ms[1], &l = ms[2];
            const Int d = gcd(n, m + l);
            r.mu = 2 * k + 2;
            r.alpha = k;
            r.beta = make_rat(k * d * d, n * (n + k * (m + l))) +
                     bracket(n + k * (m + l), m) + bracket(n + k * (m + l), l);
            break;
        }
        case AdeKind::DOdd: {  // D_{2k+3}
            need_arity(ms, 2, "D_{2k+3}");
            const Int &n = ms[0], &m = ms[1];
            const Int d = gcd(n, 2 * m);
            r.mu = 2 * k + 3;
            r.alpha = k + 1;
            r.beta = Rat(1, 2) + bracket(m, 2 * ((2 * k + 1) * m + n)) +
                     make_rat((2 * k + 1) * d * d, 2 * n * ((2 * k + 1) * m + n));
            break;
        }
        case AdeKind::E6:
            need_arity(ms, 1, "E6");
            r.mu = 6;
            r.alpha = 3;
            r.beta = 1;
            break;
        case AdeKind::E7: {
            need_arity(ms, 2, "E7");
            const Int &n = ms[0], &m = ms[1];
            const Int d1 = gcd(3 * m, n), d2 = gcd(m, 3 * n);
            r.mu = 7;
            r.alpha = 3;
            r.beta = Rat(1, 3) + make_rat(2 * d1 * d1, 3 * n * (2 * m + n)) +
                     make_rat(d2 * d2, 3 * m * (2 * m + n));
            break;
        }
        case AdeKind::E8:
            need_arity(ms, 1, "E8");
            r.mu = 8;
            r.alpha = 4;
            r.beta = Rat(4, 5);
            break;
    }
    return r;
}

}  // namespace fibercalc
