#include "fibercalc/dualizer.hpp"

#include <algorithm>
#include <map>

#include "fibercalc/invariants.hpp"

namespace fibercalc {

Int multiplicity_lcm(const FiberGraph& f) {
    Int m = 1;
    for (const auto& c : f.components) m = lcm(m, Int(c.mult));
    return m;
}

Int default_dual_degree(const FiberGraph& f) {
    Int m = multiplicity_lcm(f);
    return m >= 2 ? Int(m - 1) : Int(1);
}

NodeChain node_chain(const Int& a, const Int& b, const Int& n) {
    if (n < 2) throw Error("node_chain: n must be >= 2");
    if (gcd(a, n) != 1 || gcd(b, n) != 1)
        throw Error("node_chain: multiplicities must be prime to n");

    const Int q = mod_floor(-b * mod_inverse(a, n), n);
    NodeChain nc;
    nc.chain = hj_expand(n, q);

    nc.gammas.reserve(nc.chain.es.size() + 2);
    nc.gammas.push_back(a);
    Int gamma1_num = q * a + b;
    if (mod_floor(gamma1_num, n) != 0)
        throw Error("node_chain: gamma_1 is not integral");
    Int prev = a, cur = gamma1_num / n;
    nc.gammas.push_back(cur);
    for (const Int& e : nc.chain.es) {
        Int next = e * cur - prev;
        prev = cur;
        cur = next;
        nc.gammas.push_back(cur);
    }
    if (nc.gammas.back() != b)
        throw Error("node_chain: endpoint multiplicity mismatch");
    for (const Int& gm : nc.gammas)
        if (gm < 1) throw Error("node_chain: nonpositive chain multiplicity");

    // gamma_i | gamma_{i-1} + gamma_{i+1}; the end laws additionally need
    // the dual situation a, b | n+1.
    const std::size_t last = nc.gammas.size() - 1;
    for (std::size_t i = 1; i < last; ++i)
        if (mod_floor(nc.gammas[i - 1] + nc.gammas[i + 1], nc.gammas[i]) != 0)
            throw Error("node_chain: divisibility law fails");
    if (mod_floor(n + 1, a) == 0 && mod_floor(n + 1, b) == 0) {
        if (mod_floor(nc.gammas[1] + nc.gammas[last], nc.gammas[0]) != 0 ||
            mod_floor(nc.gammas[last - 1] + nc.gammas[0], nc.gammas[last]) != 0)
            throw Error("node_chain: end divisibility law fails");
    }
    return nc;
}

FiberGraph dual_fiber(const FiberGraph& f, const Int& n, bool count_blowups) {
    const Int m = multiplicity_lcm(f);
    if (n < 1 || mod_floor(n + 1, m) != 0)
        throw Error("dual degree " + n.str() + " is not -1 mod " + m.str());

    FiberGraph d;
    d.name = f.name.empty() ? "dual" : f.name + "*";

    if (n == 1) {
        d.components = f.components;
        d.nodes = f.nodes;
        d.blowups = count_blowups ? minimize(d).contractions : 0;
        return d;
    }

    // Strict transforms keep id, multiplicity and genus; self-intersections
    // are re-solved after all chains are known.
    const std::size_t k_in = f.components.size();
    for (const auto& c : f.components)
        d.add_component(c.id, c.mult, 0, c.genus);

    // Chain ids must not collide with input ids (duals of duals).
    std::string prefix = "hj";
    for (bool taken = true; taken;) {
        taken = false;
        for (const auto& c : f.components)
            if (c.id.rfind(prefix, 0) == 0) { taken = true; break; }
        if (taken) prefix += "j";
    }

    // Accumulated chain-head multiplicities adjacent to each strict transform.
    std::vector<Int> head_sum(k_in, Int(0));

    // Deterministic node order: canonical emission order.
    std::vector<NodeEdge> edges = f.nodes;
    std::sort(edges.begin(), edges.end(), [](const NodeEdge& x, const NodeEdge& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.count < y.count;
    });

    // Same (a, b) pairs recur across multiple points; expand once, and
    // pre-size the output (graphs here reach millions of components).
    std::map<std::pair<long long, long long>, NodeChain> cache;
    std::size_t total_vertices = 0, total_edges = 0;
    for (const auto& e : edges) {
        const long long a = f.component(e.a).mult;
        const long long b = f.component(e.b).mult;
        auto it = cache.find({a, b});
        if (it == cache.end())
            it = cache.emplace(std::make_pair(a, b), node_chain(a, b, n)).first;
        const std::size_t r = it->second.gammas.size() - 2;
        total_vertices += e.count * r;
        total_edges += e.count * (r + 1);
    }
    d.components.reserve(k_in + total_vertices);
    d.nodes.reserve(total_edges);

    // Index pairs of every emitted node, for the string-free audit below.
    std::vector<std::pair<int, int>> edge_index;
    edge_index.reserve(total_edges);

    long long serial = 0;
    for (const auto& e : edges) {
        const int ia = f.index_of(e.a), ib = f.index_of(e.b);
        const long long a = f.components[ia].mult;
        const long long b = f.components[ib].mult;
        const NodeChain& nc = cache.at({a, b});
        const std::size_t r = nc.gammas.size() - 2;
        for (long long rep = 0; rep < e.count; ++rep) {
            ++serial;
            std::string prev_id = e.a;
            int prev_index = ia;
            for (std::size_t k = 1; k <= r; ++k) {
                std::string id = prefix + std::to_string(serial) + "_" + std::to_string(k);
                const int index = static_cast<int>(d.components.size());
                d.add_component(id, nc.gammas[k].convert_to<long long>(),
                                (-nc.chain.es[k - 1]).convert_to<long long>(), 0);
                d.add_node(prev_id, id, 1);
                edge_index.push_back({prev_index, index});
                prev_id = id;
                prev_index = index;
            }
            d.add_node(prev_id, e.b, 1);
            edge_index.push_back({prev_index, ib});
            head_sum[ia] += nc.gammas[1];
            head_sum[ib] += nc.gammas[r];
        }
    }

    for (std::size_t i = 0; i < k_in; ++i) {
        auto& c = d.components[i];
        if (head_sum[i] == 0) continue;  // isolated component, keeps self 0
        if (mod_floor(head_sum[i], Int(c.mult)) != 0)
            throw Error("internal inconsistency: dual self-intersection of " +
                        c.id + " is not integral");
        c.self_int = (-head_sum[i] / Int(c.mult)).convert_to<long long>();
    }

    {
        // one-pass Zariski audit over machine integers (multiplicities and
        // self-intersections of duals stay far below 64 bits)
        std::vector<long long> defect(d.components.size());
        for (std::size_t i = 0; i < d.components.size(); ++i)
            defect[i] = d.components[i].mult * d.components[i].self_int;
        for (const auto& [i, j] : edge_index) {
            defect[i] += d.components[j].mult;
            defect[j] += d.components[i].mult;
        }
        for (std::size_t i = 0; i < d.components.size(); ++i)
            if (defect[i] != 0)
                throw Error("internal inconsistency: dual fails Zariski at " +
                            d.components[i].id);
    }

    if (count_blowups) d.blowups = minimize(d).contractions;
    return d;
}

FiberGraph dual_fiber(const FiberGraph& f, const Int& n) {
    return dual_fiber(f, n, true);
}

FiberGraph dual_fiber(const FiberGraph& f) {
    return dual_fiber(f, default_dual_degree(f));
}

DualityCheck duality_check(const FiberGraph& f, const Int& n) {
    DualityCheck r;
    // The chi/N_bar/genus comparison does not consume the blow-up count,
    // and skipping it keeps million-vertex duals inside the time budget.
    FiberGraph dual = dual_fiber(f, n, false);

    const long long g = fiber_genus(f);
    const long long n_bar = g - reduced_pa(f);
    r.n_bar = n_bar;
    r.chi_f = chi_via_pairs(f);
    r.chi_dual = chi_via_pairs(dual);

    const long long g_dual = fiber_genus(dual);
    const long long n_bar_dual = g_dual - reduced_pa(dual);
    r.ok = (r.chi_f + r.chi_dual == Rat(n_bar)) && n_bar_dual == n_bar &&
           g_dual == g;
    return r;
}

DualityCheck duality_check(const FiberGraph& f) {
    return duality_check(f, default_dual_degree(f));
}

}  // namespace fibercalc
