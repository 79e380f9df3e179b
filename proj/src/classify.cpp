#include "fibercalc/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fibercalc/catalog.hpp"

namespace fibercalc {

Rat c1_upper_bound(long long g) {
    if (g < 2) throw Error("c1_upper_bound: g must be >= 2");
    switch (g) {
        case 2: return Rat(16, 5);
        case 3: return Rat(7);
        case 4: return Rat(54, 5);
        case 6: return Rat(130, 7);
        default: return Rat(4 * g) - Rat(11, 2);
    }
}

namespace {

bool is_semistable(const FiberGraph& minimized) {
    if (minimized.blowups != 0) return false;
    for (const auto& c : minimized.components)
        if (c.mult != 1) return false;
    return true;
}

}  // namespace

InequalityReport inequality_report(const FiberGraph& f) {
    InequalityReport rep;
    const InvariantBundle b = compute_invariants(f);
    const Rat chi2 = chi_via_pairs(f);
    rep.g = b.g;
    auto minimized = minimize(f);
    rep.semistable = is_semistable(minimized.graph);

    auto rec = [&rep](std::string name, Rat left, std::string relation, Rat right,
                      bool pass, std::string note = "") {
        rep.records.push_back(InequalityRecord{std::move(name), std::move(left),
                                               std::move(relation), std::move(right),
                                               pass, std::move(note)});
    };

    rec("noether", b.c1sq_min + b.c2_min, "==", 12 * b.chi,
        b.c1sq_min + b.c2_min == 12 * b.chi);
    rec("chi-dual-route", chi2, "==", b.chi, chi2 == b.chi);

    const bool zero_all = b.c1sq_min == 0 && b.c2_min == 0 && b.chi == 0;
    if (rep.g >= 2) {
        rec("positivity-c1sq", b.c1sq_min, ">=", Rat(0),
            rep.semistable ? b.c1sq_min == 0 : b.c1sq_min > 0,
            rep.semistable ? "semistable: vanishes" : "nonsemistable: strictly positive");
        rec("positivity-c2", b.c2_min, ">=", Rat(0),
            rep.semistable ? b.c2_min == 0 : b.c2_min > 0);
        rec("positivity-chi", b.chi, ">=", Rat(0),
            rep.semistable ? b.chi == 0 : b.chi > 0);
    } else {
        rec("positivity-c1sq", b.c1sq_min, ">=", Rat(0), b.c1sq_min >= 0);
        rec("positivity-c2", b.c2_min, ">=", Rat(0), b.c2_min >= 0);
        rec("positivity-chi", b.chi, ">=", Rat(0), b.chi >= 0);
        return rep;
    }

    rec("canonical-class", b.c1sq_min, "<=", Rat(4 * rep.g - 4),
        b.c1sq_min <= Rat(4 * rep.g - 4));

    {
        const bool eq = b.c1sq_min == 2 * b.c2_min;
        std::string note;
        if (eq && !zero_all) note = "equality: F is a multiple of a nodal curve";
        rec("miyaoka-yau", b.c1sq_min, "<=", 2 * b.c2_min, b.c1sq_min <= 2 * b.c2_min,
            note);
    }

    rec("arakelov", b.chi, "<=", Rat(5 * rep.g, 6), b.chi <= Rat(5 * rep.g, 6));

    rec("chi-lower-sandwich", Rat(b.n_bar, 6), "<=", b.chi, Rat(b.n_bar, 6) <= b.chi);
    rec("chi-upper-sandwich", b.chi, "<=", Rat(5 * b.n_bar, 6),
        b.chi <= Rat(5 * b.n_bar, 6));

    if (!rep.semistable) {
        rec("c2-lower", b.c2_min, ">=", Rat(11, 6), b.c2_min >= Rat(11, 6),
            b.c2_min == Rat(11, 6)
                ? "equality: reduced curve with one ordinary cusp and nodes"
                : "");
        rec("chi-lower", b.chi, ">=", Rat(1, 6), b.chi >= Rat(1, 6),
            b.chi == Rat(1, 6)
                ? "equality: reduced curve with one ordinary cusp and nodes"
                : "");
    }

    {
        const Rat gap = 2 * b.c2_min - b.c1sq_min;
        rec("gap", gap, "in {0} u [3,inf)", Rat(3), gap == 0 || gap >= 3,
            gap == 0 ? "Miyaoka-Yau equality case" : "");
    }

    rec("c1sq-genus-cap", b.c1sq_min, "<=", c1_upper_bound(rep.g),
        b.c1sq_min <= c1_upper_bound(rep.g),
        b.c1sq_min == c1_upper_bound(rep.g) ? "meets the cap with equality" : "");

    return rep;
}

// ---------------------------------------------------------------------------
// Canonical labeling by color refinement with individualization.

namespace {

struct CanonGraph {
    int n = 0;
    // Decoration per vertex: (mult, self_int, genus, self-node count).
    std::vector<std::array<long long, 4>> deco;
    std::vector<std::map<int, long long>> adj;
};

CanonGraph canon_graph(const FiberGraph& f) {
    CanonGraph g;
    g.n = static_cast<int>(f.components.size());
    g.deco.resize(g.n);
    g.adj.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        const auto& c = f.components[i];
        g.deco[i] = {c.mult, c.self_int, c.genus, f.loops(i)};
    }
    for (const auto& e : f.nodes) {
        if (e.a == e.b) continue;
        int i = f.index_of(e.a), j = f.index_of(e.b);
        g.adj[i][j] += e.count;
        g.adj[j][i] += e.count;
    }
    return g;
}

// Stable color refinement: colors are ranks of (old color, sorted neighbor
// color/count multiset) tuples.
std::vector<int> refine(const CanonGraph& g, std::vector<int> color) {
    for (;;) {
        std::vector<std::pair<std::vector<long long>, int>> sig(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<std::pair<int, long long>> nb;
            nb.reserve(g.adj[v].size());
            for (auto& [w, c] : g.adj[v]) nb.push_back({color[w], c});
            std::sort(nb.begin(), nb.end());
            std::vector<long long> s{color[v]};
            for (auto& [cc, cnt] : nb) {
                s.push_back(cc);
                s.push_back(cnt);
            }
            sig[v] = {std::move(s), v};
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> next(g.n);
        int rank = 0;
        for (int i = 0; i < g.n; ++i) {
            if (i > 0 && sorted[i].first != sorted[i - 1].first) ++rank;
            next[sorted[i].second] = rank;
        }
        if (next == color) return color;
        color = std::move(next);
    }
}

std::string certificate(const CanonGraph& g, const std::vector<int>& order) {
    std::vector<int> pos(g.n);
    for (int i = 0; i < g.n; ++i) pos[order[i]] = i;
    std::ostringstream out;
    for (int i = 0; i < g.n; ++i) {
        const int v = order[i];
        out << "[" << g.deco[v][0] << "," << g.deco[v][1] << "," << g.deco[v][2]
            << "," << g.deco[v][3] << ";";
        std::vector<std::pair<int, long long>> nb;
        for (auto& [w, c] : g.adj[v]) nb.push_back({pos[w], c});
        std::sort(nb.begin(), nb.end());
        for (auto& [p, c] : nb) out << p << ":" << c << " ";
        out << "]";
    }
    return out.str();
}

// AHU-style canonical code for decorated trees (simple underlying graph a
// tree; edge counts and self-loops are decorations). Linear-ish and immune
// to the factorial blowup symmetric stars cause in the backtracking path.
std::string ahu_code(const CanonGraph& g, int v, int parent) {
    std::vector<std::string> kids;
    for (auto& [w, cnt] : g.adj[v]) {
        if (w == parent) continue;
        kids.push_back("x" + std::to_string(cnt) + ahu_code(g, w, v));
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    out += std::to_string(g.deco[v][0]) + "," + std::to_string(g.deco[v][1]) + "," +
           std::to_string(g.deco[v][2]) + "," + std::to_string(g.deco[v][3]) + "|";
    for (const auto& k : kids) out += k;
    out += ")";
    return out;
}

bool is_simple_tree(const CanonGraph& g) {
    int distinct_edges = 0;
    for (int v = 0; v < g.n; ++v) distinct_edges += static_cast<int>(g.adj[v].size());
    if (distinct_edges != 2 * (g.n - 1)) return false;
    // adjacency is built from a connected FiberGraph, so edge count suffices
    return true;
}

std::string ahu_canonical(const CanonGraph& g) {
    if (g.n == 1) return ahu_code(g, 0, -1);
    // strip leaves to the 1- or 2-vertex centroid
    std::vector<int> degree(g.n);
    for (int v = 0; v < g.n; ++v) degree[v] = static_cast<int>(g.adj[v].size());
    std::vector<int> layer;
    std::vector<char> removed(g.n, 0);
    int remaining = g.n;
    for (int v = 0; v < g.n; ++v)
        if (degree[v] <= 1) layer.push_back(v);
    while (remaining > 2) {
        std::vector<int> next;
        for (int v : layer) {
            removed[v] = 1;
            --remaining;
            for (auto& [w, cnt] : g.adj[v])
                if (!removed[w] && --degree[w] == 1) next.push_back(w);
        }
        layer = std::move(next);
    }
    std::vector<int> centroids;
    for (int v = 0; v < g.n; ++v)
        if (!removed[v]) centroids.push_back(v);
    if (centroids.size() == 1) return ahu_code(g, centroids[0], -1);
    const int a = centroids[0], b = centroids[1];
    std::string sa = ahu_code(g, a, b);
    std::string sb = ahu_code(g, b, a);
    const long long cnt = g.adj[a].at(b);
    if (sb < sa) std::swap(sa, sb);
    return "{x" + std::to_string(cnt) + "|" + sa + sb + "}";
}

void canon_search(const CanonGraph& g, std::vector<int> color, std::string& best,
                  bool& have_best) {
    color = refine(g, color);

    // Find the first non-singleton color class.
    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < g.n; ++v) classes[color[v]].push_back(v);
    const std::vector<int>* target = nullptr;
    for (auto& [c, vs] : classes)
        if (vs.size() > 1) { target = &vs; break; }

    if (!target) {
        std::vector<int> order(g.n);
        for (int v = 0; v < g.n; ++v) order[color[v]] = v;
        std::string cert = certificate(g, order);
        if (!have_best || cert < best) {
            best = std::move(cert);
            have_best = true;
        }
        return;
    }

    for (int v : *target) {
        std::vector<int> next(color);
        for (int w = 0; w < g.n; ++w)
            next[w] = 2 * next[w] + (w == v ? 0 : 1);
        canon_search(g, std::move(next), best, have_best);
    }
}

}  // namespace

std::string canonical_form(const FiberGraph& f) {
    CanonGraph g = canon_graph(f);
    if (g.n == 0) return "[]";
    if (is_simple_tree(g)) return ahu_canonical(g);
    std::vector<std::pair<std::array<long long, 4>, int>> initial(g.n);
    for (int v = 0; v < g.n; ++v) initial[v] = {g.deco[v], v};
    auto sorted = initial;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> color(g.n);
    int rank = 0;
    for (int i = 0; i < g.n; ++i) {
        if (i > 0 && sorted[i].first != sorted[i - 1].first) ++rank;
        color[sorted[i].second] = rank;
    }
    std::string best;
    bool have_best = false;
    canon_search(g, std::move(color), best, have_best);
    return best;
}

// ---------------------------------------------------------------------------
// Classification.

namespace {

FiberGraph scaled_down(const FiberGraph& f, long long d) {
    FiberGraph g = f;
    for (auto& c : g.components) c.mult /= d;
    return g;
}

// Matches the minimized input against entry `index`, extending free runs
// as far as the vertex budget allows.
bool matches_entry(const std::string& input_canon, std::size_t input_size, int index) {
    CatalogEntry base = twentytwo_entry(index);
    if (base.graph.components.size() > input_size) return false;
    if (!entry_has_run(index))
        return canonical_form(base.graph) == input_canon;
    for (long long run = 0;; ++run) {
        CatalogEntry e = twentytwo_entry(index, run);
        if (e.graph.components.size() > input_size) return false;
        if (e.graph.components.size() == input_size &&
            canonical_form(e.graph) == input_canon)
            return true;
    }
}

struct GapShape {
    long long scale = 1;              // gcd of multiplicities
    std::vector<long long> mults;     // distinct multiplicities / scale
    std::vector<int> minus_one;       // genus-0 (-1)-curves
};

GapShape gap_shape(const FiberGraph& g) {
    GapShape s;
    long long d = 0;
    std::set<long long> distinct;
    for (const auto& c : g.components) d = std::gcd(d, c.mult);
    s.scale = d;
    for (const auto& c : g.components) distinct.insert(c.mult / d);
    s.mults.assign(distinct.begin(), distinct.end());
    for (std::size_t i = 0; i < g.components.size(); ++i)
        if (g.components[i].genus == 0 && g.components[i].self_int == -1)
            s.minus_one.push_back(static_cast<int>(i));
    return s;
}

bool is_leaf_with(const FiberGraph& g, int i, long long mult, long long self) {
    return g.components[i].mult == mult && g.components[i].self_int == self &&
           g.components[i].genus == 0 && g.loops(i) == 0 && g.degree(i) == 1;
}

// Reduced sub-divisor self-intersection of a component subset.
Int subset_self_intersection(const FiberGraph& g, const std::set<int>& subset) {
    Int s = 0;
    for (int i : subset) s += g.components[i].self_int;
    for (const auto& e : g.nodes) {
        if (e.a == e.b) continue;
        int i = g.index_of(e.a), j = g.index_of(e.b);
        if (subset.count(i) && subset.count(j)) s += 2 * Int(e.count);
    }
    return s;
}

Int pairing(const FiberGraph& g, const std::set<int>& a, const std::set<int>& bset) {
    Int s = 0;
    for (const auto& e : g.nodes) {
        int i = g.index_of(e.a), j = g.index_of(e.b);
        if ((a.count(i) && bset.count(j)) || (a.count(j) && bset.count(i)))
            s += e.count;
    }
    return s;
}

std::vector<std::set<int>> connected_pieces(const FiberGraph& g,
                                            const std::set<int>& subset) {
    std::vector<std::set<int>> pieces;
    std::set<int> left = subset;
    while (!left.empty()) {
        std::set<int> piece;
        std::vector<int> stack{*left.begin()};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (!left.count(v) || piece.count(v)) continue;
            piece.insert(v);
            for (auto [w, c] : g.neighbors(v))
                if (left.count(w)) stack.push_back(w);
        }
        for (int v : piece) left.erase(v);
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

// Identifies the case 1..8 shape of a minimized NC model, 0 when none fits.
int gap_case(const FiberGraph& g) {
    GapShape s = gap_shape(g);
    const long long r = g.blowups;

    if (r == 0) {
        if (s.mults.size() == 1) return 1;
        if (s.mults.size() == 2 && s.mults[1] == 2 * s.mults[0]) {
            const long long m = s.mults[0] * s.scale;
            std::set<int> a, bset;
            for (std::size_t i = 0; i < g.components.size(); ++i)
                (g.components[i].mult == m ? a : bset).insert(static_cast<int>(i));
            if (subset_self_intersection(g, a) == -4 &&
                subset_self_intersection(g, bset) == -1 && pairing(g, a, bset) == 2) {
                auto pieces = connected_pieces(g, a);
                if (pieces.size() == 2) {
                    for (const auto& piece : pieces)
                        if (piece.size() == 1) {
                            int v = *piece.begin();
                            if (g.components[v].genus == 0 &&
                                g.components[v].self_int == -2)
                                return 7;
                        }
                }
                if (pieces.size() <= 2) return 6;
            }
        }
        return 0;
    }

    if (s.minus_one.size() != 1) return 0;
    const int e = s.minus_one[0];
    const long long em = g.components[e].mult;
    const long long m = s.scale;  // witness scale n is the multiplicity gcd
    if (g.loops(e) != 0) return 0;
    auto nb = g.neighbors(e);

    if (em == 3 * m && r == 1 && g.degree(e) == 3) {
        for (auto [w, c] : nb)
            if (g.components[w].mult != m) return 0;
        return 5;
    }
    if (em == 4 * m && r == 2) {
        bool has_leaf = false;
        long long plain = 0, doubled = 0;
        for (auto [w, c] : nb) {
            if (is_leaf_with(g, w, 2 * m, -2) && c == 1) { has_leaf = true; continue; }
            if (g.components[w].mult != m) return 0;
            if (c == 2) ++doubled;
            else if (c == 1) ++plain;
            else return 0;
        }
        if (!has_leaf) return 0;
        if (doubled == 1 && plain == 0) return 3;
        if (doubled == 0 && plain == 2) return 4;
        return 0;
    }
    if (em == 6 * m && (r == 3 || r == 2)) {
        bool leaf3m = false;
        bool others_ok = true;
        bool has_m = false, has_2m = false, leaf2m_neg3 = false;
        for (auto [w, c] : nb) {
            if (c != 1) return 0;
            const long long wm = g.components[w].mult;
            if (wm == 3 * m && is_leaf_with(g, w, 3 * m, -2)) leaf3m = true;
            else if (wm == 2 * m) {
                has_2m = true;
                if (is_leaf_with(g, w, 2 * m, -3)) leaf2m_neg3 = true;
            } else if (wm == m) has_m = true;
            else others_ok = false;
        }
        if (!others_ok || !leaf3m || !has_m || !has_2m) return 0;
        if (r == 3 && leaf2m_neg3) return 2;
        if (r == 2) return 8;
        return 0;
    }
    return 0;
}

}  // namespace

ClassifyResult classify_fiber(const FiberGraph& f) {
    ClassifyResult res;
    const InvariantBundle b = compute_invariants(f);
    if (b.g < 2) throw Error("classify_fiber: needs fiber genus >= 2");

    auto minimized = minimize(f).graph;

    if (b.c1sq_min > Rat(4 * b.g) - Rat(11, 2)) {
        res.category = "max-c1";
        if (b.g > 6) {
            res.key = "";
            res.note = "unclassified: c1^2 exceeds 4g - 11/2 at genus " +
                       std::to_string(b.g) + " > 6, outside the classification";
            return res;
        }
        const std::string canon = canonical_form(minimized);
        const std::size_t size = minimized.components.size();
        for (int i = 1; i <= 22; ++i) {
            if (matches_entry(canon, size, i)) {
                res.key = "thm1.3/" + std::to_string(i);
                return res;
            }
        }
        long long d = 0;
        for (const auto& c : minimized.components) d = std::gcd(d, c.mult);
        if (d > 1) {
            FiberGraph reduced = scaled_down(minimized, d);
            const std::string rc = canonical_form(reduced);
            for (int i = 1; i <= 22; ++i) {
                if (matches_entry(rc, reduced.components.size(), i)) {
                    res.key = "thm1.3/" + std::to_string(i);
                    res.note = "input is " + std::to_string(d) + " times the match";
                    return res;
                }
            }
        }
        res.note = "unclassified: no catalog entry matches (transcription red flag)";
        return res;
    }

    if (2 * b.c2_min - b.c1sq_min < 6) {
        res.category = "gap";
        int c = gap_case(minimized);
        if (c > 0) {
            res.key = "thm1.4/case" + std::to_string(c);
        } else {
            res.note = "unclassified — violates Theorem 1.4";
        }
        return res;
    }

    res.category = "none";
    res.note = "neither classification condition applies";
    return res;
}

}  // namespace fibercalc
