#include "fibercalc/fiber_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace fibercalc {

void FiberGraph::refresh_index() const {
    index_cache_.clear();
    for (std::size_t i = 0; i < components.size(); ++i)
        index_cache_[components[i].id] = static_cast<int>(i);
    index_dirty_ = false;
}

int FiberGraph::index_of(const std::string& id) const {
    // The cache is verified on every hit so that direct mutation of
    // `components` (reordering, renaming) cannot return stale indices.
    if (index_dirty_ || index_cache_.size() != components.size()) refresh_index();
    auto it = index_cache_.find(id);
    if (it != index_cache_.end() &&
        static_cast<std::size_t>(it->second) < components.size() &&
        components[it->second].id == id)
        return it->second;
    refresh_index();
    it = index_cache_.find(id);
    return it == index_cache_.end() ? -1 : it->second;
}

const Component& FiberGraph::component(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw Error("unknown component id: " + id);
    return components[i];
}

long long FiberGraph::degree(int i) const {
    const std::string& id = components[i].id;
    long long d = 0;
    for (const auto& e : nodes) {
        if (e.a == id && e.b == id) d += 2 * e.count;
        else if (e.a == id || e.b == id) d += e.count;
    }
    return d;
}

long long FiberGraph::loops(int i) const {
    const std::string& id = components[i].id;
    long long c = 0;
    for (const auto& e : nodes)
        if (e.a == id && e.b == id) c += e.count;
    return c;
}

std::vector<std::pair<int, long long>> FiberGraph::neighbors(int i) const {
    const std::string& id = components[i].id;
    std::map<int, long long> acc;
    for (const auto& e : nodes) {
        if (e.a == id && e.b != id) acc[index_of(e.b)] += e.count;
        else if (e.b == id && e.a != id) acc[index_of(e.a)] += e.count;
    }
    return {acc.begin(), acc.end()};
}

bool FiberGraph::connected() const {
    if (components.empty()) return false;
    std::vector<std::vector<int>> adj(components.size());
    for (const auto& e : nodes) {
        int i = index_of(e.a), j = index_of(e.b);
        if (i == j) continue;
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<char> seen(components.size(), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int j : adj[cur]) {
            if (!seen[j]) {
                seen[j] = 1;
                ++reached;
                queue.push_back(j);
            }
        }
    }
    return reached == components.size();
}

Int FiberGraph::zariski_defect(int i) const {
    Int d = Int(components[i].mult) * components[i].self_int;
    for (auto [j, cnt] : neighbors(i)) d += Int(components[j].mult) * cnt;
    return d;
}

Int FiberGraph::reduced_self_intersection() const {
    Int s = 0;
    for (const auto& c : components) s += c.self_int;
    for (const auto& e : nodes)
        if (e.a != e.b) s += 2 * Int(e.count);
    return s;
}

void FiberGraph::add_component(std::string id, long long mult, long long self_int,
                               long long genus) {
    components.push_back(Component{std::move(id), mult, self_int, genus});
    index_dirty_ = true;
}

void FiberGraph::add_node(const std::string& a, const std::string& b, long long count) {
    nodes.push_back(NodeEdge{a, b, count});
}

long long fiber_genus(const FiberGraph& f) {
    std::vector<long long> loop_count(f.components.size(), 0);
    for (const auto& e : f.nodes)
        if (e.a == e.b) loop_count[f.index_of(e.a)] += e.count;
    Int twog_minus_2 = 0;
    for (std::size_t i = 0; i < f.components.size(); ++i) {
        const auto& c = f.components[i];
        Int kc = 2 * (Int(c.genus) + loop_count[i]) - 2 - c.self_int;
        twog_minus_2 += Int(c.mult) * kc;
    }
    if (mod_floor(twog_minus_2, 2) != 0)
        throw Error("not a fiber of a relatively minimal family: odd canonical degree " +
                    twog_minus_2.str());
    Int g = (twog_minus_2 + 2) / 2;
    if (g < 0)
        throw Error("not a fiber of a relatively minimal family: genus " + g.str());
    return g.convert_to<long long>();
}

namespace {

// Symmetric Gaussian elimination over exact rationals; returns the pivot
// signs. Fails (returns false) when a zero pivot has a nonzero residual
// row, which cannot happen for a semidefinite matrix.
struct InertiaResult {
    bool clean = true;
    int negative = 0;
    int positive = 0;
    int zero = 0;
};

InertiaResult inertia(std::vector<std::vector<Rat>> m) {
    InertiaResult res;
    const std::size_t k = m.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (m[i][i] == 0) {
            bool row_zero = true;
            for (std::size_t j = i; j < k; ++j)
                if (m[i][j] != 0) { row_zero = false; break; }
            if (!row_zero) {
                res.clean = false;
                return res;
            }
            ++res.zero;
            continue;
        }
        if (m[i][i] > 0) ++res.positive; else ++res.negative;
        for (std::size_t r = i + 1; r < k; ++r) {
            if (m[r][i] == 0) continue;
            Rat factor = m[r][i] / m[i][i];
            for (std::size_t cidx = i; cidx < k; ++cidx)
                m[r][cidx] -= factor * m[i][cidx];
        }
        for (std::size_t r = i + 1; r < k; ++r) m[i][r] = 0;
    }
    return res;
}

std::vector<std::vector<Rat>> intersection_matrix(const FiberGraph& f) {
    const std::size_t k = f.components.size();
    std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k, Rat(0)));
    for (std::size_t i = 0; i < k; ++i) m[i][i] = Rat(f.components[i].self_int);
    for (const auto& e : f.nodes) {
        if (e.a == e.b) continue;
        int i = f.index_of(e.a), j = f.index_of(e.b);
        m[i][j] += e.count;
        m[j][i] += e.count;
    }
    return m;
}

}  // namespace

ValidationReport validate(const FiberGraph& f) {
    ValidationReport rep;
    auto check = [&rep](const std::string& name, bool ok, const std::string& detail = "") {
        rep.checks.push_back(ValidationCheck{name, ok, detail});
    };

    check("nonempty", !f.components.empty());
    if (f.components.empty()) return rep;

    {
        std::set<std::string> ids;
        bool dup = false;
        std::string offender;
        for (const auto& c : f.components)
            if (!ids.insert(c.id).second) { dup = true; offender = c.id; }
        check("unique-ids", !dup, offender);
    }

    for (const auto& c : f.components) {
        if (c.mult < 1) check("multiplicity", false, c.id + ": mult < 1");
        if (c.genus < 0) check("genus-nonneg", false, c.id);
    }
    if (f.components.size() >= 2) {
        for (const auto& c : f.components)
            if (c.self_int > 0)
                check("self-int-sign", false, c.id + ": positive self-intersection");
    }

    bool endpoints_ok = true;
    for (const auto& e : f.nodes) {
        if (e.count < 1) check("node-count", false, e.a + " " + e.b);
        if (f.index_of(e.a) < 0 || f.index_of(e.b) < 0) endpoints_ok = false;
    }
    check("node-endpoints", endpoints_ok);
    if (!endpoints_ok || !rep.valid()) return rep;

    check("connected", f.connected());
    if (!rep.valid()) return rep;

    for (std::size_t i = 0; i < f.components.size(); ++i) {
        Int d = f.zariski_defect(static_cast<int>(i));
        if (d != 0)
            check("zariski", false,
                  f.components[i].id + ": defect " + d.str());
    }
    if (!rep.valid()) return rep;

    // Intersection matrix: negative semidefinite with a one-dimensional
    // radical spanned by the multiplicity vector, and every drop-one
    // principal submatrix negative definite (Artin).
    {
        auto m = intersection_matrix(f);
        const std::size_t k = m.size();
        bool radical_ok = true;
        for (std::size_t i = 0; i < k; ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < k; ++j) s += m[i][j] * f.components[j].mult;
            if (s != 0) radical_ok = false;
        }
        check("radical-contains-fiber", radical_ok);

        auto in = inertia(m);
        check("negative-semidefinite", in.clean && in.positive == 0,
              in.clean ? "" : "zero pivot with nonzero row");
        const bool radical_1d = in.clean && in.zero == 1;
        check("radical-dimension", radical_1d,
              radical_1d ? ""
                         : "zero eigenvalue multiplicity " + std::to_string(in.zero));

        if (k >= 2) {
            for (std::size_t drop = 0; drop < k; ++drop) {
                std::vector<std::vector<Rat>> sub;
                sub.reserve(k - 1);
                for (std::size_t i = 0; i < k; ++i) {
                    if (i == drop) continue;
                    std::vector<Rat> row;
                    row.reserve(k - 1);
                    for (std::size_t j = 0; j < k; ++j)
                        if (j != drop) row.push_back(m[i][j]);
                    sub.push_back(std::move(row));
                }
                auto si = inertia(std::move(sub));
                if (!(si.clean && si.positive == 0 && si.zero == 0)) {
                    check("artin-negativity", false,
                          "submatrix without " + f.components[drop].id +
                              " is not negative definite");
                    break;
                }
            }
        }
    }

    try {
        long long g = fiber_genus(f);
        check("fiber-genus", g >= 1, "genus " + std::to_string(g));
        if (f.genus_check && *f.genus_check != g)
            check("genus-check", false,
                  "declared " + std::to_string(*f.genus_check) + ", computed " +
                      std::to_string(g));
    } catch (const Error& err) {
        check("fiber-genus", false, err.what());
    }

    if (f.blowups < 0) check("blowups-nonneg", false);
    if (f.resolution_mults) {
        const auto& ms = *f.resolution_mults;
        check("resolution-length",
              static_cast<long long>(ms.size()) == f.blowups,
              "record length " + std::to_string(ms.size()) + ", blowups " +
                  std::to_string(f.blowups));
        for (long long m : ms)
            if (m < 2) check("resolution-entries", false, std::to_string(m));
    }

    return rep;
}

namespace {

struct MutableGraph {
    // Working representation for contraction: adjacency with counts.
    std::vector<Component> comps;
    std::vector<char> alive;
    std::vector<std::map<int, long long>> adj;  // neighbor -> count (no self)
    std::vector<long long> self_loops;

    explicit MutableGraph(const FiberGraph& f)
        : comps(f.components),
          alive(f.components.size(), 1),
          adj(f.components.size()),
          self_loops(f.components.size(), 0) {
        for (const auto& e : f.nodes) {
            int i = f.index_of(e.a), j = f.index_of(e.b);
            if (i == j) {
                self_loops[i] += e.count;
            } else {
                adj[i][j] += e.count;
                adj[j][i] += e.count;
            }
        }
    }

    long long points(int i) const {
        long long d = 2 * self_loops[i];
        for (auto& [j, c] : adj[i]) d += c;
        return d;
    }

    bool contractible(int i, std::string* warning) const {
        const auto& c = comps[i];
        if (c.genus != 0 || c.self_int != -1) return false;
        long long pts = points(i);
        if (pts < 1 || pts > 2) return false;
        // Redundant by point count, but contraction would create a
        // tangency (double point on one neighbor) or a cusp (self-node).
        if (self_loops[i] != 0 || (pts == 2 && adj[i].size() == 1)) {
            if (warning)
                *warning = "contraction leaves normal-crossing category: " + c.id;
            return false;
        }
        return true;
    }

    void contract(int i) {
        std::vector<int> nb;
        for (auto& [j, c] : adj[i]) nb.push_back(j);
        for (int j : nb) {
            comps[j].self_int += 1;
            adj[j].erase(i);
        }
        if (nb.size() == 2) {
            adj[nb[0]][nb[1]] += 1;
            adj[nb[1]][nb[0]] += 1;
        }
        adj[i].clear();
        alive[i] = 0;
    }
};

}  // namespace

MinimizeResult minimize(const FiberGraph& f) {
    MutableGraph work(f);
    const int k = static_cast<int>(f.components.size());
    long long contractions = 0;
    std::set<std::string> warned;

    std::deque<int> queue;
    for (int i = 0; i < k; ++i) queue.push_back(i);
    std::vector<char> queued(k, 1);

    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        queued[i] = 0;
        if (!work.alive[i]) continue;
        std::string warning;
        if (!work.contractible(i, &warning)) {
            if (!warning.empty()) warned.insert(warning);
            continue;
        }
        std::vector<int> nb;
        for (auto& [j, c] : work.adj[i]) nb.push_back(j);
        work.contract(i);
        ++contractions;
        for (int j : nb)
            if (work.alive[j] && !queued[j]) {
                queue.push_back(j);
                queued[j] = 1;
            }
    }

    MinimizeResult res;
    res.contractions = contractions;
    res.warnings.assign(warned.begin(), warned.end());
    res.graph.name = f.name;
    res.graph.blowups = std::max<long long>(0, f.blowups - contractions);
    res.graph.resolution_mults =
        contractions == 0 ? f.resolution_mults : std::nullopt;
    res.graph.genus_check = f.genus_check;

    std::vector<int> new_index(k, -1);
    for (int i = 0; i < k; ++i) {
        if (!work.alive[i]) continue;
        new_index[i] = static_cast<int>(res.graph.components.size());
        res.graph.components.push_back(work.comps[i]);
    }
    for (int i = 0; i < k; ++i) {
        if (!work.alive[i]) continue;
        if (work.self_loops[i] > 0)
            res.graph.add_node(work.comps[i].id, work.comps[i].id, work.self_loops[i]);
        for (auto& [j, c] : work.adj[i])
            if (j > i) res.graph.add_node(work.comps[i].id, work.comps[j].id, c);
    }
    return res;
}

bool is_minimal_nc(const FiberGraph& f) {
    return minimize(f).contractions == 0;
}

}  // namespace fibercalc
