#pragma once

#include <string>
#include <vector>

#include "fibercalc/fiber_graph.hpp"
#include "fibercalc/invariants.hpp"

namespace fibercalc {

struct SearchBounds {
    long long genus_min = 2;
    long long genus_max = 2;
    long long max_vertices = 5;
    long long max_mult = 6;
};

struct FoundFiber {
    FiberGraph graph;
    std::string canon;
    long long g = 0;
    InvariantBundle bundle;
};

struct SearchResult {
    std::vector<FoundFiber> fibers;  // one per canonical form, sorted
    long long shapes = 0;
    long long assignments = 0;
};

/// Every connected multiplicity-labeled tree (genus-0 components, no
/// self-nodes, single edges) within the bounds whose Zariski-solved
/// self-intersections are negative integers, with no redundant
/// (-1)-vertex, gcd of multiplicities 1, and fiber genus in range.
/// Deterministic order; identical across thread counts. `pruned = false`
/// disables the divisibility rejection of partial assignments (oracle
/// for the pruning contract; use only at tiny bounds).
SearchResult enumerate_fibers(const SearchBounds& bounds, int threads = 1,
                              bool pruned = true);

struct Theorem13Hit {
    FoundFiber fiber;
    long long scaling = 1;  // k when the bound is met by k*F
    std::string matched_key;
};

struct Theorem13Report {
    SearchBounds bounds;
    std::vector<Theorem13Hit> hits;
    std::vector<std::string> extra_canon;   // enumerated, no catalog match
    std::vector<std::string> missing_keys;  // catalog in bounds, not enumerated
    std::vector<std::string> notes;
    bool empty_diff() const { return extra_canon.empty() && missing_keys.empty(); }
};

/// Enumerates, keeps fibers with c1^2 > 4g - 11/2 (evaluated on the fiber
/// and on its small scalings), and diffs the result against the
/// bound-restricted catalog of the 22 classified fibers (run families
/// expanded; blow-up entries are outside the r = 0 tree space and are
/// noted, not diffed). Scaled hits are reported with their factor but do
/// not enter the diff: trees with multiplicity gcd > 1 are multiple
/// fibers, which are never simply connected and hence not realizable.
Theorem13Report verify_theorem13(const SearchBounds& bounds, int threads = 1);

}  // namespace fibercalc
