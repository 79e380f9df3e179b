#pragma once

#include <string>
#include <vector>

#include "fibercalc/fiber_graph.hpp"
#include "fibercalc/invariants.hpp"

namespace fibercalc {

struct InequalityRecord {
    std::string name;
    Rat left;
    std::string relation;
    Rat right;
    bool pass = false;
    std::string note;
};

struct InequalityReport {
    long long g = 0;
    bool semistable = false;
    std::vector<InequalityRecord> records;
    bool all_pass() const {
        for (const auto& r : records)
            if (!r.pass) return false;
        return true;
    }
};

/// Genus-dependent cap on c1^2: 16/5, 7, 54/5 and 130/7 for g = 2, 3, 4, 6,
/// else 4g - 11/2.
Rat c1_upper_bound(long long g);

/// Evaluates, exactly: positivity, Noether, the dual chi route, the
/// canonical-class and Miyaoka-Yau bounds, the Arakelov-type chi bound,
/// the N_bar sandwich, the non-semistable lower bounds, the gap property
/// and the genus-specific c1^2 cap. Genus-1 fibers get only positivity
/// and Noether. Reports; never throws on a violated bound.
InequalityReport inequality_report(const FiberGraph& f);

/// Isomorphism-invariant label of the decorated multigraph
/// (multiplicity, self-intersection, genus, self-node decorations), by
/// color refinement plus exhaustive tie-breaking.
std::string canonical_form(const FiberGraph& f);

struct ClassifyResult {
    std::string category;  // "max-c1", "gap", "none"
    std::string key;       // catalog key when matched
    std::string note;
};

/// Above the 4g - 11/2 line: matches the input (minimized, run- and
/// scaling-aware) against the 22-entry catalog. Below the 2c2 - c1^2 < 6
/// line: determines the case label from the exceptional-curve pattern.
ClassifyResult classify_fiber(const FiberGraph& f);

}  // namespace fibercalc
