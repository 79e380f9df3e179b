#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibercalc/fiber_graph.hpp"
#include "fibercalc/rational.hpp"

namespace fibercalc {

struct CatalogExpected {
    std::optional<long long> g;
    std::optional<Rat> c1sq_min;
    std::optional<Rat> c2_min;
    std::optional<Rat> chi;
    // Offsets against N = g - p_a(reduced minimal fiber), for the
    // gap-classification witness families.
    std::optional<Rat> c1sq_offset;
    std::optional<Rat> c2_offset;
    std::optional<Rat> chi_offset;
};

struct CatalogEntry {
    std::string key;
    FiberGraph graph;
    CatalogExpected expected;
    std::string provenance;
};

/// The 22 classified fibers with c1^2 > 4g - 11/2 (canonical
/// representatives; entries 10, 14, 15, 16, 19 are families over the
/// length of a constant-multiplicity run and ship with run extension 0).
std::vector<CatalogEntry> twentytwo();

/// One of the 22, with the free run extended by `run_extension` extra
/// vertices (only entries 10, 14, 15, 16, 19 accept a nonzero value).
CatalogEntry twentytwo_entry(int index, long long run_extension = 0);

/// True for the entries whose dotted run length is a free parameter.
bool entry_has_run(int index);

/// The genus-g member of the multiple-fiber family hitting
/// c1^2 = 4g - 11/2: F = (g-1) F_0 with F_0 of genus 2.
CatalogEntry example_family(long long g);

/// Witness normal-crossing models for the eight cases of the
/// 2c2 - c1^2 < 6 classification. h is the genus of the non-rational
/// component where the case has one (cases 1..5); cases 6..8 ignore h.
CatalogEntry theorem14_family(int case_no, long long n, long long h = 1);

/// Whether (n, h) are admissible parameters for the case.
bool theorem14_applicable(int case_no, long long n, long long h);

/// Genus-1 normal-crossing models: "II", "III", "IV", "I0*", "IV*",
/// "III*", "II*", "I<b>" (b >= 0), and "<m>I<b>" multiples.
CatalogEntry kodaira(const std::string& kind);

/// The kinds exercised by the calibration suite.
std::vector<std::string> kodaira_kinds();

/// Key-based lookup: "thm1.3/<i>", "kodaira/<kind>", "example1.6/g=<g>",
/// "thm1.4/case<c>" with optional "/n=<n>,h=<h>".
CatalogEntry lookup(const std::string& key);

/// Every entry with pinned expectations: the 22, the Kodaira kinds, the
/// example family for g = 2..12, and the case witnesses for n = 1..4,
/// h = 0..2 where applicable.
std::vector<CatalogEntry> default_corpus();

}  // namespace fibercalc
