// Acceptance suite: one pass/fail line per criterion, exact comparisons,
// wall-clock budgets printed alongside.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fibercalc/catalog.hpp"
#include "fibercalc/classify.hpp"
#include "fibercalc/dualizer.hpp"
#include "fibercalc/format.hpp"
#include "fibercalc/invariants.hpp"
#include "fibercalc/search.hpp"

using namespace fibercalc;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<bool(std::ostream&)>& body) {
    std::ostringstream log;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(log);
    } catch (const std::exception& e) {
        log << "exception: " << e.what();
        ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (secs > budget_seconds) {
        ok = false;
        log << " [exceeded budget]";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title
              << "  (" << secs << " s, budget " << budget_seconds << " s)\n";
    if (!ok) {
        ++failures;
        std::string detail = log.str();
        if (!detail.empty()) std::cout << "     " << detail << "\n";
    }
}

bool check(std::ostream& log, bool cond, const std::string& what) {
    if (!cond) log << what << "; ";
    return cond;
}

}  // namespace

int main() {
    std::cout << "acceptance suite\n";

    criterion(1, "22-fiber table reproduction", 5.0, [](std::ostream& log) {
        bool ok = true;
        for (const auto& e : twentytwo()) {
            InvariantBundle b = compute_invariants(e.graph);
            ok &= check(log, validate(e.graph).valid(), e.key + " invalid");
            ok &= check(log,
                        b.g == *e.expected.g && b.c1sq_min == *e.expected.c1sq_min &&
                            b.c2_min == *e.expected.c2_min && b.chi == *e.expected.chi,
                        e.key + " mismatch");
        }
        return ok;
    });

    criterion(2, "genus-1 calibration", 1.0, [](std::ostream& log) {
        bool ok = true;
        const std::vector<std::pair<std::string, long long>> coeffs = {
            {"II", 2}, {"III", 3}, {"IV", 4}, {"I0*", 6},
            {"IV*", 8}, {"III*", 9}, {"II*", 10}};
        for (const auto& [kind, c2] : coeffs) {
            InvariantBundle b = compute_invariants(kodaira(kind).graph);
            ok &= check(log,
                        b.c1sq_min == 0 && b.c2_min == Rat(c2) && b.chi == Rat(c2, 12),
                        kind + " mismatch");
        }
        for (const char* kind : {"I1", "I2", "I5", "2I3", "3I2"}) {
            InvariantBundle b = compute_invariants(kodaira(kind).graph);
            ok &= check(log, b.c1sq_min == 0 && b.c2_min == 0 && b.chi == 0,
                        std::string(kind) + " not (0,0,0)");
        }
        return ok;
    });

    criterion(3, "boundary family sweep g = 2..12", 1.0, [](std::ostream& log) {
        bool ok = true;
        for (long long g = 2; g <= 12; ++g) {
            InvariantBundle b = compute_invariants(example_family(g).graph);
            ok &= check(log,
                        b.c1sq_min == Rat(4 * g) - Rat(11, 2) &&
                            b.c2_min == Rat(2 * g) + Rat(5, 2) &&
                            b.chi == Rat(g, 2) - Rat(1, 4),
                        "g=" + std::to_string(g) + " mismatch");
        }
        return ok;
    });

    criterion(4, "duality at both admissible degrees, whole catalog", 10.0,
              [](std::ostream& log) {
                  bool ok = true;
                  for (const auto& e : default_corpus()) {
                      Int m = multiplicity_lcm(e.graph);
                      Int first = m >= 2 ? Int(m - 1) : Int(1);
                      for (Int n : {first, Int(2 * m - 1)}) {
                          DualityCheck dc = duality_check(e.graph, n);
                          ok &= check(log, dc.ok,
                                      e.key + " at n=" + n.str() + " fails");
                      }
                  }
                  return ok;
              });

    criterion(5, "dual of II reconstructs II* with chi 1/6 + 5/6", 1.0,
              [](std::ostream& log) {
                  FiberGraph ii = kodaira("II").graph;
                  FiberGraph raw = dual_fiber(ii, 5);
                  auto min = minimize(raw);
                  bool ok = check(log,
                                  canonical_form(min.graph) ==
                                      canonical_form(kodaira("II*").graph),
                                  "not isomorphic to II*");
                  DualityCheck dc = duality_check(ii, 5);
                  ok &= check(log,
                              dc.chi_f == Rat(1, 6) && dc.chi_dual == Rat(5, 6) &&
                                  dc.n_bar == 1 && dc.ok,
                              "chi split is not 1/6 + 5/6");
                  return ok;
              });

    criterion(6, "gap-classification table rows", 2.0, [](std::ostream& log) {
        bool ok = true;
        for (int c = 1; c <= 8; ++c)
            for (long long n = 1; n <= 4; ++n)
                for (long long h = 0; h <= 2; ++h) {
                    if (!theorem14_applicable(c, n, h)) continue;
                    CatalogEntry e = theorem14_family(c, n, h);
                    InvariantBundle b = compute_invariants(e.graph);
                    const Rat nn = Rat(b.n_min.value_or(b.n_bar));
                    ok &= check(log,
                                b.c1sq_min - 4 * nn == *e.expected.c1sq_offset &&
                                    b.c2_min - 2 * nn == *e.expected.c2_offset &&
                                    b.chi - nn / 2 == *e.expected.chi_offset,
                                e.key + " offsets mismatch");
                    ok &= check(log, 2 * b.c2_min - b.c1sq_min < 6,
                                e.key + " gap >= 6");
                    if (c > 5) break;
                }
        return ok;
    });

    criterion(7, "gap theorem over catalog, witnesses and search output", 120.0,
              [](std::ostream& log) {
                  bool ok = true;
                  auto gap_ok = [](const InvariantBundle& b) {
                      const Rat gap = 2 * b.c2_min - b.c1sq_min;
                      return gap == 0 || gap >= 3;
                  };
                  for (const auto& e : default_corpus())
                      ok &= check(log, gap_ok(compute_invariants(e.graph)),
                                  e.key + " violates the gap");
                  SearchBounds bounds;
                  bounds.genus_min = 1;
                  bounds.genus_max = 3;
                  bounds.max_vertices = 7;
                  bounds.max_mult = 8;
                  SearchResult r = enumerate_fibers(bounds, 0);
                  for (const auto& ff : r.fibers)
                      ok &= check(log, gap_ok(ff.bundle), ff.canon + " violates the gap");
                  log << "(" << r.fibers.size() << " enumerated fibers) ";
                  return ok;
              });

    criterion(8, "inequality suite over the corpus", 10.0, [](std::ostream& log) {
        bool ok = true;
        bool equality_note_seen = false;
        for (const auto& e : default_corpus()) {
            InequalityReport rep = inequality_report(e.graph);
            ok &= check(log, rep.all_pass(), e.key + " violates a bound");
            for (const auto& rec : rep.records)
                if (rec.name == "c2-lower" && !rec.note.empty()) equality_note_seen = true;
        }
        ok &= check(log, equality_note_seen, "no equality-case note was produced");
        return ok;
    });

    criterion(9, "arithmetic kernel", 30.0, [](std::ostream& log) {
        bool ok = true;
        for (long long q = 1; q <= 200 && ok; ++q)
            for (long long p = 1; p <= 200; ++p) {
                if (gcd(Int(p), Int(q)) != 1) continue;
                if (dedekind_sum(p, q) + dedekind_sum(q, p) != chi_pair(p, q)) {
                    ok = check(log, false,
                               "reciprocity fails at " + std::to_string(p) + "," +
                                   std::to_string(q));
                    break;
                }
            }
        std::mt19937_64 rng(20260809);
        for (int trial = 0; trial < 10000 && ok; ++trial) {
            long long q = 1 + static_cast<long long>(rng() % 100000);
            long long p = static_cast<long long>(rng() % (2 * q + 1)) - q;
            if (dedekind_sum(p, q) != dedekind_sum_direct(p, q))
                ok = check(log, false,
                           "fast/direct split at p=" + std::to_string(p) +
                               " q=" + std::to_string(q));
        }
        for (Int n = 2; n <= 100 && ok; ++n)
            for (Int q = 1; q < n; ++q) {
                if (gcd(n, q) != 1) continue;
                if (branch_beta(hj_expand(n, q)) != make_rat(q, n)) {
                    ok = check(log, false, "branch beta split at n=" + n.str());
                    break;
                }
            }
        return ok;
    });

    criterion(10, "search soundness", 600.0, [](std::ostream& log) {
        bool ok = true;
        {
            SearchBounds tiny;
            tiny.genus_min = 1;
            tiny.genus_max = 6;
            tiny.max_vertices = 4;
            tiny.max_mult = 4;
            SearchResult pruned = enumerate_fibers(tiny, 1, true);
            SearchResult unpruned = enumerate_fibers(tiny, 1, false);
            std::vector<std::string> a, b;
            for (const auto& f : pruned.fibers) a.push_back(f.canon);
            for (const auto& f : unpruned.fibers) b.push_back(f.canon);
            ok &= check(log, a == b, "pruned != unpruned at tiny bounds");
        }
        SearchBounds bounds;
        bounds.genus_min = 2;
        bounds.genus_max = 2;
        bounds.max_vertices = 9;
        bounds.max_mult = 8;
        Theorem13Report rep1 = verify_theorem13(bounds, 1);
        ok &= check(log, rep1.empty_diff(), "nonempty diff against the catalog");
        ok &= check(log, !rep1.hits.empty(), "no fiber cleared the bound");
        Theorem13Report repN = verify_theorem13(bounds, 0);
        std::vector<std::string> c1, cN;
        for (const auto& h : rep1.hits) c1.push_back(h.fiber.canon);
        for (const auto& h : repN.hits) cN.push_back(h.fiber.canon);
        ok &= check(log, c1 == cN, "thread count changed the result");
        log << "(" << rep1.hits.size() << " hits) ";
        return ok;
    });

    criterion(11, "full-scale sweep replaced by property suites", 60.0,
              [](std::ostream& log) {
                  std::cout << "     note: the complete classification sweep "
                               "(13 vertices, multiplicity 21, g <= 6) is not run "
                               "as a default test; it takes minutes and is "
                               "available via "
                               "`fibercalc search --verify-classification`. The "
                               "global-fibration corollaries need actual families "
                               "and are not reproducible here at all. Both are "
                               "replaced by the bounded searches above and the "
                               "self-identification check below.\n";
                  bool ok = true;
                  for (const auto& e : twentytwo()) {
                      ClassifyResult r = classify_fiber(e.graph);
                      ok &= check(log, r.key == e.key,
                                  e.key + " does not identify itself");
                  }
                  return ok;
              });

    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures == 0 ? 0 : 1;
}
