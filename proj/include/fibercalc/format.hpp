#pragma once

#include <string>

#include "fibercalc/fiber_graph.hpp"

namespace fibercalc {

/// Parses the line-oriented fiber format:
///
///   fiber "<name>"
///   blowups <r>                      # optional, default 0
///   genus-check <g>                  # optional assertion
///   resolution <m1> <m2> ...         # optional blown-up point multiplicities
///   component <id> mult=<int> [self=<int>] [genus=<int>]
///   node <id1> <id2> [x<count>]      # id1 == id2 permitted (self-node)
///
/// '#' starts a comment. Omitted self-intersections are solved from the
/// Zariski identity and must come out integral; explicit ones are checked.
/// The graph must be connected with fiber genus >= 1.
FiberGraph parse_fiber(const std::string& text);

/// Canonical emission: components sorted by label, nodes sorted
/// lexicographically, defaults omitted. parse(emit(f)) is isomorphic to f.
std::string emit_fiber(const FiberGraph& f);

/// Machine-readable key/value mirror of emit_fiber, stable field order.
std::string emit_fiber_kv(const FiberGraph& f);

/// Ordering used for canonical emission: shorter ids first, then lexicographic.
bool label_less(const std::string& a, const std::string& b);

}  // namespace fibercalc
