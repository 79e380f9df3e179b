#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fibercalc/rational.hpp"

namespace fibercalc {

/// One irreducible component C_i of a normal-crossing fiber model.
/// mult is the multiplicity n_i in the fiber divisor, self_int the
/// divisor self-intersection C_i^2 (self-nodes are part of it), genus
/// the geometric genus of the component.
struct Component {
    std::string id;
    long long mult = 1;
    long long self_int = 0;
    long long genus = 0;
};

/// count ordinary double points between the branches of a and b.
/// a == b means self-nodes of a single component.
struct NodeEdge {
    std::string a;
    std::string b;
    long long count = 1;
};

struct ValidationCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool valid() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/// Decorated dual graph of a normal-crossing fiber model. blowups is the
/// number r of blow-ups separating this model from the relatively minimal
/// fiber; resolution_mults optionally records the multiplicities (each >= 2)
/// of the blown-up points of the reduced total transforms, in blow-up order.
struct FiberGraph {
    std::string name;
    std::vector<Component> components;
    std::vector<NodeEdge> nodes;
    long long blowups = 0;
    std::optional<std::vector<long long>> resolution_mults;
    std::optional<long long> genus_check;

    int index_of(const std::string& id) const;
    const Component& component(const std::string& id) const;

    /// Total node-point count at component i: non-self edges count once per
    /// point, self-nodes twice (both local branches are on i).
    long long degree(int i) const;
    /// Number of self-nodes at component i.
    long long loops(int i) const;
    /// Adjacency as (neighbor index, count) pairs, self-edges excluded.
    std::vector<std::pair<int, long long>> neighbors(int i) const;

    bool connected() const;
    /// n_i self_int_i + sum_{j != i} n_j count(i,j); zero for every i iff
    /// the Zariski identity holds.
    Int zariski_defect(int i) const;

    /// F_red^2 = sum self_int_i + 2 sum_{i<j} count(i,j).
    Int reduced_self_intersection() const;

    void add_component(std::string id, long long mult, long long self_int,
                       long long genus = 0);
    void add_node(const std::string& a, const std::string& b, long long count = 1);

private:
    mutable std::unordered_map<std::string, int> index_cache_;
    mutable bool index_dirty_ = true;
    void refresh_index() const;
};

struct MinimizeResult {
    FiberGraph graph;
    long long contractions = 0;
    std::vector<std::string> warnings;
};

/// Structural validation: connectivity, Zariski identities, positivity,
/// negative semidefiniteness of the intersection matrix with radical
/// spanned by the multiplicity vector, negative definiteness of every
/// drop-one principal submatrix, fiber genus >= 1, resolution record shape.
ValidationReport validate(const FiberGraph& f);

/// Genus g of the general fiber: 2g - 2 = sum_i n_i K.C_i with
/// K.C_i = 2(genus_i + loops_i) - 2 - self_int_i.
/// Throws "not a fiber of a relatively minimal family" if g is not an
/// integer >= 0.
long long fiber_genus(const FiberGraph& f);

/// Contracts redundant (-1)-curves (genus 0, loop-free, self -1, meeting
/// the rest in one point, or two points at distinct neighbors) until none
/// remain. Neighbors gain +1 self-intersection; a two-neighbor contraction
/// adds one node between them. blowups decreases by the contraction count.
/// A (-1)-curve with both points on one neighbor cannot be contracted in
/// the normal-crossing category and is reported as a warning.
MinimizeResult minimize(const FiberGraph& f);

bool is_minimal_nc(const FiberGraph& f);

}  // namespace fibercalc
