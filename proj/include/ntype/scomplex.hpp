#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ntype/base.hpp"

namespace ntype {

// A simplex in Eilenberg-Zilber normal form: a strictly decreasing degeneracy
// word applied to a nondegenerate cell, addressed by (dimension, index).
struct SimplexRef {
    int base_dim = 0;
    int base = -1;
    std::vector<int> degens;  // strictly decreasing, empty for nondegenerate

    int dim() const { return base_dim + static_cast<int>(degens.size()); }
    bool degenerate() const { return !degens.empty(); }

    friend bool operator==(const SimplexRef& a, const SimplexRef& b) {
        return a.base_dim == b.base_dim && a.base == b.base && a.degens == b.degens;
    }
    friend bool operator!=(const SimplexRef& a, const SimplexRef& b) { return !(a == b); }
    friend bool operator<(const SimplexRef& a, const SimplexRef& b) {
        if (a.base_dim != b.base_dim) return a.base_dim < b.base_dim;
        if (a.base != b.base) return a.base < b.base;
        return a.degens < b.degens;
    }
};

class SSet;
using SSetPtr = std::shared_ptr<const SSet>;

// Finite simplicial set: nondegenerate cells per dimension plus face data on
// the generators. All other simplices are reached through the ref calculus.
class SSet {
public:
    const std::string& name() const { return name_; }
    int top_dim() const { return static_cast<int>(cells_.size()) - 1; }
    bool empty() const { return cells_.empty(); }

    int cell_count(int dim) const {
        return (dim >= 0 && dim <= top_dim()) ? static_cast<int>(cells_[dim].size()) : 0;
    }
    const std::string& cell_id(int dim, int idx) const { return cells_[dim][idx]; }
    std::optional<std::pair<int, int>> find_cell(const std::string& id) const;
    const std::vector<SimplexRef>& faces_of(int dim, int idx) const { return faces_[dim][idx]; }

    static SimplexRef cell_ref(int dim, int idx) { return SimplexRef{dim, idx, {}}; }

    // d_i and s_i on arbitrary refs, with normal-form rewriting.
    SimplexRef face(const SimplexRef& r, int i) const;
    SimplexRef degenerate_ref(const SimplexRef& r, int i) const;
    SimplexRef vertex_of(const SimplexRef& r, int v) const;
    // Iterated face onto the vertex subset `keep` (sorted ascending).
    SimplexRef subsimplex(const SimplexRef& r, const std::vector<int>& keep) const;
    bool in_degeneracy_image(const SimplexRef& r, int j) const;

    // All simplices of dimension n (degenerate included), canonically ordered.
    std::vector<SimplexRef> all_simplices(int n) const;
    long long count_simplices(int n) const;

    std::string ref_string(const SimplexRef& r) const;
    void check_ref(const SimplexRef& r) const;
    void validate() const;

    static bool same_cells(const SSet& a, const SSet& b);  // exact cell-level equality

private:
    friend class SSetBuilder;
    std::string name_;
    std::vector<std::vector<std::string>> cells_;
    std::vector<std::vector<std::vector<SimplexRef>>> faces_;
    std::unordered_map<std::string, std::pair<int, int>> index_;

    void enumerate_words(int base_dim, int target_dim, std::vector<SimplexRef>& out) const;
};

class SSetBuilder {
public:
    explicit SSetBuilder(std::string name) : name_(std::move(name)) {}

    int add_cell(int dim, const std::string& id);
    void set_faces(int dim, int idx, std::vector<SimplexRef> faces);
    bool has_cell(const std::string& id) const { return index_.count(id) > 0; }
    std::optional<std::pair<int, int>> find_cell(const std::string& id) const;
    int cell_count(int dim) const {
        return (dim >= 0 && dim < static_cast<int>(cells_.size())) ? static_cast<int>(cells_[dim].size()) : 0;
    }

    // View of the partially built complex (used by coskeleton-style filling).
    SSetPtr snapshot(bool validate = true) const;
    SSetPtr build(bool validate = true);

private:
    std::string name_;
    std::vector<std::vector<std::string>> cells_;
    std::vector<std::vector<std::vector<SimplexRef>>> faces_;
    std::unordered_map<std::string, std::pair<int, int>> index_;
};

// A simplicial map, stored on nondegenerate generators of the source.
class SMap {
public:
    SMap() = default;
    SMap(SSetPtr src, SSetPtr tgt, std::vector<std::vector<SimplexRef>> assignment, bool check = true);

    const SSetPtr& source() const { return src_; }
    const SSetPtr& target() const { return tgt_; }

    const SimplexRef& on_cell(int dim, int idx) const { return assign_[dim][idx]; }
    SimplexRef apply(const SimplexRef& r) const;

    void validate() const;
    bool is_mono() const;  // levelwise monomorphism

    static SMap identity(const SSetPtr& x);
    static SMap constant_to_vertex(const SSetPtr& x, const SSetPtr& y, int vertex_idx);

    friend SMap compose(const SMap& g, const SMap& f);  // g after f
    friend bool operator==(const SMap& a, const SMap& b) {
        return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.assign_ == b.assign_;
    }

private:
    SSetPtr src_, tgt_;
    std::vector<std::vector<SimplexRef>> assign_;  // per dim, per nondeg cell
};

SMap compose(const SMap& g, const SMap& f);

// Standard objects.
SSetPtr empty_sset(const std::string& name = "empty");
SSetPtr standard_simplex(int n);
SSetPtr boundary(int n);
SSetPtr horn(int n, int k);
// Inclusion horn(n,k) -> standard(n), boundary(n) -> standard(n), etc.
SMap subcomplex_inclusion(const SSetPtr& sub, const SSetPtr& whole);
// Representing map of an n-simplex: standard(n) -> X sending the top cell to r.
SMap representing_map(const SSetPtr& x, const SimplexRef& r);

struct DisjointUnion {
    SSetPtr cx;
    SMap in_left, in_right;
};
DisjointUnion disjoint_union(const SSetPtr& x, const SSetPtr& y);

struct Pushout {
    SSetPtr cx;
    SMap from_x, from_y;  // structure maps X -> P, Y -> P
};
Pushout pushout(const SMap& f, const SMap& g);  // f : A -> X, g : A -> Y; one leg mono

struct Product {
    SSetPtr cx;
    SMap proj_x, proj_y;
    // nondeg product cell -> its component refs
    std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> components;
};
Product product(const SSetPtr& x, const SSetPtr& y, int max_dim);

// Pullback of g : Z -> B along f : Y -> B (levelwise, jointly nondegenerate pairs).
struct PullbackResult {
    SSetPtr cx;
    SMap proj_y, proj_z;
};
PullbackResult pullback(const SMap& f, const SMap& g, int max_dim);

// Mediating map out of a pair complex (product or pullback): cells are pairs
// (a, b); the result sends each to u(a) combined with v(b) in `target`.
// Used for the comparison map X -> Y x_B Z with components u, v.
SMap pair_mediating_map(const SSetPtr& x, const SMap& u, const SMap& v, const PullbackResult& pb);

// Exhaustive enumeration of simplicial maps A -> X, lexicographic in the
// generator assignment. `forced` pins cells; `admissible` filters candidates.
struct HomSearchOptions {
    std::map<std::pair<int, int>, SimplexRef> forced;
    std::function<bool(int dim, int idx, const SimplexRef&)> admissible;
    bool first_only = false;
    // Place each cell as soon as all its faces are placed, so high-dimensional
    // constraints prune early. Changes visit order, not the result set.
    bool constraint_order = false;
};
std::vector<SMap> hom_enumerate(const SSetPtr& a, const SSetPtr& x, Budget& budget);
std::vector<SMap> hom_search(const SSetPtr& a, const SSetPtr& x, const HomSearchOptions& opt, Budget& budget);

// S^1 as the corpus uses it: one vertex, one nondegenerate loop edge.
SSetPtr circle();

}  // namespace ntype
