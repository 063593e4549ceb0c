#include "ntype/scomplex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ntype {

/* ---------------- SSet ---------------- */

std::optional<std::pair<int, int>> SSet::find_cell(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SimplexRef SSet::face(const SimplexRef& r, int i) const {
    if (i < 0 || i > r.dim() || r.dim() == 0)
        throw Error("face index " + std::to_string(i) + " out of range for dim " + std::to_string(r.dim()));
    if (!r.degens.empty()) {
        int j = r.degens.front();
        SimplexRef rest{r.base_dim, r.base, {r.degens.begin() + 1, r.degens.end()}};
        if (i == j || i == j + 1) return rest;
        if (i < j) return degenerate_ref(face(rest, i), j - 1);
        return degenerate_ref(face(rest, i - 1), j);
    }
    return faces_[r.base_dim][r.base][i];
}

SimplexRef SSet::degenerate_ref(const SimplexRef& r, int i) const {
    if (i < 0 || i > r.dim())
        throw Error("degeneracy index out of range");
    if (r.degens.empty() || i > r.degens.front()) {
        SimplexRef out = r;
        out.degens.insert(out.degens.begin(), i);
        return out;
    }
    // s_i s_j = s_{j+1} s_i for i <= j
    int j = r.degens.front();
    SimplexRef rest{r.base_dim, r.base, {r.degens.begin() + 1, r.degens.end()}};
    SimplexRef sub = degenerate_ref(rest, i);
    sub.degens.insert(sub.degens.begin(), j + 1);
    return sub;
}

SimplexRef SSet::vertex_of(const SimplexRef& r, int v) const {
    SimplexRef cur = r;
    while (cur.dim() > v + 1) cur = face(cur, cur.dim());
    while (cur.dim() > 0) cur = face(cur, 0);
    return cur;
}

SimplexRef SSet::subsimplex(const SimplexRef& r, const std::vector<int>& keep) const {
    SimplexRef cur = r;
    for (int v = r.dim(); v >= 0; --v) {
        if (!std::binary_search(keep.begin(), keep.end(), v)) cur = face(cur, v);
    }
    return cur;
}

bool SSet::in_degeneracy_image(const SimplexRef& r, int j) const {
    // EZ normal form: the degeneracy support of a simplex is exactly its word.
    return std::find(r.degens.begin(), r.degens.end(), j) != r.degens.end();
}

void SSet::enumerate_words(int base_dim, int target_dim, std::vector<SimplexRef>& out) const {
    int k = target_dim - base_dim;
    std::vector<int> word(k);
    // choose innermost (position k-1) first: applied at dim base_dim, index <= base_dim;
    // each next letter strictly larger, applied one dimension higher.
    std::function<void(int, int)> rec = [&](int pos, int low) {
        if (pos < 0) {
            for (int b = 0; b < cell_count(base_dim); ++b)
                out.push_back(SimplexRef{base_dim, b, word});
            return;
        }
        int applied_dim = base_dim + (k - 1 - pos);
        for (int i = low; i <= applied_dim; ++i) {
            word[pos] = i;
            rec(pos - 1, i + 1);
        }
    };
    if (k == 0) {
        for (int b = 0; b < cell_count(base_dim); ++b)
            out.push_back(SimplexRef{base_dim, b, {}});
    } else {
        rec(k - 1, 0);
    }
}

std::vector<SimplexRef> SSet::all_simplices(int n) const {
    std::vector<SimplexRef> out;
    for (int m = 0; m <= std::min(n, top_dim()); ++m)
        enumerate_words(m, n, out);
    std::sort(out.begin(), out.end());
    return out;
}

long long SSet::count_simplices(int n) const {
    return static_cast<long long>(all_simplices(n).size());
}

std::string SSet::ref_string(const SimplexRef& r) const {
    std::ostringstream os;
    if (!r.degens.empty()) {
        os << "s[";
        for (size_t i = 0; i < r.degens.size(); ++i) {
            if (i) os << ",";
            os << r.degens[i];
        }
        os << "] ";
    }
    os << cells_[r.base_dim][r.base];
    return os.str();
}

void SSet::check_ref(const SimplexRef& r) const {
    if (r.base_dim < 0 || r.base_dim > top_dim() || r.base < 0 || r.base >= cell_count(r.base_dim))
        throw MalformedSpec("dangling simplex reference");
    int d = r.base_dim;
    for (auto it = r.degens.rbegin(); it != r.degens.rend(); ++it) {
        if (*it < 0 || *it > d) throw MalformedSpec("degeneracy word index out of range");
        ++d;
    }
    for (size_t i = 0; i + 1 < r.degens.size(); ++i)
        if (r.degens[i] <= r.degens[i + 1])
            throw MalformedSpec("degeneracy word not strictly decreasing");
}

void SSet::validate() const {
    for (int d = 1; d <= top_dim(); ++d) {
        for (int c = 0; c < cell_count(d); ++c) {
            const auto& fs = faces_[d][c];
            if (static_cast<int>(fs.size()) != d + 1)
                throw MalformedSpec("cell " + cells_[d][c] + " has wrong face arity");
            for (const auto& f : fs) {
                check_ref(f);
                if (f.dim() != d - 1)
                    throw MalformedSpec("face of " + cells_[d][c] + " has wrong dimension");
            }
        }
    }
    // d_i d_j = d_{j-1} d_i for i < j, checked on generators
    for (int d = 2; d <= top_dim(); ++d) {
        for (int c = 0; c < cell_count(d); ++c) {
            SimplexRef r = cell_ref(d, c);
            for (int j = 1; j <= d; ++j) {
                for (int i = 0; i < j; ++i) {
                    if (!(face(face(r, j), i) == face(face(r, i), j - 1)))
                        throw SimplicialIdentityViolation(
                            "d_" + std::to_string(i) + " d_" + std::to_string(j) +
                            " != d_" + std::to_string(j - 1) + " d_" + std::to_string(i) +
                            " on " + cells_[d][c]);
                }
            }
        }
    }
}

bool SSet::same_cells(const SSet& a, const SSet& b) {
    if (a.cells_ != b.cells_) return false;
    return a.faces_ == b.faces_;
}

/* ---------------- SSetBuilder ---------------- */

int SSetBuilder::add_cell(int dim, const std::string& id) {
    if (dim < 0) throw MalformedSpec("negative dimension");
    if (index_.count(id)) throw MalformedSpec("duplicate cell id: " + id);
    if (static_cast<int>(cells_.size()) <= dim) {
        cells_.resize(dim + 1);
        faces_.resize(dim + 1);
    }
    cells_[dim].push_back(id);
    faces_[dim].emplace_back();
    int idx = static_cast<int>(cells_[dim].size()) - 1;
    index_[id] = {dim, idx};
    return idx;
}

void SSetBuilder::set_faces(int dim, int idx, std::vector<SimplexRef> faces) {
    if (dim <= 0) throw MalformedSpec("faces only for dim >= 1");
    if (static_cast<int>(faces.size()) != dim + 1)
        throw MalformedSpec("cell " + cells_[dim][idx] + ": expected " + std::to_string(dim + 1) + " faces");
    faces_[dim][idx] = std::move(faces);
}

std::optional<std::pair<int, int>> SSetBuilder::find_cell(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SSetPtr SSetBuilder::snapshot(bool validate) const {
    auto s = std::make_shared<SSet>();
    s->name_ = name_;
    s->cells_ = cells_;
    s->faces_ = faces_;
    s->index_ = index_;
    // trim empty top dimensions
    while (!s->cells_.empty() && s->cells_.back().empty()) {
        s->cells_.pop_back();
        s->faces_.pop_back();
    }
    if (validate) s->validate();
    return s;
}

SSetPtr SSetBuilder::build(bool validate) { return snapshot(validate); }

/* ---------------- SMap ---------------- */

SMap::SMap(SSetPtr src, SSetPtr tgt, std::vector<std::vector<SimplexRef>> assignment, bool check)
    : src_(std::move(src)), tgt_(std::move(tgt)), assign_(std::move(assignment)) {
    if (check) validate();
}

SimplexRef SMap::apply(const SimplexRef& r) const {
    SimplexRef out = assign_[r.base_dim][r.base];
    for (auto it = r.degens.rbegin(); it != r.degens.rend(); ++it)
        out = tgt_->degenerate_ref(out, *it);
    return out;
}

void SMap::validate() const {
    if (static_cast<int>(assign_.size()) < src_->top_dim() + 1)
        throw MalformedSpec("map assignment missing dimensions");
    for (int d = 0; d <= src_->top_dim(); ++d) {
        if (static_cast<int>(assign_[d].size()) != src_->cell_count(d))
            throw MalformedSpec("map assignment missing cells at dim " + std::to_string(d));
        for (int c = 0; c < src_->cell_count(d); ++c) {
            const SimplexRef& img = assign_[d][c];
            tgt_->check_ref(img);
            if (img.dim() != d)
                throw MalformedSpec("image of " + src_->cell_id(d, c) + " has wrong dimension");
        }
    }
    for (int d = 1; d <= src_->top_dim(); ++d) {
        for (int c = 0; c < src_->cell_count(d); ++c) {
            SimplexRef img = assign_[d][c];
            for (int i = 0; i <= d; ++i) {
                SimplexRef lhs = apply(src_->faces_of(d, c)[i]);
                SimplexRef rhs = tgt_->face(img, i);
                if (!(lhs == rhs))
                    throw MalformedSpec("map does not commute with d_" + std::to_string(i) +
                                        " on " + src_->cell_id(d, c));
            }
        }
    }
}

bool SMap::is_mono() const {
    std::set<std::pair<int, std::pair<int, int>>> seen;
    for (int d = 0; d <= src_->top_dim(); ++d) {
        for (int c = 0; c < src_->cell_count(d); ++c) {
            const SimplexRef& img = assign_[d][c];
            if (img.degenerate()) return false;
            if (!seen.insert({d, {img.base_dim, img.base}}).second) return false;
        }
    }
    return true;
}

SMap SMap::identity(const SSetPtr& x) {
    std::vector<std::vector<SimplexRef>> a(x->top_dim() + 1);
    for (int d = 0; d <= x->top_dim(); ++d)
        for (int c = 0; c < x->cell_count(d); ++c)
            a[d].push_back(SSet::cell_ref(d, c));
    return SMap(x, x, std::move(a), false);
}

SMap SMap::constant_to_vertex(const SSetPtr& x, const SSetPtr& y, int vertex_idx) {
    std::vector<std::vector<SimplexRef>> a(x->top_dim() + 1);
    for (int d = 0; d <= x->top_dim(); ++d) {
        SimplexRef v = SSet::cell_ref(0, vertex_idx);
        for (int i = 0; i < d; ++i) v = y->degenerate_ref(v, 0);
        for (int c = 0; c < x->cell_count(d); ++c) a[d].push_back(v);
    }
    return SMap(x, y, std::move(a));
}

SMap compose(const SMap& g, const SMap& f) {
    if (f.tgt_ != g.src_ && !SSet::same_cells(*f.tgt_, *g.src_))
        throw PreconditionFailed("compose: target/source mismatch");
    std::vector<std::vector<SimplexRef>> a(f.src_->top_dim() + 1);
    for (int d = 0; d <= f.src_->top_dim(); ++d)
        for (int c = 0; c < f.src_->cell_count(d); ++c)
            a[d].push_back(g.apply(f.assign_[d][c]));
    return SMap(f.src_, g.tgt_, std::move(a), false);
}

/* ---------------- standard objects ---------------- */

namespace {

std::string subset_id(const std::vector<int>& s) {
    std::ostringstream os;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) os << ".";
        os << s[i];
    }
    return os.str();
}

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

SSetPtr simplex_like(const std::string& name, int n, bool with_top, int omit_face) {
    SSetBuilder b(name);
    std::vector<std::vector<std::vector<int>>> subs(n + 1);
    for (int d = 0; d <= n; ++d) {
        subsets_of_size(n, d + 1, subs[d]);
        for (const auto& s : subs[d]) {
            if (d == n && !with_top) continue;
            if (omit_face >= 0 && d == n - 1) {
                std::vector<int> omitted;
                for (int v = 0; v <= n; ++v)
                    if (v != omit_face) omitted.push_back(v);
                if (s == omitted) continue;
            }
            b.add_cell(d, subset_id(s));
        }
    }
    for (int d = 1; d <= n; ++d) {
        for (const auto& s : subs[d]) {
            auto loc = b.find_cell(subset_id(s));
            if (!loc) continue;
            std::vector<SimplexRef> fs;
            for (int i = 0; i <= d; ++i) {
                std::vector<int> f = s;
                f.erase(f.begin() + i);
                auto floc = b.find_cell(subset_id(f));
                if (!floc) throw Error("missing face in simplex construction");
                fs.push_back(SSet::cell_ref(floc->first, floc->second));
            }
            b.set_faces(loc->first, loc->second, std::move(fs));
        }
    }
    return b.build();
}

}  // namespace

SSetPtr empty_sset(const std::string& name) { return SSetBuilder(name).build(); }

SSetPtr standard_simplex(int n) {
    if (n < 0) throw MalformedSpec("standard simplex needs n >= 0");
    return simplex_like("delta" + std::to_string(n), n, true, -1);
}

SSetPtr boundary(int n) {
    if (n < 0) throw MalformedSpec("boundary needs n >= 0");
    if (n == 0) return empty_sset("bd0");
    return simplex_like("bd" + std::to_string(n), n, false, -1);
}

SSetPtr horn(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw MalformedSpec("horn needs n >= 1, 0 <= k <= n");
    return simplex_like("horn" + std::to_string(n) + "_" + std::to_string(k), n, false, k);
}

SMap subcomplex_inclusion(const SSetPtr& sub, const SSetPtr& whole) {
    std::vector<std::vector<SimplexRef>> a(sub->top_dim() + 1);
    for (int d = 0; d <= sub->top_dim(); ++d) {
        for (int c = 0; c < sub->cell_count(d); ++c) {
            auto loc = whole->find_cell(sub->cell_id(d, c));
            if (!loc || loc->first != d)
                throw PreconditionFailed("subcomplex inclusion: cell " + sub->cell_id(d, c) + " not found");
            a[d].push_back(SSet::cell_ref(d, loc->second));
        }
    }
    return SMap(sub, whole, std::move(a));
}

SMap representing_map(const SSetPtr& x, const SimplexRef& r) {
    int n = r.dim();
    SSetPtr dn = standard_simplex(n);
    std::vector<std::vector<SimplexRef>> a(n + 1);
    for (int d = 0; d <= n; ++d) {
        std::vector<std::vector<int>> subs;
        subsets_of_size(n, d + 1, subs);
        for (const auto& s : subs) a[d].push_back(x->subsimplex(r, s));
    }
    return SMap(dn, x, std::move(a));
}

SSetPtr circle() {
    SSetBuilder b("s1");
    b.add_cell(0, "v");
    b.add_cell(1, "e");
    b.set_faces(1, 0, {SSet::cell_ref(0, 0), SSet::cell_ref(0, 0)});
    return b.build();
}

/* ---------------- colimits ---------------- */

DisjointUnion disjoint_union(const SSetPtr& x, const SSetPtr& y) {
    SSetBuilder b(x->name() + "+" + y->name());
    auto promote = [&](const SSetPtr& src, const std::string& pre) {
        for (int d = 0; d <= src->top_dim(); ++d)
            for (int c = 0; c < src->cell_count(d); ++c)
                b.add_cell(d, pre + src->cell_id(d, c));
    };
    promote(x, "l:");
    promote(y, "r:");
    auto set_faces = [&](const SSetPtr& src, const std::string& pre) {
        for (int d = 1; d <= src->top_dim(); ++d) {
            for (int c = 0; c < src->cell_count(d); ++c) {
                auto loc = b.find_cell(pre + src->cell_id(d, c));
                std::vector<SimplexRef> fs;
                for (const auto& f : src->faces_of(d, c)) {
                    auto floc = b.find_cell(pre + src->cell_id(f.base_dim, f.base));
                    fs.push_back(SimplexRef{f.base_dim, floc->second, f.degens});
                }
                b.set_faces(loc->first, loc->second, std::move(fs));
            }
        }
    };
    set_faces(x, "l:");
    set_faces(y, "r:");
    SSetPtr cx = b.build();
    auto mk_incl = [&](const SSetPtr& src, const std::string& pre) {
        std::vector<std::vector<SimplexRef>> a(src->top_dim() + 1);
        for (int d = 0; d <= src->top_dim(); ++d)
            for (int c = 0; c < src->cell_count(d); ++c) {
                auto loc = cx->find_cell(pre + src->cell_id(d, c));
                a[d].push_back(SSet::cell_ref(d, loc->second));
            }
        return SMap(src, cx, std::move(a), false);
    };
    return DisjointUnion{cx, mk_incl(x, "l:"), mk_incl(y, "r:")};
}

Pushout pushout(const SMap& f, const SMap& g) {
    if (f.source() != g.source() && !SSet::same_cells(*f.source(), *g.source()))
        throw PreconditionFailed("pushout legs must share their source");
    if (!f.is_mono()) {
        if (!g.is_mono())
            throw NonInjectiveGlue("pushout requires at least one monomorphism leg");
        Pushout sw = pushout(g, f);
        return Pushout{sw.cx, sw.from_y, sw.from_x};
    }
    const SSetPtr& A = f.source();
    const SSetPtr& X = f.target();
    const SSetPtr& Y = g.target();

    // f mono: cells of P = cells of Y + (cells of X not hit by f)
    std::map<std::pair<int, int>, std::pair<int, int>> f_inv;  // X cell -> A cell
    for (int d = 0; d <= A->top_dim(); ++d)
        for (int c = 0; c < A->cell_count(d); ++c) {
            const SimplexRef& img = f.on_cell(d, c);
            f_inv[{img.base_dim, img.base}] = {d, c};
        }

    SSetBuilder b("po(" + X->name() + "," + Y->name() + ")");
    for (int d = 0; d <= Y->top_dim(); ++d)
        for (int c = 0; c < Y->cell_count(d); ++c) b.add_cell(d, "y:" + Y->cell_id(d, c));
    for (int d = 0; d <= X->top_dim(); ++d)
        for (int c = 0; c < X->cell_count(d); ++c)
            if (!f_inv.count({d, c})) b.add_cell(d, "x:" + X->cell_id(d, c));

    auto p_of_y = [&](const SimplexRef& r) {
        auto loc = b.find_cell("y:" + Y->cell_id(r.base_dim, r.base));
        return SimplexRef{r.base_dim, loc->second, r.degens};
    };
    for (int d = 1; d <= Y->top_dim(); ++d)
        for (int c = 0; c < Y->cell_count(d); ++c) {
            auto loc = b.find_cell("y:" + Y->cell_id(d, c));
            std::vector<SimplexRef> fs;
            for (const auto& fr : Y->faces_of(d, c)) fs.push_back(p_of_y(fr));
            b.set_faces(loc->first, loc->second, std::move(fs));
        }

    // X-origin faces may cross into the glued region; resolve through g.
    std::function<SimplexRef(const SimplexRef&)> p_of_x = [&](const SimplexRef& r) -> SimplexRef {
        auto hit = f_inv.find({r.base_dim, r.base});
        SimplexRef core;
        if (hit != f_inv.end()) {
            core = p_of_y(g.on_cell(hit->second.first, hit->second.second));
        } else {
            auto loc = b.find_cell("x:" + X->cell_id(r.base_dim, r.base));
            core = SSet::cell_ref(r.base_dim, loc->second);
        }
        return core;  // degeneracy word re-applied by caller against P
    };
    SSetPtr snap;  // built below once cells are set; degeneracies need a complex
    for (int d = 1; d <= X->top_dim(); ++d)
        for (int c = 0; c < X->cell_count(d); ++c) {
            if (f_inv.count({d, c})) continue;
            auto loc = b.find_cell("x:" + X->cell_id(d, c));
            std::vector<SimplexRef> fs;
            for (const auto& fr : X->faces_of(d, c)) {
                SimplexRef core = p_of_x(SimplexRef{fr.base_dim, fr.base, {}});
                // core may itself be degenerate (from g); append fr's word on top
                SimplexRef out = core;
                for (auto it = fr.degens.rbegin(); it != fr.degens.rend(); ++it) {
                    // normal-form insertion without a complex: reuse ref arithmetic
                    // via a throwaway: words merge by the same rewriting rule.
                    // Insertion is purely word-level, so emulate degenerate_ref here.
                    std::vector<int> w = out.degens;
                    int i = *it;
                    size_t pos = 0;
                    while (pos < w.size() && i <= w[pos]) {
                        ++w[pos];
                        ++pos;
                    }
                    w.insert(w.begin() + pos, i);
                    out.degens = w;
                }
                fs.push_back(out);
            }
            b.set_faces(loc->first, loc->second, std::move(fs));
        }

    SSetPtr cx = b.build();

    std::vector<std::vector<SimplexRef>> ax(X->top_dim() + 1), ay(Y->top_dim() + 1);
    for (int d = 0; d <= Y->top_dim(); ++d)
        for (int c = 0; c < Y->cell_count(d); ++c) {
            auto loc = cx->find_cell("y:" + Y->cell_id(d, c));
            ay[d].push_back(SSet::cell_ref(d, loc->second));
        }
    for (int d = 0; d <= X->top_dim(); ++d)
        for (int c = 0; c < X->cell_count(d); ++c) {
            auto hit = f_inv.find({d, c});
            if (hit != f_inv.end()) {
                SimplexRef gy = g.on_cell(hit->second.first, hit->second.second);
                auto loc = cx->find_cell("y:" + Y->cell_id(gy.base_dim, gy.base));
                ax[d].push_back(SimplexRef{gy.base_dim, loc->second, gy.degens});
            } else {
                auto loc = cx->find_cell("x:" + X->cell_id(d, c));
                ax[d].push_back(SSet::cell_ref(d, loc->second));
            }
        }
    return Pushout{cx, SMap(X, cx, std::move(ax)), SMap(Y, cx, std::move(ay))};
}

/* ---------------- pair complexes (product, pullback) ---------------- */

namespace {

struct PairNormal {
    std::vector<int> word;
    SimplexRef a, b;
};

PairNormal normalize_pair(const SSet& X, const SSet& Y, SimplexRef a, SimplexRef b) {
    PairNormal out;
    for (;;) {
        int j = -1;
        // largest common letter of the two words
        for (int la : a.degens) {
            if (X.in_degeneracy_image(a, la) && Y.in_degeneracy_image(b, la)) {
                j = std::max(j, la);
            }
        }
        if (j < 0) break;
        a = X.face(a, j);
        b = Y.face(b, j);
        out.word.push_back(j);
    }
    for (size_t i = 0; i + 1 < out.word.size(); ++i)
        if (out.word[i] <= out.word[i + 1]) throw Error("pair normalization produced a bad word");
    out.a = a;
    out.b = b;
    return out;
}

struct PairComplexResult {
    SSetPtr cx;
    SMap proj_a, proj_b;
    std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> comps;
};

// Cells = jointly nondegenerate admissible pairs up to max_dim.
PairComplexResult pair_complex(const std::string& name, const SSetPtr& X, const SSetPtr& Y, int max_dim,
                               const std::function<bool(int, const SimplexRef&, const SimplexRef&)>& admit) {
    SSetBuilder b(name);
    std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> comps(max_dim + 1);
    std::map<std::pair<std::string, std::string>, std::pair<int, int>> loc_by_pair;
    for (int d = 0; d <= max_dim; ++d) {
        auto xs = X->all_simplices(d);
        auto ys = Y->all_simplices(d);
        for (const auto& a : xs) {
            for (const auto& yb : ys) {
                bool joint = false;
                for (int la : a.degens)
                    if (Y->in_degeneracy_image(yb, la)) {
                        joint = true;
                        break;
                    }
                if (joint) continue;  // jointly degenerate
                if (admit && !admit(d, a, yb)) continue;
                std::string id = "(" + X->ref_string(a) + "|" + Y->ref_string(yb) + ")";
                int idx = b.add_cell(d, id);
                comps[d].push_back({a, yb});
                loc_by_pair[{X->ref_string(a), Y->ref_string(yb)}] = {d, idx};
            }
        }
    }
    for (int d = 1; d <= max_dim; ++d) {
        for (int c = 0; c < static_cast<int>(comps[d].size()); ++c) {
            std::vector<SimplexRef> fs;
            for (int i = 0; i <= d; ++i) {
                SimplexRef fa = X->face(comps[d][c].first, i);
                SimplexRef fb = Y->face(comps[d][c].second, i);
                PairNormal nm = normalize_pair(*X, *Y, fa, fb);
                auto it = loc_by_pair.find({X->ref_string(nm.a), Y->ref_string(nm.b)});
                if (it == loc_by_pair.end())
                    throw Error("pair complex: face base not registered");
                fs.push_back(SimplexRef{it->second.first, it->second.second, nm.word});
            }
            auto loc = b.find_cell("(" + X->ref_string(comps[d][c].first) + "|" + Y->ref_string(comps[d][c].second) + ")");
            b.set_faces(loc->first, loc->second, std::move(fs));
        }
    }
    SSetPtr cx = b.build();
    std::vector<std::vector<SimplexRef>> pa(cx->top_dim() + 1), pb(cx->top_dim() + 1);
    for (int d = 0; d <= cx->top_dim(); ++d)
        for (int c = 0; c < static_cast<int>(comps[d].size()) && c < cx->cell_count(d); ++c) {
            pa[d].push_back(comps[d][c].first);
            pb[d].push_back(comps[d][c].second);
        }
    SMap qa(cx, X, std::move(pa));
    SMap qb(cx, Y, std::move(pb));
    return PairComplexResult{cx, std::move(qa), std::move(qb), std::move(comps)};
}

}  // namespace

Product product(const SSetPtr& x, const SSetPtr& y, int max_dim) {
    if (max_dim > max_product_dim())
        throw DimBudgetExceeded("product truncated at dim <= " + std::to_string(max_product_dim()));
    auto r = pair_complex("(" + x->name() + "x" + y->name() + ")", x, y, max_dim, nullptr);
    return Product{r.cx, std::move(r.proj_a), std::move(r.proj_b), std::move(r.comps)};
}

PullbackResult pullback(const SMap& f, const SMap& g, int max_dim) {
    if (f.target() != g.target() && !SSet::same_cells(*f.target(), *g.target()))
        throw PreconditionFailed("pullback: maps must share their target");
    const SSetPtr& Y = f.source();
    const SSetPtr& Z = g.source();
    auto admit = [&](int, const SimplexRef& a, const SimplexRef& b) {
        return f.apply(a) == g.apply(b);
    };
    auto r = pair_complex("pb(" + Y->name() + "," + Z->name() + ")", Y, Z, max_dim, admit);
    return PullbackResult{r.cx, std::move(r.proj_a), std::move(r.proj_b)};
}

SMap pair_mediating_map(const SSetPtr& x, const SMap& u, const SMap& v, const PullbackResult& pb) {
    const SSetPtr& P = pb.cx;
    const SSetPtr& Y = u.target();
    const SSetPtr& Z = v.target();
    std::vector<std::vector<SimplexRef>> a(x->top_dim() + 1);
    for (int d = 0; d <= x->top_dim(); ++d) {
        if (d > P->top_dim() && x->cell_count(d) > 0)
            throw DimBudgetExceeded("pullback built to lower dimension than comparison source");
        for (int c = 0; c < x->cell_count(d); ++c) {
            SimplexRef ua = u.on_cell(d, c);
            SimplexRef vb = v.on_cell(d, c);
            PairNormal nm = normalize_pair(*Y, *Z, ua, vb);
            std::string id = "(" + Y->ref_string(nm.a) + "|" + Z->ref_string(nm.b) + ")";
            auto loc = P->find_cell(id);
            if (!loc) throw Error("mediating map: pair cell missing in pullback");
            a[d].push_back(SimplexRef{loc->first, loc->second, nm.word});
        }
    }
    return SMap(x, P, std::move(a));
}

/* ---------------- hom search ---------------- */

std::vector<SMap> hom_search(const SSetPtr& a, const SSetPtr& x, const HomSearchOptions& opt, Budget& budget) {
    int top = a->top_dim();
    std::vector<std::vector<SimplexRef>> cands(top + 1);
    for (int d = 0; d <= top; ++d) cands[d] = x->all_simplices(d);

    std::vector<std::vector<SimplexRef>> assign(top + 1);
    for (int d = 0; d <= top; ++d) assign[d].resize(a->cell_count(d));

    std::vector<std::pair<int, int>> order;
    if (!opt.constraint_order) {
        for (int d = 0; d <= top; ++d)
            for (int c = 0; c < a->cell_count(d); ++c) order.push_back({d, c});
    } else {
        std::set<std::pair<int, int>> placed;
        for (int c = 0; c < a->cell_count(0); ++c) {
            order.push_back({0, c});
            placed.insert({0, c});
        }
        size_t total = 0;
        for (int d = 0; d <= top; ++d) total += a->cell_count(d);
        while (order.size() < total) {
            std::pair<int, int> pick{-1, -1};
            for (int d = top; d >= 1 && pick.first < 0; --d) {
                for (int c = 0; c < a->cell_count(d); ++c) {
                    if (placed.count({d, c})) continue;
                    bool ready = true;
                    for (const auto& fr : a->faces_of(d, c))
                        if (!placed.count({fr.base_dim, fr.base})) {
                            ready = false;
                            break;
                        }
                    if (ready) {
                        pick = {d, c};
                        break;
                    }
                }
            }
            if (pick.first < 0)
                throw Error("constraint ordering: no ready cell (faces of a cell must be lower-dimensional)");
            order.push_back(pick);
            placed.insert(pick);
        }
    }

    std::vector<SMap> out;
    std::function<bool(size_t)> rec = [&](size_t pos) -> bool {
        if (pos == order.size()) {
            out.push_back(SMap(a, x, assign, false));
            return opt.first_only;
        }
        auto [d, c] = order[pos];
        auto try_one = [&](const SimplexRef& r) -> bool {
            budget.tick();
            if (opt.admissible && !opt.admissible(d, c, r)) return false;
            if (d > 0) {
                for (int i = 0; i <= d; ++i) {
                    const SimplexRef& fr = a->faces_of(d, c)[i];
                    SimplexRef want = assign[fr.base_dim][fr.base];
                    for (auto it = fr.degens.rbegin(); it != fr.degens.rend(); ++it)
                        want = x->degenerate_ref(want, *it);
                    if (!(x->face(r, i) == want)) return false;
                }
            }
            assign[d][c] = r;
            return rec(pos + 1);
        };
        auto forced = opt.forced.find({d, c});
        if (forced != opt.forced.end()) return try_one(forced->second);
        for (const auto& r : cands[d])
            if (try_one(r)) return true;
        return false;
    };
    rec(0);
    if (opt.constraint_order && !opt.first_only) {
        // restore the spec order: lexicographic in the generator assignment
        std::sort(out.begin(), out.end(), [&](const SMap& m1, const SMap& m2) {
            for (int d = 0; d <= top; ++d)
                for (int c = 0; c < a->cell_count(d); ++c) {
                    if (m1.on_cell(d, c) != m2.on_cell(d, c)) return m1.on_cell(d, c) < m2.on_cell(d, c);
                }
            return false;
        });
    }
    return out;
}

std::vector<SMap> hom_enumerate(const SSetPtr& a, const SSetPtr& x, Budget& budget) {
    HomSearchOptions opt;
    opt.constraint_order = true;
    return hom_search(a, x, opt, budget);
}

}  // namespace ntype
