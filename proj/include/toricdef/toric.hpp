#pragma once

// Cones in a lattice and their combinatorics: dual cones, the face lattice,
// smoothness of faces, Gorenstein data, and cones over lattice polytopes.
// A Cone may carry a torus factor rank; non-full-dimensional input is split
// canonically into a full-dimensional cone times a torus factor.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "toricdef/exactlin.hpp"

namespace toricdef {

// Lattice vectors live comfortably in int64; all heavy arithmetic happens in
// the exact rational layer.
using LVec = std::vector<long long>;

inline long long dot(const LVec& a, const LVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Mat rows_mat(const std::vector<LVec>& rows, std::size_t width) {
    Mat m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != width) throw std::invalid_argument("rows_mat: ragged input");
        for (std::size_t j = 0; j < width; ++j) m.at(i, j) = Rat(rows[i][j]);
    }
    return m;
}

inline Mat cols_mat(const std::vector<LVec>& cols, std::size_t height) {
    Mat m(height, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != height) throw std::invalid_argument("cols_mat: ragged input");
        for (std::size_t i = 0; i < height; ++i) m.at(i, j) = Rat(cols[j][i]);
    }
    return m;
}

// Exact conversion of a rational matrix column to a small integer vector.
inline LVec lvec_from_col(const Mat& m, std::size_t j) {
    LVec v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!m.at(i, j).is_integer())
            throw std::domain_error("lvec_from_col: entry is not an integer");
        v[i] = m.at(i, j).num().to_long_long();
    }
    return v;
}

inline LVec primitive(LVec v) {
    long long g = 0;
    for (long long x : v) g = std::llabs(std::gcd(g, x));
    if (g == 0) throw std::invalid_argument("primitive: zero vector");
    for (auto& x : v) x /= g;
    return v;
}

// A face of a cone, recorded by the sorted indices of the rays it contains.
struct Face {
    std::vector<std::size_t> ray_indices;
    std::size_t dim = 0;

    friend bool operator==(const Face&, const Face&) = default;
};

struct GorensteinData {
    LVec canonical_degree;  // pairs to gor_index with every ray
    long long gor_index = 0;
};

struct Polytope {
    std::vector<LVec> vertices;
};

// A rational polyhedral cone given by primitive ray generators in Z^n,
// optionally times a torus factor of rank k. Dual rays and the face lattice
// are computed once at construction (when the cone is full-dimensional and
// pointed) and the object is immutable afterwards.
class Cone {
public:
    Cone(std::size_t lattice_rank, std::vector<LVec> rays, std::size_t torus_rank = 0)
        : n_(lattice_rank), k_(torus_rank) {
        rays_.reserve(rays.size());
        for (auto& r : rays) {
            if (r.size() != n_)
                throw std::invalid_argument("Cone: ray length does not match lattice rank");
            LVec p = primitive(std::move(r));
            if (std::find(rays_.begin(), rays_.end(), p) != rays_.end())
                throw std::invalid_argument("Cone: duplicate ray (positive multiple)");
            rays_.push_back(std::move(p));
        }
        span_rank_ = rays_.empty() ? 0 : rank_kernel(rows_mat(rays_, n_)).rank;
        if (span_rank_ == n_) init_dual_and_faces();
    }

    std::size_t lattice_rank() const { return n_; }
    std::size_t torus_rank() const { return k_; }
    std::size_t num_rays() const { return rays_.size(); }
    const std::vector<LVec>& rays() const { return rays_; }
    const LVec& ray(std::size_t j) const { return rays_[j]; }
    std::size_t span_rank() const { return span_rank_; }
    bool is_full_dimensional() const { return span_rank_ == n_; }

    bool is_pointed() const {
        if (!is_full_dimensional())
            throw std::domain_error("Cone: split torus factors before pointedness test");
        return pointed_;
    }

    const std::vector<LVec>& dual_rays() const {
        require_pointed();
        return dual_rays_;
    }

    const std::vector<Face>& faces_of_dim(std::size_t p) const {
        require_pointed();
        if (p > n_) throw std::invalid_argument("Cone: face dimension exceeds lattice rank");
        return faces_by_dim_[p];
    }

private:
    std::size_t n_;
    std::size_t k_;
    std::size_t span_rank_ = 0;
    std::vector<LVec> rays_;
    bool pointed_ = false;
    std::vector<LVec> dual_rays_;
    std::vector<std::vector<Face>> faces_by_dim_;

    void require_pointed() const {
        if (!is_full_dimensional())
            throw std::domain_error(
                "Cone: not full-dimensional; split torus factors first");
        if (!pointed_) throw std::domain_error("not pointed");
    }

    // Dual extreme rays by brute force: each facet normal is the 1-dimensional
    // kernel of some (n-1)-subset of rays, kept when all rays lie weakly on
    // one side. The cone is pointed exactly when the normals span rank n.
    void init_dual_and_faces() {
        std::set<LVec> normals;
        for (const auto& sub : subsets_lex(rays_.size(), n_ - 1)) {
            std::vector<LVec> picked;
            for (auto idx : sub) picked.push_back(rays_[idx]);
            auto rk = rank_kernel(rows_mat(picked, n_));
            if (rk.kernel_basis.cols() != 1) continue;
            std::vector<BigInt> big = primitive_integer_vector(rk.kernel_basis.col(0));
            LVec v(n_);
            for (std::size_t i = 0; i < n_; ++i) v[i] = big[i].to_long_long();
            bool nonneg = true, nonpos = true;
            for (const auto& a : rays_) {
                long long s = dot(a, v);
                if (s < 0) nonneg = false;
                if (s > 0) nonpos = false;
            }
            if (nonneg)
                normals.insert(v);
            else if (nonpos) {
                for (auto& x : v) x = -x;
                normals.insert(v);
            }
        }
        dual_rays_.assign(normals.begin(), normals.end());
        pointed_ = !dual_rays_.empty() &&
                   rank_kernel(rows_mat(dual_rays_, n_)).rank == n_;
        if (!pointed_) {
            dual_rays_.clear();
            return;
        }
        init_faces();
    }

    // Faces are exactly the intersections of facets; their ray sets are the
    // closure of the facet ray sets under pairwise intersection, plus the
    // whole cone.
    void init_faces() {
        std::set<std::vector<std::size_t>> sets;
        std::vector<std::size_t> full(rays_.size());
        for (std::size_t j = 0; j < rays_.size(); ++j) full[j] = j;
        sets.insert(full);
        for (const auto& v : dual_rays_) {
            std::vector<std::size_t> s;
            for (std::size_t j = 0; j < rays_.size(); ++j)
                if (dot(rays_[j], v) == 0) s.push_back(j);
            sets.insert(s);
        }
        for (bool grew = true; grew;) {
            grew = false;
            std::vector<std::vector<std::size_t>> cur(sets.begin(), sets.end());
            for (std::size_t a = 0; a < cur.size(); ++a)
                for (std::size_t b = a + 1; b < cur.size(); ++b) {
                    std::vector<std::size_t> inter;
                    std::set_intersection(cur[a].begin(), cur[a].end(), cur[b].begin(),
                                          cur[b].end(), std::back_inserter(inter));
                    if (sets.insert(inter).second) grew = true;
                }
        }
        faces_by_dim_.assign(n_ + 1, {});
        for (const auto& s : sets) {
            std::vector<LVec> picked;
            for (auto idx : s) picked.push_back(rays_[idx]);
            std::size_t d = picked.empty() ? 0 : rank_kernel(rows_mat(picked, n_)).rank;
            faces_by_dim_[d].push_back(Face{s, d});
        }
        for (auto& fs : faces_by_dim_)
            std::sort(fs.begin(), fs.end(), [](const Face& x, const Face& y) {
                return x.ray_indices < y.ray_indices;
            });
    }
};

// Canonical torus split: a cone whose rays span only a rank-r subspace is
// rewritten in an integer basis of the saturated span, and the complement
// rank moves into the torus factor.
inline Cone split_torus(const Cone& c) {
    if (c.is_full_dimensional()) return c;
    Mat rays_cols = cols_mat(c.rays(), c.lattice_rank());
    Mat basis = saturated_span_basis(rays_cols);
    auto expr = solve(basis, rays_cols);
    if (!expr.has_value())
        throw std::logic_error("split_torus: rays escape their own span");
    std::vector<LVec> new_rays;
    for (std::size_t j = 0; j < expr->cols(); ++j) new_rays.push_back(lvec_from_col(*expr, j));
    return Cone(c.span_rank(), std::move(new_rays),
                c.torus_rank() + (c.lattice_rank() - c.span_rank()));
}

inline Cone dual_cone(const Cone& c) {
    return Cone(c.lattice_rank(), c.dual_rays(), c.torus_rank());
}

inline std::vector<Face> faces(const Cone& c, std::size_t p) { return c.faces_of_dim(p); }

// True when the rays of the face extend to a lattice basis of the saturated
// span: the face must be simplicial and its ray matrix must have all Smith
// invariants equal to one.
inline bool is_smooth_face(const Cone& c, const Face& f) {
    if (f.ray_indices.size() != f.dim) return false;
    if (f.dim == 0) return true;
    std::vector<LVec> picked;
    for (auto idx : f.ray_indices) picked.push_back(c.ray(idx));
    auto inv = smith_invariants(rows_mat(picked, c.lattice_rank()));
    if (inv.size() != f.dim) return false;
    for (const auto& d : inv)
        if (d != BigInt(1)) return false;
    return true;
}

inline std::size_t smooth_codimension(const Cone& c) {
    std::size_t d = 0;
    for (std::size_t p = 1; p <= c.lattice_rank(); ++p) {
        bool all = true;
        for (const auto& f : c.faces_of_dim(p))
            if (!is_smooth_face(c, f)) all = false;
        if (!all) break;
        d = p;
    }
    return d;
}

// Looks for a primitive degree pairing to the same positive value with every
// ray. Present exactly when the variety is Q-Gorenstein; the pairing value 1
// characterizes the Gorenstein case.
inline std::optional<GorensteinData> gorenstein_data(const Cone& c) {
    if (!c.is_full_dimensional())
        throw std::domain_error("gorenstein_data: split torus factors first");
    std::size_t n = c.lattice_rank();
    Mat sys(c.num_rays(), n + 1);
    for (std::size_t j = 0; j < c.num_rays(); ++j) {
        for (std::size_t i = 0; i < n; ++i) sys.at(j, i) = Rat(c.ray(j)[i]);
        sys.at(j, n) = Rat(-1);
    }
    auto rk = rank_kernel(sys);
    if (rk.kernel_basis.cols() != 1) return std::nullopt;
    std::vector<BigInt> v = primitive_integer_vector(rk.kernel_basis.col(0));
    if (v[n].is_zero()) return std::nullopt;
    if (v[n].sign() < 0)
        for (auto& x : v) x = -x;
    GorensteinData gd;
    gd.canonical_degree.resize(n);
    for (std::size_t i = 0; i < n; ++i) gd.canonical_degree[i] = v[i].to_long_long();
    gd.gor_index = v[n].to_long_long();
    return gd;
}

inline Cone cone_over_polytope(const Polytope& p, long long height) {
    if (height <= 0) throw std::invalid_argument("cone_over_polytope: height must be positive");
    if (p.vertices.empty()) throw std::invalid_argument("cone_over_polytope: empty polytope");
    std::size_t d = p.vertices[0].size();
    std::vector<LVec> rays;
    for (const auto& v : p.vertices) {
        LVec r = v;
        r.push_back(height);
        rays.push_back(std::move(r));
    }
    return Cone(d + 1, std::move(rays));
}

namespace detail {

// Facets of a full-dimensional lattice polytope as pairs (u, c) with u a
// primitive outward normal and the facet on {x : <u,x> = c}.
inline std::vector<std::pair<LVec, long long>> polytope_facets(const Polytope& p) {
    if (p.vertices.empty()) throw std::invalid_argument("polytope_facets: empty polytope");
    std::size_t d = p.vertices[0].size();
    std::set<std::pair<LVec, long long>> out;
    for (const auto& sub : subsets_lex(p.vertices.size(), d)) {
        // hyperplane through the chosen vertices: kernel of [v_i | -1]
        Mat sys(d, d + 1);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) sys.at(i, j) = Rat(p.vertices[sub[i]][j]);
            sys.at(i, d) = Rat(-1);
        }
        auto rk = rank_kernel(sys);
        if (rk.kernel_basis.cols() != 1) continue;
        std::vector<BigInt> big = primitive_integer_vector(rk.kernel_basis.col(0));
        LVec u(d);
        for (std::size_t i = 0; i < d; ++i) u[i] = big[i].to_long_long();
        long long cval = big[d].to_long_long();
        bool below = true, above = true;
        for (const auto& v : p.vertices) {
            long long s = dot(u, v);
            if (s > cval) below = false;
            if (s < cval) above = false;
        }
        if (!below && !above) continue;
        if (!below) {
            for (auto& x : u) x = -x;
            cval = -cval;
        }
        // make the normal itself primitive; its gcd divides c because the
        // facet contains lattice points
        long long g = 0;
        for (long long x : u) g = std::llabs(std::gcd(g, x));
        if (g > 1) {
            for (auto& x : u) x /= g;
            cval /= g;
        }
        out.insert({u, cval});
    }
    return {out.begin(), out.end()};
}

}  // namespace detail

// Reflexive: the origin is strictly interior and every facet lies at lattice
// distance one.
inline bool is_reflexive(const Polytope& p) {
    for (const auto& [u, cval] : detail::polytope_facets(p))
        if (cval != 1) return false;
    return true;
}

}  // namespace toricdef
