#pragma once

// Closed-form dimension counts for first-order deformation spaces: surface
// formulas from the generator chain, the vertex/edge sum for degrees whose
// cross-section polyhedron has planar compact part, tree-based bounds,
// Q-Gorenstein vanishing, and the Fano-cone values. These run on span
// dimensions and combinatorics only, independently of the rank computations
// in the cochain complexes, so the two routes cross-validate each other.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toricdef/hodge.hpp"

namespace toricdef {

// Cross-section of the cone at pairing one with a degree: vertices sit on
// rays with positive pairing, compact edges are the 2-faces whose rays both
// pair positively.
struct QPolyhedron {
    LVec degree;
    std::vector<std::size_t> vertex_rays;
    std::vector<std::vector<Rat>> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> compact_edges;
    bool compact = false;
};

struct ChamberData {
    std::size_t chambers = 0;
};

struct Bounds {
    long long lower_raw = 0;
    long long upper_raw = 0;
    long long lower = 0;  // clamped at zero
    long long upper = 0;  // clamped at zero
};

inline std::size_t W(long long c) { return static_cast<std::size_t>(std::clamp(c, 0LL, 2LL)); }

inline QPolyhedron q_polyhedron(const Cone& c, const LVec& r) {
    const std::size_t n = c.lattice_rank();
    if (r.size() != n)
        throw std::invalid_argument("q_polyhedron: degree length does not match lattice rank");
    QPolyhedron q;
    q.degree = r;
    std::vector<long long> pair(c.num_rays());
    q.compact = true;
    for (std::size_t j = 0; j < c.num_rays(); ++j) {
        pair[j] = dot(c.ray(j), r);
        if (pair[j] < 1) q.compact = false;
        if (pair[j] >= 1) {
            q.vertex_rays.push_back(j);
            std::vector<Rat> v(n);
            for (std::size_t t = 0; t < n; ++t) v[t] = Rat(c.ray(j)[t], pair[j]);
            q.vertices.push_back(std::move(v));
        }
    }
    for (const auto& f : c.faces_of_dim(2)) {
        if (f.ray_indices.size() != 2)
            throw std::logic_error("q_polyhedron: 2-face with extra generators");
        std::size_t j = f.ray_indices[0], k = f.ray_indices[1];
        if (pair[j] >= 1 && pair[k] >= 1) q.compact_edges.push_back({j, k});
    }
    return q;
}

// Maximal cyclic runs of pairings above one.
inline std::size_t chamber_count(const std::vector<long long>& pairings) {
    const std::size_t n = pairings.size();
    if (n == 0) return 0;
    std::size_t runs = 0;
    bool any = false, all = true;
    for (std::size_t j = 0; j < n; ++j) {
        bool cur = pairings[j] > 1;
        bool prev = pairings[(j + n - 1) % n] > 1;
        any = any || cur;
        all = all && cur;
        if (cur && !prev) ++runs;
    }
    if (all) return 1;
    return any ? runs : 0;
}

// Ray indices of a 3-dim cone in boundary order; requires the 2-faces to
// link the rays into a single cycle.
inline std::vector<std::size_t> cyclic_ray_order(const Cone& c) {
    const std::size_t N = c.num_rays();
    std::vector<std::vector<std::size_t>> adj(N);
    for (const auto& f : c.faces_of_dim(2)) {
        if (f.ray_indices.size() != 2)
            throw std::domain_error("rays are not arranged in a cycle");
        adj[f.ray_indices[0]].push_back(f.ray_indices[1]);
        adj[f.ray_indices[1]].push_back(f.ray_indices[0]);
    }
    for (const auto& a : adj)
        if (a.size() != 2) throw std::domain_error("rays are not arranged in a cycle");
    std::vector<std::size_t> order{0};
    std::size_t prev = adj[0][0];
    while (order.size() < N) {
        std::size_t cur = order.back();
        std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        if (next == 0) break;
        order.push_back(next);
    }
    if (order.size() != N) throw std::domain_error("rays are not arranged in a cycle");
    return order;
}

inline ChamberData chamber_data(const Cone& c, const LVec& r) {
    std::vector<long long> pairings;
    for (auto j : cyclic_ray_order(c)) pairings.push_back(dot(c.ray(j), r));
    return ChamberData{chamber_count(pairings)};
}

// First-order dims of the surface X(n,q) from span dimensions of the two ray
// sets and their intersection; zero beyond weight two.
inline std::size_t surface_t1(long long n, long long q, const LVec& r, std::size_t i) {
    if (i > 2) return 0;
    if (i == 0) throw std::invalid_argument("surface_t1: weight must be positive");
    Cone c(2, {{1, 0}, {-q, n}});
    HilbertBasis e = hilbert_basis(c);
    DegreeGeometry g = degree_geometry(c, e, Degree{r});
    long long v1 = static_cast<long long>(binom(g.faces[1][0].span_basis.cols(), i));
    long long v2 = static_cast<long long>(binom(g.faces[1][1].span_basis.cols(), i));
    long long v12 = static_cast<long long>(binom(g.faces[2][0].span_basis.cols(), i));
    long long ci = i == 1 ? 2 : 1;
    return static_cast<std::size_t>(std::max(0LL, v1 + v2 - v12 - ci));
}

namespace detail {

inline std::size_t binom_ll(long long top, std::size_t i) {
    return top < 0 ? 0 : binom(static_cast<std::size_t>(top), i);
}

// Rational intersection of column spans.
inline Mat intersect_spans(const Mat& a, const Mat& b) {
    if (a.cols() == 0 || b.cols() == 0) return Mat(a.rows(), 0);
    Mat stacked(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) stacked.at(r, c) = a.at(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) stacked.at(r, a.cols() + c) = -b.at(r, c);
    }
    Mat ker = rank_kernel(stacked).kernel_basis;
    Mat u(a.cols(), ker.cols());
    for (std::size_t r = 0; r < a.cols(); ++r)
        for (std::size_t c = 0; c < ker.cols(); ++c) u.at(r, c) = ker.at(r, c);
    Mat raw = a * u;
    auto [echelon, pivots] = rref(raw.transpose());
    Mat out(a.rows(), pivots.size());
    for (std::size_t c = 0; c < pivots.size(); ++c)
        for (std::size_t r = 0; r < a.rows(); ++r) out.at(r, c) = echelon.at(c, r);
    return out;
}

// Classical first-order dim of the two-dimensional face singularity in the
// projected degree, computed on the saturated rank-2 sublattice.
inline std::size_t edge_t1(const Cone& c, std::size_t j, std::size_t k, const LVec& r) {
    const std::size_t n = c.lattice_rank();
    Mat span = saturated_span_basis(cols_mat({c.ray(j), c.ray(k)}, n));
    if (span.cols() != 2) throw std::logic_error("edge_t1: edge rays are not rank two");
    auto coords = solve(span, cols_mat({c.ray(j), c.ray(k)}, n));
    if (!coords.has_value()) throw std::logic_error("edge_t1: rays escape their span");
    std::vector<LVec> rays2(2, LVec(2));
    for (std::size_t t = 0; t < 2; ++t)
        for (std::size_t s = 0; s < 2; ++s) {
            const Rat& v = coords->at(s, t);
            if (!(v.den() == BigInt(1)))
                throw std::logic_error("edge_t1: non-integral ray coordinates");
            rays2[t][s] = v.num().to_long_long();
        }
    LVec rbar(2);
    for (std::size_t s = 0; s < 2; ++s) {
        long long acc = 0;
        for (std::size_t row = 0; row < n; ++row) {
            const Rat& v = span.at(row, s);
            acc += v.num().to_long_long() * r[row];
        }
        rbar[s] = acc;
    }
    Cone edge(2, rays2);
    return t_dims(edge, hilbert_basis(edge), Degree{rbar}, 1).get(1);
}

struct EdgeSums {
    long long v_sum = 0;
    std::vector<long long> q_terms;  // aligned with QPolyhedron::compact_edges
};

inline EdgeSums vertex_edge_sums(const Cone& c, const QPolyhedron& q, const LVec& r,
                                 std::size_t i) {
    const std::size_t n = c.lattice_rank();
    EdgeSums sums;
    for (std::size_t j = 0; j < c.num_rays(); ++j) {
        long long cj = dot(c.ray(j), r);
        if (cj > 1)
            sums.v_sum += static_cast<long long>(binom(n, i));
        else if (cj == 1)
            sums.v_sum += static_cast<long long>(binom(n - 1, i));
    }
    for (const auto& [j, k] : q.compact_edges) {
        long long wj = static_cast<long long>(W(dot(c.ray(j), r)));
        long long wk = static_cast<long long>(W(dot(c.ray(k), r)));
        long long t_edge = static_cast<long long>(edge_t1(c, j, k, r));
        long long top = wj + wk + static_cast<long long>(n) - 4 - t_edge;
        sums.q_terms.push_back(static_cast<long long>(binom_ll(top, i)));
    }
    return sums;
}

}  // namespace detail

// Vertex/edge sum for the first-order dims when the compact part of the
// cross-section polyhedron is planar.
inline std::size_t planar_t1(const Cone& c, const HilbertBasis& e, const LVec& r,
                             std::size_t i) {
    const std::size_t n = c.lattice_rank();
    if (i == 0 || i > n) throw std::invalid_argument("planar_t1: weight out of range");
    QPolyhedron q = q_polyhedron(c, r);
    if (q.vertices.size() > 3) {
        Mat diffs(n, q.vertices.size() - 1);
        for (std::size_t v = 1; v < q.vertices.size(); ++v)
            for (std::size_t row = 0; row < n; ++row)
                diffs.at(row, v - 1) = q.vertices[v][row] - q.vertices[0][row];
        if (rank_kernel(diffs).rank > 2)
            throw std::domain_error("planar_t1: compact part of Q(R) is not planar; use bounds");
    }
    detail::EdgeSums sums = detail::vertex_edge_sums(c, q, r, i);
    long long q_sum = 0;
    for (long long t : sums.q_terms) q_sum += t;
    long long s = 0;
    if (q.compact) {
        DegreeGeometry g = degree_geometry(c, e, Degree{r});
        Mat inter = Mat::identity(n);
        for (const auto& [j, k] : q.compact_edges) {
            bool found = false;
            for (const auto& fg : g.faces[2]) {
                if (fg.face.ray_indices == std::vector<std::size_t>{j, k}) {
                    inter = detail::intersect_spans(inter, fg.span_basis);
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("planar_t1: compact edge missing from face list");
        }
        s = static_cast<long long>(binom(inter.cols(), i));
    }
    long long total = sums.v_sum - q_sum - static_cast<long long>(binom(n, i)) + s;
    return static_cast<std::size_t>(std::max(0LL, total));
}

// Three-dimensional case with an isolated singularity: the cross-section is
// automatically planar; the ray cycle is verified first.
inline std::size_t threefold_t1(const Cone& c, const HilbertBasis& e, const LVec& r,
                                std::size_t i) {
    if (c.lattice_rank() != 3)
        throw std::invalid_argument("threefold_t1: expected a three-dimensional cone");
    if (smooth_codimension(c) < 2)
        throw std::domain_error("threefold_t1: singular locus is not isolated");
    cyclic_ray_order(c);
    if (i > 3) return 0;
    return planar_t1(c, e, r, i);
}

inline std::size_t threefold_t1(const Cone& c, const LVec& r, std::size_t i) {
    return threefold_t1(c, hilbert_basis(c), r, i);
}

// Lower bound from all compact edges, upper bound from a spanning tree of
// them (default: breadth-first tree over the compact-edge graph).
inline Bounds t1_bounds(
    const Cone& c, const HilbertBasis& e, const LVec& r, std::size_t i,
    const std::optional<std::vector<std::pair<std::size_t, std::size_t>>>& tree =
        std::nullopt) {
    (void)e;
    const std::size_t n = c.lattice_rank();
    if (i == 0 || i > n) throw std::invalid_argument("t1_bounds: weight out of range");
    QPolyhedron q = q_polyhedron(c, r);
    detail::EdgeSums sums = detail::vertex_edge_sums(c, q, r, i);

    auto edge_pos = [&](std::pair<std::size_t, std::size_t> ed) -> std::size_t {
        auto norm = ed.first < ed.second ? ed : std::make_pair(ed.second, ed.first);
        for (std::size_t t = 0; t < q.compact_edges.size(); ++t)
            if (q.compact_edges[t] == norm) return t;
        throw std::invalid_argument("t1_bounds: tree edge is not a compact edge");
    };

    std::vector<std::size_t> tree_edges;
    if (tree.has_value()) {
        std::vector<std::size_t> parent(c.num_rays());
        for (std::size_t j = 0; j < parent.size(); ++j) parent[j] = j;
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& ed : *tree) {
            std::size_t pos = edge_pos(ed);
            std::size_t a = find(ed.first), b = find(ed.second);
            if (a == b) throw std::invalid_argument("t1_bounds: tree contains a cycle");
            parent[a] = b;
            tree_edges.push_back(pos);
        }
    } else {
        std::vector<std::size_t> parent(c.num_rays());
        for (std::size_t j = 0; j < parent.size(); ++j) parent[j] = j;
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t t = 0; t < q.compact_edges.size(); ++t) {
            std::size_t a = find(q.compact_edges[t].first);
            std::size_t b = find(q.compact_edges[t].second);
            if (a == b) continue;
            parent[a] = b;
            tree_edges.push_back(t);
        }
    }

    long long all_sum = 0, tree_sum = 0;
    for (long long t : sums.q_terms) all_sum += t;
    for (std::size_t pos : tree_edges) tree_sum += sums.q_terms[pos];
    Bounds b;
    long long cn = static_cast<long long>(binom(n, i));
    b.lower_raw = sums.v_sum - all_sum - cn;
    b.upper_raw = sums.v_sum - tree_sum - cn;
    b.lower = std::max(0LL, b.lower_raw);
    b.upper = std::max(0LL, b.upper_raw);
    return b;
}

// Vanishing certificate: Q-Gorenstein, smooth in codimension two, and some
// ray pairing at least two force all first-order dims to zero.
inline bool qgor_vanishing_applies(const Cone& c, const LVec& r) {
    if (!gorenstein_data(c).has_value()) return false;
    if (smooth_codimension(c) < 2) return false;
    for (std::size_t j = 0; j < c.num_rays(); ++j)
        if (dot(c.ray(j), r) >= 2) return true;
    return false;
}

// First-order dims of a Gorenstein cone over a polytope with smooth facets:
// concentrated in weight n-1 (and weight 1 for threefolds).
inline HodgeDims fano_t1(const Cone& c) {
    const std::size_t n = c.lattice_rank();
    const std::size_t N = c.num_rays();
    auto gd = gorenstein_data(c);
    bool ok = n >= 3 && gd.has_value() && gd->gor_index == 1;
    if (ok)
        for (const auto& f : c.faces_of_dim(n - 1))
            if (!is_smooth_face(c, f)) ok = false;
    if (!ok)
        throw std::domain_error(
            "fano_t1: cone is not Gorenstein of index one with smooth facets");
    HodgeDims out;
    for (std::size_t i = 1; i <= n; ++i) out.dims[i] = 0;
    out.dims[n - 1] = N - n;
    if (n == 3) out.dims[1] = N - 3;
    return out;
}

}  // namespace toricdef
