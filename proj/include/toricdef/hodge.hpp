#pragma once

// Degree-graded deformation spaces of an affine toric variety. For a pointed
// full-dimensional cone, a degree vector and a wedge index, this module
// assembles the finite cochain complex whose terms are alternating forms on
// the spans of the per-face generator sets, and reads off cohomology
// dimensions by exact rank computation. Position zero in the "plus" grading
// sense yields the space of torus-compatible Poisson candidates.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "toricdef/hilbert.hpp"
#include "toricdef/toric.hpp"

namespace toricdef {

enum class Sense { minus, plus };

// A degree vector together with its grading sense. The "minus" sense drives
// the deformation complexes (cochains written against the negated degree);
// the "plus" sense drives positively graded spaces such as Poisson
// candidates, whose support conditions read off the negated vector.
struct Degree {
    LVec R;
    Sense sense = Sense::minus;
};

struct FaceGeometry {
    Face face;
    std::vector<std::size_t> e_indices;  // members of the face generator set
    Mat span_basis;                      // columns: rational basis of the span
};

struct DegreeGeometry {
    Degree degree;
    LVec effective;              // the vector whose generator sets are used
    std::vector<long long> c;    // ray pairings against the effective vector
    std::vector<long long> w;    // pairing weights clamped to {0,1,2}
    std::size_t d = 0;           // smooth codimension of the cone
    std::size_t top_dim = 0;     // faces are materialized for dims 0..top_dim
    std::vector<std::vector<FaceGeometry>> faces;  // indexed by face dimension
};

struct HodgeComplex {
    std::size_t i = 0;
    std::vector<std::size_t> term_dims;  // one entry per face dimension
    std::vector<Mat> differentials;      // differentials[p] maps term p to term p+1
};

struct HodgeDims {
    std::map<std::size_t, std::size_t> dims;

    std::size_t get(std::size_t i) const {
        auto it = dims.find(i);
        return it == dims.end() ? 0 : it->second;
    }

    bool all_zero() const {
        for (const auto& [i, v] : dims)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const HodgeDims&, const HodgeDims&) = default;
};

namespace detail {

inline LVec negate(const LVec& v) {
    LVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

// Canonical rational basis of the span of the chosen generators: the nonzero
// columns of the column Hermite form of the generator matrix.
inline Mat span_from_elements(const std::vector<LVec>& elems, std::size_t n) {
    if (elems.empty()) return Mat(n, 0);
    Mat h = hermite_normal_form(cols_mat(elems, n));
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < h.cols(); ++j)
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (!h.at(i, j).is_zero()) {
                nonzero.push_back(j);
                break;
            }
    Mat b(n, nonzero.size());
    for (std::size_t a = 0; a < nonzero.size(); ++a)
        for (std::size_t i = 0; i < n; ++i) b.at(i, a) = h.at(i, nonzero[a]);
    return b;
}

}  // namespace detail

// Per-face generator sets and their spans for one degree. The set attached
// to a face keeps the Hilbert-basis elements pairing strictly below the
// degree pairing on every ray of the face; the apex face carries the full
// ambient space.
inline DegreeGeometry degree_geometry(const Cone& c, const HilbertBasis& E, const Degree& deg) {
    const std::size_t n = c.lattice_rank();
    if (deg.R.size() != n)
        throw std::invalid_argument("degree_geometry: degree length does not match lattice rank");
    DegreeGeometry g;
    g.degree = deg;
    g.effective = deg.sense == Sense::minus ? deg.R : detail::negate(deg.R);
    g.c.resize(c.num_rays());
    g.w.resize(c.num_rays());
    for (std::size_t j = 0; j < c.num_rays(); ++j) {
        g.c[j] = dot(c.ray(j), g.effective);
        g.w[j] = std::clamp(g.c[j], 0LL, 2LL);
    }
    g.d = smooth_codimension(c);
    g.top_dim = std::min(g.d + 1, n);
    g.faces.resize(g.top_dim + 1);
    std::vector<std::vector<long long>> pairings(c.num_rays());
    for (std::size_t j = 0; j < c.num_rays(); ++j)
        for (const auto& e : E.elements) pairings[j].push_back(dot(c.ray(j), e));
    for (std::size_t p = 0; p <= g.top_dim; ++p) {
        for (const auto& f : c.faces_of_dim(p)) {
            FaceGeometry fg;
            fg.face = f;
            for (std::size_t ei = 0; ei < E.elements.size(); ++ei) {
                bool in = true;
                for (auto j : f.ray_indices)
                    if (pairings[j][ei] >= g.c[j]) in = false;
                if (in) fg.e_indices.push_back(ei);
            }
            if (p == 0) {
                fg.span_basis = Mat::identity(n);
            } else {
                std::vector<LVec> elems;
                for (auto ei : fg.e_indices) elems.push_back(E.elements[ei]);
                fg.span_basis = detail::span_from_elements(elems, n);
            }
            g.faces[p].push_back(std::move(fg));
        }
    }
    return g;
}

namespace detail {

// Deterministic oriented basis of a face: the first rays (in index order)
// that are linearly independent.
inline Mat oriented_basis(const Cone& c, const Face& f) {
    Mat b(c.lattice_rank(), 0);
    std::vector<LVec> picked;
    for (auto j : f.ray_indices) {
        std::vector<LVec> attempt = picked;
        attempt.push_back(c.ray(j));
        if (rank_kernel(rows_mat(attempt, c.lattice_rank())).rank == attempt.size())
            picked = std::move(attempt);
        if (picked.size() == f.dim) break;
    }
    return cols_mat(picked, c.lattice_rank());
}

// Incidence sign between a face and a one-higher face containing it: the
// orientation of [basis of small face, interior vector of big face] against
// the big face's own basis.
inline int incidence_sign(const Cone& c, const Face& small, const Face& big,
                          const Mat& small_basis, const Mat& big_basis) {
    const std::size_t n = c.lattice_rank();
    Mat ext(n, small.dim + 1);
    for (std::size_t j = 0; j < small.dim; ++j)
        for (std::size_t i = 0; i < n; ++i) ext.at(i, j) = small_basis.at(i, j);
    for (auto r : big.ray_indices)
        for (std::size_t i = 0; i < n; ++i)
            ext.at(i, small.dim) += Rat(c.ray(r)[i]);
    auto coords = solve(big_basis, ext);
    if (!coords.has_value())
        throw std::logic_error("incidence_sign: face basis does not span");
    Rat dt = det(*coords);
    if (dt.is_zero()) throw std::logic_error("incidence_sign: degenerate orientation");
    return dt.sign();
}

inline bool face_subset(const Face& a, const Face& b) {
    return std::includes(b.ray_indices.begin(), b.ray_indices.end(), a.ray_indices.begin(),
                         a.ray_indices.end());
}

inline HodgeComplex complex_from_geometry(const Cone& c, const DegreeGeometry& g,
                                          std::size_t i) {
    if (i < 1 || i > c.lattice_rank())
        throw std::invalid_argument("build_complex: wedge index out of range");
    HodgeComplex hc;
    hc.i = i;
    std::vector<std::vector<std::size_t>> offsets(g.top_dim + 1);
    for (std::size_t p = 0; p <= g.top_dim; ++p) {
        std::size_t total = 0;
        for (const auto& fg : g.faces[p]) {
            offsets[p].push_back(total);
            total += binom(fg.span_basis.cols(), i);
        }
        hc.term_dims.push_back(total);
    }
    for (std::size_t p = 0; p < g.top_dim; ++p) {
        Mat delta(hc.term_dims[p + 1], hc.term_dims[p]);
        for (std::size_t bi = 0; bi < g.faces[p + 1].size(); ++bi) {
            const auto& big = g.faces[p + 1][bi];
            Mat big_ob = oriented_basis(c, big.face);
            std::size_t rdim = binom(big.span_basis.cols(), i);
            if (rdim == 0) continue;
            for (std::size_t si = 0; si < g.faces[p].size(); ++si) {
                const auto& small = g.faces[p][si];
                if (!face_subset(small.face, big.face)) continue;
                std::size_t cdim = binom(small.span_basis.cols(), i);
                if (cdim == 0) continue;
                Mat small_ob = oriented_basis(c, small.face);
                int sign = incidence_sign(c, small.face, big.face, small_ob, big_ob);
                // span of the bigger face's set sits inside the smaller
                // face's span; forms restrict along that inclusion
                auto p_incl = solve(small.span_basis, big.span_basis);
                if (!p_incl.has_value())
                    throw std::logic_error("complex: face span is not nested");
                Mat block = compound(*p_incl, i).transpose();
                for (std::size_t r = 0; r < rdim; ++r)
                    for (std::size_t cc = 0; cc < cdim; ++cc) {
                        Rat v = block.at(r, cc);
                        if (sign < 0) v = -v;
                        delta.at(offsets[p + 1][bi] + r, offsets[p][si] + cc) = v;
                    }
            }
        }
        hc.differentials.push_back(std::move(delta));
    }
    for (std::size_t p = 0; p + 1 < hc.differentials.size(); ++p)
        if (!(hc.differentials[p + 1] * hc.differentials[p]).is_zero())
            throw std::logic_error("complex: differentials do not compose to zero");
    return hc;
}

}  // namespace detail

inline HodgeComplex build_complex(const Cone& c, const HilbertBasis& E, const Degree& deg,
                                  std::size_t i) {
    return detail::complex_from_geometry(c, degree_geometry(c, E, deg), i);
}

// Cohomology dimensions of the degree complex at position k, for every wedge
// index 1..n. Valid up to the smooth codimension of the cone.
inline HodgeDims t_dims(const Cone& c, const HilbertBasis& E, const Degree& deg,
                        std::size_t k) {
    DegreeGeometry g = degree_geometry(c, E, deg);
    if (k > g.d) throw std::domain_error("beyond smooth codimension; theorem inapplicable");
    HodgeDims out;
    for (std::size_t i = 1; i <= c.lattice_rank(); ++i) {
        HodgeComplex hc = detail::complex_from_geometry(c, g, i);
        std::size_t rank_prev =
            k == 0 ? 0 : rank_kernel(hc.differentials[k - 1]).rank;
        std::size_t ker = k < hc.differentials.size()
                              ? hc.term_dims[k] - rank_kernel(hc.differentials[k]).rank
                              : hc.term_dims[k];
        out.dims[i] = ker - rank_prev;
    }
    return out;
}

// Basis of the degree-R space of skew bilinear candidates: the kernel of the
// simultaneous restriction of a skew form on the ambient space to every
// per-ray span taken in the plus sense. Each basis element is returned as a
// skew matrix.
inline std::vector<Mat> poisson_space(const Cone& c, const HilbertBasis& E, const LVec& R) {
    const std::size_t n = c.lattice_rank();
    DegreeGeometry g = degree_geometry(c, E, Degree{R, Sense::plus});
    std::size_t rows = 0;
    std::vector<std::size_t> offsets;
    for (const auto& fg : g.faces[1]) {
        offsets.push_back(rows);
        rows += binom(fg.span_basis.cols(), 2);
    }
    Mat restrict(rows, binom(n, 2));
    for (std::size_t j = 0; j < g.faces[1].size(); ++j) {
        const auto& fg = g.faces[1][j];
        if (binom(fg.span_basis.cols(), 2) == 0) continue;
        Mat block = detail::compound(fg.span_basis, 2).transpose();
        for (std::size_t r = 0; r < block.rows(); ++r)
            for (std::size_t cc = 0; cc < block.cols(); ++cc)
                restrict.at(offsets[j] + r, cc) = block.at(r, cc);
    }
    auto rk = rank_kernel(restrict);
    auto pairs = subsets_lex(n, 2);
    std::vector<Mat> out;
    for (std::size_t b = 0; b < rk.kernel_basis.cols(); ++b) {
        Mat f(n, n);
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            f.at(pairs[t][0], pairs[t][1]) = rk.kernel_basis.at(t, b);
            f.at(pairs[t][1], pairs[t][0]) = -rk.kernel_basis.at(t, b);
        }
        out.push_back(std::move(f));
    }
    return out;
}

struct ScanEntry {
    LVec degree;
    HodgeDims dims;
};

// First-order dims at every degree of the box, keeping nonzero tables only.
inline std::vector<ScanEntry> scan_degrees(const Cone& c, const HilbertBasis& E,
                                           const std::vector<Degree>& box) {
    std::vector<ScanEntry> out;
    for (const auto& deg : box) {
        HodgeDims dims = t_dims(c, E, deg, 1);
        if (!dims.all_zero()) out.push_back(ScanEntry{deg.R, std::move(dims)});
    }
    return out;
}

// Complete first-order candidate degrees for the surface X(n,q): the
// multiples l * w^i with 1 <= l <= b_i along the generator chain.
inline std::vector<LVec> surface_candidate_degrees(long long n, long long q) {
    SurfaceData sd = surface_data(n, q);
    std::set<LVec> degs;
    for (std::size_t i = 0; i < sd.b.size(); ++i)
        for (long long l = 1; l <= sd.b[i]; ++l)
            degs.insert({l * sd.w[i + 1][0], l * sd.w[i + 1][1]});
    return {degs.begin(), degs.end()};
}

// Candidate degrees for cones over smooth Fano polytopes: first-order
// deformations concentrate in the canonical degree.
inline std::vector<LVec> fano_candidate_degrees(const Cone& c) {
    auto gd = gorenstein_data(c);
    if (!gd.has_value()) return {};
    return {gd->canonical_degree};
}

}  // namespace toricdef
