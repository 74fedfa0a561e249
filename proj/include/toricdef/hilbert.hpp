#pragma once

// Minimal generating sets of the semigroup of lattice points in the dual
// cone. Surfaces go through the negative-regular continued-fraction
// recursion; ranks three and four use bounded enumeration plus an
// irreducibility filter.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "toricdef/toric.hpp"

namespace toricdef {

struct SurfaceData {
    long long n = 0;
    long long q = 0;
    std::vector<long long> b;  // continued-fraction entries, each >= 2
    std::vector<LVec> w;       // generator chain w^0 ... w^{r+1}
};

struct HilbertBasis {
    std::vector<LVec> elements;  // sorted lexicographically
};

// Membership of a lattice point in the semigroup dual to the cone: all ray
// pairings nonnegative.
inline bool monoid_contains(const Cone& c, const LVec& m) {
    for (const auto& a : c.rays())
        if (dot(a, m) < 0) return false;
    return true;
}

// Negative-regular continued fraction of n/(n-q): the chain of ceilings
// b_1, b_2, ... with n/(n-q) = b_1 - 1/(b_2 - 1/(...)), every entry >= 2.
inline std::vector<long long> continued_fraction(long long n, long long q) {
    if (!(0 < q && q < n) || std::gcd(n, q) != 1)
        throw std::domain_error("continued_fraction: require 0 < q < n with gcd(n,q) = 1");
    long long a = n, b = n - q;
    std::vector<long long> out;
    while (b > 0) {
        long long c = (a + b - 1) / b;
        out.push_back(c);
        long long next = c * b - a;
        a = b;
        b = next;
    }
    return out;
}

// Boundary generator chain of the surface X(n,q): w^0 = (0,1), w^1 = (1,1),
// and w^{i-1} + w^{i+1} = b_i * w^i, ending at w^{r+1} = (n,q).
inline SurfaceData surface_data(long long n, long long q) {
    SurfaceData sd;
    sd.n = n;
    sd.q = q;
    sd.b = continued_fraction(n, q);
    sd.w.push_back({0, 1});
    sd.w.push_back({1, 1});
    for (long long bi : sd.b) {
        const LVec& prev = sd.w[sd.w.size() - 2];
        const LVec& cur = sd.w[sd.w.size() - 1];
        sd.w.push_back({bi * cur[0] - prev[0], bi * cur[1] - prev[1]});
    }
    return sd;
}

namespace detail {

inline std::array<long long, 3> egcd(long long a, long long b) {
    if (b == 0) return {a >= 0 ? a : -a, a >= 0 ? 1LL : -1LL, 0LL};
    auto [g, x, y] = egcd(b, a % b);
    return {g, y, x - (a / b) * y};
}

inline long long rat_floor(const Rat& r) {
    return BigInt::fdiv(r.num(), r.den()).to_long_long();
}

inline long long rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Lattice points x with 0 <= <a_j, x> <= bound_j for every ray a_j of the
// cone. The region is a bounded polytope (the rays span the dual space); its
// bounding box comes from exact vertex enumeration over active constraint
// subsets. Output is sorted lexicographically.
inline std::vector<LVec> enumerate_bounded(const Cone& c, const std::vector<long long>& bound) {
    const std::size_t n = c.lattice_rank();
    const std::size_t N = c.num_rays();
    if (bound.size() != N) throw std::invalid_argument("enumerate_bounded: bound size");
    std::vector<Rat> lo(n), hi(n);
    bool have_vertex = false;
    for (const auto& sub : subsets_lex(N, n)) {
        Mat sys(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sys.at(i, j) = Rat(c.ray(sub[i])[j]);
        for (std::size_t mask = 0; mask < (1u << n); ++mask) {
            Mat rhs(n, 1);
            for (std::size_t i = 0; i < n; ++i)
                rhs.at(i, 0) = (mask >> i) & 1 ? Rat(bound[sub[i]]) : Rat(0);
            auto x = solve(sys, rhs);
            if (!x.has_value() || rank_kernel(sys).rank != n) continue;
            bool feasible = true;
            for (std::size_t j = 0; j < N && feasible; ++j) {
                Rat p(0);
                for (std::size_t i = 0; i < n; ++i) p += Rat(c.ray(j)[i]) * x->at(i, 0);
                if (p < Rat(0) || p > Rat(bound[j])) feasible = false;
            }
            if (!feasible) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (!have_vertex || x->at(i, 0) < lo[i]) lo[i] = x->at(i, 0);
                if (!have_vertex || x->at(i, 0) > hi[i]) hi[i] = x->at(i, 0);
            }
            have_vertex = true;
        }
    }
    if (!have_vertex) return {};
    LVec low(n), high(n);
    for (std::size_t i = 0; i < n; ++i) {
        low[i] = rat_ceil(lo[i]);
        high[i] = rat_floor(hi[i]);
        if (low[i] > high[i]) return {};
    }
    std::vector<LVec> out;
    LVec x = low;
    for (;;) {
        bool ok = true;
        for (std::size_t j = 0; j < N && ok; ++j) {
            long long p = dot(c.ray(j), x);
            if (p < 0 || p > bound[j]) ok = false;
        }
        if (ok) out.push_back(x);
        std::size_t i = n;
        while (i-- > 0) {
            if (x[i] < high[i]) {
                ++x[i];
                for (std::size_t j = i + 1; j < n; ++j) x[j] = low[j];
                break;
            }
            if (i == 0) return out;
        }
    }
}

// General-rank route: candidates from the zonotope bound (sums of ray
// pairings against the dual generators), then keep the irreducibles.
inline std::vector<LVec> hilbert_basis_enumerate(const Cone& c) {
    const auto& duals = c.dual_rays();
    const std::size_t N = c.num_rays();
    std::vector<long long> bound(N, 0);
    for (std::size_t j = 0; j < N; ++j)
        for (const auto& rho : duals) bound[j] += dot(c.ray(j), rho);
    std::vector<LVec> cand = enumerate_bounded(c, bound);
    const std::size_t n = c.lattice_rank();
    LVec zero(n, 0);
    std::vector<LVec> out;
    for (const auto& e : cand) {
        if (e == zero) continue;
        bool reducible = false;
        for (const auto& f : cand) {
            if (f == zero || f == e) continue;
            bool diff_in = true;
            for (std::size_t j = 0; j < N && diff_in; ++j)
                if (dot(c.ray(j), e) - dot(c.ray(j), f) < 0) diff_in = false;
            if (diff_in) {
                reducible = true;
                break;
            }
        }
        if (!reducible) out.push_back(e);
    }
    return out;
}

// Surface route: bring the cone to the standard form <(1,0),(-q,n)> by a
// unimodular map, read the generator chain off the recursion, and transport
// it back with the transpose.
inline std::vector<LVec> hilbert_basis_surface(const Cone& c) {
    Cone ext = c.num_rays() == 2 ? c : dual_cone(dual_cone(c));
    if (ext.num_rays() != 2)
        throw std::logic_error("hilbert_basis_surface: expected two extreme rays");
    LVec u = ext.ray(0), v = ext.ray(1);
    if (u[0] * v[1] - u[1] * v[0] < 0) std::swap(u, v);
    auto [g, x, y] = egcd(u[0], u[1]);
    if (g != 1) throw std::logic_error("hilbert_basis_surface: ray not primitive");
    // T = [u w]^{-1} with w = (-y, x); maps u to (1,0) and keeps det = 1
    std::array<std::array<long long, 2>, 2> T{{{x, y}, {-u[1], u[0]}}};
    auto apply = [](const std::array<std::array<long long, 2>, 2>& M, const LVec& p) {
        return LVec{M[0][0] * p[0] + M[0][1] * p[1], M[1][0] * p[0] + M[1][1] * p[1]};
    };
    LVec v2 = apply(T, v);
    long long m = v2[1];
    std::vector<LVec> chain;
    long long shear = 0;
    if (m == 1) {
        // smooth corner: shear (a,1) onto (0,1); basis of the dual orthant
        shear = -v2[0];
        chain = {{0, 1}, {1, 0}};
    } else {
        long long q = ((-v2[0]) % m + m) % m;
        shear = (-q - v2[0]) / m;
        chain = surface_data(m, q).w;
    }
    // total map S*T with S = [[1, shear],[0,1]]; degrees pull back by the
    // transpose (S*T)^T
    std::array<std::array<long long, 2>, 2> ST{
        {{T[0][0] + shear * T[1][0], T[0][1] + shear * T[1][1]}, {T[1][0], T[1][1]}}};
    std::array<std::array<long long, 2>, 2> STt{
        {{ST[0][0], ST[1][0]}, {ST[0][1], ST[1][1]}}};
    std::vector<LVec> out;
    for (const auto& e : chain) out.push_back(apply(STt, e));
    return out;
}

}  // namespace detail

inline HilbertBasis hilbert_basis(const Cone& c) {
    if (c.lattice_rank() > 4)
        throw std::domain_error("hilbert_basis: lattice rank above supported bound 4");
    if (!c.is_pointed()) throw std::domain_error("not pointed");
    std::vector<LVec> elems = c.lattice_rank() == 2 ? detail::hilbert_basis_surface(c)
                                                    : detail::hilbert_basis_enumerate(c);
    std::sort(elems.begin(), elems.end());
    return HilbertBasis{std::move(elems)};
}

}  // namespace toricdef
