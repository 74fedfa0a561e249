#pragma once

// Quotient presentation of an affine toric variety and the quantization
// pipeline built on it: the ray-pairing embedding of the degree lattice into
// the character lattice of an ambient affine space, lifting of invariant
// bivectors to that space with frame and support verification, exponential
// star products with their pullback along the embedding, and order-by-order
// associativity checks for truncated products given either as coefficient
// rules or as formal sums of lattice cochains.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toricdef/poisson.hpp"

namespace toricdef {

struct ClassGroup {
    std::size_t free_rank = 0;
    std::vector<long long> torsion;  // invariant factors above one, ascending
};

struct DegreeMap {
    Mat rays;  // one row per ray; maps r to the vector of ray pairings
    std::size_t lattice_rank = 0;
    ClassGroup class_group;
};

// Quotient of the ambient character lattice by the image of the pairing map,
// computed from the elementary divisors of the ray matrix.
inline DegreeMap degree_map(const Cone& c) {
    if (!c.is_pointed()) throw std::domain_error("degree_map: cone must be pointed");
    DegreeMap dm;
    dm.lattice_rank = c.lattice_rank();
    dm.rays = rows_mat(c.rays(), dm.lattice_rank);
    std::vector<BigInt> divisors = smith_invariants(dm.rays);
    if (divisors.size() != dm.lattice_rank)
        throw std::logic_error("degree_map: pairing map lost rank");
    dm.class_group.free_rank = c.rays().size() - dm.lattice_rank;
    for (const auto& d : divisors) {
        long long v = d.to_long_long();
        if (v > 1) dm.class_group.torsion.push_back(v);
    }
    return dm;
}

inline LVec g_apply(const DegreeMap& dm, const LVec& r) {
    if (r.size() != dm.lattice_rank)
        throw std::invalid_argument("g_apply: vector length does not match lattice rank");
    LVec out(dm.rays.rows(), 0);
    for (std::size_t j = 0; j < dm.rays.rows(); ++j) {
        Rat acc(0);
        for (std::size_t i = 0; i < dm.lattice_rank; ++i) acc += dm.rays.at(j, i) * Rat(r[i]);
        out[j] = acc.num().to_long_long();
    }
    return out;
}

// The halfspace test below a degree transfers across the embedding: some ray
// pairing of lambda drops below that of R exactly when some coordinate of the
// image does. Both routes are computed so callers can compare them.
inline std::pair<bool, bool> membership_equiv(const Cone& c, const LVec& lambda, const LVec& r) {
    bool direct = false;
    for (const auto& a : c.rays())
        if (dot(a, lambda) < dot(a, r)) direct = true;
    DegreeMap dm = degree_map(c);
    LVec gl = g_apply(dm, lambda), gr = g_apply(dm, r);
    bool image = false;
    for (std::size_t j = 0; j < gl.size(); ++j)
        if (gl[j] < gr[j]) image = true;
    return {direct, image};
}

struct LiftedComponent {
    LVec degree;  // image of the component degree, one slot per ray
    Mat form;     // skew form on the ambient character lattice
};

struct LiftReport {
    bool frame_pass = true;
    bool round_trip_pass = true;
    std::size_t support_pairs_checked = 0;
    std::size_t support_violations = 0;
    std::size_t jacobi_triples_checked = 0;
    std::size_t jacobi_violations = 0;
};

struct LiftedPoisson {
    DegreeMap map;
    std::vector<LVec> frame;         // independent monoid generators fixing the lift
    std::vector<std::size_t> units;  // ambient axes completing the frame to a basis
    std::vector<LiftedComponent> components;
    LiftReport report;
};

namespace detail {

inline Cone ambient_orthant(std::size_t n) {
    std::vector<LVec> rays;
    for (std::size_t i = 0; i < n; ++i) {
        LVec u(n, 0);
        u[i] = 1;
        rays.push_back(std::move(u));
    }
    return Cone(n, std::move(rays));
}

inline LVec random_box_point(std::mt19937_64& gen, std::size_t n, long long side) {
    std::uniform_int_distribution<long long> d(0, side);
    LVec v(n);
    for (auto& x : v) x = d(gen);
    return v;
}

}  // namespace detail

// Lift each component to a skew form on the ambient lattice: the form is
// pinned by its values on the images of n independent monoid generators and
// by vanishing against axes that complete those images to a basis. The report
// re-verifies the frame equations, evaluates the round trip on every
// generator pair, and samples the support and Jacobi conditions upstairs.
inline LiftedPoisson lift_poisson(const PoissonStructure& p, const Cone& c, const HilbertBasis& e,
                                  std::size_t support_samples = 200,
                                  std::size_t jacobi_samples = 100, std::uint64_t seed = 2026) {
    const std::size_t n = c.lattice_rank();
    const std::size_t N = c.rays().size();
    validate_poisson(p, n);

    LiftedPoisson lift;
    lift.map = degree_map(c);

    for (const auto& el : e.elements) {
        std::vector<LVec> attempt = lift.frame;
        attempt.push_back(el);
        if (rank_kernel(rows_mat(attempt, n)).rank == attempt.size()) lift.frame = std::move(attempt);
        if (lift.frame.size() == n) break;
    }
    if (lift.frame.size() != n)
        throw std::domain_error("lift_poisson: monoid generators do not span the lattice");

    std::vector<LVec> columns;
    for (const auto& s : lift.frame) columns.push_back(g_apply(lift.map, s));
    for (std::size_t u = 0; u < N && columns.size() < N; ++u) {
        LVec unit(N, 0);
        unit[u] = 1;
        std::vector<LVec> attempt = columns;
        attempt.push_back(unit);
        if (rank_kernel(rows_mat(attempt, N)).rank == attempt.size()) {
            columns = std::move(attempt);
            lift.units.push_back(u);
        }
    }
    if (columns.size() != N) throw std::domain_error("lift_poisson: cannot complete frame");

    Mat basis = cols_mat(columns, N);
    Mat binv = inverse(basis);
    Mat binv_t = binv.transpose();

    std::mt19937_64 gen(seed);
    Cone ambient = detail::ambient_orthant(N);
    PoissonStructure upstairs;

    for (const auto& comp : p.components) {
        Mat framed(N, N);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                framed.at(j, l) = bilinear_value(comp.form, lift.frame[j], lift.frame[l]);
        Mat lifted = binv_t * framed * binv;
        LVec degree = g_apply(lift.map, comp.degree);

        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                if (bilinear_value(lifted, columns[j], columns[l]) !=
                    bilinear_value(comp.form, lift.frame[j], lift.frame[l]))
                    lift.report.frame_pass = false;
        for (std::size_t uj = n; uj < N; ++uj)
            for (std::size_t l = 0; l < N; ++l)
                if (!bilinear_value(lifted, columns[uj], columns[l]).is_zero())
                    lift.report.frame_pass = false;

        for (const auto& u : e.elements)
            for (const auto& v : e.elements)
                if (bilinear_value(lifted, g_apply(lift.map, u), g_apply(lift.map, v)) !=
                    bilinear_value(comp.form, u, v))
                    lift.report.round_trip_pass = false;

        for (std::size_t s = 0; s < support_samples; ++s) {
            LVec alpha = detail::random_box_point(gen, N, 3);
            LVec beta = detail::random_box_point(gen, N, 3);
            bool supported = true;
            for (std::size_t j = 0; j < N; ++j)
                if (degree[j] + alpha[j] + beta[j] < 0) supported = false;
            if (supported) continue;
            ++lift.report.support_pairs_checked;
            if (!bilinear_value(lifted, alpha, beta).is_zero()) ++lift.report.support_violations;
        }

        upstairs.components.push_back({degree, lifted});
        lift.components.push_back({std::move(degree), std::move(lifted)});
    }

    for (std::size_t s = 0; s < jacobi_samples; ++s) {
        LVec a = detail::random_box_point(gen, N, 3);
        LVec b = detail::random_box_point(gen, N, 3);
        LVec cc = detail::random_box_point(gen, N, 3);
        ++lift.report.jacobi_triples_checked;
        if (!detail::jacobiator(upstairs, ambient, a, b, cc).empty())
            ++lift.report.jacobi_violations;
    }
    return lift;
}

// Exponential star product generated by a constant skew bivector: the order-m
// coefficient on a pair of exponents is (F(a,b)/2)^m / m!.
struct StarProduct {
    std::size_t order = 0;
    Mat form;
};

inline StarProduct moyal_star(const Mat& form, std::size_t order) {
    if (form.rows() != form.cols()) throw std::invalid_argument("moyal_star: form must be square");
    for (std::size_t r = 0; r < form.rows(); ++r)
        for (std::size_t c = 0; c <= r; ++c)
            if (!(form.at(r, c) + form.at(c, r)).is_zero())
                throw std::invalid_argument("moyal_star: form must be skew");
    return {order, form};
}

inline std::vector<Rat> star_coefficients(const StarProduct& s, const LVec& a, const LVec& b) {
    Rat half = bilinear_value(s.form, a, b) / Rat(2);
    std::vector<Rat> out(s.order + 1);
    out[0] = Rat(1);
    for (std::size_t m = 1; m <= s.order; ++m)
        out[m] = out[m - 1] * half / Rat(static_cast<long long>(m));
    return out;
}

// Pullback of an ambient star product along the pairing map: invariant
// exponents evaluate the ambient form through their images.
inline StarProduct reduce_star(const StarProduct& s, const DegreeMap& dm) {
    if (s.form.rows() != dm.rays.rows())
        throw std::invalid_argument("reduce_star: form size does not match ray count");
    return {s.order, dm.rays.transpose() * s.form * dm.rays};
}

// Truncated star product given directly by its coefficient sequence on a pair
// of exponents, c_0 .. c_K.
using StarRule = std::function<std::vector<Rat>(const LVec&, const LVec&)>;

struct McViolation {
    std::array<LVec, 3> triple;
    std::size_t order = 0;
};

struct McReport {
    bool pass = true;
    std::size_t triples_checked = 0;
    std::size_t violation_count = 0;
    std::vector<McViolation> violations;  // capped sample of failures
};

// Order-by-order associativity on ordered triples drawn from the generator
// certificate family plus seeded monoid samples. At each order the two
// bracketings are convolved coefficient sums.
inline McReport mc_check_rule(const StarRule& rule, const Cone& c, const HilbertBasis& e,
                              std::size_t order, std::size_t samples = 100,
                              std::uint64_t seed = 2026) {
    std::vector<LVec> pts = detail::certificate_points(e);
    std::mt19937_64 gen(seed);
    std::vector<std::array<LVec, 3>> triples;
    for (const auto& a : pts)
        for (const auto& b : pts)
            for (const auto& cc : pts) triples.push_back({a, b, cc});
    for (std::size_t s = 0; s < samples; ++s)
        triples.push_back({detail::random_monoid_point(gen, e), detail::random_monoid_point(gen, e),
                           detail::random_monoid_point(gen, e)});

    auto coeffs = [&](const LVec& a, const LVec& b) {
        std::vector<Rat> v = rule(a, b);
        if (v.size() < order + 1)
            throw std::invalid_argument("mc_check: rule returned too few coefficients");
        return v;
    };

    McReport report;
    constexpr std::size_t kept = 16;
    for (const auto& tr : triples) {
        ++report.triples_checked;
        const LVec ab = vec_add(tr[0], tr[1]);
        const LVec bc = vec_add(tr[1], tr[2]);
        std::vector<Rat> c_ab = coeffs(tr[0], tr[1]);
        std::vector<Rat> c_ab_c = coeffs(ab, tr[2]);
        std::vector<Rat> c_bc = coeffs(tr[1], tr[2]);
        std::vector<Rat> c_a_bc = coeffs(tr[0], bc);
        for (std::size_t l = 0; l <= order; ++l) {
            Rat lhs(0), rhs(0);
            for (std::size_t m = 0; m <= l; ++m) {
                lhs += c_ab[m] * c_ab_c[l - m];
                rhs += c_bc[m] * c_a_bc[l - m];
            }
            if (lhs != rhs) {
                report.pass = false;
                ++report.violation_count;
                if (report.violations.size() < kept) report.violations.push_back({tr, l});
                break;
            }
        }
    }
    return report;
}

inline McReport mc_check(const StarProduct& s, const Cone& c, const HilbertBasis& e,
                         std::size_t samples = 100, std::uint64_t seed = 2026) {
    return mc_check_rule(
        [&s](const LVec& a, const LVec& b) { return star_coefficients(s, a, b); }, c, e, s.order,
        samples, seed);
}

// Truncated star product as a formal sum: the identity term plus lattice
// cochain corrections gamma_m, each carrying its own degree shift.
struct MCElement {
    std::vector<std::pair<std::size_t, LatticeCochain>> gammas;
};

// Formal product of two monomial exponents, keyed by (order, exponent).
inline std::map<std::pair<std::size_t, LVec>, Rat> star_expand(const MCElement& mc, const LVec& a,
                                                               const LVec& b, std::size_t order,
                                                               const LatticePredicate& in_lattice) {
    std::map<std::pair<std::size_t, LVec>, Rat> out;
    out[{0, vec_add(a, b)}] = Rat(1);
    for (const auto& [m, gamma] : mc.gammas) {
        if (m == 0 || m > order) {
            if (m == 0) throw std::invalid_argument("star_expand: corrections start at order one");
            continue;
        }
        if (gamma.arity() != 2)
            throw std::invalid_argument("star_expand: corrections must be binary");
        Rat v = gamma.evaluate({a, b}, in_lattice);
        if (!v.is_zero()) out[{m, vec_add(gamma.degree(), vec_add(a, b))}] += v;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

inline McReport mc_check(const MCElement& mc, const Cone& c, const HilbertBasis& e,
                         std::size_t order, std::size_t samples = 100, std::uint64_t seed = 2026) {
    std::vector<LVec> pts = detail::certificate_points(e);
    std::mt19937_64 gen(seed);
    std::vector<std::array<LVec, 3>> triples;
    for (const auto& a : pts)
        for (const auto& b : pts)
            for (const auto& cc : pts) triples.push_back({a, b, cc});
    for (std::size_t s = 0; s < samples; ++s)
        triples.push_back({detail::random_monoid_point(gen, e), detail::random_monoid_point(gen, e),
                           detail::random_monoid_point(gen, e)});
    LatticePredicate pred = monoid_predicate(c);

    McReport report;
    constexpr std::size_t kept = 16;
    for (const auto& tr : triples) {
        ++report.triples_checked;
        std::map<std::pair<std::size_t, LVec>, Rat> lhs, rhs;
        for (const auto& [key, v] : star_expand(mc, tr[0], tr[1], order, pred)) {
            if (key.first > order) continue;
            for (const auto& [key2, v2] : star_expand(mc, key.second, tr[2], order, pred))
                if (key.first + key2.first <= order)
                    lhs[{key.first + key2.first, key2.second}] += v * v2;
        }
        for (const auto& [key, v] : star_expand(mc, tr[1], tr[2], order, pred)) {
            if (key.first > order) continue;
            for (const auto& [key2, v2] : star_expand(mc, tr[0], key.second, order, pred))
                if (key.first + key2.first <= order)
                    rhs[{key.first + key2.first, key2.second}] += v * v2;
        }
        for (auto it = lhs.begin(); it != lhs.end();)
            it = it->second.is_zero() ? lhs.erase(it) : std::next(it);
        for (auto it = rhs.begin(); it != rhs.end();)
            it = it->second.is_zero() ? rhs.erase(it) : std::next(it);
        if (lhs == rhs) continue;
        report.pass = false;
        ++report.violation_count;
        std::size_t bad = order;
        for (std::size_t l = 0; l <= order && bad == order; ++l) {
            for (const auto& [key, v] : lhs)
                if (key.first == l) {
                    auto it = rhs.find(key);
                    if (it == rhs.end() || it->second != v) {
                        bad = l;
                        break;
                    }
                }
            for (const auto& [key, v] : rhs)
                if (key.first == l && lhs.find(key) == lhs.end()) {
                    bad = l;
                    break;
                }
        }
        if (report.violations.size() < kept) report.violations.push_back({tr, bad});
    }
    return report;
}

}  // namespace toricdef
