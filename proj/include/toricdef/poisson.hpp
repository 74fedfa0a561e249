#pragma once

// Lattice-level Hochschild cochains and their validation: the symmetric-group
// algebra with shuffle elements and Eulerian idempotents for small arity, the
// graded bracket on degree-indexed multilinear forms (with the support rule
// for composed arguments), and the two Poisson structure checks: membership of
// each component in its degree-wise candidate space, and the pointwise Jacobi
// identity over a certified family of lattice triples.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "toricdef/hilbert.hpp"
#include "toricdef/hodge.hpp"

namespace toricdef {

using Perm = std::vector<std::size_t>;  // images of positions, zero-based

inline LVec vec_add(const LVec& a, const LVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_add: length mismatch");
    LVec out = a;
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += b[t];
    return out;
}

inline int perm_sign(const Perm& p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

struct GroupAlgebraElement {
    std::size_t n = 0;
    std::map<Perm, Rat> coeff;

    GroupAlgebraElement& prune() {
        for (auto it = coeff.begin(); it != coeff.end();)
            it = it->second.is_zero() ? coeff.erase(it) : std::next(it);
        return *this;
    }
    friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
        GroupAlgebraElement x = a, y = b;
        return x.n == y.n && x.prune().coeff == y.prune().coeff;
    }
};

inline GroupAlgebraElement group_unit(std::size_t n) {
    Perm id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;
    return GroupAlgebraElement{n, {{std::move(id), Rat(1)}}};
}

inline GroupAlgebraElement operator+(const GroupAlgebraElement& a,
                                     const GroupAlgebraElement& b) {
    if (a.n != b.n) throw std::invalid_argument("group algebra: mixed arities");
    GroupAlgebraElement out = a;
    for (const auto& [p, v] : b.coeff) out.coeff[p] += v;
    return out.prune();
}

inline GroupAlgebraElement operator*(const Rat& s, const GroupAlgebraElement& a) {
    GroupAlgebraElement out = a;
    for (auto& [p, v] : out.coeff) v = v * s;
    return out.prune();
}

inline GroupAlgebraElement operator-(const GroupAlgebraElement& a,
                                     const GroupAlgebraElement& b) {
    return a + Rat(-1) * b;
}

// Convolution with functional composition (ab)(u) = a(b(u)).
inline GroupAlgebraElement operator*(const GroupAlgebraElement& a,
                                     const GroupAlgebraElement& b) {
    if (a.n != b.n) throw std::invalid_argument("group algebra: mixed arities");
    GroupAlgebraElement out{a.n, {}};
    for (const auto& [p, v] : a.coeff)
        for (const auto& [q, w] : b.coeff) {
            Perm r(a.n);
            for (std::size_t u = 0; u < a.n; ++u) r[u] = p[q[u]];
            out.coeff[std::move(r)] += v * w;
        }
    return out.prune();
}

// Signed sum over permutations that keep the first i and the last n-i
// argument slots in increasing order.
inline GroupAlgebraElement shuffle(std::size_t n) {
    if (n < 2 || n > 4) throw std::invalid_argument("shuffle: arity must be 2, 3 or 4");
    GroupAlgebraElement out{n, {}};
    for (std::size_t i = 1; i < n; ++i) {
        for (const auto& first_block : subsets_lex(n, i)) {
            std::vector<bool> used(n, false);
            for (auto v : first_block) used[v] = true;
            Perm p;
            p.reserve(n);
            for (auto v : first_block) p.push_back(v);
            for (std::size_t v = 0; v < n; ++v)
                if (!used[v]) p.push_back(v);
            out.coeff[p] += Rat(perm_sign(p));
        }
    }
    return out.prune();
}

// Lagrange interpolation of the projector onto the 2^i - 2 eigenspace of the
// shuffle element.
inline GroupAlgebraElement eulerian_idempotent(std::size_t n, std::size_t i) {
    if (n < 2 || n > 4) throw std::invalid_argument("eulerian_idempotent: arity must be 2, 3 or 4");
    if (i < 1 || i > n) throw std::invalid_argument("eulerian_idempotent: weight out of range");
    GroupAlgebraElement s = shuffle(n);
    GroupAlgebraElement e = group_unit(n);
    long long li = (1LL << i) - 2;
    for (std::size_t j = 1; j <= n; ++j) {
        if (j == i) continue;
        long long lj = (1LL << j) - 2;
        e = Rat(1, li - lj) * (e * (s - Rat(lj) * group_unit(n)));
    }
    return e;
}

// Dense multilinear coefficient tensor over the standard basis of the degree
// lattice, little-endian index order.
struct MultiForm {
    std::size_t arity = 0;
    std::size_t dim = 0;
    std::vector<Rat> tensor;

    MultiForm() = default;
    MultiForm(std::size_t arity_, std::size_t dim_)
        : arity(arity_), dim(dim_), tensor(power(), Rat(0)) {}
    explicit MultiForm(const Mat& form) : arity(2), dim(form.rows()), tensor(form.rows() * form.cols()) {
        if (form.rows() != form.cols())
            throw std::invalid_argument("MultiForm: bilinear form must be square");
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) tensor[r + dim * c] = form.at(r, c);
    }

    std::size_t power() const {
        std::size_t p = 1;
        for (std::size_t t = 0; t < arity; ++t) p *= dim;
        return p;
    }
    Rat& at(const std::vector<std::size_t>& idx) {
        return tensor[flatten(idx)];
    }
    Rat evaluate(const std::vector<LVec>& args) const {
        if (args.size() != arity)
            throw std::invalid_argument("MultiForm: argument count does not match arity");
        for (const auto& a : args)
            if (a.size() != dim)
                throw std::invalid_argument("MultiForm: argument length does not match dimension");
        Rat total(0);
        std::vector<std::size_t> idx(arity, 0);
        for (std::size_t flat = 0; flat < tensor.size(); ++flat) {
            if (!tensor[flat].is_zero()) {
                Rat term = tensor[flat];
                std::size_t rest = flat;
                for (std::size_t t = 0; t < arity; ++t) {
                    term = term * Rat(args[t][rest % dim]);
                    rest /= dim;
                }
                total += term;
            }
        }
        return total;
    }

private:
    std::size_t flatten(const std::vector<std::size_t>& idx) const {
        std::size_t flat = 0, stride = 1;
        for (std::size_t t = 0; t < arity; ++t) {
            flat += idx[t] * stride;
            stride *= dim;
        }
        return flat;
    }
};

using LatticePredicate = std::function<bool(const LVec&)>;

inline LatticePredicate monoid_predicate(const Cone& c) {
    return [&c](const LVec& v) { return monoid_contains(c, v); };
}

namespace detail {

struct CochainNode;
using NodePtr = std::shared_ptr<const CochainNode>;

struct BracketNode {
    NodePtr f, g;
};
struct ProjectNode {
    NodePtr f;
    GroupAlgebraElement e;
};

struct CochainNode {
    std::size_t arity;
    LVec degree;
    std::variant<MultiForm, BracketNode, ProjectNode> body;
};

Rat evaluate_node(const CochainNode& node, const std::vector<LVec>& args,
                  const LatticePredicate& in_lattice);

// Circle product with shifted middle argument; a term drops out when the
// composed exponent leaves the semigroup.
inline Rat circle(const CochainNode& f, const CochainNode& g, const std::vector<LVec>& args,
                  const LatticePredicate& in_lattice) {
    const std::size_t m = f.arity, n = g.arity;
    Rat total(0);
    for (std::size_t u = 0; u < m; ++u) {
        LVec shifted = g.degree;
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t x = 0; x < shifted.size(); ++x) shifted[x] += args[u + t][x];
        if (!in_lattice(shifted)) continue;
        std::vector<LVec> inner(args.begin() + u, args.begin() + u + n);
        Rat gv = evaluate_node(g, inner, in_lattice);
        if (gv.is_zero()) continue;
        std::vector<LVec> outer;
        outer.reserve(m);
        for (std::size_t t = 0; t < u; ++t) outer.push_back(args[t]);
        outer.push_back(std::move(shifted));
        for (std::size_t t = u + n; t < m + n - 1; ++t) outer.push_back(args[t]);
        Rat fv = evaluate_node(f, outer, in_lattice);
        int sign = (u * (n + 1)) % 2 == 0 ? 1 : -1;
        total += Rat(sign) * fv * gv;
    }
    return total;
}

inline Rat evaluate_node(const CochainNode& node, const std::vector<LVec>& args,
                         const LatticePredicate& in_lattice) {
    if (args.size() != node.arity)
        throw std::invalid_argument("cochain: argument count does not match arity");
    if (const auto* mf = std::get_if<MultiForm>(&node.body)) return mf->evaluate(args);
    if (const auto* br = std::get_if<BracketNode>(&node.body)) {
        const std::size_t m = br->f->arity, n = br->g->arity;
        Rat fg = circle(*br->f, *br->g, args, in_lattice);
        Rat gf = circle(*br->g, *br->f, args, in_lattice);
        int sign = ((m + 1) * (n + 1)) % 2 == 0 ? 1 : -1;
        return fg - Rat(sign) * gf;
    }
    const auto& pr = std::get<ProjectNode>(node.body);
    Rat total(0);
    for (const auto& [p, v] : pr.e.coeff) {
        std::vector<LVec> permuted(node.arity);
        for (std::size_t t = 0; t < node.arity; ++t) permuted[t] = args[p[t]];
        total += v * evaluate_node(*pr.f, permuted, in_lattice);
    }
    return total;
}

}  // namespace detail

class LatticeCochain {
public:
    static LatticeCochain form(LVec degree, MultiForm body) {
        if (degree.size() != body.dim)
            throw std::invalid_argument("LatticeCochain: degree length does not match form dimension");
        LatticeCochain out;
        out.node_ = std::make_shared<detail::CochainNode>(
            detail::CochainNode{body.arity, std::move(degree), std::move(body)});
        return out;
    }

    std::size_t arity() const { return node_->arity; }
    const LVec& degree() const { return node_->degree; }

    Rat evaluate(const std::vector<LVec>& args, const LatticePredicate& in_lattice) const {
        return detail::evaluate_node(*node_, args, in_lattice);
    }
    Rat evaluate(const std::vector<LVec>& args, const Cone& c) const {
        return evaluate(args, monoid_predicate(c));
    }

    friend LatticeCochain bracket(const LatticeCochain& f, const LatticeCochain& g);
    friend LatticeCochain hodge_project(const LatticeCochain& f, std::size_t i);

private:
    detail::NodePtr node_;
};

inline LatticeCochain bracket(const LatticeCochain& f, const LatticeCochain& g) {
    if (f.arity() < 1 || g.arity() < 1)
        throw std::invalid_argument("bracket: arities must be positive");
    LVec degree = f.node_->degree;
    const LVec& other = g.node_->degree;
    if (degree.size() != other.size())
        throw std::invalid_argument("bracket: degree lattices differ");
    for (std::size_t x = 0; x < degree.size(); ++x) degree[x] += other[x];
    LatticeCochain out;
    out.node_ = std::make_shared<detail::CochainNode>(detail::CochainNode{
        f.arity() + g.arity() - 1, std::move(degree), detail::BracketNode{f.node_, g.node_}});
    return out;
}

inline LatticeCochain hodge_project(const LatticeCochain& f, std::size_t i) {
    if (f.arity() > 4) throw std::invalid_argument("hodge_project: arity above four");
    LatticeCochain out;
    out.node_ = std::make_shared<detail::CochainNode>(detail::CochainNode{
        f.arity(), f.degree(), detail::ProjectNode{f.node_, eulerian_idempotent(f.arity(), i)}});
    return out;
}

// Lattice Hochschild coboundary of an arity-m evaluator at m+1 arguments.
using LatticeFn = std::function<Rat(const std::vector<LVec>&)>;

inline Rat coboundary_eval(const LatticeFn& f, const std::vector<LVec>& args) {
    const std::size_t m = args.size() - 1;
    Rat total = f(std::vector<LVec>(args.begin() + 1, args.end()));
    for (std::size_t u = 0; u < m; ++u) {
        std::vector<LVec> merged;
        merged.reserve(m);
        for (std::size_t t = 0; t < u; ++t) merged.push_back(args[t]);
        LVec sum = args[u];
        for (std::size_t x = 0; x < sum.size(); ++x) sum[x] += args[u + 1][x];
        merged.push_back(std::move(sum));
        for (std::size_t t = u + 2; t <= m; ++t) merged.push_back(args[t]);
        total += Rat((u + 1) % 2 == 0 ? 1 : -1) * f(merged);
    }
    total += Rat(m % 2 == 0 ? -1 : 1) * f(std::vector<LVec>(args.begin(), args.end() - 1));
    return total;
}

// Signed average of coboundary values over permutations keeping the first two
// slots ordered; for top-weight cochains it collapses to the first-argument
// additivity defect times m factorial.
inline Rat averaging_sum(const LatticeFn& f, const std::vector<LVec>& args) {
    const std::size_t m1 = args.size();
    Perm p(m1);
    for (std::size_t t = 0; t < m1; ++t) p[t] = t;
    Rat total(0);
    do {
        if (p[0] > p[1]) continue;
        Perm inv(m1);
        for (std::size_t t = 0; t < m1; ++t) inv[p[t]] = t;
        std::vector<LVec> permuted(m1);
        for (std::size_t t = 0; t < m1; ++t) permuted[t] = args[inv[t]];
        total += Rat(perm_sign(p)) * coboundary_eval(f, permuted);
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

struct PoissonComponent {
    LVec degree;
    Mat form;  // skew, indexed by the degree lattice basis
};

struct PoissonStructure {
    std::vector<PoissonComponent> components;
};

inline void validate_poisson(const PoissonStructure& p, std::size_t rank) {
    for (const auto& comp : p.components) {
        if (comp.degree.size() != rank || comp.form.rows() != rank || comp.form.cols() != rank)
            throw std::invalid_argument("poisson: component size does not match lattice rank");
        for (std::size_t r = 0; r < rank; ++r)
            for (std::size_t c = 0; c <= r; ++c)
                if (!(comp.form.at(r, c) + comp.form.at(c, r)).is_zero())
                    throw std::invalid_argument("poisson: component form is not skew");
    }
}

inline Rat bilinear_value(const Mat& form, const LVec& a, const LVec& b) {
    Rat total(0);
    for (std::size_t r = 0; r < form.rows(); ++r) {
        if (a[r] == 0) continue;
        for (std::size_t c = 0; c < form.cols(); ++c) {
            if (b[c] == 0 || form.at(r, c).is_zero()) continue;
            total += Rat(a[r]) * form.at(r, c) * Rat(b[c]);
        }
    }
    return total;
}

struct TripleViolation {
    std::array<LVec, 3> triple;
    LVec exponent;
    Rat value;
};

struct JacobiReport {
    bool pass = true;
    std::size_t triples_checked = 0;
    std::size_t violation_count = 0;
    std::vector<TripleViolation> violations;  // capped sample of failures
    bool projected_pass = true;
    std::size_t projected_checked = 0;
};

namespace detail {

// Cyclic Jacobiator of the structure at one ordered triple, collected per
// target exponent; the inner insertion is dropped when it leaves the
// semigroup.
inline std::map<LVec, Rat> jacobiator(const PoissonStructure& p, const Cone& c, const LVec& a,
                                      const LVec& b, const LVec& cc) {
    std::map<LVec, Rat> acc;
    const std::array<std::array<const LVec*, 3>, 3> rotations{
        {{&a, &b, &cc}, {&b, &cc, &a}, {&cc, &a, &b}}};
    for (const auto& [x, y, z] : rotations) {
        for (const auto& inner_comp : p.components) {
            LVec inner = inner_comp.degree;
            for (std::size_t t = 0; t < inner.size(); ++t) inner[t] += (*y)[t] + (*z)[t];
            if (!monoid_contains(c, inner)) continue;
            Rat iv = bilinear_value(inner_comp.form, *y, *z);
            if (iv.is_zero()) continue;
            for (const auto& outer_comp : p.components) {
                Rat ov = bilinear_value(outer_comp.form, *x, inner);
                if (ov.is_zero()) continue;
                LVec key = outer_comp.degree;
                for (std::size_t t = 0; t < key.size(); ++t)
                    key[t] += inner_comp.degree[t] + (*x)[t] + (*y)[t] + (*z)[t];
                acc[std::move(key)] += iv * ov;
            }
        }
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second.is_zero() ? acc.erase(it) : std::next(it);
    return acc;
}

inline std::vector<LVec> certificate_points(const HilbertBasis& e) {
    std::set<LVec> pts(e.elements.begin(), e.elements.end());
    for (std::size_t i = 0; i < e.elements.size(); ++i)
        for (std::size_t j = i; j < e.elements.size(); ++j) {
            LVec s = e.elements[i];
            for (std::size_t t = 0; t < s.size(); ++t) s[t] += e.elements[j][t];
            pts.insert(std::move(s));
        }
    return {pts.begin(), pts.end()};
}

inline LVec random_monoid_point(std::mt19937_64& gen, const HilbertBasis& e) {
    std::uniform_int_distribution<long long> coeff(0, 3);
    LVec out(e.elements.front().size(), 0);
    for (const auto& el : e.elements) {
        long long k = coeff(gen);
        for (std::size_t t = 0; t < out.size(); ++t) out[t] += k * el[t];
    }
    return out;
}

}  // namespace detail

// Pointwise cyclic Jacobi identity over all ordered triples from the Hilbert
// basis and its pairwise sums, plus seeded random semigroup triples. The
// top-weight projection of the self-bracket is evaluated alongside on the
// basis triples and the random triples.
inline JacobiReport jacobi_check(const PoissonStructure& p, const Cone& c, const HilbertBasis& e,
                                 std::size_t extra_samples, std::uint64_t seed = 2026) {
    const std::size_t rank = c.lattice_rank();
    validate_poisson(p, rank);
    JacobiReport report;

    std::vector<std::array<LVec, 3>> triples;
    const std::vector<LVec> pts = detail::certificate_points(e);
    for (const auto& a : pts)
        for (const auto& b : pts)
            for (const auto& cc : pts) triples.push_back({a, b, cc});
    std::mt19937_64 gen(seed);
    std::vector<std::array<LVec, 3>> sampled;
    for (std::size_t s = 0; s < extra_samples; ++s) {
        std::array<LVec, 3> tr{detail::random_monoid_point(gen, e),
                               detail::random_monoid_point(gen, e),
                               detail::random_monoid_point(gen, e)};
        sampled.push_back(tr);
        triples.push_back(std::move(tr));
    }

    constexpr std::size_t kept = 16;
    for (const auto& tr : triples) {
        ++report.triples_checked;
        auto acc = detail::jacobiator(p, c, tr[0], tr[1], tr[2]);
        if (acc.empty()) continue;
        report.pass = false;
        ++report.violation_count;
        if (report.violations.size() < kept)
            report.violations.push_back({tr, acc.begin()->first, acc.begin()->second});
    }

    // Projected self-bracket on a smaller family: basis triples plus samples.
    std::vector<LatticeCochain> comps;
    for (const auto& comp : p.components)
        comps.push_back(LatticeCochain::form(comp.degree, MultiForm(comp.form)));
    std::vector<std::pair<LVec, LatticeCochain>> projected;
    for (const auto& f : comps)
        for (const auto& g : comps) {
            LatticeCochain proj = hodge_project(bracket(f, g), 3);
            projected.emplace_back(proj.degree(), std::move(proj));
        }
    std::vector<std::array<LVec, 3>> small;
    for (const auto& a : e.elements)
        for (const auto& b : e.elements)
            for (const auto& cc : e.elements) small.push_back({a, b, cc});
    small.insert(small.end(), sampled.begin(), sampled.end());
    LatticePredicate pred = monoid_predicate(c);
    for (const auto& tr : small) {
        ++report.projected_checked;
        std::map<LVec, Rat> acc;
        for (const auto& [key, proj] : projected)
            acc[key] += proj.evaluate({tr[0], tr[1], tr[2]}, pred);
        for (const auto& [key, v] : acc)
            if (!v.is_zero()) report.projected_pass = false;
    }
    return report;
}

// A component is well defined exactly when its form lies in the candidate
// space for its degree.
inline bool well_defined_check(const PoissonStructure& p, const Cone& c, const HilbertBasis& e) {
    const std::size_t n = c.lattice_rank();
    validate_poisson(p, n);
    const auto pairs = subsets_lex(n, 2);
    for (const auto& comp : p.components) {
        std::vector<Mat> basis = poisson_space(c, e, comp.degree);
        Mat sys(pairs.size(), basis.size() + 1);
        for (std::size_t col = 0; col < basis.size(); ++col)
            for (std::size_t row = 0; row < pairs.size(); ++row)
                sys.at(row, col) = basis[col].at(pairs[row][0], pairs[row][1]);
        for (std::size_t row = 0; row < pairs.size(); ++row)
            sys.at(row, basis.size()) = comp.form.at(pairs[row][0], pairs[row][1]);
        Mat without(pairs.size(), basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col)
            for (std::size_t row = 0; row < pairs.size(); ++row)
                without.at(row, col) = sys.at(row, col);
        if (rank_kernel(sys).rank != rank_kernel(without).rank) return false;
    }
    return true;
}

}  // namespace toricdef
