#pragma once

// Exact arbitrary-precision integers and rationals, plus the dense rational
// matrix operations the rest of the library is built on: rank and kernel,
// Hermite and Smith normal forms, and wedge (compound) matrices of minors.
// No floating point anywhere; every comparison is exact.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricdef {

// Signed arbitrary-precision integer, sign-and-magnitude. Limbs are base 1e9
// stored least significant first, which makes decimal conversion cheap and
// keeps all intermediate products inside uint64. Zero is canonically the
// empty limb vector with positive sign.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        neg_ = v < 0;
        auto u = static_cast<unsigned long long>(v);
        if (neg_) u = ~u + 1ull;
        while (u > 0) {
            mag_.push_back(static_cast<std::uint32_t>(u % kBase));
            u /= kBase;
        }
    }

    explicit BigInt(const std::string& s) {
        std::size_t pos = 0;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            neg_ = s[pos] == '-';
            ++pos;
        }
        if (pos == s.size())
            throw std::invalid_argument("BigInt: empty digit string");
        for (std::size_t i = pos; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("BigInt: invalid digit in '" + s + "'");
        std::size_t end = s.size();
        while (end > pos) {
            std::size_t begin = end >= pos + 9 ? end - 9 : pos;
            std::uint32_t limb = 0;
            for (std::size_t i = begin; i < end; ++i)
                limb = limb * 10 + static_cast<std::uint32_t>(s[i] - '0');
            mag_.push_back(limb);
            end = begin;
        }
        trim(mag_);
        if (mag_.empty()) neg_ = false;
    }

    bool is_zero() const { return mag_.empty(); }
    int sign() const { return mag_.empty() ? 0 : (neg_ ? -1 : 1); }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.mag_.empty()) r.neg_ = !r.neg_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        r.neg_ = false;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.neg_ == b.neg_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.neg_ = a.neg_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return r;
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.neg_ = a.neg_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.neg_ = b.neg_;
            }
        }
        if (r.mag_.empty()) r.neg_ = false;
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.is_zero() || b.is_zero()) return r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.neg_ = a.neg_ != b.neg_;
        return r;
    }

    // Quotient truncates toward zero; the remainder carries the dividend's
    // sign, matching built-in integer semantics.
    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt q, r;
        divmod_mag(a.mag_, b.mag_, q.mag_, r.mag_);
        q.neg_ = !q.mag_.empty() && (a.neg_ != b.neg_);
        r.neg_ = !r.mag_.empty() && a.neg_;
        return {q, r};
    }

    // Floor division: the unique q with a = q*b + r, 0 <= r < |b| for b > 0
    // (and 0 >= r > b for b < 0). Used for Hermite-form residue reduction.
    static BigInt fdiv(const BigInt& a, const BigInt& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero() && (r.neg_ != b.neg_)) q = q - BigInt(1);
        return q;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.neg_ = false;
        b.neg_ = false;
        while (!b.is_zero()) {
            BigInt t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static BigInt lcm(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt(0);
        return (a / gcd(a, b) * b).abs();
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.neg_ == b.neg_ && a.mag_ == b.mag_;
    }

    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.neg_ != b.neg_)
            return a.neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
        int c = cmp_mag(a.mag_, b.mag_);
        if (a.neg_) c = -c;
        return c < 0    ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    std::string to_string() const {
        if (mag_.empty()) return "0";
        std::string out = neg_ ? "-" : "";
        out += std::to_string(mag_.back());
        for (std::size_t i = mag_.size() - 1; i-- > 0;) {
            std::string limb = std::to_string(mag_[i]);
            out += std::string(9 - limb.size(), '0') + limb;
        }
        return out;
    }

    // Conversion for callers that know the value is small; exact or throws.
    long long to_long_long() const {
        long long r = 0;
        for (std::size_t i = mag_.size(); i-- > 0;) {
            if (r > (std::numeric_limits<long long>::max() - static_cast<long long>(mag_[i])) /
                        static_cast<long long>(kBase))
                throw std::overflow_error("BigInt: value does not fit in long long");
            r = r * static_cast<long long>(kBase) + static_cast<long long>(mag_[i]);
        }
        return neg_ ? -r : r;
    }

private:
    static constexpr std::uint32_t kBase = 1000000000u;

    bool neg_ = false;
    std::vector<std::uint32_t> mag_;

    static void trim(std::vector<std::uint32_t>& m) {
        while (!m.empty() && m.back() == 0) m.pop_back();
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            std::uint32_t s = carry;
            if (i < a.size()) s += a[i];
            if (i < b.size()) s += b[i];
            carry = s >= kBase ? 1 : 0;
            r[i] = s >= kBase ? s - kBase : s;
        }
        r[r.size() - 1] = carry;
        trim(r);
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t t = static_cast<std::int64_t>(a[i]) - borrow -
                             (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            if (t < 0) {
                t += kBase;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(t);
        }
        trim(r);
        return r;
    }

    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = r[i + j] +
                                    static_cast<std::uint64_t>(a[i]) * b[j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
            }
            std::size_t k = i + b.size();
            while (carry > 0) {
                std::uint64_t cur = r[k] + carry;
                r[k] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
                ++k;
            }
        }
        trim(r);
        return r;
    }

    static void mul_small(std::vector<std::uint32_t>& a, std::uint32_t f) {
        std::uint64_t carry = 0;
        for (auto& limb : a) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
            limb = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        while (carry > 0) {
            a.push_back(static_cast<std::uint32_t>(carry % kBase));
            carry /= kBase;
        }
    }

    static std::uint32_t div_small(std::vector<std::uint32_t>& a, std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            std::uint64_t cur = rem * kBase + a[i];
            a[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim(a);
        return static_cast<std::uint32_t>(rem);
    }

    // Knuth algorithm D on base-1e9 limbs. The divisor is scaled so its top
    // limb is at least half the base; then the two-limb quotient estimate is
    // off by at most one and a single conditional add-back suffices.
    static void divmod_mag(const std::vector<std::uint32_t>& u0,
                           const std::vector<std::uint32_t>& v0,
                           std::vector<std::uint32_t>& q,
                           std::vector<std::uint32_t>& r) {
        q.clear();
        r.clear();
        if (cmp_mag(u0, v0) < 0) {
            r = u0;
            return;
        }
        if (v0.size() == 1) {
            std::vector<std::uint32_t> t = u0;
            std::uint32_t rem = div_small(t, v0[0]);
            q = std::move(t);
            if (rem) r.push_back(rem);
            return;
        }
        std::vector<std::uint32_t> u = u0, v = v0;
        std::uint32_t scale =
            static_cast<std::uint32_t>(kBase / (static_cast<std::uint64_t>(v.back()) + 1));
        if (scale > 1) {
            mul_small(u, scale);
            mul_small(v, scale);
        }
        while (v.back() < kBase / 2) {
            mul_small(u, 2);
            mul_small(v, 2);
            scale *= 2;
        }
        const std::size_t m = v.size();
        const std::size_t n = u.size();
        u.push_back(0);
        q.assign(n - m + 1, 0);
        for (std::size_t j = n - m + 1; j-- > 0;) {
            std::uint64_t top = static_cast<std::uint64_t>(u[j + m]) * kBase + u[j + m - 1];
            std::uint64_t qhat = top / v[m - 1];
            std::uint64_t rhat = top % v[m - 1];
            while (qhat >= kBase ||
                   qhat * v[m - 2] > rhat * kBase + u[j + m - 2]) {
                --qhat;
                rhat += v[m - 1];
                if (rhat >= kBase) break;
            }
            std::uint64_t carry = 0;
            std::int64_t borrow = 0;
            for (std::size_t k = 0; k < m; ++k) {
                std::uint64_t p = qhat * v[k] + carry;
                carry = p / kBase;
                std::int64_t t = static_cast<std::int64_t>(u[j + k]) -
                                 static_cast<std::int64_t>(p % kBase) - borrow;
                if (t < 0) {
                    t += kBase;
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[j + k] = static_cast<std::uint32_t>(t);
            }
            std::int64_t t = static_cast<std::int64_t>(u[j + m]) -
                             static_cast<std::int64_t>(carry) - borrow;
            if (t < 0) {
                --qhat;
                std::uint64_t c = 0;
                for (std::size_t k = 0; k < m; ++k) {
                    std::uint64_t s = static_cast<std::uint64_t>(u[j + k]) + v[k] + c;
                    u[j + k] = static_cast<std::uint32_t>(s % kBase);
                    c = s / kBase;
                }
                t += static_cast<std::int64_t>(c);
            }
            u[j + m] = static_cast<std::uint32_t>(t);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        trim(q);
        u.resize(m);
        std::uint32_t rem_scale = div_small(u, scale);
        if (rem_scale != 0)
            throw std::logic_error("BigInt: internal division scaling error");
        r = std::move(u);
        trim(r);
    }
};

// Exact rational number. Always stored reduced with a positive denominator;
// zero is canonically 0/1.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(BigInt n) : num_(std::move(n)), den_(1) {}

    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        reduce();
    }

    Rat(long long n, long long d) : Rat(BigInt(n), BigInt(d)) {}

    // Accepts "p" or "p/q" in decimal.
    explicit Rat(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            num_ = BigInt(s);
            den_ = BigInt(1);
        } else {
            num_ = BigInt(s.substr(0, slash));
            den_ = BigInt(s.substr(slash + 1));
            if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
            reduce();
        }
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }
    bool is_integer() const { return den_ == BigInt(1); }

    Rat operator-() const {
        Rat r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rat abs() const {
        Rat r = *this;
        r.num_ = r.num_.abs();
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    std::string to_string() const {
        if (is_integer()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_;
    BigInt den_;

    void reduce() {
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

// Dense rational matrix, row-major. Operations never mutate their inputs;
// builders fill entries through at() and then treat the value as frozen.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
        return m;
    }

    static Mat from_rows(const std::vector<std::vector<Rat>>& rows) {
        std::size_t nc = rows.empty() ? 0 : rows[0].size();
        Mat m(rows.size(), nc);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != nc)
                throw std::invalid_argument("Mat: ragged row list");
            for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    static Mat from_int_rows(const std::vector<std::vector<long long>>& rows) {
        std::size_t nc = rows.empty() ? 0 : rows[0].size();
        Mat m(rows.size(), nc);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != nc)
                throw std::invalid_argument("Mat: ragged row list");
            for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = Rat(rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    std::vector<Rat> col(std::size_t j) const {
        std::vector<Rat> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Rat> row(std::size_t i) const {
        std::vector<Rat> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: size mismatch in product");
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Mat: size mismatch in sum");
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
        return r;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Mat: size mismatch in difference");
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> a_;
};

// Reduced row echelon form. Returns the transformed matrix together with the
// list of pivot columns (strictly increasing).
inline std::pair<Mat, std::vector<std::size_t>> rref(Mat m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m.at(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

struct RankKernel {
    std::size_t rank = 0;
    Mat kernel_basis;  // one column per free variable of the echelon form
};

// Column rank and a basis of the right null space. The basis is canonical:
// each free column contributes the vector with a 1 in its own slot and the
// negated echelon entries in the pivot slots.
inline RankKernel rank_kernel(const Mat& m) {
    auto [r, pivots] = rref(m);
    RankKernel out;
    out.rank = pivots.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    out.kernel_basis = Mat(m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        out.kernel_basis.at(fc, k) = Rat(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            out.kernel_basis.at(pivots[i], k) = -r.at(i, fc);
    }
    return out;
}

inline Rat det(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    Mat a = m;
    Rat d(1);
    for (std::size_t col = 0; col < a.cols(); ++col) {
        std::size_t p = col;
        while (p < a.rows() && a.at(p, col).is_zero()) ++p;
        if (p == a.rows()) return Rat(0);
        if (p != col) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(col, j));
            d = -d;
        }
        d = d * a.at(col, col);
        Rat inv = Rat(1) / a.at(col, col);
        for (std::size_t i = col + 1; i < a.rows(); ++i) {
            if (a.at(i, col).is_zero()) continue;
            Rat f = a.at(i, col) * inv;
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(col, j);
        }
    }
    return d;
}

inline Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    std::size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Rat(1);
    }
    auto [r, pivots] = rref(std::move(aug));
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("inverse: matrix is singular");
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.at(i, n + j);
    return inv;
}

// Solves A X = B exactly. Returns nullopt when the system is inconsistent;
// free variables (if any) are set to zero, so for full column rank the
// solution is the unique one.
inline std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: size mismatch");
    Mat aug(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug.at(i, a.cols() + j) = b.at(i, j);
    }
    auto [r, pivots] = rref(std::move(aug));
    for (auto c : pivots)
        if (c >= a.cols()) return std::nullopt;
    Mat x(a.cols(), b.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x.at(pivots[i], j) = r.at(i, a.cols() + j);
    return x;
}

namespace detail {

// Integer grid used internally by the normal-form routines.
using IGrid = std::vector<std::vector<BigInt>>;

inline IGrid to_grid(const Mat& m) {
    IGrid g(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m.at(i, j).is_integer())
                throw std::domain_error("normal_forms: matrix must have integer entries");
            g[i][j] = m.at(i, j).num();
        }
    return g;
}

inline Mat from_grid(const IGrid& g) {
    Mat m(g.size(), g.empty() ? 0 : g[0].size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g[i].size(); ++j) m.at(i, j) = Rat(g[i][j]);
    return m;
}

inline void add_col(IGrid& g, std::size_t dst, std::size_t src, const BigInt& f) {
    for (auto& row : g) row[dst] = row[dst] + f * row[src];
}

inline void swap_col(IGrid& g, std::size_t a, std::size_t b) {
    for (auto& row : g) std::swap(row[a], row[b]);
}

inline void negate_col(IGrid& g, std::size_t c) {
    for (auto& row : g) row[c] = -row[c];
}

}  // namespace detail

struct NormalForms {
    Mat hermite;                        // column-style Hermite normal form
    std::vector<BigInt> smith_invariants;  // nonzero elementary divisors d1 | d2 | ...
};

namespace detail {

// Column Hermite reduction; mirrors every column operation on *u when given,
// so that (input) * U = (output) with U unimodular.
inline void hnf_inplace(IGrid& g, IGrid* u) {
    std::size_t rows = g.size(), cols = rows ? g[0].size() : 0;
    std::size_t pc = 0;
    for (std::size_t row = 0; row < rows && pc < cols; ++row) {
        bool any = false;
        for (std::size_t j = pc; j < cols; ++j)
            if (!g[row][j].is_zero()) any = true;
        if (!any) continue;
        // Euclidean sweep: shrink this row's entries right of pc until only
        // the pivot survives, then clear it from the columns on the left.
        for (;;) {
            std::size_t best = cols;
            for (std::size_t j = pc; j < cols; ++j) {
                if (g[row][j].is_zero()) continue;
                if (best == cols || g[row][j].abs() < g[row][best].abs()) best = j;
            }
            if (best != pc) {
                swap_col(g, pc, best);
                if (u) swap_col(*u, pc, best);
            }
            bool clean = true;
            for (std::size_t j = pc + 1; j < cols; ++j) {
                if (g[row][j].is_zero()) continue;
                BigInt q = g[row][j] / g[row][pc];
                add_col(g, j, pc, -q);
                if (u) add_col(*u, j, pc, -q);
                if (!g[row][j].is_zero()) clean = false;
            }
            if (clean) break;
        }
        if (g[row][pc].sign() < 0) {
            negate_col(g, pc);
            if (u) negate_col(*u, pc);
        }
        for (std::size_t j = 0; j < pc; ++j) {
            BigInt q = BigInt::fdiv(g[row][j], g[row][pc]);
            if (!q.is_zero()) {
                add_col(g, j, pc, -q);
                if (u) add_col(*u, j, pc, -q);
            }
        }
        ++pc;
    }
}

}  // namespace detail

// Column-style Hermite normal form: unimodular column operations only, pivot
// entries positive, zeros to the right of each pivot in its row, and entries
// to the left of a pivot reduced into [0, pivot).
inline Mat hermite_normal_form(const Mat& m) {
    detail::IGrid g = detail::to_grid(m);
    detail::hnf_inplace(g, nullptr);
    return detail::from_grid(g);
}

// Hermite form together with the unimodular transform: m * U = H.
inline std::pair<Mat, Mat> hermite_with_transform(const Mat& m) {
    detail::IGrid g = detail::to_grid(m);
    detail::IGrid u(m.cols(), std::vector<BigInt>(m.cols(), BigInt(0)));
    for (std::size_t i = 0; i < m.cols(); ++i) u[i][i] = BigInt(1);
    detail::hnf_inplace(g, &u);
    // from_grid needs a consistent column count even when m has no rows
    Mat h = m.rows() ? detail::from_grid(g) : Mat(0, m.cols());
    return {h, detail::from_grid(u)};
}

// Basis of the integer kernel {x in Z^cols : m x = 0}; an integer kernel is
// automatically saturated in Z^cols.
inline Mat integer_kernel(const Mat& m) {
    auto [h, u] = hermite_with_transform(m);
    std::vector<std::size_t> zero_cols;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (!h.at(i, j).is_zero()) zero = false;
        if (zero) zero_cols.push_back(j);
    }
    Mat k(m.cols(), zero_cols.size());
    for (std::size_t a = 0; a < zero_cols.size(); ++a)
        for (std::size_t i = 0; i < m.cols(); ++i) k.at(i, a) = u.at(i, zero_cols[a]);
    return k;
}

// Integer basis of span_Q(columns of m) ∩ Z^rows, i.e. the saturation of the
// column lattice. Computed as the integer kernel of the left-kernel rows.
inline Mat saturated_span_basis(const Mat& m) {
    Mat left = integer_kernel(m.transpose());  // rows x (rows - rank) basis of left kernel
    return integer_kernel(left.transpose());
}

inline std::vector<BigInt> smith_invariants(const Mat& m) {
    detail::IGrid g = detail::to_grid(m);
    std::size_t rows = g.size(), cols = rows ? g[0].size() : 0;
    std::vector<BigInt> inv;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // locate the smallest nonzero entry in the trailing block
        std::size_t bi = rows, bj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (g[i][j].is_zero()) continue;
                if (bi == rows || g[i][j].abs() < g[bi][bj].abs()) {
                    bi = i;
                    bj = j;
                }
            }
        if (bi == rows) break;
        std::swap(g[t], g[bi]);
        detail::swap_col(g, t, bj);
        bool dirty = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (g[i][t].is_zero()) continue;
            BigInt q = g[i][t] / g[t][t];
            for (std::size_t j = t; j < cols; ++j) g[i][j] = g[i][j] - q * g[t][j];
            if (!g[i][t].is_zero()) dirty = true;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (g[t][j].is_zero()) continue;
            BigInt q = g[t][j] / g[t][t];
            detail::add_col(g, j, t, -q);
            if (!g[t][j].is_zero()) dirty = true;
        }
        if (dirty) continue;
        // corner clean; enforce that it divides everything that remains
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols && divides; ++j)
                if (!(g[i][j] % g[t][t]).is_zero()) {
                    for (std::size_t c = t; c < cols; ++c) g[t][c] = g[t][c] + g[i][c];
                    divides = false;
                }
        if (!divides) continue;
        inv.push_back(g[t][t].abs());
        ++t;
    }
    return inv;
}

inline NormalForms normal_forms(const Mat& m) {
    return NormalForms{hermite_normal_form(m), smith_invariants(m)};
}

inline std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All k-element subsets of {0,...,n-1}, each sorted, listed lexicographically.
inline std::vector<std::vector<std::size_t>> subsets_lex(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        if (k == 0) break;
        std::size_t i = k;
        while (i-- > 0) {
            if (cur[i] != i + n - k) {
                ++cur[i];
                for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
    }
    return out;
}

namespace detail {

inline Rat minor_det(const Mat& m, const std::vector<std::size_t>& ri,
                     const std::vector<std::size_t>& ci) {
    Mat sub(ri.size(), ci.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
        for (std::size_t j = 0; j < ci.size(); ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
    return det(sub);
}

// Compound matrix for any i >= 0, allowing degenerate shapes: C(rows,i) x
// C(cols,i) with zero dimensions when i exceeds a side. i = 0 gives the 1x1
// identity.
inline Mat compound(const Mat& m, std::size_t i) {
    auto rows_sets = subsets_lex(m.rows(), i);
    auto cols_sets = subsets_lex(m.cols(), i);
    Mat w(rows_sets.size(), cols_sets.size());
    for (std::size_t a = 0; a < rows_sets.size(); ++a)
        for (std::size_t b = 0; b < cols_sets.size(); ++b)
            w.at(a, b) = minor_det(m, rows_sets[a], cols_sets[b]);
    return w;
}

}  // namespace detail

// Wedge power of a matrix: the entry at (I, J), for lexicographically ordered
// i-subsets I of rows and J of cols, is the minor det M[I, J].
inline Mat wedge_matrix(const Mat& m, std::size_t i) {
    if (i < 1 || i > std::min(m.rows(), m.cols()))
        throw std::domain_error("wedge_matrix: index out of range");
    return detail::compound(m, i);
}

// Scales a rational vector to coprime integers, making the first nonzero
// entry positive. Zero vectors map to zero.
inline std::vector<BigInt> primitive_integer_vector(const std::vector<Rat>& v) {
    BigInt l(1);
    for (const auto& x : v)
        if (!x.is_zero()) l = BigInt::lcm(l, x.den());
    std::vector<BigInt> w(v.size());
    BigInt g(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = v[i].num() * (l / v[i].den());
        g = BigInt::gcd(g, w[i]);
    }
    if (g.is_zero()) return w;
    int lead = 0;
    for (const auto& x : w)
        if (!x.is_zero()) {
            lead = x.sign();
            break;
        }
    if (lead < 0) g = -g;
    for (auto& x : w) x = x / g;
    return w;
}

}  // namespace toricdef
