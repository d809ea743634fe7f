#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "abloc/arith.hpp"

namespace abloc {

/// An element of Q/Z, represented in [0, 1).
class QmodZ {
public:
    QmodZ() = default;
    explicit QmodZ(Rational value);

    const Rational& value() const { return value_; }
    QmodZ operator+(const QmodZ& other) const { return QmodZ(value_ + other.value_); }
    QmodZ times(unsigned long k) const { return QmodZ(value_ * k); }

    friend bool operator==(const QmodZ&, const QmodZ&) = default;
    friend bool operator<(const QmodZ& a, const QmodZ& b) { return a.value_ < b.value_; }

private:
    Rational value_ = 0;
};

/// All x with k x = y in Q/Z, in increasing order: (y + j) / k for j < k.
std::vector<QmodZ> divisibility_solutions(const QmodZ& y, unsigned long k);

/// A finitely supported function Q -> Q (the group B under pointwise addition).
class BoundedFn {
public:
    using Support = std::map<Rational, Rational>;

    BoundedFn() = default;
    static BoundedFn delta(const Rational& point, const Rational& value = 1);
    static BoundedFn from_pairs(const std::vector<std::pair<Rational, Rational>>& pairs);

    /// Sorted points with nonzero values.
    const Support& support() const { return support_; }
    Rational operator()(const Rational& x) const;
    bool is_zero() const { return support_.empty(); }

    BoundedFn operator+(const BoundedFn& other) const;
    BoundedFn operator-() const;
    BoundedFn scaled(const Rational& k) const;
    /// x |-> f(x + r)
    BoundedFn translated(const Rational& r) const;

    friend bool operator==(const BoundedFn&, const BoundedFn&) = default;

private:
    void set(const Rational& x, const Rational& v);

    Support support_;
};

/// An element (f, r) of B x| Q, with (f, r)(g, s) = (f + r.g, r + s) and
/// (r.g)(x) = g(x + r).
struct PElem {
    BoundedFn f;
    Rational r = 0;

    friend bool operator==(const PElem&, const PElem&) = default;
};

PElem p_identity();
PElem p_mul(const PElem& a, const PElem& b);
PElem p_inv(const PElem& a);
PElem p_pow(const PElem& a, unsigned long n);

/// Why a root fails to exist: on the coset x0 + step Z the target reads
/// T(z) = sum t_j z^j (t_j the value at x0 + j step), and 1 + z + ... + z^(n-1)
/// does not divide it.
struct CosetObstruction {
    Rational representative;
    Rational step;
    std::vector<Rational> target_coefficients;
    std::vector<Rational> remainder;
    unsigned long n;
};

struct RootResult {
    std::optional<PElem> root;
    std::optional<CosetObstruction> obstruction;

    bool found() const { return root.has_value(); }
};

/// Decides whether target has an n-th root in B x| Q.  The translation part
/// is forced to target.r / n; each coset of that step is then an exact
/// Laurent-polynomial division problem.
RootResult nth_root(const PElem& target, unsigned long n);

/// The unique g in B with k g = f.
BoundedFn b_uniquely_divisible_witness(const BoundedFn& f, unsigned long k);

/// Exact search for an n-th root whose function part is supported in
/// `window`: solves the linear system over Q, so every rational value
/// assignment on the window is covered.
std::optional<PElem> bounded_root_search(const PElem& target, unsigned long n, const std::vector<Rational>& window);

/// The points of {lo, lo + 1/d, ..., hi}.
std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi, unsigned long d);

}  // namespace abloc
