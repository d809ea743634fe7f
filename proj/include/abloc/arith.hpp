#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace abloc {

using Integer = mpz_class;
using Rational = mpq_class;
using Prime = std::uint64_t;

/// Exponent map of a positive integer, keyed by prime.
using Factorization = std::map<Prime, unsigned>;

Factorization prime_factorization(const Integer& n);
bool is_prime(std::uint64_t n);

/// Exponent of p in q; q must be nonzero.
long valuation(Prime p, const Rational& q);
unsigned valuation(Prime p, const Integer& n);

Integer pow(Prime p, unsigned e);
Integer inverse_mod(const Integer& a, const Integer& m);

/// Canonical "num/den" (or "num" for integers) text, and its inverse.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// A set T of inverted primes: either finite, or all primes outside a finite
/// exclusion list.  Z_T denotes the integers with the primes of T inverted.
class PrimeSet {
public:
    enum class Kind { Finite, Cofinite };

    PrimeSet() = default;
    static PrimeSet finite(std::vector<Prime> primes);
    static PrimeSet cofinite(std::vector<Prime> excluded);
    static PrimeSet none() { return {}; }
    static PrimeSet all() { return cofinite({}); }
    /// Everything except p, the ring Z_(p).
    static PrimeSet at(Prime p) { return cofinite({p}); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_cofinite() const { return kind_ == Kind::Cofinite; }
    /// Listed primes: the members when finite, the exclusions when cofinite.
    const std::vector<Prime>& listed() const { return primes_; }
    bool empty() const { return is_finite() && primes_.empty(); }

    bool contains(Prime p) const;
    bool is_subset_of(const PrimeSet& other) const;
    PrimeSet union_with(const PrimeSet& other) const;
    PrimeSet intersect(const PrimeSet& other) const;
    PrimeSet minus(const PrimeSet& other) const;

    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

private:
    PrimeSet(Kind kind, std::vector<Prime> primes) : kind_(kind), primes_(std::move(primes)) {}

    Kind kind_ = Kind::Finite;
    std::vector<Prime> primes_;
};

/// True iff q is a unit of Z_T, i.e. only primes of T occur in q.  q != 0.
bool is_unit(const Rational& q, const PrimeSet& ring);
/// True iff q lies in Z_T (its denominator is a unit).
bool in_ring(const Rational& q, const PrimeSet& ring);
/// Strips every prime of T out of n (n != 0); the result is n up to a unit of Z_T.
Integer strip_units(const Integer& n, const PrimeSet& ring);

/// `away:2,3`, `at:5`, `none`, `all`.
PrimeSet parse_prime_set(std::string_view text);
std::string to_string(const PrimeSet& set);

/// A finite family of positive integers.  Beyond the listed generators the
/// family repeats periodically, so S(i) = generators[i mod length].
class SFamily {
public:
    explicit SFamily(std::vector<std::uint64_t> generators);

    const std::vector<std::uint64_t>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    std::uint64_t at(std::size_t i) const { return generators_[i % generators_.size()]; }

    /// s(n) = S(0) * ... * S(n), for 0 <= n < size().
    Integer s_product(std::size_t n) const;
    /// Running product along the periodic extension; no upper bound on n.
    Integer running_product(std::size_t n) const;
    PrimeSet inverted_primes() const;
    /// The family n |-> S(n+1): the first generator moves to the end.
    SFamily shifted() const;

    friend bool operator==(const SFamily&, const SFamily&) = default;

private:
    std::vector<std::uint64_t> generators_;
};

/// `S=2,3,2` or `2,3,2`.
SFamily parse_family(std::string_view text);
std::string to_string(const SFamily& family);

}  // namespace abloc
