#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "abloc/arith.hpp"
#include "abloc/matrix.hpp"

namespace abloc {

/// A cyclic summand Z/q^a.
struct PrimaryCyclic {
    Prime prime;
    unsigned exponent;

    Integer order() const { return pow(prime, exponent); }
    friend auto operator<=>(const PrimaryCyclic&, const PrimaryCyclic&) = default;
};

/// A finitely generated Z_T-module in primary canonical form:
/// Z_T^rank + Z/q1^a1 + ... with the torsion list sorted and no q_i in T.
///
/// Generators are ordered free-first, then torsion in list order.  Two groups
/// compare equal iff they are isomorphic over the same ring.
class AbGroup {
public:
    AbGroup() = default;
    AbGroup(PrimeSet ring, std::size_t rank, std::vector<PrimaryCyclic> torsion);

    /// Z_T^rank + Z/n_1 + Z/n_2 + ...; the n_i are split into prime powers and
    /// primes of T are dropped (they are units).  n_i = 0 adds a free summand.
    static AbGroup from_cyclic_orders(PrimeSet ring, std::size_t rank, const std::vector<Integer>& orders);

    const PrimeSet& ring() const { return ring_; }
    std::size_t rank() const { return rank_; }
    const std::vector<PrimaryCyclic>& torsion() const { return torsion_; }

    std::size_t generator_count() const { return rank_ + torsion_.size(); }
    /// Order of generator i; 0 for the free generators.
    Integer generator_order(std::size_t i) const;
    bool is_free_generator(std::size_t i) const { return i < rank_; }

    bool is_finite() const { return rank_ == 0; }
    bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
    /// Cardinality of a finite group.
    Integer order() const;
    /// Distinct primes occurring in the torsion.
    std::vector<Prime> torsion_primes() const;

    friend bool operator==(const AbGroup&, const AbGroup&) = default;

private:
    PrimeSet ring_;
    std::size_t rank_ = 0;
    std::vector<PrimaryCyclic> torsion_;
};

/// Coordinates over the canonical generators: free coordinates in Z_T,
/// torsion coordinates as residues in [0, order).
using Element = std::vector<Rational>;

Element zero_element(const AbGroup& g);
/// Canonical representative; throws if a coordinate does not lie in the ring.
Element reduce(const AbGroup& g, Element x);
Element add(const AbGroup& g, const Element& a, const Element& b);
Element scale(const AbGroup& g, const Element& a, const Rational& k);

/// A homomorphism between canonical groups.  The matrix has one row per
/// codomain generator and one column per domain generator, with entries in
/// the codomain ring; torsion rows are stored as residues.
class GroupHom {
public:
    using Matrix = std::vector<std::vector<Rational>>;

    /// Validates ring inclusion, entry membership and well-definedness.
    GroupHom(AbGroup domain, AbGroup codomain, Matrix matrix);

    static GroupHom identity(const AbGroup& g);
    static GroupHom zero(const AbGroup& domain, const AbGroup& codomain);

    const AbGroup& domain() const { return domain_; }
    const AbGroup& codomain() const { return codomain_; }
    const Rational& entry(std::size_t row, std::size_t col) const { return entries_[row * cols() + col]; }
    std::size_t rows() const { return codomain_.generator_count(); }
    std::size_t cols() const { return domain_.generator_count(); }
    Matrix matrix() const;

    Element apply(const Element& x) const;
    bool is_zero() const;

    friend bool operator==(const GroupHom&, const GroupHom&) = default;

private:
    AbGroup domain_;
    AbGroup codomain_;
    std::vector<Rational> entries_;
};

/// g after f.
GroupHom compose(const GroupHom& g, const GroupHom& f);

/// Multiplication by k on g.
GroupHom power_map(const AbGroup& g, const Integer& k);

struct Subgroup {
    AbGroup group;
    GroupHom inclusion;
};

struct Quotient {
    AbGroup group;
    GroupHom projection;
};

Subgroup kernel(const GroupHom& f);

/// Cokernel in the category of modules over the codomain ring, i.e.
/// H / (Z_T' * im f).  When the rings of f agree this is H / im f.
Quotient cokernel(const GroupHom& f);

/// Rank of the image (rank of the free block over Q).
std::size_t image_rank(const GroupHom& f);

bool is_injective(const GroupHom& f);
/// Surjectivity onto H itself, not only onto H / Z_T' * im f.
bool is_surjective(const GroupHom& f);
bool is_isomorphism(const GroupHom& f);

/// coker of the relation rows (each row a relation among n generators),
/// tensored with Z_T, in canonical form.
AbGroup group_from_presentation(std::size_t generators, const IntMatrix& relations, const PrimeSet& ring);

/// A presentation brought to canonical form, with the change of coordinates.
struct CanonicalPresentation {
    AbGroup group;
    /// canonical generators x original generators; maps old coordinates to new.
    IntMatrix to_canonical;
    /// original generators x canonical generators; images of the new generators.
    IntMatrix from_canonical;
};

CanonicalPresentation canonicalize(std::size_t generators, const IntMatrix& relations, const PrimeSet& ring);

}  // namespace abloc
