#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abloc/abgroup.hpp"
#include "abloc/arith.hpp"

namespace abloc {

struct LocalizationResult {
    AbGroup localized;
    GroupHom unit;  ///< G -> G_S
    /// Torsion summands of G killed by the localization.
    std::vector<PrimaryCyclic> deleted_torsion;
    PrimeSet ring_before;
    PrimeSet ring_after;
};

/// Localization of G away from the primes in `inverted`: drop the torsion at
/// those primes and enlarge the ring.  The unit is the identity on surviving
/// generators and zero on the deleted ones.
LocalizationResult localize_group(const AbGroup& g, const PrimeSet& inverted);
LocalizationResult localize_group(const AbGroup& g, const SFamily& family);

struct TelescopeStage {
    AbGroup group;  ///< s(n-1)...s(0) G, the image of the first copy of G at stage n
    AbGroup next;   ///< the group of stage n + 1
    Integer factor; ///< s(n)
    /// Multiplication by s(n) sends generator i of `group` to generator
    /// image[i] of `next`, or to 0 when that summand dies.
    std::vector<std::optional<std::size_t>> image;

    GroupHom transition() const;
};

struct TelescopeTrace {
    std::vector<TelescopeStage> stages;
    std::size_t stabilization_index = 0;
    AbGroup colimit;
};

/// Colimit of G -s(0)-> G -s(1)-> G -> ... with s(n) = S(0)...S(n) along the
/// periodic extension of the family.  Torsion death is detected from the
/// cumulative valuations of the composites; stage n is the image c_n G of the
/// first copy, c_n = s(0)...s(n-1), and every transition sends generators to generators.
TelescopeTrace telescope_colimit(const AbGroup& g, const SFamily& family);
/// Finite prime sets only (each prime becomes a generator); a cofinite set has
/// no finite telescope and is rejected.
TelescopeTrace telescope_colimit(const AbGroup& g, const PrimeSet& inverted);

bool is_uniquely_divisible(const AbGroup& g, const Integer& k);
bool is_uniquely_S_divisible(const AbGroup& g, const SFamily& family);
bool is_uniquely_S_divisible(const AbGroup& g, const PrimeSet& inverted);

/// True iff every element is killed by a product of primes from `inverted`.
bool is_torsion_for(const AbGroup& g, const PrimeSet& inverted);

enum class LocalizationClause { None, CodomainNotLocal, KernelNotTorsion, CokernelNotTorsion };

std::string to_string(LocalizationClause clause);

struct LocalizationCertificate {
    bool codomain_local = false;
    bool kernel_torsion = false;
    bool cokernel_torsion = false;
    AbGroup kernel;
    /// Cokernel over the codomain ring; the full cokernel may additionally
    /// contain divisible torsion when the ring grows (see `ring_growth_torsion`).
    AbGroup cokernel;
    bool ring_growth_torsion = true;

    bool holds() const { return codomain_local && kernel_torsion && cokernel_torsion; }
    /// First failing clause in the order (a) codomain, (b) kernel, (c) cokernel.
    LocalizationClause failed() const;
    /// Every failing clause, in the same order.
    std::vector<LocalizationClause> failures() const;
};

/// Decides whether h : G -> G' is a localization away from the family by the
/// kernel/cokernel torsion criterion.
LocalizationCertificate is_localization(const GroupHom& h, const PrimeSet& inverted);
LocalizationCertificate is_localization(const GroupHom& h, const SFamily& family);

/// The unique f^ with f^ o k = f, namely (k on H)^-1 o f.
GroupHom lift_along_power(const GroupHom& f, const Integer& k);

/// The unique x^ with n x^ = x, found coordinatewise; torsion coordinates by
/// exhaustive search.  Throws std::domain_error if no root or several exist.
Element unique_root(const AbGroup& h, const Element& x, const Integer& n);

struct CommutingRoots {
    Element x_root;
    Element y_root;
    bool commute;
};

CommutingRoots commuting_roots_check(const AbGroup& h, const Element& x, const Element& y, const Integer& n,
                                     const Integer& m);

}  // namespace abloc
