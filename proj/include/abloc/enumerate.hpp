#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abloc/abgroup.hpp"
#include "abloc/counterex.hpp"

namespace abloc {

/// |Hom(G, H)| for finite G, H: the product of gcd(d_j, e_i) over all
/// generator pairs.
Integer hom_count(const AbGroup& g, const AbGroup& h);

/// Every homomorphism G -> H of finite groups, in mixed-radix order over the
/// matrix entries (row-major, last entry fastest).  The parallel kernel
/// decodes each index independently; the serial version walks an odometer.
std::vector<GroupHom> enumerate_homs(const AbGroup& g, const AbGroup& h);
std::vector<GroupHom> enumerate_homs_serial(const AbGroup& g, const AbGroup& h);

struct GridSearchResult {
    std::uint64_t candidates = 0;
    std::uint64_t matches = 0;
    std::optional<PElem> first_match;
};

/// Brute force over every g = (f, translation) with f taking a value from
/// `values` at each of `points`: counts the g with p_pow(g, n) == target.
GridSearchResult grid_root_search(const PElem& target, unsigned long n, const Rational& translation,
                                  const std::vector<Rational>& points, const std::vector<Rational>& values);
GridSearchResult grid_root_search_serial(const PElem& target, unsigned long n, const Rational& translation,
                                         const std::vector<Rational>& points, const std::vector<Rational>& values);

}  // namespace abloc
