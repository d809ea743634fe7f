#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "abloc/abgroup.hpp"
#include "abloc/counterex.hpp"
#include "abloc/homotopy.hpp"

namespace abloc {

using json = nlohmann::json;

/// Malformed input text; `position` is a 0-based character offset.
class SyntaxError : public std::invalid_argument {
public:
    SyntaxError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Well-formed text naming something that does not exist, e.g. 2-torsion
/// over Z[1/2].
class SemanticError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Group expressions:
///
///   expr    := term ('+' term)* ['over' primeset]
///   term    := 'Z' ['^' n] | 'Z/' n | 'Z[1/' n ']' ['^' n] | 'Z_(' p {',' p} ')' ['^' n] | 'Q' ['^' n] | '0'
///
/// The bracketed rings are the display forms of free summands; all free
/// summands must then name the same ring, and it must agree with `over`.
AbGroup parse_group_expr(std::string_view text);

/// Round-trippable grammar form, e.g. "Z^2 + Z/4 + Z/3" or "Z/3 over away:2".
std::string format_group(const AbGroup& g);

/// Display form with the ring folded into the free part and the torsion as
/// invariant factors, e.g. "Z[1/2] ⊕ Z/3" or "Z ⊕ Z/12".
/// `separator` is " ⊕ " for text and " + " for JSON.
std::string display_group(const AbGroup& g, std::string_view separator = " + ");
std::string display_ring(const PrimeSet& ring);

/// `type n=3 pi2=(Z + Z/12) pi3=(Z/5)`; omitted degrees are trivial.
SimplyConnectedDesc parse_desc(std::string_view text);
std::string format_desc(const SimplyConnectedDesc& d);

json to_json(const GroupHom& f);
json matrix_json(const GroupHom& f);
GroupHom hom_from_json(const json& j);

json to_json(const SimplyConnectedDesc& d);
/// {"domain": type, "codomain": type, "levels": [matrix, ...]}
json to_json(const DescMap& f);
DescMap desc_map_from_json(const json& j);

json to_json(const BoundedFn& f);
BoundedFn bounded_fn_from_json(const json& j);
json to_json(const PElem& a);
PElem pelem_from_json(const json& j);

json torsion_json(const std::vector<PrimaryCyclic>& torsion);

}  // namespace abloc
