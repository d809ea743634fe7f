#include "abloc/homotopy.hpp"

#include <algorithm>
#include <stdexcept>

namespace abloc {

SimplyConnectedDesc::SimplyConnectedDesc(int truncation, std::vector<AbGroup> groups)
    : truncation_(truncation), groups_(std::move(groups))
{
    if (truncation_ < 1)
        throw std::invalid_argument("truncation level must be at least 1");
    if (groups_.size() != static_cast<std::size_t>(truncation_ - 1))
        throw std::invalid_argument("an n-type needs exactly n-1 groups pi_2..pi_n");
}

const AbGroup& SimplyConnectedDesc::pi(int m) const
{
    if (m < 2 || m > truncation_)
        throw std::out_of_range("pi_" + std::to_string(m) + " is not recorded");
    return groups_[static_cast<std::size_t>(m - 2)];
}

DescMap::DescMap(SimplyConnectedDesc domain, SimplyConnectedDesc codomain, std::vector<GroupHom> levels)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), levels_(std::move(levels))
{
    if (domain_.truncation() != codomain_.truncation())
        throw std::invalid_argument("descriptor map: truncation levels differ");
    if (levels_.size() != domain_.groups().size())
        throw std::invalid_argument("descriptor map: need one homomorphism per degree");
    for (std::size_t i = 0; i < levels_.size(); ++i)
        if (!(levels_[i].domain() == domain_.groups()[i]) || !(levels_[i].codomain() == codomain_.groups()[i]))
            throw std::invalid_argument("descriptor map: level " + std::to_string(i + 2) +
                                        " does not match the homotopy groups");
}

EMDescriptor::EMDescriptor(AbGroup g, int n) : group(std::move(g)), degree(n)
{
    if (degree < 1)
        throw std::invalid_argument("Eilenberg-Mac Lane degree must be at least 1");
}

SimplyConnectedDesc EMDescriptor::as_desc() const
{
    if (degree < 2)
        throw std::domain_error("K(G,1) is not simply connected");
    std::vector<AbGroup> groups(static_cast<std::size_t>(degree - 1), AbGroup(group.ring(), 0, {}));
    groups.back() = group;
    return SimplyConnectedDesc(degree, std::move(groups));
}

bool is_local_desc(const SimplyConnectedDesc& type, const SFamily& family)
{
    return std::all_of(type.groups().begin(), type.groups().end(),
                       [&](const AbGroup& g) { return is_uniquely_S_divisible(g, family); });
}

bool is_local_desc(const SimplyConnectedDesc& type, const PrimeSet& inverted)
{
    return std::all_of(type.groups().begin(), type.groups().end(),
                       [&](const AbGroup& g) { return is_uniquely_S_divisible(g, inverted); });
}

DescLocalization localize_desc(const SimplyConnectedDesc& type, const PrimeSet& inverted)
{
    std::vector<AbGroup> groups;
    std::vector<GroupHom> units;
    for (const auto& g : type.groups()) {
        auto r = localize_group(g, inverted);
        groups.push_back(r.localized);
        units.push_back(std::move(r.unit));
    }
    SimplyConnectedDesc localized(type.truncation(), std::move(groups));
    DescMap unit(type, localized, std::move(units));
    return {std::move(localized), std::move(unit)};
}

DescLocalization localize_desc(const SimplyConnectedDesc& type, const SFamily& family)
{
    return localize_desc(type, family.inverted_primes());
}

EMLocalization em_localize(const EMDescriptor& k, const PrimeSet& inverted)
{
    auto r = localize_group(k.group, inverted);
    return {EMDescriptor(std::move(r.localized), k.degree), std::move(r.unit)};
}

EMLocalization em_localize(const EMDescriptor& k, const SFamily& family)
{
    return em_localize(k, family.inverted_primes());
}

bool MapCertificate::holds() const
{
    return std::all_of(levels.begin(), levels.end(), [](const LocalizationCertificate& c) { return c.holds(); });
}

std::optional<int> MapCertificate::first_failure() const
{
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (!levels[i].holds())
            return static_cast<int>(i) + 2;
    return std::nullopt;
}

MapCertificate is_localization_map(const DescMap& f, const PrimeSet& inverted)
{
    MapCertificate cert;
    for (const auto& level : f.levels())
        cert.levels.push_back(is_localization(level, inverted));
    return cert;
}

MapCertificate is_localization_map(const DescMap& f, const SFamily& family)
{
    return is_localization_map(f, family.inverted_primes());
}

}  // namespace abloc
