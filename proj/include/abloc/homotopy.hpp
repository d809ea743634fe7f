#pragma once

#include <optional>
#include <vector>

#include "abloc/abgroup.hpp"
#include "abloc/localize.hpp"

namespace abloc {

/// A pointed, simply connected n-type recorded by its homotopy groups
/// pi_2 .. pi_n (pi_1 is trivial and omitted).
class SimplyConnectedDesc {
public:
    SimplyConnectedDesc(int truncation, std::vector<AbGroup> groups);

    int truncation() const { return truncation_; }
    const std::vector<AbGroup>& groups() const { return groups_; }
    /// pi_m for 2 <= m <= n.
    const AbGroup& pi(int m) const;

    friend bool operator==(const SimplyConnectedDesc&, const SimplyConnectedDesc&) = default;

private:
    int truncation_;
    std::vector<AbGroup> groups_;
};

/// The maps pi_m(f) for m = 2..n.
class DescMap {
public:
    DescMap(SimplyConnectedDesc domain, SimplyConnectedDesc codomain, std::vector<GroupHom> levels);

    const SimplyConnectedDesc& domain() const { return domain_; }
    const SimplyConnectedDesc& codomain() const { return codomain_; }
    const std::vector<GroupHom>& levels() const { return levels_; }

    friend bool operator==(const DescMap&, const DescMap&) = default;

private:
    SimplyConnectedDesc domain_;
    SimplyConnectedDesc codomain_;
    std::vector<GroupHom> levels_;
};

/// K(G, n).
struct EMDescriptor {
    AbGroup group;
    int degree;

    EMDescriptor(AbGroup g, int n);
    SimplyConnectedDesc as_desc() const;
    friend bool operator==(const EMDescriptor&, const EMDescriptor&) = default;
};

bool is_local_desc(const SimplyConnectedDesc& type, const SFamily& family);
bool is_local_desc(const SimplyConnectedDesc& type, const PrimeSet& inverted);

struct DescLocalization {
    SimplyConnectedDesc localized;
    DescMap unit;
};

DescLocalization localize_desc(const SimplyConnectedDesc& type, const SFamily& family);
DescLocalization localize_desc(const SimplyConnectedDesc& type, const PrimeSet& inverted);

struct EMLocalization {
    EMDescriptor localized;
    GroupHom unit;
};

EMLocalization em_localize(const EMDescriptor& k, const SFamily& family);
EMLocalization em_localize(const EMDescriptor& k, const PrimeSet& inverted);

struct MapCertificate {
    /// One certificate per degree m = 2..n.
    std::vector<LocalizationCertificate> levels;

    bool holds() const;
    /// Degree m of the first failing level.
    std::optional<int> first_failure() const;
};

/// Checks the localization criterion on every pi_m(f).
MapCertificate is_localization_map(const DescMap& f, const SFamily& family);
MapCertificate is_localization_map(const DescMap& f, const PrimeSet& inverted);

}  // namespace abloc
