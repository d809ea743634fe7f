#include "doctest.h"

#include <random>

#include "abloc/homotopy.hpp"

using namespace abloc;

namespace {

AbGroup cyclic(std::initializer_list<long> orders, PrimeSet ring = {}, std::size_t rank = 0)
{
    std::vector<Integer> v;
    for (long n : orders)
        v.emplace_back(n);
    return AbGroup::from_cyclic_orders(ring, rank, v);
}

AbGroup random_group(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> rank(0, 2);
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<unsigned> exp(1, 3);
    const Prime primes[] = {2, 3, 5, 7};
    std::vector<PrimaryCyclic> t;
    for (int i = count(rng); i > 0; --i)
        t.push_back({primes[pick(rng)], exp(rng)});
    return AbGroup({}, rank(rng), t);
}

SimplyConnectedDesc random_desc(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> n(1, 5);
    const int truncation = n(rng);
    std::vector<AbGroup> groups;
    for (int m = 2; m <= truncation; ++m)
        groups.push_back(random_group(rng));
    return SimplyConnectedDesc(truncation, groups);
}

SFamily random_family(std::mt19937_64& rng)
{
    const std::uint64_t pool[] = {1, 2, 3, 4, 5, 6, 10};
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<int> pick(0, 6);
    std::vector<std::uint64_t> g;
    for (int i = len(rng); i > 0; --i)
        g.push_back(pool[pick(rng)]);
    return SFamily(g);
}

}  // namespace

TEST_CASE("descriptor validation")
{
    CHECK_THROWS_AS(SimplyConnectedDesc(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(SimplyConnectedDesc(3, {cyclic({2})}), std::invalid_argument);
    SimplyConnectedDesc d(3, {cyclic({}, {}, 1), cyclic({12})});
    CHECK(d.pi(3) == cyclic({12}));
    CHECK_THROWS_AS(d.pi(1), std::out_of_range);
    CHECK_THROWS_AS(d.pi(4), std::out_of_range);

    SimplyConnectedDesc e(2, {cyclic({12})});
    CHECK_THROWS_AS(DescMap(d, e, {GroupHom::identity(cyclic({12}))}), std::invalid_argument);
    CHECK_THROWS_AS(DescMap(e, e, {GroupHom::identity(cyclic({3}))}), std::invalid_argument);
    CHECK_NOTHROW(DescMap(e, e, {GroupHom::identity(cyclic({12}))}));
}

TEST_CASE("local descriptors")
{
    CHECK(is_local_desc(SimplyConnectedDesc(2, {cyclic({3})}), SFamily({2})));
    CHECK_FALSE(is_local_desc(SimplyConnectedDesc(2, {cyclic({}, {}, 1)}), SFamily({2})));
    CHECK(is_local_desc(SimplyConnectedDesc(3, {cyclic({}, PrimeSet::finite({2}), 1), cyclic({3})}), SFamily({2})));
    CHECK(is_local_desc(SimplyConnectedDesc(1, {}), SFamily({2})));
}

TEST_CASE("localizing descriptors")
{
    SimplyConnectedDesc d(3, {cyclic({}, {}, 1), cyclic({12})});
    const auto r = localize_desc(d, SFamily({2}));
    CHECK(r.localized.groups() ==
          std::vector<AbGroup>{cyclic({}, PrimeSet::finite({2}), 1), cyclic({3}, PrimeSet::finite({2}))});
    for (std::size_t i = 0; i < d.groups().size(); ++i)
        CHECK(r.unit.levels()[i] == localize_group(d.groups()[i], SFamily({2})).unit);

    const auto same = localize_desc(d, SFamily({1}));
    CHECK(same.localized == d);
    for (std::size_t i = 0; i < d.groups().size(); ++i)
        CHECK(same.unit.levels()[i] == GroupHom::identity(d.groups()[i]));

    SimplyConnectedDesc seven(2, {cyclic({7})});
    const auto r7 = localize_desc(seven, SFamily({2, 3}));
    CHECK(r7.localized.pi(2) == cyclic({7}, PrimeSet::finite({2, 3})));
    CHECK(is_isomorphism(r7.unit.levels()[0]));
}

TEST_CASE("Eilenberg-Mac Lane localization")
{
    const auto a = em_localize(EMDescriptor(cyclic({12}), 2), SFamily({2}));
    CHECK(a.localized.group == cyclic({3}, PrimeSet::finite({2})));
    CHECK(a.localized.degree == 2);
    const EMDescriptor k(cyclic({6}, {}, 1), 3);
    CHECK(em_localize(k, SFamily({1})).localized == k);
    const auto c = em_localize(EMDescriptor(cyclic({}, {}, 1), 1), PrimeSet::at(5));
    CHECK(c.localized.group == cyclic({}, PrimeSet::at(5), 1));
    CHECK(c.localized.degree == 1);
    for (std::uint64_t n : {2, 3, 6, 10}) {
        const auto z = em_localize(EMDescriptor(cyclic({}, {}, 1), 1), SFamily({n}));
        CHECK(z.localized.group.rank() == 1);
        CHECK(z.localized.group.ring() == SFamily({n}).inverted_primes());
    }
    CHECK_THROWS_AS(EMDescriptor(cyclic({2}), 0), std::invalid_argument);
    CHECK_THROWS_AS(EMDescriptor(cyclic({2}), 1).as_desc(), std::domain_error);
    CHECK(EMDescriptor(cyclic({2}), 3).as_desc().pi(3) == cyclic({2}));
    CHECK(EMDescriptor(cyclic({2}), 3).as_desc().pi(2).is_trivial());
}

TEST_CASE("localization maps")
{
    SimplyConnectedDesc d(3, {cyclic({}, {}, 1), cyclic({12})});
    CHECK(is_localization_map(localize_desc(d, SFamily({2})).unit, SFamily({2})).holds());

    SimplyConnectedDesc local(3, {cyclic({}, PrimeSet::finite({2}), 1), cyclic({3})});
    std::vector<GroupHom> ids;
    for (const auto& g : local.groups())
        ids.push_back(GroupHom::identity(g));
    CHECK(is_localization_map(DescMap(local, local, ids), SFamily({2})).holds());

    const AbGroup z = cyclic({}, {}, 1);
    const AbGroup z_half = cyclic({}, PrimeSet::finite({2}), 1);
    DescMap zero(SimplyConnectedDesc(2, {z}), SimplyConnectedDesc(2, {z_half}), {GroupHom::zero(z, z_half)});
    const auto cert = is_localization_map(zero, SFamily({2}));
    CHECK_FALSE(cert.holds());
    CHECK(cert.first_failure() == 2);
    CHECK_FALSE(cert.levels[0].cokernel_torsion);
    CHECK(cert.levels[0].cokernel == z_half);

    // Failure at degree 3 only.
    SimplyConnectedDesc src(3, {cyclic({3}), cyclic({4})});
    SimplyConnectedDesc dst(3, {cyclic({3}), cyclic({4})});
    const auto at3 = is_localization_map(
        DescMap(src, dst, {GroupHom::identity(cyclic({3})), GroupHom::identity(cyclic({4}))}), SFamily({2}));
    CHECK(at3.first_failure() == 3);
    CHECK(at3.levels[1].failed() == LocalizationClause::CodomainNotLocal);
}

TEST_CASE("descriptor properties")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = random_desc(rng);
        const auto s = random_family(rng);
        const auto once = localize_desc(d, s);
        CHECK(is_local_desc(once.localized, s));
        const auto cert = is_localization_map(once.unit, s);
        CHECK(cert.holds());
        CHECK_FALSE(cert.first_failure().has_value());

        const auto twice = localize_desc(once.localized, s);
        CHECK(twice.localized == once.localized);
        for (const auto& level : twice.unit.levels())
            CHECK(is_isomorphism(level));

        for (int n = 1; n <= 3; ++n)
            for (const auto& g : d.groups()) {
                const auto em = em_localize(EMDescriptor(g, n), s);
                CHECK(em.localized.degree == n);
                CHECK(em.localized.group == localize_group(g, s).localized);
            }
    }
}

TEST_CASE("maps passing the criterion have local codomains")
{
    std::mt19937_64 rng(43);
    int passing = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto d = random_desc(rng);
        const auto s = random_family(rng);
        // Identity maps and localization units, some of which pass.
        std::vector<GroupHom> ids;
        for (const auto& g : d.groups())
            ids.push_back(GroupHom::identity(g));
        for (const DescMap& f : {DescMap(d, d, ids), localize_desc(d, s).unit}) {
            if (is_localization_map(f, s).holds()) {
                ++passing;
                CHECK(is_local_desc(f.codomain(), s));
            }
        }
    }
    CHECK(passing > 300);
}
