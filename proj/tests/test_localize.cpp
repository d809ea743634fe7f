#include "doctest.h"

#include <algorithm>
#include <random>

#include "abloc/enumerate.hpp"
#include "abloc/localize.hpp"
#include "oracles.hpp"

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
    std::uniform_int_distribution<unsigned> exp(1, 4);
    const Prime primes[] = {2, 3, 5, 7};
    std::vector<PrimaryCyclic> t;
    for (int i = count(rng); i > 0; --i)
        t.push_back({primes[pick(rng)], exp(rng)});
    return AbGroup({}, rank(rng), t);
}

SFamily random_family(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<std::uint64_t> gen(1, 10);
    std::vector<std::uint64_t> g;
    for (int i = len(rng); i > 0; --i)
        g.push_back(gen(rng));
    return SFamily(g);
}

/// Image of multiplication by c, via the cokernel of the power map.
AbGroup image_of_power(const AbGroup& g, const Integer& c)
{
    return kernel(cokernel(power_map(g, c)).projection).group;
}

}  // namespace

TEST_CASE("localize examples")
{
    const auto r = localize_group(cyclic({12}, {}, 1), SFamily({2}));
    CHECK(r.localized == cyclic({3}, PrimeSet::finite({2}), 1));
    CHECK(r.deleted_torsion == std::vector<PrimaryCyclic>{{2, 2}});
    CHECK(r.unit.apply({0, 1, 0}).at(1) == 0);
    CHECK(r.unit.apply({0, 0, 1}).at(1) == 1);
    CHECK(telescope_colimit(cyclic({12}, {}, 1), SFamily({2})).colimit == r.localized);

    const AbGroup g = cyclic({12, 5}, {}, 2);
    const auto same = localize_group(g, SFamily({1}));
    CHECK(same.localized == g);
    CHECK(same.unit == GroupHom::identity(g));

    CHECK(localize_group(cyclic({50}), PrimeSet::at(5)).localized == cyclic({25}, PrimeSet::at(5)));
    CHECK(telescope_colimit(cyclic({50}), SFamily({2})).colimit.torsion() == std::vector<PrimaryCyclic>{{5, 2}});

    const auto z = localize_group(cyclic({}, {}, 1), PrimeSet::at(5));
    CHECK(z.localized == cyclic({}, PrimeSet::at(5), 1));
}

TEST_CASE("telescope examples")
{
    const auto z8 = telescope_colimit(cyclic({8}), SFamily({2}));
    // Transitions s(0) = 2, s(1) = 4: the composite reaches 8 after two steps.
    CHECK(z8.stabilization_index == 2);
    CHECK(z8.colimit.is_trivial());
    CHECK(z8.stages.at(0).factor == 2);
    CHECK(z8.stages.at(1).factor == 4);
    CHECK(z8.stages.at(1).group == cyclic({4}));
    CHECK(z8.stages.at(2).group.is_trivial());

    // Element enumeration: 2 * 4 = 8 kills Z/8 while 2 alone does not.
    CHECK(oracle::image_size(compose(power_map(cyclic({8}), 4), power_map(cyclic({8}), 2))) == 1);
    CHECK(oracle::image_size(power_map(cyclic({8}), 2)) == 4);

    const auto z3 = telescope_colimit(cyclic({3}), SFamily({2}));
    CHECK(z3.stabilization_index == 0);
    CHECK(z3.colimit == cyclic({3}, PrimeSet::finite({2})));
    CHECK(is_isomorphism(z3.stages.at(0).transition()));

    const auto z = telescope_colimit(cyclic({}, {}, 1), SFamily({2}));
    CHECK(z.colimit == cyclic({}, PrimeSet::finite({2}), 1));

    CHECK_THROWS_AS(telescope_colimit(cyclic({4}), PrimeSet::at(5)), std::domain_error);
    CHECK(telescope_colimit(cyclic({4}), PrimeSet::none()).colimit == cyclic({4}));
    CHECK(telescope_colimit(cyclic({4, 9}), PrimeSet::finite({3})).colimit == cyclic({4}, PrimeSet::finite({3})));
}

TEST_CASE("telescope stages agree with the image of the composite power map")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        const AbGroup g = random_group(rng);
        const SFamily s = random_family(rng);
        const auto trace = telescope_colimit(g, s);
        Integer c = 1;
        for (std::size_t n = 0; n < trace.stages.size(); ++n) {
            const auto& stage = trace.stages[n];
            CHECK(stage.group == image_of_power(g, c));
            CHECK(stage.factor == s.running_product(n));
            CHECK(stage.transition().domain() == stage.group);
            // Stage n+1 is the image of stage n under s(n).
            CHECK(stage.transition().codomain() == image_of_power(stage.group, stage.factor));
            CHECK(is_surjective(stage.transition()));
            if (n >= trace.stabilization_index)
                CHECK(is_isomorphism(stage.transition()));
            if (n + 1 == trace.stabilization_index)
                CHECK_FALSE(is_isomorphism(stage.transition()));
            c *= stage.factor;
        }
    }
}

TEST_CASE("telescope agrees with the direct formula")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const AbGroup g = random_group(rng);
        const SFamily s = random_family(rng);
        CHECK(telescope_colimit(g, s).colimit == localize_group(g, s).localized);
    }
}

TEST_CASE("shifting the telescope keeps the colimit")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const AbGroup g = random_group(rng);
        const SFamily s = random_family(rng);
        const auto trace = telescope_colimit(g, s);
        const AbGroup stage1 = image_of_power(g, s.at(0));
        CHECK(telescope_colimit(stage1, s.shifted()).colimit == trace.colimit);
    }
}

TEST_CASE("localization properties")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const AbGroup g = random_group(rng);
        const SFamily s = random_family(rng);
        const auto once = localize_group(g, s);
        CHECK(once.ring_after == g.ring().union_with(s.inverted_primes()));
        CHECK(once.localized.ring() == once.ring_after);
        CHECK(once.unit.domain() == g);
        CHECK(once.unit.codomain() == once.localized);
        CHECK(is_localization(once.unit, s).holds());
        CHECK(is_uniquely_S_divisible(once.localized, s));
        const auto twice = localize_group(once.localized, s);
        CHECK(twice.localized == once.localized);
        CHECK(is_isomorphism(twice.unit));
    }
}

TEST_CASE("unique divisibility")
{
    CHECK(is_uniquely_divisible(cyclic({3}), 2));
    CHECK_FALSE(is_uniquely_divisible(cyclic({}, {}, 1), 2));
    CHECK(is_uniquely_divisible(cyclic({}, PrimeSet::finite({2}), 1), 2));
    CHECK_FALSE(is_uniquely_divisible(cyclic({4}), 6));
    CHECK(is_uniquely_divisible(cyclic({}, {}, 1), 1));

    CHECK(is_uniquely_S_divisible(cyclic({3}), PrimeSet::finite({2})));
    CHECK_FALSE(is_uniquely_S_divisible(cyclic({3}, {}, 1), PrimeSet::finite({2})));
    CHECK_FALSE(is_uniquely_S_divisible(cyclic({12}), PrimeSet::at(5)));
    CHECK_FALSE(is_isomorphism(power_map(cyclic({12}), 2)));
    CHECK(is_uniquely_S_divisible(cyclic({25}, PrimeSet::at(5), 1), PrimeSet::at(5)));
    CHECK(is_uniquely_S_divisible(cyclic({7}), SFamily({2, 3})));

    // Agreement with bijectivity of the power map.
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const AbGroup g = random_group(rng);
        std::uniform_int_distribution<long> k(1, 12);
        const Integer n = k(rng);
        CHECK(is_uniquely_divisible(g, n) == is_isomorphism(power_map(g, n)));
    }
}

TEST_CASE("localization decision")
{
    const auto unit = localize_group(cyclic({12}), SFamily({2})).unit;
    CHECK(unit.codomain() == cyclic({3}, PrimeSet::finite({2})));
    CHECK(is_localization(unit, SFamily({2})).holds());
    CHECK(is_localization(GroupHom::identity(cyclic({3})), SFamily({2})).holds());
    const auto not_local = is_localization(GroupHom::identity(cyclic({12})), SFamily({2}));
    CHECK_FALSE(not_local.holds());
    CHECK(not_local.failed() == LocalizationClause::CodomainNotLocal);

    const AbGroup z = cyclic({}, {}, 1);
    const AbGroup z_half = cyclic({}, PrimeSet::finite({2}), 1);
    const auto zero = is_localization(GroupHom::zero(z, z_half), SFamily({2}));
    CHECK(zero.failed() == LocalizationClause::KernelNotTorsion);
    const auto zero_from_point = is_localization(GroupHom::zero(cyclic({}), z_half), SFamily({2}));
    CHECK(zero_from_point.failed() == LocalizationClause::CokernelNotTorsion);

    // Z -> Z[1/2] is the localization away from 2, but not away from nothing:
    // its cokernel Z[1/2]/Z is 2-torsion.
    GroupHom inc(z, z_half, {{1}});
    CHECK(is_localization(inc, SFamily({2})).holds());
    const auto trivial_family = is_localization(inc, SFamily({1}));
    CHECK(trivial_family.failed() == LocalizationClause::CokernelNotTorsion);
    CHECK_FALSE(trivial_family.ring_growth_torsion);

    // Kernel with 3-torsion is not 2-torsion.
    GroupHom kill3(cyclic({3}), cyclic({}), {});
    CHECK(is_localization(kill3, SFamily({2})).failed() == LocalizationClause::KernelNotTorsion);
    CHECK(is_localization(kill3, SFamily({3})).holds());
    // Multiplication by 2 on Z[1/3]... over Z_(3) is an isomorphism.
    CHECK(is_localization(power_map(cyclic({}, PrimeSet::at(3), 1), 2), PrimeSet::at(3)).holds());
}

TEST_CASE("localization decision agrees with the universal property")
{
    const PrimeSet two = PrimeSet::finite({2});
    const auto catalog = oracle::catalog(30, 2, two);
    for (const AbGroup& g : {cyclic({12}), cyclic({30}), cyclic({8, 9})}) {
        const auto unit = localize_group(g, SFamily({2})).unit;
        for (const auto& h : catalog)
            CHECK(oracle::precomposition_bijective(unit, h));
    }
    // A map that fails the decision also fails the universal property for
    // some local H.
    const AbGroup z12 = cyclic({12});
    GroupHom wrong(z12, cyclic({3}, two), {{0, 0}});
    CHECK_FALSE(is_localization(wrong, SFamily({2})).holds());
    bool some_failure = false;
    for (const auto& h : catalog)
        some_failure = some_failure || !oracle::precomposition_bijective(wrong, h);
    CHECK(some_failure);
}

TEST_CASE("lifting along power maps")
{
    const AbGroup z5 = cyclic({5});
    CHECK(lift_along_power(GroupHom::identity(z5), 2) == power_map(z5, 3));
    CHECK(lift_along_power(GroupHom::zero(cyclic({4}), z5), 3).is_zero());
    const AbGroup z = cyclic({}, {}, 1);
    const AbGroup z_half = cyclic({}, PrimeSet::finite({2}), 1);
    CHECK(lift_along_power(GroupHom(z, z_half, {{1}}), 2).entry(0, 0) == Rational(1, 2));
    CHECK_THROWS_AS(lift_along_power(GroupHom::identity(cyclic({4})), 2), std::domain_error);

    // Uniqueness for every f at once: g |-> g o k permutes Hom(G, H).
    const auto groups = oracle::catalog(20, 1);
    for (long k : {2, 3, 4})
        for (const auto& g : groups)
            for (const auto& h : groups) {
                if (!is_uniquely_divisible(h, k) || hom_count(g, h) > 5000)
                    continue;
                const auto homs = enumerate_homs(g, h);
                std::vector<std::string> before, after;
                for (const auto& f : homs) {
                    const GroupHom lift = lift_along_power(f, k);
                    CHECK(compose(lift, power_map(g, k)) == f);
                    before.push_back(oracle::matrix_key(f));
                    after.push_back(oracle::matrix_key(compose(f, power_map(g, k))));
                }
                std::sort(before.begin(), before.end());
                std::sort(after.begin(), after.end());
                CHECK(std::adjacent_find(after.begin(), after.end()) == after.end());
                CHECK(before == after);
            }
}

TEST_CASE("commuting roots")
{
    const AbGroup z5 = cyclic({5});
    const auto a = commuting_roots_check(z5, {1}, {2}, 2, 3);
    CHECK(a.commute);
    CHECK(a.x_root == Element{3});
    CHECK(a.y_root == Element{4});

    const auto b = commuting_roots_check(cyclic({3}), {0}, {0}, 2, 2);
    CHECK(b.x_root == Element{0});
    CHECK(b.y_root == Element{0});

    // Z/15 = Z/3 + Z/5; 1 is (1, 1).
    const auto c = commuting_roots_check(cyclic({15}), {1, 1}, {1, 1}, 2, 4);
    CHECK(c.commute);
    CHECK(scale(cyclic({15}), c.x_root, 2) == Element{1, 1});
    CHECK(scale(cyclic({15}), c.y_root, 4) == Element{1, 1});

    CHECK_THROWS_AS(unique_root(cyclic({4}), {1}, 2), std::domain_error);
    CHECK_THROWS_AS(unique_root(cyclic({4}), {2}, 2), std::domain_error);
    CHECK_THROWS_AS(unique_root(cyclic({}, {}, 1), {1}, 2), std::domain_error);
    CHECK(unique_root(cyclic({}, PrimeSet::finite({2}), 1), {1}, 4) == Element{Rational(1, 4)});

    // Exhaustive: in Z/n with gcd(k, n) = 1 every element has exactly one root.
    for (long n = 1; n <= 30; ++n)
        for (long k = 1; k <= 6; ++k) {
            if (std::gcd(n, k) != 1)
                continue;
            const AbGroup g = cyclic({n});
            for (const auto& x : oracle::elements(oracle::cyclic_orders(g))) {
                Element e(x.begin(), x.end());
                CHECK(scale(g, unique_root(g, e, k), k) == reduce(g, e));
            }
        }
}
