#include "abloc/localize.hpp"

#include <algorithm>
#include <stdexcept>

namespace abloc {

LocalizationResult localize_group(const AbGroup& g, const PrimeSet& inverted)
{
    PrimeSet ring = g.ring().union_with(inverted);
    std::vector<PrimaryCyclic> kept;
    std::vector<PrimaryCyclic> deleted;
    std::vector<std::size_t> source;  // domain generator feeding each kept summand
    for (std::size_t i = 0; i < g.torsion().size(); ++i) {
        const auto& c = g.torsion()[i];
        if (inverted.contains(c.prime)) {
            deleted.push_back(c);
        } else {
            kept.push_back(c);
            source.push_back(g.rank() + i);
        }
    }
    AbGroup localized(ring, g.rank(), kept);
    GroupHom::Matrix m(localized.generator_count(), std::vector<Rational>(g.generator_count(), Rational(0)));
    for (std::size_t i = 0; i < g.rank(); ++i)
        m[i][i] = 1;
    for (std::size_t k = 0; k < source.size(); ++k)
        m[g.rank() + k][source[k]] = 1;
    GroupHom unit(g, localized, std::move(m));
    return {std::move(localized), std::move(unit), std::move(deleted), g.ring(), std::move(ring)};
}

LocalizationResult localize_group(const AbGroup& g, const SFamily& family)
{
    return localize_group(g, family.inverted_primes());
}

GroupHom TelescopeStage::transition() const
{
    GroupHom::Matrix m(next.generator_count(), std::vector<Rational>(group.generator_count(), Rational(0)));
    for (std::size_t i = 0; i < image.size(); ++i)
        if (image[i])
            m[*image[i]][i] = 1;
    return GroupHom(group, next, std::move(m));
}

TelescopeTrace telescope_colimit(const AbGroup& g, const SFamily& family)
{
    const std::size_t period = family.size();
    const auto& torsion = g.torsion();

    auto small_valuation = [](Prime q, std::uint64_t x) {
        unsigned v = 0;
        for (; x != 0 && x % q == 0; x /= q)
            ++v;
        return v;
    };

    // For summand k: step[k][i] = v_q(S(i mod period)) and the q-valuation of
    // s(n) is the prefix sum; c_n = s(0)...s(n-1) has valuation used(k, n).
    std::vector<std::vector<unsigned>> step(torsion.size());
    std::vector<unsigned long> per_period(torsion.size(), 0);
    for (std::size_t k = 0; k < torsion.size(); ++k) {
        for (std::size_t i = 0; i < period; ++i) {
            step[k].push_back(small_valuation(torsion[k].prime, family.at(i)));
            per_period[k] += step[k].back();
        }
    }
    auto s_valuation = [&](std::size_t k, std::size_t n) {
        const std::size_t full = (n + 1) / period, rest = (n + 1) % period;
        unsigned long v = full * per_period[k];
        for (std::size_t i = 0; i < rest; ++i)
            v += step[k][i];
        return v;
    };

    // Stage n holds c_n G; Z/q^a becomes Z/q^(a - v_q(c_n)).  A summand dies at
    // the first n with v_q(c_n) >= a, which exists iff q divides a generator.
    std::vector<std::optional<std::size_t>> death(torsion.size());
    std::size_t stable = 0;
    for (std::size_t k = 0; k < torsion.size(); ++k) {
        if (per_period[k] == 0)
            continue;
        unsigned long cumulative = 0;
        std::size_t n = 0;
        while (cumulative < torsion[k].exponent)
            cumulative += s_valuation(k, n++);
        death[k] = n;
        stable = std::max(stable, n);
    }

    // used[k] = v_q(c_n) for the stage being built.
    std::vector<unsigned long> used(torsion.size(), 0);
    auto stage_group = [&](std::size_t n, std::vector<std::optional<std::size_t>>& position) {
        std::vector<PrimaryCyclic> left;
        std::vector<std::size_t> owner;
        for (std::size_t k = 0; k < torsion.size(); ++k) {
            if (death[k] && *death[k] <= n)
                continue;
            left.push_back({torsion[k].prime, torsion[k].exponent - static_cast<unsigned>(used[k])});
            owner.push_back(k);
        }
        // Canonical order may permute the summands; remember where each lands.
        std::vector<std::size_t> order(left.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return left[a] < left[b]; });
        position.assign(torsion.size(), std::nullopt);
        for (std::size_t slot = 0; slot < order.size(); ++slot)
            position[owner[order[slot]]] = g.rank() + slot;
        return AbGroup(g.ring(), g.rank(), left);
    };

    TelescopeTrace trace;
    trace.stabilization_index = stable;
    std::vector<std::optional<std::size_t>> here;
    std::vector<std::optional<std::size_t>> next;
    AbGroup current = stage_group(0, here);
    Integer s = 1;
    for (std::size_t n = 0; n <= stable; ++n) {
        s *= family.at(n);
        for (std::size_t k = 0; k < torsion.size(); ++k)
            used[k] += s_valuation(k, n);
        AbGroup following = stage_group(n + 1, next);
        // c_n x  |->  s(n) c_n x = c_(n+1) x : generator to generator.
        std::vector<std::optional<std::size_t>> image(current.generator_count());
        for (std::size_t i = 0; i < g.rank(); ++i)
            image[i] = i;
        for (std::size_t k = 0; k < torsion.size(); ++k)
            if (here[k] && next[k])
                image[*here[k]] = *next[k];
        trace.stages.push_back({std::move(current), following, s, std::move(image)});
        current = std::move(following);
        here = next;
    }

    const AbGroup& last = trace.stages.back().next;
    trace.colimit = AbGroup(g.ring().union_with(family.inverted_primes()), last.rank(), last.torsion());
    return trace;
}

TelescopeTrace telescope_colimit(const AbGroup& g, const PrimeSet& inverted)
{
    if (inverted.is_cofinite())
        throw std::domain_error("telescope_colimit: a cofinite prime set cannot be enumerated as a sequence");
    if (inverted.listed().empty())
        return telescope_colimit(g, SFamily({1}));
    return telescope_colimit(g, SFamily(inverted.listed()));
}

bool is_uniquely_divisible(const AbGroup& g, const Integer& k)
{
    if (k < 1)
        throw std::invalid_argument("is_uniquely_divisible: k must be positive");
    const auto torsion_primes = g.torsion_primes();
    for (auto [p, e] : prime_factorization(k)) {
        if (g.rank() > 0 && !g.ring().contains(p))
            return false;
        if (std::binary_search(torsion_primes.begin(), torsion_primes.end(), p))
            return false;
    }
    return true;
}

bool is_uniquely_S_divisible(const AbGroup& g, const SFamily& family)
{
    return std::all_of(family.generators().begin(), family.generators().end(),
                       [&](std::uint64_t k) { return is_uniquely_divisible(g, Integer(k)); });
}

bool is_uniquely_S_divisible(const AbGroup& g, const PrimeSet& inverted)
{
    if (g.rank() > 0 && !inverted.is_subset_of(g.ring()))
        return false;
    const auto torsion_primes = g.torsion_primes();
    return std::none_of(torsion_primes.begin(), torsion_primes.end(),
                        [&](Prime q) { return inverted.contains(q); });
}

bool is_torsion_for(const AbGroup& g, const PrimeSet& inverted)
{
    const auto torsion_primes = g.torsion_primes();
    return g.rank() == 0 &&
           std::all_of(torsion_primes.begin(), torsion_primes.end(), [&](Prime q) { return inverted.contains(q); });
}

std::string to_string(LocalizationClause clause)
{
    switch (clause) {
    case LocalizationClause::None:
        return "none";
    case LocalizationClause::CodomainNotLocal:
        return "codomain not uniquely S-divisible";
    case LocalizationClause::KernelNotTorsion:
        return "kernel not S-torsion";
    case LocalizationClause::CokernelNotTorsion:
        return "cokernel not S-torsion";
    }
    return "unknown";
}

LocalizationClause LocalizationCertificate::failed() const
{
    if (!codomain_local)
        return LocalizationClause::CodomainNotLocal;
    if (!kernel_torsion)
        return LocalizationClause::KernelNotTorsion;
    if (!cokernel_torsion)
        return LocalizationClause::CokernelNotTorsion;
    return LocalizationClause::None;
}

std::vector<LocalizationClause> LocalizationCertificate::failures() const
{
    std::vector<LocalizationClause> out;
    if (!codomain_local)
        out.push_back(LocalizationClause::CodomainNotLocal);
    if (!kernel_torsion)
        out.push_back(LocalizationClause::KernelNotTorsion);
    if (!cokernel_torsion)
        out.push_back(LocalizationClause::CokernelNotTorsion);
    return out;
}

LocalizationCertificate is_localization(const GroupHom& h, const PrimeSet& inverted)
{
    LocalizationCertificate cert;
    cert.codomain_local = is_uniquely_S_divisible(h.codomain(), inverted);
    cert.kernel = kernel(h).group;
    cert.kernel_torsion = is_torsion_for(cert.kernel, inverted);
    cert.cokernel = cokernel(h).group;
    // Z_T' im h / im h is nonzero exactly when the image has free rank and the
    // ring grew; it is then torsion at the new primes T' \ T.
    cert.ring_growth_torsion =
        image_rank(h) == 0 || h.codomain().ring().minus(h.domain().ring()).is_subset_of(inverted);
    cert.cokernel_torsion = is_torsion_for(cert.cokernel, inverted) && cert.ring_growth_torsion;
    return cert;
}

LocalizationCertificate is_localization(const GroupHom& h, const SFamily& family)
{
    return is_localization(h, family.inverted_primes());
}

GroupHom lift_along_power(const GroupHom& f, const Integer& k)
{
    const AbGroup& h = f.codomain();
    if (!is_uniquely_divisible(h, k))
        throw std::domain_error("lift_along_power: codomain is not uniquely " + k.get_str() + "-divisible");
    GroupHom::Matrix m = f.matrix();
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Integer order = h.generator_order(i);
        const Rational inverse = order == 0 ? Rational(1) / Rational(k) : Rational(inverse_mod(k, order));
        for (auto& entry : m[i])
            entry *= inverse;
    }
    return GroupHom(f.domain(), h, std::move(m));
}

Element unique_root(const AbGroup& h, const Element& x, const Integer& n)
{
    if (n < 1)
        throw std::invalid_argument("unique_root: n must be positive");
    Element target = reduce(h, x);
    Element root(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (h.is_free_generator(i)) {
            root[i] = target[i] / Rational(n);
            if (!in_ring(root[i], h.ring()))
                throw std::domain_error("no " + n.get_str() + "-th root: coordinate " + std::to_string(i) +
                                        " is not divisible in the ring");
            continue;
        }
        const Integer order = h.generator_order(i);
        std::size_t found = 0;
        for (Integer r = 0; r < order; ++r) {
            Integer v = n * r - Integer(target[i].get_num());
            if (mpz_divisible_p(v.get_mpz_t(), order.get_mpz_t())) {
                if (found++ == 0)
                    root[i] = Rational(r);
            }
        }
        if (found == 0)
            throw std::domain_error("no " + n.get_str() + "-th root in component " + std::to_string(i));
        if (found > 1)
            throw std::domain_error(n.get_str() + "-th root is not unique in component " + std::to_string(i));
    }
    return root;
}

CommutingRoots commuting_roots_check(const AbGroup& h, const Element& x, const Element& y, const Integer& n,
                                     const Integer& m)
{
    Element xr = unique_root(h, x, n);
    Element yr = unique_root(h, y, m);
    if (scale(h, xr, Rational(n)) != reduce(h, x) || scale(h, yr, Rational(m)) != reduce(h, y))
        throw std::logic_error("commuting_roots_check: computed root does not reproduce its power");
    bool commute = add(h, xr, yr) == add(h, yr, xr);
    return {std::move(xr), std::move(yr), commute};
}

}  // namespace abloc
