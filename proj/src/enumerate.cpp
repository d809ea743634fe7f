#include "abloc/enumerate.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace abloc {

namespace {

constexpr std::uint64_t kMaxCandidates = 1'000'000'000;

/// Admissible values of one matrix entry: multiples of e / gcd(d, e).
struct EntryChoices {
    Integer step;
    std::uint64_t count;
};

std::vector<EntryChoices> entry_choices(const AbGroup& g, const AbGroup& h)
{
    if (!g.is_finite() || !h.is_finite())
        throw std::domain_error("enumerate_homs: both groups must be finite");
    std::vector<EntryChoices> out;
    for (std::size_t i = 0; i < h.generator_count(); ++i) {
        const Integer e = h.generator_order(i);
        for (std::size_t j = 0; j < g.generator_count(); ++j) {
            Integer d = g.generator_order(j);
            Integer common;
            mpz_gcd(common.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
            out.push_back({e / common, common.get_ui()});
        }
    }
    return out;
}

std::uint64_t total(const std::vector<EntryChoices>& choices)
{
    std::uint64_t n = 1;
    for (const auto& c : choices) {
        if (n > kMaxCandidates / c.count)
            throw std::length_error("enumeration exceeds " + std::to_string(kMaxCandidates) + " candidates");
        n *= c.count;
    }
    return n;
}

GroupHom build(const AbGroup& g, const AbGroup& h, const std::vector<EntryChoices>& choices,
               const std::vector<std::uint64_t>& digits)
{
    GroupHom::Matrix m(h.generator_count(), std::vector<Rational>(g.generator_count()));
    for (std::size_t k = 0; k < choices.size(); ++k)
        m[k / g.generator_count()][k % g.generator_count()] = Rational(choices[k].step * digits[k]);
    return GroupHom(g, h, std::move(m));
}

void decode(std::uint64_t index, const std::vector<std::uint64_t>& radix, std::vector<std::uint64_t>& digits)
{
    for (std::size_t k = radix.size(); k-- > 0;) {
        digits[k] = index % radix[k];
        index /= radix[k];
    }
}

/// Reused by both grid searches: candidate `index` over points x values.
PElem grid_candidate(std::uint64_t index, const Rational& translation, const std::vector<Rational>& points,
                     const std::vector<Rational>& values)
{
    std::vector<std::pair<Rational, Rational>> pairs;
    for (std::size_t k = points.size(); k-- > 0;) {
        pairs.emplace_back(points[k], values[index % values.size()]);
        index /= values.size();
    }
    return {BoundedFn::from_pairs(pairs), translation};
}

std::uint64_t grid_size(const std::vector<Rational>& points, const std::vector<Rational>& values)
{
    if (values.empty())
        throw std::invalid_argument("grid_root_search: empty value set");
    std::uint64_t n = 1;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (n > kMaxCandidates / values.size())
            throw std::length_error("grid search exceeds " + std::to_string(kMaxCandidates) + " candidates");
        n *= values.size();
    }
    return n;
}

/// The grid search as integer linear checks: with every value scaled by a
/// common denominator D, p_pow(g, n).f(y) = sum over i < n of f(y + i t) is a
/// sum of candidate values at fixed point indices.  Empty when the translation
/// alone rules out a match.
struct CompiledGrid {
    std::vector<std::vector<std::size_t>> contributors;  ///< per check point
    std::vector<long long> wanted;                       ///< D * target.f at the check point
    std::vector<long long> scaled_values;                ///< D * values
};

std::optional<CompiledGrid> compile_grid(const PElem& target, unsigned long n, const Rational& translation,
                                         const std::vector<Rational>& points, const std::vector<Rational>& values)
{
    if (n == 0)
        throw std::invalid_argument("grid_root_search: n must be positive");
    if (translation * n != target.r)
        return std::nullopt;

    std::map<Rational, std::vector<std::size_t>> checks;
    for (const auto& [y, v] : target.f.support())
        checks[y];
    for (std::size_t k = 0; k < points.size(); ++k)
        for (unsigned long i = 0; i < n; ++i)
            checks[points[k] - translation * i].push_back(k);

    Integer d = 1;
    for (const auto& v : values)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    for (const auto& [y, v] : target.f.support())
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    auto scale = [&](const Rational& v) {
        Rational x = v * d;
        x.canonicalize();
        return Integer(x.get_num());
    };

    // Sums stay below (largest |value|) * (longest contributor list).
    Integer bound = 0;
    CompiledGrid out;
    for (const auto& v : values) {
        const Integer x = scale(v);
        bound = std::max(bound, Integer(abs(x)));
        out.scaled_values.push_back(0);
    }
    std::size_t longest = 1;
    for (const auto& [y, ks] : checks)
        longest = std::max(longest, ks.size());
    Integer wanted_bound = 0;
    for (const auto& [y, v] : target.f.support())
        wanted_bound = std::max(wanted_bound, Integer(abs(scale(v))));
    if (bound * longest > Integer(std::numeric_limits<long>::max() / 4) ||
        wanted_bound > Integer(std::numeric_limits<long>::max() / 4))
        throw std::overflow_error("grid_root_search: values too large for the integer kernel");

    for (std::size_t j = 0; j < values.size(); ++j)
        out.scaled_values[j] = scale(values[j]).get_si();
    for (auto& [y, ks] : checks) {
        out.wanted.push_back(scale(target.f(y)).get_si());
        out.contributors.push_back(std::move(ks));
    }
    return out;
}

}  // namespace

Integer hom_count(const AbGroup& g, const AbGroup& h)
{
    Integer n = 1;
    for (const auto& c : entry_choices(g, h))
        n *= c.count;
    return n;
}

std::vector<GroupHom> enumerate_homs(const AbGroup& g, const AbGroup& h)
{
    const auto choices = entry_choices(g, h);
    const std::uint64_t n = total(choices);
    std::vector<std::uint64_t> radix;
    for (const auto& c : choices)
        radix.push_back(c.count);

    std::vector<std::optional<GroupHom>> slots(n);
#pragma omp parallel
    {
        std::vector<std::uint64_t> digits(radix.size());
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(n); ++idx) {
            decode(static_cast<std::uint64_t>(idx), radix, digits);
            slots[static_cast<std::size_t>(idx)].emplace(build(g, h, choices, digits));
        }
    }
    std::vector<GroupHom> out;
    out.reserve(n);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

std::vector<GroupHom> enumerate_homs_serial(const AbGroup& g, const AbGroup& h)
{
    const auto choices = entry_choices(g, h);
    total(choices);
    std::vector<GroupHom> out;
    std::vector<std::uint64_t> digits(choices.size(), 0);
    while (true) {
        out.push_back(build(g, h, choices, digits));
        std::size_t k = digits.size();
        while (k > 0) {
            --k;
            if (++digits[k] < choices[k].count)
                break;
            digits[k] = 0;
            if (k == 0)
                return out;
        }
        if (digits.empty())
            return out;
    }
}

GridSearchResult grid_root_search(const PElem& target, unsigned long n, const Rational& translation,
                                  const std::vector<Rational>& points, const std::vector<Rational>& values)
{
    const std::uint64_t size = grid_size(points, values);
    GridSearchResult out{size, 0, std::nullopt};
    const auto compiled = compile_grid(target, n, translation, points, values);
    if (!compiled)
        return out;
    const std::size_t width = points.size();
    const std::uint64_t base = values.size();
    std::uint64_t matches = 0;
    std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t blocks = (size + kBlock - 1) / kBlock;
#pragma omp parallel
    {
        std::vector<std::uint64_t> digit(width);
        std::vector<long long> v(width);
#pragma omp for schedule(dynamic) reduction(+ : matches) reduction(min : first)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
            const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlock;
            const std::uint64_t end = std::min(size, begin + kBlock);
            auto rest = begin;
            for (std::size_t k = width; k-- > 0; rest /= base) {
                digit[k] = rest % base;
                v[k] = compiled->scaled_values[digit[k]];
            }
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                bool ok = true;
                for (std::size_t y = 0; ok && y < compiled->contributors.size(); ++y) {
                    long long sum = 0;
                    for (auto k : compiled->contributors[y])
                        sum += v[k];
                    ok = sum == compiled->wanted[y];
                }
                if (ok) {
                    ++matches;
                    first = std::min(first, idx);
                }
                // Odometer step, last point fastest.
                for (std::size_t k = width; k-- > 0;) {
                    if (++digit[k] < base) {
                        v[k] = compiled->scaled_values[digit[k]];
                        break;
                    }
                    digit[k] = 0;
                    v[k] = compiled->scaled_values[0];
                }
            }
        }
    }
    out.matches = matches;
    if (matches)
        out.first_match = grid_candidate(first, translation, points, values);
    return out;
}

GridSearchResult grid_root_search_serial(const PElem& target, unsigned long n, const Rational& translation,
                                         const std::vector<Rational>& points, const std::vector<Rational>& values)
{
    GridSearchResult out{grid_size(points, values), 0, std::nullopt};
    for (std::uint64_t index = 0; index < out.candidates; ++index) {
        PElem candidate = grid_candidate(index, translation, points, values);
        if (p_pow(candidate, n) == target) {
            if (!out.first_match)
                out.first_match = candidate;
            ++out.matches;
        }
    }
    return out;
}

}  // namespace abloc
