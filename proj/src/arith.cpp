#include "abloc/arith.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace abloc {

namespace {

std::vector<Prime> normalized(std::vector<Prime> primes)
{
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (Prime p : primes)
        if (!is_prime(p))
            throw std::invalid_argument("not a prime: " + std::to_string(p));
    return primes;
}

bool sorted_contains(const std::vector<Prime>& v, Prime p)
{
    return std::binary_search(v.begin(), v.end(), p);
}

std::vector<Prime> set_union(const std::vector<Prime>& a, const std::vector<Prime>& b)
{
    std::vector<Prime> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Prime> set_intersection(const std::vector<Prime>& a, const std::vector<Prime>& b)
{
    std::vector<Prime> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Prime> set_difference(const std::vector<Prime>& a, const std::vector<Prime>& b)
{
    std::vector<Prime> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool includes(const std::vector<Prime>& big, const std::vector<Prime>& small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::uint64_t parse_u64(std::string_view s)
{
    s = trim(s);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("expected a nonnegative integer, got '" + std::string(s) + "'");
    return value;
}

std::vector<std::uint64_t> parse_u64_list(std::string_view s)
{
    std::vector<std::uint64_t> out;
    while (true) {
        auto comma = s.find(',');
        out.push_back(parse_u64(s.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string join(const std::vector<std::uint64_t>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d <= n / d; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Factorization prime_factorization(const Integer& n)
{
    if (sgn(n) <= 0)
        throw std::invalid_argument("prime_factorization: n must be positive");
    Factorization out;
    Integer rest = n;
    for (std::uint64_t d = 2; Integer(d) * d <= rest; ++d) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
            ++e;
        }
        if (e)
            out[d] = e;
    }
    if (rest > 1) {
        if (!rest.fits_ulong_p())
            throw std::overflow_error("prime factor exceeds 64 bits");
        out[rest.get_ui()] += 1;
    }
    return out;
}

unsigned valuation(Prime p, const Integer& n)
{
    if (n == 0)
        throw std::invalid_argument("valuation of zero");
    Integer rest;
    Integer prime(p);
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

long valuation(Prime p, const Rational& q)
{
    if (q == 0)
        throw std::invalid_argument("valuation of zero");
    return static_cast<long>(valuation(p, Integer(q.get_num()))) -
           static_cast<long>(valuation(p, Integer(q.get_den())));
}

Integer pow(Prime p, unsigned e)
{
    Integer out;
    Integer base(p);
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Integer inverse_mod(const Integer& a, const Integer& m)
{
    Integer out;
    if (!mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) {
        if (m == 1)
            return 0;
        throw std::domain_error("not invertible modulo " + m.get_str());
    }
    return out;
}

std::string to_string(const Rational& q)
{
    Rational r = q;
    r.canonicalize();
    return r.get_str();
}

Rational parse_rational(std::string_view text)
{
    text = trim(text);
    auto slash = text.find('/');
    auto parse_int = [](std::string_view s) {
        s = trim(s);
        if (!s.empty() && s.front() == '+')
            s.remove_prefix(1);
        Integer v;
        if (s.empty() || v.set_str(std::string(s), 10) != 0)
            throw std::invalid_argument("bad rational '" + std::string(s) + "'");
        return v;
    };
    Integer num = parse_int(text.substr(0, slash));
    Integer den = slash == std::string_view::npos ? Integer(1) : parse_int(text.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

PrimeSet PrimeSet::finite(std::vector<Prime> primes)
{
    return {Kind::Finite, normalized(std::move(primes))};
}

PrimeSet PrimeSet::cofinite(std::vector<Prime> excluded)
{
    return {Kind::Cofinite, normalized(std::move(excluded))};
}

bool PrimeSet::contains(Prime p) const
{
    return is_finite() ? sorted_contains(primes_, p) : !sorted_contains(primes_, p);
}

bool PrimeSet::is_subset_of(const PrimeSet& other) const
{
    if (is_finite())
        return other.is_finite() ? includes(other.primes_, primes_)
                                 : set_intersection(primes_, other.primes_).empty();
    // A cofinite set is never inside a finite one.
    return other.is_cofinite() && includes(primes_, other.primes_);
}

PrimeSet PrimeSet::union_with(const PrimeSet& other) const
{
    if (is_finite() && other.is_finite())
        return {Kind::Finite, set_union(primes_, other.primes_)};
    if (is_cofinite() && other.is_cofinite())
        return {Kind::Cofinite, set_intersection(primes_, other.primes_)};
    const PrimeSet& co = is_cofinite() ? *this : other;
    const PrimeSet& fin = is_cofinite() ? other : *this;
    return {Kind::Cofinite, set_difference(co.primes_, fin.primes_)};
}

PrimeSet PrimeSet::intersect(const PrimeSet& other) const
{
    if (is_finite() && other.is_finite())
        return {Kind::Finite, set_intersection(primes_, other.primes_)};
    if (is_cofinite() && other.is_cofinite())
        return {Kind::Cofinite, set_union(primes_, other.primes_)};
    const PrimeSet& co = is_cofinite() ? *this : other;
    const PrimeSet& fin = is_cofinite() ? other : *this;
    return {Kind::Finite, set_difference(fin.primes_, co.primes_)};
}

PrimeSet PrimeSet::minus(const PrimeSet& other) const
{
    if (is_finite())
        return other.is_finite() ? PrimeSet{Kind::Finite, set_difference(primes_, other.primes_)}
                                 : PrimeSet{Kind::Finite, set_intersection(primes_, other.primes_)};
    return other.is_finite() ? PrimeSet{Kind::Cofinite, set_union(primes_, other.primes_)}
                             : PrimeSet{Kind::Finite, set_difference(other.primes_, primes_)};
}

Integer strip_units(const Integer& n, const PrimeSet& ring)
{
    if (n == 0)
        throw std::invalid_argument("strip_units of zero");
    Integer rest = abs(n);
    if (ring.is_finite()) {
        for (Prime p : ring.listed()) {
            Integer prime(p);
            mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
        }
        return rest;
    }
    // Only the excluded primes survive.
    Integer kept = 1;
    for (Prime p : ring.listed())
        kept *= pow(p, valuation(p, rest));
    return kept;
}

bool is_unit(const Rational& q, const PrimeSet& ring)
{
    if (q == 0)
        throw std::invalid_argument("is_unit: zero is never a unit");
    return strip_units(Integer(q.get_num()), ring) == 1 && strip_units(Integer(q.get_den()), ring) == 1;
}

bool in_ring(const Rational& q, const PrimeSet& ring)
{
    if (q.get_den() == 1)
        return true;
    return strip_units(Integer(q.get_den()), ring) == 1;
}

PrimeSet parse_prime_set(std::string_view text)
{
    text = trim(text);
    if (text == "none")
        return PrimeSet::none();
    if (text == "all")
        return PrimeSet::all();
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("prime set must be 'none', 'all', 'away:...' or 'at:...'");
    auto head = trim(text.substr(0, colon));
    auto body = text.substr(colon + 1);
    std::vector<Prime> primes = parse_u64_list(body);
    if (head == "away")
        return PrimeSet::finite(std::move(primes));
    if (head == "at")
        return PrimeSet::cofinite(std::move(primes));
    throw std::invalid_argument("unknown prime set kind '" + std::string(head) + "'");
}

std::string to_string(const PrimeSet& set)
{
    if (set.is_finite())
        return set.listed().empty() ? "none" : "away:" + join(set.listed());
    return set.listed().empty() ? "all" : "at:" + join(set.listed());
}

SFamily::SFamily(std::vector<std::uint64_t> generators) : generators_(std::move(generators))
{
    if (generators_.empty())
        throw std::invalid_argument("S-family needs at least one generator");
    for (auto k : generators_)
        if (k == 0)
            throw std::invalid_argument("S-family generators must be positive");
}

Integer SFamily::s_product(std::size_t n) const
{
    if (n >= generators_.size())
        throw std::out_of_range("s_product index " + std::to_string(n) + " out of range");
    return running_product(n);
}

Integer SFamily::running_product(std::size_t n) const
{
    Integer out = 1;
    for (std::size_t i = 0; i <= n; ++i)
        out *= at(i);
    return out;
}

PrimeSet SFamily::inverted_primes() const
{
    std::vector<Prime> primes;
    for (auto k : generators_)
        for (auto [p, e] : prime_factorization(Integer(k)))
            primes.push_back(p);
    return PrimeSet::finite(std::move(primes));
}

SFamily SFamily::shifted() const
{
    std::vector<std::uint64_t> out(generators_.begin() + 1, generators_.end());
    out.push_back(generators_.front());
    return SFamily(std::move(out));
}

SFamily parse_family(std::string_view text)
{
    text = trim(text);
    if (text.starts_with("S="))
        text.remove_prefix(2);
    return SFamily(parse_u64_list(text));
}

std::string to_string(const SFamily& family)
{
    return "S=" + join(family.generators());
}

}  // namespace abloc
