#include "abloc/counterex.hpp"

#include <algorithm>
#include <stdexcept>

namespace abloc {

namespace {

Rational fractional_part(const Rational& q)
{
    Integer floor;
    mpz_fdiv_q(floor.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - Rational(floor);
}

bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

/// Exact division of t (coefficients by increasing degree) by 1 + z + ... + z^(n-1).
std::pair<std::vector<Rational>, std::vector<Rational>> divide_by_repunit(std::vector<Rational> t, unsigned long n)
{
    const std::size_t divisor_degree = n - 1;
    if (t.size() <= divisor_degree)
        return {{}, t};
    std::vector<Rational> quotient(t.size() - divisor_degree, Rational(0));
    for (std::size_t top = t.size(); top-- > divisor_degree;) {
        Rational c = t[top];
        if (c == 0)
            continue;
        const std::size_t shift = top - divisor_degree;
        quotient[shift] = c;
        for (std::size_t i = 0; i <= divisor_degree; ++i)
            t[shift + i] -= c;
    }
    t.resize(divisor_degree);
    return {quotient, t};
}

}  // namespace

QmodZ::QmodZ(Rational value) : value_(fractional_part(value)) {}

std::vector<QmodZ> divisibility_solutions(const QmodZ& y, unsigned long k)
{
    if (k == 0)
        throw std::invalid_argument("divisibility_solutions: k must be positive");
    std::vector<QmodZ> out;
    for (unsigned long j = 0; j < k; ++j)
        out.emplace_back((y.value() + j) / k);
    std::sort(out.begin(), out.end());
    return out;
}

BoundedFn BoundedFn::delta(const Rational& point, const Rational& value)
{
    BoundedFn f;
    f.set(point, value);
    return f;
}

BoundedFn BoundedFn::from_pairs(const std::vector<std::pair<Rational, Rational>>& pairs)
{
    BoundedFn f;
    for (const auto& [x, v] : pairs)
        f.set(x, f(x) + v);
    return f;
}

void BoundedFn::set(const Rational& x, const Rational& v)
{
    if (v == 0)
        support_.erase(x);
    else
        support_[x] = v;
}

Rational BoundedFn::operator()(const Rational& x) const
{
    auto it = support_.find(x);
    return it == support_.end() ? Rational(0) : it->second;
}

BoundedFn BoundedFn::operator+(const BoundedFn& other) const
{
    BoundedFn out = *this;
    for (const auto& [x, v] : other.support_)
        out.set(x, out(x) + v);
    return out;
}

BoundedFn BoundedFn::operator-() const
{
    return scaled(-1);
}

BoundedFn BoundedFn::scaled(const Rational& k) const
{
    BoundedFn out;
    if (k == 0)
        return out;
    for (const auto& [x, v] : support_)
        out.support_.emplace(x, v * k);
    return out;
}

BoundedFn BoundedFn::translated(const Rational& r) const
{
    BoundedFn out;
    for (const auto& [x, v] : support_)
        out.support_.emplace(x - r, v);
    return out;
}

PElem p_identity()
{
    return {};
}

PElem p_mul(const PElem& a, const PElem& b)
{
    return {a.f + b.f.translated(a.r), a.r + b.r};
}

PElem p_inv(const PElem& a)
{
    return {(-a.f).translated(-a.r), -a.r};
}

PElem p_pow(const PElem& a, unsigned long n)
{
    if (n == 0)
        throw std::invalid_argument("p_pow: exponent must be positive");
    BoundedFn sum;
    for (unsigned long i = 0; i < n; ++i)
        sum = sum + a.f.translated(a.r * i);
    return {sum, a.r * n};
}

RootResult nth_root(const PElem& target, unsigned long n)
{
    if (n == 0)
        throw std::invalid_argument("nth_root: n must be positive");
    const Rational step = target.r / n;
    if (step == 0)
        return {PElem{target.f.scaled(Rational(1, n)), 0}, std::nullopt};

    // Group the support into cosets x0 + step Z, recording the index j of each point.
    struct Coset {
        Rational base;
        std::vector<std::pair<Integer, Rational>> terms;
    };
    std::vector<Coset> cosets;
    for (const auto& [x, v] : target.f.support()) {
        bool placed = false;
        for (auto& c : cosets) {
            Rational j = (x - c.base) / step;
            if (is_integer(j)) {
                c.terms.emplace_back(Integer(j.get_num()), v);
                placed = true;
                break;
            }
        }
        if (!placed)
            cosets.push_back({x, {{Integer(0), v}}});
    }

    BoundedFn root;
    for (const auto& c : cosets) {
        Integer lowest = c.terms.front().first;
        Integer highest = lowest;
        for (const auto& [j, v] : c.terms) {
            lowest = std::min(lowest, j);
            highest = std::max(highest, j);
        }
        const Rational representative = c.base + step * Rational(lowest);
        std::vector<Rational> t(Integer(highest - lowest + 1).get_ui(), Rational(0));
        for (const auto& [j, v] : c.terms)
            t[Integer(j - lowest).get_ui()] = v;
        auto [quotient, remainder] = divide_by_repunit(t, n);
        if (std::any_of(remainder.begin(), remainder.end(), [](const Rational& r) { return r != 0; }))
            return {std::nullopt, CosetObstruction{representative, step, t, remainder, n}};
        // G(z) = z^(n-1) Q(z) relative to the representative.
        for (std::size_t e = 0; e < quotient.size(); ++e)
            if (quotient[e] != 0)
                root = root + BoundedFn::delta(representative + step * Rational(n - 1 + e), quotient[e]);
    }
    return {PElem{root, step}, std::nullopt};
}

BoundedFn b_uniquely_divisible_witness(const BoundedFn& f, unsigned long k)
{
    if (k == 0)
        throw std::invalid_argument("b_uniquely_divisible_witness: k must be positive");
    return f.scaled(Rational(1, k));
}

std::optional<PElem> bounded_root_search(const PElem& target, unsigned long n, const std::vector<Rational>& window)
{
    if (n == 0)
        throw std::invalid_argument("bounded_root_search: n must be positive");
    const Rational step = target.r / n;
    std::vector<Rational> unknowns = window;
    std::sort(unknowns.begin(), unknowns.end());
    unknowns.erase(std::unique(unknowns.begin(), unknowns.end()), unknowns.end());

    // One equation per point where either side can be nonzero:
    // sum_i g(x + i step) = target(x).
    std::vector<Rational> points;
    for (const auto& p : unknowns)
        for (unsigned long i = 0; i < n; ++i)
            points.push_back(p - step * i);
    for (const auto& [x, v] : target.f.support())
        points.push_back(x);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    const std::size_t cols = unknowns.size();
    std::vector<std::vector<Rational>> rows;
    for (const auto& x : points) {
        std::vector<Rational> row(cols + 1, Rational(0));
        for (unsigned long i = 0; i < n; ++i) {
            auto it = std::lower_bound(unknowns.begin(), unknowns.end(), Rational(x + step * i));
            if (it != unknowns.end() && *it == x + step * i)
                row[static_cast<std::size_t>(it - unknowns.begin())] += 1;
        }
        row[cols] = target.f(x);
        rows.push_back(std::move(row));
    }

    // Gauss-Jordan over Q.
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[r]);
        Rational lead = rows[r][c];
        for (auto& v : rows[r])
            v /= lead;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            Rational factor = rows[i][c];
            for (std::size_t j = c; j <= cols; ++j)
                rows[i][j] -= factor * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][cols] != 0)
            return std::nullopt;

    BoundedFn g;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        if (rows[i][cols] != 0)
            g = g + BoundedFn::delta(unknowns[pivot_col[i]], rows[i][cols]);
    return PElem{g, step};
}

std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi, unsigned long d)
{
    std::vector<Rational> out;
    Integer first;
    Rational scaled = lo * d;
    mpz_cdiv_q(first.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    for (Rational x(first, d); x <= hi; x += Rational(1, d)) {
        x.canonicalize();
        out.push_back(x);
    }
    return out;
}

}  // namespace abloc
