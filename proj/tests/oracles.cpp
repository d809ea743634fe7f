#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <stdexcept>

namespace oracle {

Integer bareiss_det(const IntMatrix& input)
{
    const std::size_t n = input.rows();
    if (n != input.cols())
        throw std::invalid_argument("bareiss_det: square matrix required");
    if (n == 0)
        return 1;
    IntMatrix a = input;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(n, k, 0, cur, out);
    return out;
}

void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned part = std::min(n, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions(n - part, part, cur, out);
        cur.pop_back();
    }
}

std::uint64_t residue(const abloc::Rational& q, std::uint64_t modulus)
{
    if (q.get_den() != 1)
        throw std::invalid_argument("oracle: non-integral torsion entry");
    Integer r = q.get_num() % Integer(modulus);
    if (r < 0)
        r += modulus;
    return r.get_ui();
}

}  // namespace

std::vector<Integer> minor_gcds(const IntMatrix& m)
{
    std::vector<Integer> out;
    const std::size_t kmax = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= kmax; ++k) {
        Integer g = 0;
        for (const auto& rows : subsets(m.rows(), k))
            for (const auto& cols : subsets(m.cols(), k)) {
                IntMatrix minor(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        minor(i, j) = m(rows[i], cols[j]);
                Integer d = bareiss_det(minor);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        out.push_back(g);
    }
    return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& m)
{
    std::vector<Integer> out;
    Integer prev = 1;
    for (const auto& g : minor_gcds(m)) {
        if (g == 0 || prev == 0) {
            out.push_back(0);
            prev = 0;
            continue;
        }
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi)
{
    std::uniform_int_distribution<long> dist(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = dist(rng);
    return m;
}

std::vector<std::uint64_t> cyclic_orders(const AbGroup& g)
{
    if (!g.is_finite())
        throw std::invalid_argument("oracle: finite group required");
    std::vector<std::uint64_t> out;
    for (const auto& c : g.torsion())
        out.push_back(c.order().get_ui());
    return out;
}

std::vector<std::vector<std::uint64_t>> elements(const std::vector<std::uint64_t>& orders)
{
    std::vector<std::vector<std::uint64_t>> out{{}};
    for (auto d : orders) {
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& x : out)
            for (std::uint64_t v = 0; v < d; ++v) {
                auto y = x;
                y.push_back(v);
                next.push_back(std::move(y));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<std::uint64_t> apply(const GroupHom& f, const std::vector<std::uint64_t>& x)
{
    const auto out_orders = cyclic_orders(f.codomain());
    std::vector<std::uint64_t> y(out_orders.size(), 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            acc = (acc + residue(f.entry(i, j), out_orders[i]) * x[j]) % out_orders[i];
        y[i] = acc;
    }
    return y;
}

std::uint64_t kernel_size(const GroupHom& f)
{
    std::uint64_t n = 0;
    for (const auto& x : elements(cyclic_orders(f.domain()))) {
        auto y = apply(f, x);
        if (std::all_of(y.begin(), y.end(), [](std::uint64_t v) { return v == 0; }))
            ++n;
    }
    return n;
}

std::uint64_t image_size(const GroupHom& f)
{
    std::vector<std::vector<std::uint64_t>> image;
    for (const auto& x : elements(cyclic_orders(f.domain())))
        image.push_back(apply(f, x));
    std::sort(image.begin(), image.end());
    return static_cast<std::uint64_t>(std::unique(image.begin(), image.end()) - image.begin());
}

std::vector<AbGroup> groups_of_order(std::uint64_t n, const abloc::PrimeSet& ring)
{
    // Trial-division factorization, kept local to the oracle.
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            factors.emplace_back(p, e);
    }
    if (n > 1)
        factors.emplace_back(n, 1);

    std::vector<std::vector<abloc::PrimaryCyclic>> out{{}};
    for (auto [p, e] : factors) {
        std::vector<std::vector<unsigned>> parts;
        std::vector<unsigned> cur;
        partitions(e, e, cur, parts);
        std::vector<std::vector<abloc::PrimaryCyclic>> next;
        for (const auto& t : out)
            for (const auto& part : parts) {
                auto u = t;
                for (unsigned a : part)
                    u.push_back({p, a});
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    std::vector<AbGroup> groups;
    for (auto& t : out)
        groups.emplace_back(ring, 0, std::move(t));
    return groups;
}

std::vector<AbGroup> catalog(std::uint64_t bound, std::uint64_t avoid, const abloc::PrimeSet& ring)
{
    std::vector<AbGroup> out;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        if (std::gcd(n, avoid) != 1)
            continue;
        for (auto& g : groups_of_order(n, ring))
            out.push_back(std::move(g));
    }
    return out;
}

std::vector<GroupHom> brute_homs(const AbGroup& g, const AbGroup& h)
{
    const auto out_orders = cyclic_orders(h);
    // Admissible residues for each entry (row i, column j).
    std::vector<std::vector<std::uint64_t>> choices;
    for (std::size_t i = 0; i < out_orders.size(); ++i)
        for (std::size_t j = 0; j < g.generator_count(); ++j) {
            std::vector<std::uint64_t> ok;
            const Integer d = g.generator_order(j);
            for (std::uint64_t r = 0; r < out_orders[i]; ++r) {
                Integer v = d * r;
                if (v % out_orders[i] == 0)
                    ok.push_back(r);
            }
            choices.push_back(std::move(ok));
        }
    std::vector<GroupHom> out;
    std::vector<std::size_t> digit(choices.size(), 0);
    while (true) {
        GroupHom::Matrix m(out_orders.size(), std::vector<abloc::Rational>(g.generator_count()));
        for (std::size_t k = 0; k < choices.size(); ++k)
            m[k / g.generator_count()][k % g.generator_count()] = abloc::Rational(Integer(choices[k][digit[k]]));
        out.emplace_back(g, h, m);
        std::size_t k = 0;
        while (k < digit.size() && ++digit[k] == choices[k].size())
            digit[k++] = 0;
        if (k == digit.size())
            return out;
    }
}

std::string matrix_key(const GroupHom& f)
{
    std::string s;
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            s += f.entry(i, j).get_str() + ",";
    return s;
}

bool precomposition_bijective(const GroupHom& eta, const AbGroup& h)
{
    const auto from_local = brute_homs(eta.codomain(), h);
    const auto from_source = brute_homs(eta.domain(), h);
    std::set<std::string> composites;
    for (const auto& f : from_local)
        composites.insert(matrix_key(abloc::compose(f, eta)));
    std::set<std::string> targets;
    for (const auto& f : from_source)
        targets.insert(matrix_key(f));
    return composites.size() == from_local.size() && composites == targets;
}

}  // namespace oracle
