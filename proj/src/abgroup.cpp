#include "abloc/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace abloc {

namespace {

Integer residue(const Rational& q, const Integer& modulus)
{
    Integer den(q.get_den());
    Integer num(q.get_num());
    Integer r;
    if (den == 1) {
        mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), modulus.get_mpz_t());
        return r;
    }
    Integer inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()))
        throw std::domain_error("denominator " + den.get_str() + " is not invertible modulo " + modulus.get_str());
    r = num * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

Integer denominator_lcm(const std::vector<Rational>& values)
{
    Integer l = 1;
    for (const auto& v : values)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
}

Integer to_integer(const Rational& q)
{
    if (q.get_den() != 1)
        throw std::logic_error("expected an integer, got " + q.get_str());
    return Integer(q.get_num());
}

}  // namespace

AbGroup::AbGroup(PrimeSet ring, std::size_t rank, std::vector<PrimaryCyclic> torsion)
    : ring_(std::move(ring)), rank_(rank), torsion_(std::move(torsion))
{
    for (const auto& c : torsion_) {
        if (!is_prime(c.prime))
            throw std::invalid_argument("torsion order base " + std::to_string(c.prime) + " is not prime");
        if (c.exponent == 0)
            throw std::invalid_argument("torsion exponent must be positive");
        if (ring_.contains(c.prime))
            throw std::invalid_argument("Z/" + std::to_string(c.prime) + "^" + std::to_string(c.exponent) +
                                        " cannot occur over a ring where " + std::to_string(c.prime) +
                                        " is inverted");
    }
    std::sort(torsion_.begin(), torsion_.end());
}

AbGroup AbGroup::from_cyclic_orders(PrimeSet ring, std::size_t rank, const std::vector<Integer>& orders)
{
    std::vector<PrimaryCyclic> torsion;
    for (const auto& n : orders) {
        if (n == 0) {
            ++rank;
            continue;
        }
        Integer kept = strip_units(n, ring);
        for (auto [p, e] : prime_factorization(kept))
            torsion.push_back({p, e});
    }
    return AbGroup(std::move(ring), rank, std::move(torsion));
}

Integer AbGroup::generator_order(std::size_t i) const
{
    if (i >= generator_count())
        throw std::out_of_range("generator index out of range");
    return i < rank_ ? Integer(0) : torsion_[i - rank_].order();
}

Integer AbGroup::order() const
{
    if (!is_finite())
        throw std::domain_error("order of an infinite group");
    Integer n = 1;
    for (const auto& c : torsion_)
        n *= c.order();
    return n;
}

std::vector<Prime> AbGroup::torsion_primes() const
{
    std::vector<Prime> out;
    for (const auto& c : torsion_)
        if (out.empty() || out.back() != c.prime)
            out.push_back(c.prime);
    return out;
}

Element zero_element(const AbGroup& g)
{
    return Element(g.generator_count(), Rational(0));
}

Element reduce(const AbGroup& g, Element x)
{
    if (x.size() != g.generator_count())
        throw std::invalid_argument("element has the wrong number of coordinates");
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i].canonicalize();
        if (g.is_free_generator(i)) {
            if (!in_ring(x[i], g.ring()))
                throw std::domain_error(x[i].get_str() + " does not lie in Z_T for T = " + to_string(g.ring()));
        } else {
            x[i] = Rational(residue(x[i], g.generator_order(i)));
        }
    }
    return x;
}

Element add(const AbGroup& g, const Element& a, const Element& b)
{
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return reduce(g, std::move(out));
}

Element scale(const AbGroup& g, const Element& a, const Rational& k)
{
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] * k;
    return reduce(g, std::move(out));
}

GroupHom::GroupHom(AbGroup domain, AbGroup codomain, Matrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain))
{
    if (!domain_.ring().is_subset_of(codomain_.ring()))
        throw std::invalid_argument("homomorphism: domain ring " + to_string(domain_.ring()) +
                                    " is not contained in codomain ring " + to_string(codomain_.ring()));
    if (matrix.size() != rows())
        throw std::invalid_argument("homomorphism: matrix needs one row per codomain generator");
    entries_.reserve(rows() * cols());
    std::vector<Integer> col_orders(cols());
    for (std::size_t j = 0; j < cols(); ++j)
        col_orders[j] = domain_.generator_order(j);
    for (std::size_t i = 0; i < rows(); ++i) {
        if (matrix[i].size() != cols())
            throw std::invalid_argument("homomorphism: matrix needs one column per domain generator");
        const Integer row_order = codomain_.generator_order(i);
        for (std::size_t j = 0; j < cols(); ++j) {
            Rational m = std::move(matrix[i][j]);
            if (m.get_den() != 1)
                m.canonicalize();
            if (sgn(m) == 0) {
                entries_.push_back(std::move(m));
                continue;
            }
            if (!in_ring(m, codomain_.ring()))
                throw std::domain_error("homomorphism entry " + m.get_str() + " is not in Z_T for T = " +
                                        to_string(codomain_.ring()));
            const Integer& col_order = col_orders[j];
            if (row_order == 0) {
                if (col_order != 0)
                    throw std::domain_error("homomorphism not well defined: torsion generator " +
                                            std::to_string(j) + " sent to a free coordinate");
            } else {
                if (m.get_den() != 1 || sgn(m) < 0 || m.get_num() >= row_order)
                    m = Rational(residue(m, row_order));
                if (col_order != 0 && !mpz_divisible_p(Integer(col_order * m.get_num()).get_mpz_t(),
                                                       row_order.get_mpz_t()))
                    throw std::domain_error("homomorphism not well defined at entry (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            }
            entries_.push_back(std::move(m));
        }
    }
}

GroupHom GroupHom::identity(const AbGroup& g)
{
    Matrix m(g.generator_count(), std::vector<Rational>(g.generator_count(), Rational(0)));
    for (std::size_t i = 0; i < g.generator_count(); ++i)
        m[i][i] = 1;
    return GroupHom(g, g, std::move(m));
}

GroupHom GroupHom::zero(const AbGroup& domain, const AbGroup& codomain)
{
    return GroupHom(domain, codomain,
                    Matrix(codomain.generator_count(), std::vector<Rational>(domain.generator_count(), Rational(0))));
}

GroupHom::Matrix GroupHom::matrix() const
{
    Matrix m(rows(), std::vector<Rational>(cols()));
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            m[i][j] = entry(i, j);
    return m;
}

Element GroupHom::apply(const Element& x) const
{
    Element in = reduce(domain_, x);
    Element out(rows(), Rational(0));
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            out[i] += entry(i, j) * in[j];
    return reduce(codomain_, std::move(out));
}

bool GroupHom::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
}

GroupHom compose(const GroupHom& g, const GroupHom& f)
{
    if (!(f.codomain() == g.domain()))
        throw std::invalid_argument("compose: codomain of the first map differs from domain of the second");
    GroupHom::Matrix m(g.rows(), std::vector<Rational>(f.cols(), Rational(0)));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t k = 0; k < g.cols(); ++k) {
            if (g.entry(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < f.cols(); ++j)
                m[i][j] += g.entry(i, k) * f.entry(k, j);
        }
    return GroupHom(f.domain(), g.codomain(), std::move(m));
}

GroupHom power_map(const AbGroup& g, const Integer& k)
{
    GroupHom::Matrix m(g.generator_count(), std::vector<Rational>(g.generator_count(), Rational(0)));
    for (std::size_t i = 0; i < g.generator_count(); ++i)
        m[i][i] = Rational(k);
    return GroupHom(g, g, std::move(m));
}

CanonicalPresentation canonicalize(std::size_t generators, const IntMatrix& relations, const PrimeSet& ring)
{
    if (relations.rows() > 0 && relations.cols() != generators)
        throw std::invalid_argument("presentation: relation length differs from generator count");
    // Columns of a are relations; U a V = D, so x -> U x carries the module onto (+) Z/d_i.
    IntMatrix a = relations.rows() > 0 ? relations.transposed() : IntMatrix(generators, 0);
    SmithForm snf = smith_normal_form(a);
    IntMatrix u_inv = unimodular_inverse(snf.left);

    struct Summand {
        bool free;
        PrimaryCyclic cyclic;
        std::size_t source;  // SNF index
        Integer lift;        // multiplier on column `source` of U^-1
    };
    std::vector<Summand> summands;
    for (std::size_t i = 0; i < generators; ++i) {
        Integer d = i < std::min(a.rows(), a.cols()) ? snf.diagonal(i, i) : Integer(0);
        if (d == 0) {
            summands.push_back({true, {0, 0}, i, 1});
            continue;
        }
        Integer kept = strip_units(d, ring);
        if (kept == 1)
            continue;
        for (auto [p, e] : prime_factorization(kept)) {
            Integer pe = pow(p, e);
            Integer cofactor = kept / pe;
            Integer lift = cofactor * inverse_mod(cofactor, pe);
            summands.push_back({false, {p, e}, i, lift});
        }
    }
    std::stable_sort(summands.begin(), summands.end(), [](const Summand& x, const Summand& y) {
        if (x.free != y.free)
            return x.free;
        return !x.free && x.cyclic < y.cyclic;
    });

    std::size_t rank = 0;
    std::vector<PrimaryCyclic> torsion;
    IntMatrix to(summands.size(), generators);
    IntMatrix from(generators, summands.size());
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const auto& s = summands[k];
        if (s.free)
            ++rank;
        else
            torsion.push_back(s.cyclic);
        Integer order = s.free ? Integer(0) : s.cyclic.order();
        for (std::size_t j = 0; j < generators; ++j) {
            to(k, j) = snf.left(s.source, j);
            if (order != 0)
                mpz_fdiv_r(to(k, j).get_mpz_t(), to(k, j).get_mpz_t(), order.get_mpz_t());
            from(j, k) = u_inv(j, s.source) * s.lift;
        }
    }
    return {AbGroup(ring, rank, std::move(torsion)), std::move(to), std::move(from)};
}

AbGroup group_from_presentation(std::size_t generators, const IntMatrix& relations, const PrimeSet& ring)
{
    return canonicalize(generators, relations, ring).group;
}

Subgroup kernel(const GroupHom& f)
{
    const AbGroup& g = f.domain();
    const AbGroup& h = f.codomain();
    const std::size_t n = g.generator_count();
    const std::size_t rows = h.generator_count();
    const std::size_t t_h = h.torsion().size();

    // Solve M' x = E y over Z: free rows cleared of denominators, torsion
    // rows allowed to absorb multiples of their order.
    IntMatrix a(rows, n + t_h);
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<Rational> row(n);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = f.entry(i, j);
        Integer scale_by = h.is_free_generator(i) ? denominator_lcm(row) : Integer(1);
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = to_integer(row[j] * scale_by);
        if (!h.is_free_generator(i))
            a(i, n + (i - h.rank())) = -h.generator_order(i);
    }
    SmithForm snf = smith_normal_form(a);
    std::size_t solution_rank = 0;
    for (const auto& d : snf.invariants())
        if (d != 0)
            ++solution_rank;

    // Generators of L = projection of the solution lattice onto x.
    const std::size_t span = n + t_h - solution_rank;
    IntMatrix w(n, span);
    for (std::size_t c = 0; c < span; ++c)
        for (std::size_t j = 0; j < n; ++j)
            w(j, c) = snf.right(j, solution_rank + c);

    // Basis of L: columns d_i * U_w^-1 e_i.
    SmithForm wf = smith_normal_form(w);
    IntMatrix w_inv = unimodular_inverse(wf.left);
    std::vector<Integer> wd;
    for (const auto& d : wf.invariants())
        if (d != 0)
            wd.push_back(d);
    const std::size_t lrank = wd.size();
    IntMatrix basis(n, lrank);
    for (std::size_t c = 0; c < lrank; ++c)
        for (std::size_t j = 0; j < n; ++j)
            basis(j, c) = w_inv(j, c) * wd[c];

    // Relations of g written in that basis.
    IntMatrix relations(g.torsion().size(), lrank);
    for (std::size_t r = 0; r < g.torsion().size(); ++r) {
        const std::size_t gen = g.rank() + r;
        const Integer d = g.generator_order(gen);
        for (std::size_t c = 0; c < lrank; ++c) {
            Integer coord = wf.left(c, gen) * d;
            if (!mpz_divisible_p(coord.get_mpz_t(), wd[c].get_mpz_t()))
                throw std::logic_error("kernel: domain relation outside the solution lattice");
            relations(r, c) = coord / wd[c];
        }
        for (std::size_t c = lrank; c < wf.left.rows(); ++c)
            if (wf.left(c, gen) != 0)
                throw std::logic_error("kernel: domain relation outside the solution lattice");
    }
    CanonicalPresentation k = canonicalize(lrank, relations, g.ring());
    IntMatrix incl = basis * k.from_canonical;
    GroupHom::Matrix m(n, std::vector<Rational>(k.group.generator_count()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k.group.generator_count(); ++j)
            m[i][j] = Rational(incl(i, j));
    return {k.group, GroupHom(k.group, g, std::move(m))};
}

Quotient cokernel(const GroupHom& f)
{
    const AbGroup& h = f.codomain();
    const std::size_t k = h.generator_count();
    IntMatrix relations(h.torsion().size() + f.cols(), k);
    std::size_t r = 0;
    for (std::size_t i = h.rank(); i < k; ++i, ++r)
        relations(r, i) = h.generator_order(i);
    for (std::size_t j = 0; j < f.cols(); ++j, ++r) {
        std::vector<Rational> column(k);
        for (std::size_t i = 0; i < k; ++i)
            column[i] = f.entry(i, j);
        // The lcm of the denominators is a unit of the codomain ring.
        Integer unit = denominator_lcm(column);
        for (std::size_t i = 0; i < k; ++i)
            relations(r, i) = to_integer(column[i] * unit);
    }
    CanonicalPresentation c = canonicalize(k, relations, h.ring());
    GroupHom::Matrix m(c.group.generator_count(), std::vector<Rational>(k));
    for (std::size_t i = 0; i < c.group.generator_count(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            m[i][j] = Rational(c.to_canonical(i, j));
    return {c.group, GroupHom(h, c.group, std::move(m))};
}

std::size_t image_rank(const GroupHom& f)
{
    const std::size_t rows = f.codomain().rank();
    const std::size_t cols = f.domain().rank();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = f.entry(i, j);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a[i][c] == 0)
                continue;
            Rational factor = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= factor * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

bool is_injective(const GroupHom& f)
{
    return kernel(f).group.is_trivial();
}

bool is_surjective(const GroupHom& f)
{
    if (!cokernel(f).group.is_trivial())
        return false;
    // With a larger codomain ring, a free image is never closed under the new denominators.
    return image_rank(f) == 0 || f.codomain().ring().minus(f.domain().ring()).empty();
}

bool is_isomorphism(const GroupHom& f)
{
    return is_injective(f) && is_surjective(f);
}

}  // namespace abloc
