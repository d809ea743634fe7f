#include "abloc/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace abloc {

SyntaxError::SyntaxError(const std::string& message, std::size_t position)
    : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position)
{
}

namespace {

class Scanner {
public:
    explicit Scanner(std::string_view text, std::size_t offset = 0) : text_(text), offset_(offset) {}

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool done()
    {
        skip_space();
        return pos_ == text_.size();
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool accept(std::string_view token)
    {
        skip_space();
        if (text_.substr(pos_, token.size()) != token)
            return false;
        pos_ += token.size();
        return true;
    }
    void expect(std::string_view token)
    {
        if (!accept(token))
            fail("expected '" + std::string(token) + "'");
    }
    /// `over` as a whole word.
    bool accept_keyword(std::string_view word)
    {
        skip_space();
        if (text_.substr(pos_, word.size()) != word)
            return false;
        std::size_t end = pos_ + word.size();
        if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end])))
            return false;
        pos_ = end;
        return true;
    }
    Integer number()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }
    std::size_t small_number(const char* what)
    {
        std::size_t at = position();
        Integer n = number();
        if (n > 1'000'000)
            throw SyntaxError(std::string(what) + " too large", at);
        return n.get_ui();
    }
    std::string_view rest()
    {
        skip_space();
        return text_.substr(pos_);
    }
    void finish() { pos_ = text_.size(); }
    void advance(std::size_t n) { pos_ += n; }
    std::size_t position() const { return offset_ + pos_; }
    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, position()); }

private:
    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

std::vector<Prime> factor_primes(const Integer& n)
{
    std::vector<Prime> out;
    for (auto [p, e] : prime_factorization(n))
        out.push_back(p);
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view separator)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += separator;
        out += parts[i];
    }
    return out;
}

std::string display_ring_name(const PrimeSet& ring)
{
    if (ring.is_finite()) {
        if (ring.listed().empty())
            return "Z";
        Integer product = 1;
        for (Prime p : ring.listed())
            product *= p;
        return "Z[1/" + product.get_str() + "]";
    }
    if (ring.listed().empty())
        return "Q";
    std::vector<std::string> primes;
    for (Prime p : ring.listed())
        primes.push_back(std::to_string(p));
    return "Z_(" + join(primes, ",") + ")";
}

/// d_1 | d_2 | ... from the primary parts: the i-th largest power of each
/// prime goes into the i-th largest factor.
std::vector<Integer> invariant_factors(const std::vector<PrimaryCyclic>& torsion)
{
    std::map<Prime, std::vector<unsigned>> exponents;
    std::size_t count = 0;
    for (const auto& c : torsion) {
        auto& e = exponents[c.prime];
        e.push_back(c.exponent);
        count = std::max(count, e.size());
    }
    std::vector<Integer> factors(count, Integer(1));
    for (auto& [p, e] : exponents) {
        std::sort(e.rbegin(), e.rend());
        for (std::size_t i = 0; i < e.size(); ++i) {
            Integer q;
            mpz_ui_pow_ui(q.get_mpz_t(), p, e[i]);
            factors[count - 1 - i] *= q;
        }
    }
    return factors;
}

AbGroup parse_group(Scanner& in)
{
    std::size_t rank = 0;
    std::optional<PrimeSet> display_ring;
    std::vector<std::pair<Integer, std::size_t>> orders;

    auto free_summand = [&](std::optional<PrimeSet> ring) {
        std::size_t count = 1;
        if (in.accept("^"))
            count = in.small_number("rank");
        if (ring) {
            if (display_ring && !(*display_ring == *ring))
                throw SemanticError("free summands over different rings: " + display_ring_name(*display_ring) +
                                    " and " + display_ring_name(*ring));
            display_ring = ring;
        }
        rank += count;
    };

    do {
        in.skip_space();
        const std::size_t at = in.position();
        if (in.accept("0")) {
            continue;
        } else if (in.accept("Q")) {
            free_summand(PrimeSet::all());
        } else if (in.accept("Z")) {
            if (in.peek() == '/') {
                in.expect("/");
                orders.emplace_back(in.number(), at);
            } else if (in.peek() == '[') {
                in.expect("[");
                in.expect("1");
                in.expect("/");
                Integer n = in.number();
                in.expect("]");
                if (n == 0)
                    throw SemanticError("Z[1/0] is not a ring");
                free_summand(PrimeSet::finite(factor_primes(n)));
            } else if (in.peek() == '_') {
                in.expect("_");
                in.expect("(");
                std::vector<Prime> excluded;
                do {
                    const std::size_t p_at = in.position();
                    Integer p = in.number();
                    if (!p.fits_ulong_p() || !is_prime(p.get_ui()))
                        throw SyntaxError("expected a prime", p_at);
                    excluded.push_back(p.get_ui());
                } while (in.accept(","));
                in.expect(")");
                free_summand(PrimeSet::cofinite(excluded));
            } else {
                free_summand(std::nullopt);
            }
        } else {
            in.fail("expected a summand (Z, Z/n, Z[1/n], Z_(p), Q or 0)");
        }
    } while (in.accept("+"));

    std::optional<PrimeSet> over;
    if (in.accept_keyword("over")) {
        const std::size_t at = in.position();
        try {
            over = parse_prime_set(in.rest());
        } catch (const std::invalid_argument& e) {
            throw SyntaxError(e.what(), at);
        }
        in.finish();
    }
    if (!in.done())
        in.fail("unexpected text");

    PrimeSet ring;
    if (over && display_ring && !(*over == *display_ring))
        throw SemanticError("ring suffix " + to_string(*over) + " contradicts free summand " +
                            display_ring_name(*display_ring));
    if (over)
        ring = *over;
    else if (display_ring)
        ring = *display_ring;

    std::vector<PrimaryCyclic> torsion;
    for (const auto& [n, at] : orders) {
        if (n == 0)
            throw SemanticError("Z/0 at position " + std::to_string(at) + ": write Z for a free summand");
        for (auto [p, e] : prime_factorization(n)) {
            if (ring.contains(p))
                throw SemanticError("Z/" + n.get_str() + " has " + std::to_string(p) + "-torsion, but " +
                                    std::to_string(p) + " is inverted in " + display_ring_name(ring));
            torsion.push_back({p, e});
        }
    }
    return AbGroup(ring, rank, torsion);
}

json matrix_to_json(const GroupHom& f)
{
    json rows = json::array();
    for (std::size_t i = 0; i < f.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < f.cols(); ++j)
            row.push_back(to_string(f.entry(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Rational rational_from_json(const json& v)
{
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(Integer(std::to_string(v.get<long long>())));
    throw std::invalid_argument("expected a rational string, got " + v.dump());
}

GroupHom::Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols)
{
    if (!j.is_array() || j.size() != rows)
        throw std::invalid_argument("matrix needs " + std::to_string(rows) + " rows");
    GroupHom::Matrix m;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols)
            throw std::invalid_argument("matrix rows need " + std::to_string(cols) + " entries");
        std::vector<Rational> r;
        for (const auto& v : row)
            r.push_back(rational_from_json(v));
        m.push_back(std::move(r));
    }
    return m;
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

AbGroup parse_group_expr(std::string_view text)
{
    Scanner in(text);
    return parse_group(in);
}

std::string format_group(const AbGroup& g)
{
    std::vector<std::string> parts;
    if (g.rank() == 1)
        parts.push_back("Z");
    else if (g.rank() > 1)
        parts.push_back("Z^" + std::to_string(g.rank()));
    for (const auto& c : g.torsion())
        parts.push_back("Z/" + c.order().get_str());
    std::string out = parts.empty() ? "0" : join(parts, " + ");
    if (!g.ring().empty())
        out += " over " + to_string(g.ring());
    return out;
}

std::string display_ring(const PrimeSet& ring)
{
    return display_ring_name(ring);
}

std::string display_group(const AbGroup& g, std::string_view separator)
{
    std::vector<std::string> parts;
    if (g.rank() > 0)
        parts.push_back(display_ring_name(g.ring()) + (g.rank() > 1 ? "^" + std::to_string(g.rank()) : ""));
    for (const auto& d : invariant_factors(g.torsion()))
        parts.push_back("Z/" + d.get_str());
    return parts.empty() ? "0" : join(parts, separator);
}

SimplyConnectedDesc parse_desc(std::string_view text)
{
    Scanner in(text);
    if (!in.accept_keyword("type"))
        in.fail("expected 'type'");
    in.expect("n");
    in.expect("=");
    const std::size_t n_at = in.position();
    const std::size_t n = in.small_number("truncation");
    if (n < 1)
        throw SyntaxError("truncation must be at least 1", n_at);
    std::vector<std::optional<AbGroup>> groups(n - 1);
    while (!in.done()) {
        const std::size_t at = in.position();
        in.expect("pi");
        const std::size_t m = in.small_number("degree");
        if (m < 2 || m > n)
            throw SyntaxError("pi" + std::to_string(m) + " outside 2.." + std::to_string(n), at);
        if (groups[m - 2])
            throw SyntaxError("pi" + std::to_string(m) + " given twice", at);
        in.expect("=");
        in.expect("(");
        // Group text up to the matching parenthesis (Z_(p) nests).
        std::string_view rest = in.rest();
        const std::size_t body_at = in.position();
        std::size_t depth = 1;
        std::size_t len = 0;
        for (; len < rest.size(); ++len) {
            if (rest[len] == '(')
                ++depth;
            else if (rest[len] == ')' && --depth == 0)
                break;
        }
        if (depth != 0)
            throw SyntaxError("unbalanced parenthesis", at);
        Scanner body(rest.substr(0, len), body_at);
        groups[m - 2] = parse_group(body);
        in.advance(len + 1);
    }
    std::vector<AbGroup> out;
    for (auto& g : groups)
        out.push_back(g ? std::move(*g) : AbGroup());
    return SimplyConnectedDesc(static_cast<int>(n), std::move(out));
}

std::string format_desc(const SimplyConnectedDesc& d)
{
    std::string out = "type n=" + std::to_string(d.truncation());
    for (int m = 2; m <= d.truncation(); ++m)
        out += " pi" + std::to_string(m) + "=(" + format_group(d.pi(m)) + ")";
    return out;
}

json matrix_json(const GroupHom& f)
{
    return matrix_to_json(f);
}

json to_json(const GroupHom& f)
{
    return {{"domain", format_group(f.domain())}, {"codomain", format_group(f.codomain())}, {"matrix", matrix_to_json(f)}};
}

GroupHom hom_from_json(const json& j)
{
    AbGroup domain = parse_group_expr(field(j, "domain").get<std::string>());
    AbGroup codomain = parse_group_expr(field(j, "codomain").get<std::string>());
    auto m = matrix_from_json(field(j, "matrix"), codomain.generator_count(), domain.generator_count());
    return GroupHom(domain, codomain, std::move(m));
}

json to_json(const SimplyConnectedDesc& d)
{
    json groups = json::array();
    for (const auto& g : d.groups())
        groups.push_back(format_group(g));
    return {{"truncation", d.truncation()}, {"groups", groups}};
}

json to_json(const DescMap& f)
{
    json levels = json::array();
    for (const auto& level : f.levels())
        levels.push_back(matrix_to_json(level));
    return {{"domain", format_desc(f.domain())}, {"codomain", format_desc(f.codomain())}, {"levels", levels}};
}

DescMap desc_map_from_json(const json& j)
{
    SimplyConnectedDesc domain = parse_desc(field(j, "domain").get<std::string>());
    SimplyConnectedDesc codomain = parse_desc(field(j, "codomain").get<std::string>());
    const json& levels = field(j, "levels");
    if (!levels.is_array() || levels.size() != domain.groups().size())
        throw std::invalid_argument("descriptor map needs one matrix per degree 2.." +
                                    std::to_string(domain.truncation()));
    if (domain.truncation() != codomain.truncation())
        throw std::invalid_argument("descriptor map: truncation levels differ");
    std::vector<GroupHom> homs;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const AbGroup& a = domain.groups()[i];
        const AbGroup& b = codomain.groups()[i];
        homs.emplace_back(a, b, matrix_from_json(levels[i], b.generator_count(), a.generator_count()));
    }
    return DescMap(domain, codomain, std::move(homs));
}

json to_json(const BoundedFn& f)
{
    json out = json::array();
    for (const auto& [x, v] : f.support())
        out.push_back({to_string(x), to_string(v)});
    return out;
}

BoundedFn bounded_fn_from_json(const json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("a bounded function is a list of [point, value] pairs");
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("expected a [point, value] pair, got " + p.dump());
        pairs.emplace_back(rational_from_json(p[0]), rational_from_json(p[1]));
    }
    return BoundedFn::from_pairs(pairs);
}

json to_json(const PElem& a)
{
    return {{"f", to_json(a.f)}, {"r", to_string(a.r)}};
}

PElem pelem_from_json(const json& j)
{
    return {bounded_fn_from_json(field(j, "f")), rational_from_json(field(j, "r"))};
}

json torsion_json(const std::vector<PrimaryCyclic>& torsion)
{
    json out = json::array();
    for (const auto& c : torsion)
        out.push_back({{"prime", c.prime}, {"exponent", c.exponent}});
    return out;
}

}  // namespace abloc
