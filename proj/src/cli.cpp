#include "abloc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"

#include "abloc/io.hpp"
#include "abloc/localize.hpp"

namespace abloc {
namespace {

/// --family k1,k2,... or --at p.
struct Localizer {
    std::variant<SFamily, PrimeSet> which;
    Prime at_prime = 0;

    bool is_family() const { return std::holds_alternative<SFamily>(which); }
    const SFamily& family() const { return std::get<SFamily>(which); }

    std::string label() const
    {
        if (!is_family())
            return "at " + std::to_string(at_prime);
        std::string s;
        for (auto k : family().generators())
            s += (s.empty() ? "" : ",") + std::to_string(k);
        return "away " + s;
    }

    std::string json_label() const
    {
        return is_family() ? to_string(family()) : "at:" + std::to_string(at_prime);
    }

    PrimeSet inverted() const { return is_family() ? family().inverted_primes() : std::get<PrimeSet>(which); }
};

struct LocalizerOptions {
    std::string family;
    Prime at = 0;
    CLI::Option* family_opt = nullptr;
    CLI::Option* at_opt = nullptr;

    void add(CLI::App* sub, bool allow_at = true)
    {
        family_opt = sub->add_option("--family", family, "multiplicative family, e.g. 2,3");
        if (allow_at) {
            at_opt = sub->add_option("--at", at, "localize at this prime");
            family_opt->excludes(at_opt);
        }
    }

    Localizer get() const
    {
        if (at_opt && at_opt->count() > 0) {
            if (!is_prime(at))
                throw std::invalid_argument("--at needs a prime, got " + std::to_string(at));
            return {PrimeSet::at(at), at};
        }
        if (family_opt->count() == 0)
            throw std::invalid_argument(at_opt ? "one of --family or --at is required" : "--family is required");
        return {parse_family(family), 0};
    }
};

std::string matrix_text(const GroupHom& f)
{
    std::string out = "[";
    for (std::size_t i = 0; i < f.rows(); ++i) {
        out += i ? "; " : "";
        for (std::size_t j = 0; j < f.cols(); ++j)
            out += (j ? " " : "") + to_string(f.entry(i, j));
    }
    return out + "]";
}

std::string torsion_text(const std::vector<PrimaryCyclic>& torsion)
{
    std::string out;
    for (const auto& c : torsion)
        out += (out.empty() ? "" : ", ") + ("Z/" + c.order().get_str());
    return out.empty() ? "none" : out;
}

std::string read_all(std::istream& in)
{
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Inline JSON, `@path`, or `-` for standard input.
json load_json(const std::string& arg, std::istream& in)
{
    std::string text;
    if (arg == "-") {
        text = read_all(in);
    } else if (arg.starts_with("@")) {
        std::ifstream file(arg.substr(1));
        if (!file)
            throw std::invalid_argument("cannot read " + arg.substr(1));
        text = read_all(file);
    } else {
        text = arg;
    }
    return json::parse(text);
}

json base_report(const std::string& command)
{
    return {{"schema_version", kSchemaVersion}, {"command", command}};
}

void emit(std::ostream& out, const json& j)
{
    out << j.dump(2) << '\n';
}

json certificate_json(const LocalizationCertificate& c)
{
    json failures = json::array();
    for (auto clause : c.failures())
        failures.push_back(to_string(clause));
    return {{"codomain_local", c.codomain_local},
            {"kernel_torsion", c.kernel_torsion},
            {"cokernel_torsion", c.cokernel_torsion},
            {"kernel", display_group(c.kernel)},
            {"cokernel", display_group(c.cokernel)},
            {"holds", c.holds()},
            {"failures", failures}};
}

std::string failures_text(const LocalizationCertificate& c)
{
    std::string out;
    for (auto clause : c.failures())
        out += (out.empty() ? "" : "; ") + to_string(clause);
    return out;
}

/// Why g fails to be uniquely divisible by the localizer.
std::string non_local_reason(const AbGroup& g, const Localizer& loc)
{
    const PrimeSet inverted = loc.inverted();
    std::vector<std::string> reasons;
    if (g.rank() > 0 && !inverted.is_subset_of(g.ring()))
        reasons.push_back("free part " + display_ring(g.ring()) + " is not a " + display_ring(inverted) + "-module");
    for (Prime p : g.torsion_primes())
        if (inverted.contains(p))
            reasons.push_back("has " + std::to_string(p) + "-torsion");
    return reasons.empty() ? "not uniquely divisible" : [&] {
        std::string s;
        for (const auto& r : reasons)
            s += (s.empty() ? "" : "; ") + r;
        return s;
    }();
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::istream& in;
    bool as_json = false;
};

int cmd_localize(Context& cx, const std::string& group_text, const Localizer& loc)
{
    const AbGroup g = parse_group_expr(group_text);
    const auto r = loc.is_family() ? localize_group(g, loc.family()) : localize_group(g, loc.inverted());
    std::optional<std::size_t> index;
    if (loc.is_family())
        index = telescope_colimit(g, loc.family()).stabilization_index;
    if (cx.as_json) {
        json j = base_report("localize");
        j["input"] = display_group(g);
        j["family"] = loc.json_label();
        j["localized"] = display_group(r.localized);
        j["unit_matrix"] = matrix_json(r.unit);
        j["deleted_torsion"] = torsion_json(r.deleted_torsion);
        if (index)
            j["stabilization_index"] = *index;
        emit(cx.out, j);
    } else {
        cx.out << display_group(g, " ⊕ ") << " --[" << loc.label() << "]--> " << display_group(r.localized, " ⊕ ")
               << '\n';
        cx.out << "unit: " << matrix_text(r.unit) << '\n';
        cx.out << "deleted torsion: " << torsion_text(r.deleted_torsion) << '\n';
        if (index)
            cx.out << "stabilization index: " << *index << '\n';
    }
    return kExitOk;
}

int cmd_check_local(Context& cx, const std::string& group_text, const Localizer& loc)
{
    const AbGroup g = parse_group_expr(group_text);
    const bool local = loc.is_family() ? is_uniquely_S_divisible(g, loc.family())
                                       : is_uniquely_S_divisible(g, loc.inverted());
    if (cx.as_json) {
        json j = base_report("check-local");
        j["input"] = display_group(g);
        j["family"] = loc.json_label();
        j["local"] = local;
        if (!local)
            j["reason"] = non_local_reason(g, loc);
        emit(cx.out, j);
    } else if (local) {
        cx.out << "local\n";
    } else {
        cx.out << "not local: " << non_local_reason(g, loc) << '\n';
    }
    return local ? kExitOk : kExitNegative;
}

int cmd_check_map(Context& cx, const std::string& map_arg, const Localizer& loc)
{
    const json input = load_json(map_arg, cx.in);
    if (!input.is_object())
        throw std::invalid_argument("check-map expects a JSON object");
    json j = base_report("check-map");
    j["family"] = loc.json_label();
    bool holds = false;
    if (input.contains("levels")) {
        const DescMap f = desc_map_from_json(input);
        const auto cert = loc.is_family() ? is_localization_map(f, loc.family())
                                          : is_localization_map(f, loc.inverted());
        holds = cert.holds();
        json levels = json::array();
        for (std::size_t i = 0; i < cert.levels.size(); ++i) {
            json level = certificate_json(cert.levels[i]);
            level["degree"] = i + 2;
            levels.push_back(level);
        }
        j["levels"] = levels;
        j["first_failure"] = cert.first_failure() ? json(*cert.first_failure()) : json(nullptr);
        if (!cx.as_json) {
            if (holds) {
                cx.out << "localization map (" << loc.label() << ") at every level 2.." << f.domain().truncation()
                       << '\n';
            } else {
                const int m = *cert.first_failure();
                const auto& c = cert.levels[static_cast<std::size_t>(m - 2)];
                cx.out << "not a localization map (" << loc.label() << ")\n";
                cx.out << "first failing level: pi" << m << '\n';
                cx.out << "failing clauses: " << failures_text(c) << '\n';
                cx.out << "kernel: " << display_group(c.kernel, " ⊕ ") << ", cokernel: "
                       << display_group(c.cokernel, " ⊕ ") << '\n';
            }
        }
    } else {
        const GroupHom f = hom_from_json(input);
        const auto cert = loc.is_family() ? is_localization(f, loc.family()) : is_localization(f, loc.inverted());
        holds = cert.holds();
        j["certificate"] = certificate_json(cert);
        if (!cx.as_json) {
            if (holds) {
                cx.out << "localization (" << loc.label() << ")\n";
            } else {
                cx.out << "not a localization (" << loc.label() << ")\n";
                cx.out << "failing clauses: " << failures_text(cert) << '\n';
                cx.out << "kernel: " << display_group(cert.kernel, " ⊕ ") << ", cokernel: "
                       << display_group(cert.cokernel, " ⊕ ") << '\n';
            }
        }
    }
    j["holds"] = holds;
    if (cx.as_json)
        emit(cx.out, j);
    return holds ? kExitOk : kExitNegative;
}

int cmd_telescope(Context& cx, const std::string& group_text, const Localizer& loc)
{
    const AbGroup g = parse_group_expr(group_text);
    const TelescopeTrace t = telescope_colimit(g, loc.family());
    if (cx.as_json) {
        json j = base_report("telescope");
        j["input"] = display_group(g);
        j["family"] = loc.json_label();
        json stages = json::array();
        for (const auto& s : t.stages)
            stages.push_back({{"group", display_group(s.group)},
                              {"factor", s.factor.get_str()},
                              {"transition", matrix_json(s.transition())},
                              {"iso", is_isomorphism(s.transition())}});
        j["stages"] = stages;
        j["stabilization_index"] = t.stabilization_index;
        j["colimit"] = display_group(t.colimit);
        emit(cx.out, j);
    } else {
        for (std::size_t n = 0; n < t.stages.size(); ++n) {
            const auto& s = t.stages[n];
            cx.out << "stage " << n << ": " << display_group(s.group, " ⊕ ") << "  --x" << s.factor.get_str()
                   << "--> next (" << (is_isomorphism(s.transition()) ? "iso" : "not iso") << ")\n";
        }
        cx.out << "stabilization index: " << t.stabilization_index << '\n';
        cx.out << "colimit: " << display_group(t.colimit, " ⊕ ") << '\n';
    }
    return kExitOk;
}

int cmd_em(Context& cx, const std::string& group_text, int degree, const Localizer& loc)
{
    const EMDescriptor k(parse_group_expr(group_text), degree);
    const auto r = loc.is_family() ? em_localize(k, loc.family()) : em_localize(k, loc.inverted());
    if (cx.as_json) {
        json j = base_report("em");
        j["input"] = display_group(k.group);
        j["degree"] = degree;
        j["family"] = loc.json_label();
        j["localized"] = display_group(r.localized.group);
        j["unit_matrix"] = matrix_json(r.unit);
        emit(cx.out, j);
    } else {
        cx.out << "K(" << display_group(k.group, " ⊕ ") << ", " << degree << ") --[" << loc.label() << "]--> K("
               << display_group(r.localized.group, " ⊕ ") << ", " << r.localized.degree << ")\n";
    }
    return kExitOk;
}

std::string pelem_text(const PElem& a)
{
    std::string f;
    for (const auto& [x, v] : a.f.support())
        f += (f.empty() ? "" : " + ") + (v == 1 ? std::string() : to_string(v) + "*") + "δ_" + to_string(x);
    return "(" + (f.empty() ? "0" : f) + ", " + to_string(a.r) + ")";
}

json obstruction_json(const CosetObstruction& o)
{
    json t = json::array(), rem = json::array();
    for (const auto& c : o.target_coefficients)
        t.push_back(to_string(c));
    for (const auto& c : o.remainder)
        rem.push_back(to_string(c));
    return {{"representative", to_string(o.representative)},
            {"step", to_string(o.step)},
            {"n", o.n},
            {"target_coefficients", t},
            {"remainder", rem}};
}

std::string laurent_text(const std::vector<Rational>& coefficients)
{
    std::string out;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        if (coefficients[j] == 0)
            continue;
        std::string mono = j == 0 ? "" : (j == 1 ? "z" : "z^" + std::to_string(j));
        std::string coef = coefficients[j] == 1 && j > 0 ? "" : to_string(coefficients[j]);
        out += (out.empty() ? "" : " + ") + coef + mono;
    }
    return out.empty() ? "0" : out;
}

std::string repunit_text(unsigned long n)
{
    std::vector<Rational> ones(n, Rational(1));
    return laurent_text(ones);
}

/// Reports nth_root on target; `expect_none` flips which outcome is success.
int report_root(Context& cx, const std::string& command, const PElem& target, unsigned long n, bool expect_none,
                const std::optional<std::vector<Rational>>& window)
{
    const RootResult r = nth_root(target, n);
    std::optional<bool> window_root;
    if (window)
        window_root = bounded_root_search(target, n, *window).has_value();
    json j = base_report(command);
    j["target"] = to_json(target);
    j["n"] = n;
    if (r.found()) {
        j["result"] = "root";
        j["root"] = to_json(*r.root);
    } else {
        j["result"] = "NoSolution";
        j["obstruction"] = obstruction_json(*r.obstruction);
    }
    if (window_root) {
        j["window"] = {{"lo", to_string(window->front())}, {"hi", to_string(window->back())},
                       {"points", window->size()}, {"root_found", *window_root}};
    }
    if (cx.as_json) {
        emit(cx.out, j);
    } else {
        cx.out << "target " << pelem_text(target) << ", n = " << n << '\n';
        if (r.found()) {
            cx.out << "root: " << pelem_text(*r.root) << '\n';
        } else {
            const auto& o = *r.obstruction;
            cx.out << "NoSolution\n";
            cx.out << "obstruction on coset " << to_string(o.representative) << " + " << to_string(o.step)
                   << "Z: " << repunit_text(o.n) << " does not divide " << laurent_text(o.target_coefficients)
                   << " (remainder " << laurent_text(o.remainder) << ")\n";
        }
        if (window_root)
            cx.out << "exact search on " << window->size() << " points in [" << to_string(window->front()) << ", "
                   << to_string(window->back()) << "]: " << (*window_root ? "root found" : "no root") << '\n';
    }
    const bool ok = expect_none ? !r.found() && !window_root.value_or(false) : r.found();
    return ok ? kExitOk : kExitNegative;
}

int cmd_qz(Context& cx, const std::string& y_text, unsigned long k)
{
    const QmodZ y(parse_rational(y_text));
    const auto sols = divisibility_solutions(y, k);
    json j = base_report("counterexample qz");
    j["y"] = to_string(y.value());
    j["k"] = k;
    json list = json::array();
    for (const auto& x : sols)
        list.push_back(to_string(x.value()));
    j["solutions"] = list;
    j["uniquely_divisible"] = sols.size() == 1;
    if (cx.as_json) {
        emit(cx.out, j);
    } else {
        cx.out << k << "x = " << to_string(y.value()) << " in Q/Z has " << sols.size() << " solution"
               << (sols.size() == 1 ? "" : "s") << ":";
        for (const auto& x : sols)
            cx.out << ' ' << to_string(x.value());
        cx.out << '\n';
    }
    return kExitOk;
}

int cmd_lift(Context& cx, const std::string& hom_arg, const Integer& k)
{
    const GroupHom f = hom_from_json(load_json(hom_arg, cx.in));
    json j = base_report("lift");
    j["input"] = to_json(f);
    j["k"] = k.get_str();
    try {
        const GroupHom lifted = lift_along_power(f, k);
        j["lift"] = to_json(lifted);
        if (cx.as_json)
            emit(cx.out, j);
        else
            cx.out << "lift: " << matrix_text(lifted) << " : " << display_group(lifted.domain(), " ⊕ ") << " -> "
                   << display_group(lifted.codomain(), " ⊕ ") << '\n';
        return kExitOk;
    } catch (const std::domain_error& e) {
        j["error"] = e.what();
        if (cx.as_json)
            emit(cx.out, j);
        else
            cx.out << "no lift: " << e.what() << '\n';
        return kExitNegative;
    }
}

int cmd_batch(Context& cx)
{
    const json commands = json::parse(read_all(cx.in));
    if (!commands.is_array())
        throw std::invalid_argument("batch expects a JSON array of commands");
    json results = json::array();
    int worst = kExitOk;
    for (const auto& c : commands) {
        const json& args_json = c.is_object() ? c.at("args") : c;
        std::vector<std::string> args = args_json.get<std::vector<std::string>>();
        if (!args.empty() && args.front() == "batch")
            throw std::invalid_argument("batch commands cannot nest");
        if (std::find(args.begin(), args.end(), "--json") == args.end())
            args.push_back("--json");
        std::ostringstream out, err;
        std::istringstream none;
        const int code = run_cli(args, out, err, none);
        worst = std::max(worst, code);
        json entry = {{"args", args}, {"exit_code", code}};
        entry["report"] = out.str().empty() ? json(nullptr) : json::parse(out.str());
        if (!err.str().empty())
            entry["error"] = err.str();
        results.push_back(entry);
    }
    json j = base_report("batch");
    j["results"] = results;
    emit(cx.out, j);
    return worst;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app("Exact localization of finitely generated abelian groups", "abloc");
    app.require_subcommand(1);
    app.fallthrough();
    Context cx{out, err, in};
    app.add_flag("--json", cx.as_json, "emit a JSON report");

    std::function<int()> action;
    std::string group, map_arg, hom_arg, y_text = "0";
    int degree = 2;
    unsigned long k = 2;
    std::string target_arg;

    auto* localize = app.add_subcommand("localize", "localize a group");
    localize->add_option("group", group, "group expression, e.g. \"Z + Z/12\"")->required();
    LocalizerOptions localize_opts;
    localize_opts.add(localize);
    localize->callback([&] { action = [&] { return cmd_localize(cx, group, localize_opts.get()); }; });

    auto* check_local = app.add_subcommand("check-local", "decide unique S-divisibility");
    check_local->add_option("group", group)->required();
    LocalizerOptions check_local_opts;
    check_local_opts.add(check_local);
    check_local->callback([&] { action = [&] { return cmd_check_local(cx, group, check_local_opts.get()); }; });

    auto* check_map = app.add_subcommand("check-map", "decide whether a hom or descriptor map is a localization");
    check_map->add_option("map", map_arg, "JSON text, @file, or - for stdin")->required();
    LocalizerOptions check_map_opts;
    check_map_opts.add(check_map);
    check_map->callback([&] { action = [&] { return cmd_check_map(cx, map_arg, check_map_opts.get()); }; });

    auto* telescope = app.add_subcommand("telescope", "trace the telescope colimit");
    telescope->add_option("group", group)->required();
    LocalizerOptions telescope_opts;
    telescope_opts.add(telescope, false);
    telescope->callback([&] { action = [&] { return cmd_telescope(cx, group, telescope_opts.get()); }; });

    auto* em = app.add_subcommand("em", "localize K(G, n)");
    em->add_option("group", group)->required();
    em->add_option("--degree,-n", degree, "degree n >= 1")->capture_default_str();
    LocalizerOptions em_opts;
    em_opts.add(em);
    em->callback([&] { action = [&] { return cmd_em(cx, group, degree, em_opts.get()); }; });

    auto* lift = app.add_subcommand("lift", "lift a hom along multiplication by k");
    lift->add_option("hom", hom_arg, "JSON text, @file, or - for stdin")->required();
    lift->add_option("--k", k, "power")->capture_default_str()->check(CLI::PositiveNumber);
    lift->callback([&] { action = [&] { return cmd_lift(cx, hom_arg, Integer(k)); }; });

    auto* counter = app.add_subcommand("counterexample", "the non-modality counterexamples");
    counter->require_subcommand(1);
    counter->fallthrough();
    auto* sqrt_delta = counter->add_subcommand("sqrt-delta", "(δ_0, 2) has no square root");
    sqrt_delta->callback([&] {
        action = [&] {
            return report_root(cx, "counterexample sqrt-delta", PElem{BoundedFn::delta(0), 2}, 2, true,
                               rational_grid(-4, 4, 2));
        };
    });
    auto* kth = counter->add_subcommand("kth-root", "(δ_0, k) has no k-th root");
    kth->add_option("--k", k, "k > 1")->capture_default_str()->check(CLI::Range(2ul, 1000ul));
    kth->callback([&] {
        action = [&] {
            const PElem target{BoundedFn::delta(0), Rational(static_cast<long>(k))};
            return report_root(cx, "counterexample kth-root", target, k, true, std::nullopt);
        };
    });
    auto* root = counter->add_subcommand("root", "decide whether an element of B ⋊ Q has an n-th root");
    root->add_option("target", target_arg, "PElem JSON, @file, or -")->required();
    root->add_option("--n", k, "n >= 1")->capture_default_str()->check(CLI::PositiveNumber);
    root->callback([&] {
        action = [&] {
            return report_root(cx, "counterexample root", pelem_from_json(load_json(target_arg, cx.in)), k, false,
                               std::nullopt);
        };
    });
    auto* qz = counter->add_subcommand("qz", "solve k x = y in Q/Z");
    qz->add_option("--y", y_text, "rational")->capture_default_str();
    qz->add_option("--k", k, "k >= 1")->capture_default_str()->check(CLI::PositiveNumber);
    qz->callback([&] { action = [&] { return cmd_qz(cx, y_text, k); }; });

    auto* batch = app.add_subcommand("batch", "run a JSON array of argument lists from stdin");
    batch->callback([&] { action = [&] { return cmd_batch(cx); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }
    try {
        return action();
    } catch (const json::exception& e) {
        err << "error: bad JSON: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitInput;
}

}  // namespace abloc
