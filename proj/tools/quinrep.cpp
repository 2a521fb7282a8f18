#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quinrep/escalation.hpp"
#include "quinrep/io.hpp"
#include "quinrep/local.hpp"
#include "quinrep/verify.hpp"

using namespace quinrep;

namespace {

constexpr int kUsage = 64;
constexpr int kNotRepresented = 1;
constexpr int kMismatch = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BigInt parse_big(const std::string& text)
{
    if (text.empty() || text.find_first_not_of("+-0123456789") != std::string::npos)
        throw UsageError("not an integer: '" + text + "'");
    try {
        return BigInt(text);
    } catch (const std::exception&) {
        throw UsageError("not an integer: '" + text + "'");
    }
}

BigForm parse_form(const std::vector<std::string>& args)
{
    if (args.size() != 3)
        throw UsageError("expected three integers a b c");
    return {parse_big(args[0]), parse_big(args[1]), parse_big(args[2])};
}

Form small_form(const BigForm& f)
{
    try {
        return narrow_form(f);
    } catch (const std::out_of_range&) {
        throw UsageError("form entries exceed the 64-bit engine range");
    }
}

Form positive_form(const std::vector<std::string>& args)
{
    const Form f = small_form(parse_form(args));
    if (!is_positive_definite(f))
        throw UsageError("form is not positive definite");
    return f;
}

GramLattice lattice_arg(const std::string& spec)
{
    if (spec.empty())
        throw UsageError("--lattice is required");
    try {
        return parse_lattice_spec(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string big_json(const BigForm& f)
{
    std::ostringstream out;
    out << "[" << f.a << "," << f.b << "," << f.c << "]";
    return out.str();
}

std::string csv_row(const Form& f)
{
    std::ostringstream out;
    out << f.a << "," << f.b << "," << f.c;
    return out.str();
}

std::string vector_text(const Vector& v)
{
    return to_json(v).dump();
}

struct Options {
    std::string format = "text";
    unsigned workers = 1;
    std::string tables;
    std::string expected;
    std::string lattice;
    std::vector<std::string> form;
    Int bound = 100;
    Int prime = 0;
    std::string n = "0", s = "0", t = "0";
    std::string theorem;
    int sublattice_power = 0;
};

void print_json(const Json& j)
{
    std::cout << j.dump(2) << "\n";
}

int cmd_reduce(const Options& o)
{
    const BigForm f = parse_form(o.form);
    if (!is_positive_definite(f))
        throw UsageError("form is not positive definite");
    const auto r = minkowski_reduce(f);
    if (o.format == "json") {
        std::ostringstream out;
        out << "{\n  \"form\": " << big_json(f) << ",\n  \"reduced\": " << big_json(r.form) << ",\n  \"transform\": [["
            << r.transform(0, 0) << "," << r.transform(0, 1) << "],[" << r.transform(1, 0) << ","
            << r.transform(1, 1) << "]]\n}\n";
        std::cout << out.str();
    } else if (o.format == "csv") {
        std::cout << "a,b,c\n" << r.form.a << "," << r.form.b << "," << r.form.c << "\n";
    } else {
        std::cout << r.form << "\n";
    }
    return 0;
}

int cmd_transform(const Options& o)
{
    const BigForm f = parse_form(o.form);
    const BigInt n = parse_big(o.n), s = parse_big(o.s), t = parse_big(o.t);
    const BigForm g = transform_st(f, n, s, t);
    const bool positive = is_positive_definite(g);
    const auto bound = positivity_bound(n, s, t);
    if (o.format == "json") {
        std::ostringstream out;
        out << "{\n  \"form\": " << big_json(f) << ",\n  \"n\": " << n << ",\n  \"s\": " << s << ",\n  \"t\": " << t
            << ",\n  \"shifted\": " << big_json(g) << ",\n  \"positive_definite\": " << (positive ? "true" : "false")
            << ",\n  \"positivity_bound\": [" << bound.num << "," << bound.den << "]\n}\n";
        std::cout << out.str();
    } else if (o.format == "csv") {
        std::cout << "a,b,c,positive_definite\n"
                  << g.a << "," << g.b << "," << g.c << "," << (positive ? 1 : 0) << "\n";
    } else {
        std::cout << g << (positive ? " positive definite" : " not positive definite") << "\n";
    }
    return 0;
}

int cmd_represent(const Options& o)
{
    const GramLattice lattice = lattice_arg(o.lattice);
    const Form f = positive_form(o.form);
    const RepresentationResult result = RepresentationOracle(lattice).represents(f);
    const bool yes = is_certificate(result);
    if (o.format == "json") {
        Json j;
        j["lattice"] = to_json(lattice);
        j["form"] = to_json(f);
        const Json body = to_json(result);
        for (const auto& [k, v] : body.items())
            j[k] = v;
        print_json(j);
    } else if (o.format == "csv") {
        std::cout << "a,b,c,represented\n" << csv_row(f) << "," << (yes ? 1 : 0) << "\n";
    } else if (yes) {
        const auto& c = std::get<RepresentationCertificate>(result);
        std::cout << f << " is represented by " << lattice.describe() << "\n"
                  << "  v1 = " << vector_text(c.v1) << "\n  v2 = " << vector_text(c.v2) << "\n";
    } else {
        const auto& p = std::get<ExhaustionProof>(result);
        std::cout << f << " is not represented by " << lattice.describe() << "\n"
                  << "  exhaustion: " << p.vectors_a << " vectors of norm " << p.norm_a << ", " << p.vectors_c
                  << " vectors of norm " << p.norm_c << ", " << p.pairs_checked << " pairs, none with B = "
                  << p.target_b << "\n";
    }
    return yes ? 0 : kNotRepresented;
}

int cmd_decide(const Options& o)
{
    const Form f = positive_form(o.form);
    const Escalator esc(EscalationConfig::by_id(o.theorem), RuleBook::load(o.tables));
    const Decision d = esc.decide(f);
    if (o.format == "json") {
        print_json(to_json(d));
    } else if (o.format == "csv") {
        std::cout << "a,b,c,represented,route\n"
                  << csv_row(f) << "," << (d.represented ? 1 : 0) << "," << route_name(d.route) << "\n";
    } else {
        std::cout << f << (d.represented ? " is represented" : " is not represented") << " by "
                  << esc.config().lattice.describe() << " (route " << route_name(d.route);
        if (d.shift)
            std::cout << ", s = " << d.shift->s << ", t = " << d.shift->t;
        std::cout << ")\n";
        if (d.certificate)
            std::cout << "  v1 = " << vector_text(d.certificate->v1) << "\n  v2 = "
                      << vector_text(d.certificate->v2) << "\n";
    }
    return d.represented ? 0 : kNotRepresented;
}

int cmd_exceptions(const Options& o)
{
    const GramLattice lattice = lattice_arg(o.lattice);
    const auto forms = RepresentationOracle(lattice).exceptions_up_to(o.bound, o.workers);
    if (o.format == "json") {
        Json j;
        j["lattice"] = to_json(lattice);
        j["bound"] = o.bound;
        j["note"] = kBoundDisclaimer;
        j["count"] = forms.size();
        Json list = Json::array();
        for (const Form& f : forms)
            list.push_back(to_json(f));
        j["exceptions"] = std::move(list);
        print_json(j);
    } else if (o.format == "csv") {
        std::cout << "a,b,c,discriminant\n";
        for (const Form& f : forms)
            std::cout << csv_row(f) << "," << discriminant(f) << "\n";
    } else {
        std::cout << lattice.describe() << ": " << forms.size() << " exceptions with c <= " << o.bound << "\n";
        for (const Form& f : forms)
            std::cout << "  " << f << "\n";
        std::cout << "NOTE: " << kBoundDisclaimer << "\n";
    }
    return 0;
}

int cmd_local(const Options& o)
{
    const GramLattice lattice = lattice_arg(o.lattice);
    if (lattice.rank() != 4)
        throw UsageError("local: lattice must be quaternary");
    if (!is_prime(o.prime))
        throw UsageError("local: --prime must be a prime");
    const Form f = positive_form(o.form);
    const bool yes = local_represents(lattice, f, o.prime);
    if (o.format == "json") {
        Json j;
        j["lattice"] = to_json(lattice);
        j["form"] = to_json(f);
        j["prime"] = o.prime;
        j["represented"] = yes;
        print_json(j);
    } else if (o.format == "csv") {
        std::cout << "a,b,c,prime,represented\n" << csv_row(f) << "," << o.prime << "," << (yes ? 1 : 0) << "\n";
    } else {
        std::cout << f << (yes ? " is" : " is not") << " represented by " << lattice.describe() << " over Z_"
                  << o.prime << "\n";
    }
    return 0;
}

int cmd_verify(const Options& o)
{
    std::vector<std::string> ids;
    if (o.theorem == "all")
        ids = {"t2", "t3a", "t3b", "table1", "k"};
    else
        ids = {o.theorem};

    VerifyOptions opts{o.workers, o.tables, o.expected};
    Json reports = Json::array();
    std::string text;
    std::string csv = "report,bound,passed\n";
    bool ok = true;
    auto add = [&](const auto& report, const std::string& name) {
        ok = ok && report.passed();
        reports.push_back(to_json(report));
        text += to_text(report);
        csv += name + "," + std::to_string(o.bound) + "," + (report.passed() ? "1" : "0") + "\n";
    };
    for (const auto& id : ids) {
        if (id == "table1") {
            add(verify_table1(o.bound, o.workers), id);
        } else if (id == "k") {
            add(verify_k_exceptions(), id);
        } else {
            add(verify_theorem(id, o.bound, opts), id);
            if (o.sublattice_power > 0)
                add(verify_sublattice_claim(id, o.sublattice_power, opts), id + "-sublattices");
        }
    }
    if (o.format == "json")
        print_json(Json{{"reports", std::move(reports)}, {"passed", ok}});
    else if (o.format == "csv")
        std::cout << csv;
    else
        std::cout << text;
    return ok ? 0 : kMismatch;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Representations of binary quadratic forms by quaternary and quinary lattices"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--tables", o.tables, "Rule-table JSON (default: $QUINREP_TABLES or the installed copy)");
    app.add_option("--expected", o.expected, "Expected-exception JSON");

    auto form_args = [&](CLI::App* sub) {
        sub->add_option("form", o.form, "a b c")->expected(3)->required();
    };
    auto lattice_opt = [&](CLI::App* sub) {
        sub->add_option("--lattice", o.lattice, "Diagonal entries 1,1,1,3,7 or @gram.json")->required();
    };

    auto* reduce = app.add_subcommand("reduce", "Minkowski-reduce a binary form");
    form_args(reduce);

    auto* represent = app.add_subcommand("represent", "Decide representation by exhaustive search");
    lattice_opt(represent);
    form_args(represent);

    auto* decide_cmd = app.add_subcommand("decide", "Escalation decision for a theorem configuration");
    decide_cmd->add_option("--theorem", o.theorem, "t2, t3a or t3b")
        ->required()
        ->check(CLI::IsMember({"t2", "t3a", "t3b"}));
    form_args(decide_cmd);

    auto* exceptions = app.add_subcommand("exceptions", "List unrepresented reduced forms with c <= bound");
    lattice_opt(exceptions);
    exceptions->add_option("--bound", o.bound, "Bound C")->check(CLI::PositiveNumber)->capture_default_str();

    auto* local = app.add_subcommand("local", "Local representation over Z_p");
    lattice_opt(local);
    local->add_option("--prime", o.prime, "Prime p")->required();
    form_args(local);

    auto* verify = app.add_subcommand("verify", "Re-derive exception lists and auxiliary claims");
    verify->add_option("--theorem", o.theorem, "t2, t3a, t3b, table1, k or all")
        ->required()
        ->check(CLI::IsMember({"t2", "t3a", "t3b", "table1", "k", "all"}));
    verify->add_option("--bound", o.bound, "Bound C")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--sublattices", o.sublattice_power, "Also check index 2^k sublattices, k <= value")
        ->check(CLI::Range(0, 3));

    auto* transform = app.add_subcommand("transform", "Shifted form [a - n s^2, b - n s t, c - n t^2]");
    transform->add_option("--n", o.n, "n")->required();
    transform->add_option("--s", o.s, "s")->required();
    transform->add_option("--t", o.t, "t")->required();
    form_args(transform);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*reduce)
            return cmd_reduce(o);
        if (*transform)
            return cmd_transform(o);
        if (*represent)
            return cmd_represent(o);
        if (*decide_cmd)
            return cmd_decide(o);
        if (*exceptions)
            return cmd_exceptions(o);
        if (*local)
            return cmd_local(o);
        if (*verify)
            return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
    return kUsage;
}
