#include "quinrep/tables.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "quinrep/local.hpp"

namespace quinrep {

namespace {

using nlohmann::json;

Int value_of(RuleVar v, const Form& f, Int s, Int t)
{
    switch (v) {
    case RuleVar::a: return f.a;
    case RuleVar::b: return f.b;
    case RuleVar::c: return f.c;
    case RuleVar::s: return s;
    case RuleVar::t: return t;
    case RuleVar::ac: return f.a * f.c;
    case RuleVar::st: return s * t;
    }
    return 0;
}

RuleVar parse_var(const std::string& name)
{
    if (name == "a") return RuleVar::a;
    if (name == "b") return RuleVar::b;
    if (name == "c") return RuleVar::c;
    if (name == "s") return RuleVar::s;
    if (name == "t") return RuleVar::t;
    if (name == "a*c") return RuleVar::ac;
    if (name == "s*t") return RuleVar::st;
    throw std::runtime_error("rule tables: unknown variable '" + name + "'");
}

RuleAtom parse_atom(const json& j)
{
    RuleAtom atom;
    for (const auto& name : j.at("vars"))
        atom.vars.push_back(parse_var(name.get<std::string>()));
    atom.modulus = j.at("mod").get<Int>();
    if (atom.modulus < 1)
        throw std::runtime_error("rule tables: modulus must be positive");
    for (const auto& tuple : j.at("in")) {
        auto values = tuple.get<std::vector<Int>>();
        if (values.size() != atom.vars.size())
            throw std::runtime_error("rule tables: tuple arity does not match vars");
        for (Int& v : values)
            v = mod(v, atom.modulus);
        atom.allowed.push_back(std::move(values));
    }
    return atom;
}

RuleTable parse_table(const json& j)
{
    RuleTable table;
    table.id = j.at("id").get<std::string>();
    table.prime = j.at("prime").get<Int>();
    if (j.contains("n")) {
        if (j["n"].is_array())
            table.shifts = j["n"].get<std::vector<Int>>();
        else
            table.shifts = {j["n"].get<Int>()};
    }
    table.assumes_maximal = j.value("assumes", std::string("none")) != "none";
    for (const auto& r : j.at("rules")) {
        Rule rule;
        rule.label = r.at("label").get<std::string>();
        for (const auto& clause : r.at("any_of")) {
            std::vector<RuleAtom> atoms;
            for (const auto& a : clause)
                atoms.push_back(parse_atom(a));
            rule.clauses.push_back(std::move(atoms));
        }
        table.rules.push_back(std::move(rule));
    }
    return table;
}

} // namespace

bool RuleAtom::holds(const Form& f, Int s, Int t) const
{
    std::vector<Int> residues;
    residues.reserve(vars.size());
    for (RuleVar v : vars)
        residues.push_back(mod(value_of(v, f, s, t), modulus));
    for (const auto& tuple : allowed)
        if (tuple == residues)
            return true;
    return false;
}

bool Rule::holds(const Form& f, Int s, Int t) const
{
    for (const auto& clause : clauses) {
        bool all = true;
        for (const auto& atom : clause)
            if (!atom.holds(f, s, t)) {
                all = false;
                break;
            }
        if (all)
            return true;
    }
    return false;
}

std::optional<std::string> RuleTable::match(const Form& f, Int s, Int t) const
{
    for (const auto& rule : rules)
        if (rule.holds(f, s, t))
            return rule.label;
    return std::nullopt;
}

ResidueModuli RuleTable::moduli() const
{
    ResidueModuli m;
    auto widen = [](Int& slot, Int modulus) { slot = std::lcm(slot, modulus); };
    for (const auto& rule : rules)
        for (const auto& clause : rule.clauses)
            for (const auto& atom : clause)
                for (RuleVar v : atom.vars)
                    switch (v) {
                    case RuleVar::a: widen(m.a, atom.modulus); break;
                    case RuleVar::b: widen(m.b, atom.modulus); break;
                    case RuleVar::c: widen(m.c, atom.modulus); break;
                    case RuleVar::s: widen(m.s, atom.modulus); break;
                    case RuleVar::t: widen(m.t, atom.modulus); break;
                    case RuleVar::ac: widen(m.a, atom.modulus); widen(m.c, atom.modulus); break;
                    case RuleVar::st: widen(m.s, atom.modulus); widen(m.t, atom.modulus); break;
                    }
    return m;
}

RuleBook RuleBook::from_json_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("rule tables: ") + e.what());
    }
    RuleBook book;
    book.version_ = j.at("version").get<int>();
    if (book.version_ != 1)
        throw std::runtime_error("rule tables: unsupported version " + std::to_string(book.version_));
    for (const auto& t : j.at("tables"))
        book.tables_.push_back(parse_table(t));
    return book;
}

RuleBook RuleBook::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("rule tables: cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return from_json_text(text.str());
}

std::string RuleBook::default_path()
{
    if (const char* env = std::getenv("QUINREP_TABLES"); env && *env)
        return env;
    return QUINREP_DEFAULT_TABLES;
}

RuleBook RuleBook::load(const std::string& path)
{
    return from_file(path.empty() ? default_path() : path);
}

const RuleTable& RuleBook::table(const std::string& id) const
{
    for (const auto& t : tables_)
        if (t.id == id)
            return t;
    throw std::out_of_range("unknown rule table '" + id + "'");
}

bool RuleBook::check_rule(const std::string& table_id, const Form& f, Int s, Int t) const
{
    return table(table_id).match(f, s, t).has_value();
}

std::vector<ResidueClass> RuleBook::coverage_check(const std::string& table_id, CoverageFilter filter,
                                                   bool mirror) const
{
    const RuleTable& tab = table(table_id);
    ResidueModuli m = tab.moduli();
    if (mirror) {
        m.a = m.c = std::lcm(m.a, m.c);
        m.s = m.t = std::lcm(m.s, m.t);
    }
    const Int p = tab.prime;
    if (filter == CoverageFilter::primitive) {
        m.a = std::lcm(m.a, p);
        m.b = std::lcm(m.b, p);
        m.c = std::lcm(m.c, p);
    } else if (filter == CoverageFilter::maximal) {
        m.a = std::lcm(m.a, p * p);
        m.c = std::lcm(m.c, p * p);
        m.b = std::lcm(m.b, p == 2 ? p : p * p);
    }

    auto covered = [&](const Form& f) {
        for (Int s = 0; s < m.s; ++s)
            for (Int t = 0; t < m.t; ++t)
                if (tab.match(f, s, t))
                    return true;
        return false;
    };

    std::vector<ResidueClass> gaps;
    for (Int a = 0; a < m.a; ++a)
        for (Int b = 0; b < m.b; ++b)
            for (Int c = 0; c < m.c; ++c) {
                const Form f{a, b, c};
                if (filter == CoverageFilter::primitive && !is_primitive(f, p))
                    continue;
                if (filter == CoverageFilter::maximal && !is_maximal(f, p))
                    continue;
                if (covered(f) || (mirror && covered(Form{c, b, a})))
                    continue;
                gaps.push_back({a, b, c, m.a, m.b, m.c});
            }
    return gaps;
}

} // namespace quinrep
