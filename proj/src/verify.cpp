#include "quinrep/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace quinrep {

namespace {

template <class Work>
void run_workers(unsigned workers, Work&& work)
{
    workers = std::max(1u, workers);
    if (workers == 1) {
        work(0u, 1u);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id)
        pool.emplace_back([&, id] { work(id, workers); });
    for (auto& t : pool)
        t.join();
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Json forms_json(const std::vector<Form>& forms)
{
    Json out = Json::array();
    for (const Form& f : forms)
        out.push_back(to_json(f));
    return out;
}

std::string forms_text(const std::vector<Form>& forms)
{
    if (forms.empty())
        return "(none)";
    std::ostringstream out;
    for (std::size_t i = 0; i < forms.size(); ++i)
        out << (i ? " " : "") << forms[i];
    return out.str();
}

Json evidence_json(const Evidence& e)
{
    Json out;
    out["form"] = to_json(e.form);
    const Json result = to_json(e.result);
    for (const auto& [k, v] : result.items())
        out[k] = v;
    return out;
}

std::string evidence_text(const Evidence& e)
{
    std::ostringstream out;
    out << e.form << ": ";
    if (const auto* cert = std::get_if<RepresentationCertificate>(&e.result)) {
        out << "represented by v1 = " << to_json(cert->v1).dump() << ", v2 = " << to_json(cert->v2).dump();
    } else {
        const auto& p = std::get<ExhaustionProof>(e.result);
        out << "not represented (" << p.vectors_a << " x " << p.vectors_c << " vectors, " << p.pairs_checked
            << " pairs checked)";
    }
    return out.str();
}

std::vector<Form> normalized(std::vector<Form> forms)
{
    for (Form& f : forms)
        f = reduced(f);
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
    return forms;
}

} // namespace

std::vector<ExpectedList> load_expected(const std::string& path)
{
    std::string file = path;
    if (file.empty()) {
        const char* env = std::getenv("QUINREP_EXPECTED");
        file = env && *env ? env : QUINREP_DEFAULT_EXPECTED;
    }
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("expected exceptions: cannot open " + file);
    const Json j = Json::parse(in);
    if (j.at("version").get<int>() != 1)
        throw std::runtime_error("expected exceptions: unsupported version");
    std::vector<ExpectedList> out;
    for (const auto& entry : j.at("lattices")) {
        std::vector<Form> forms;
        for (const auto& f : entry.at("forms"))
            forms.push_back(form_from_json(f));
        out.push_back({entry.at("id").get<std::string>(), lattice_from_json(entry.at("lattice")),
                       normalized(std::move(forms))});
    }
    return out;
}

const ExpectedList& expected_for(const std::vector<ExpectedList>& lists, const std::string& id)
{
    for (const auto& l : lists)
        if (l.id == id)
            return l;
    throw std::out_of_range("no expected exception list for '" + id + "'");
}

TheoremReport verify_theorem(const std::string& id, Int bound, const VerifyOptions& opts)
{
    if (bound < 1)
        throw std::invalid_argument("verify: bound must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    const EscalationConfig cfg = EscalationConfig::by_id(id);
    const auto lists = load_expected(opts.expected_path);
    const ExpectedList& expected = expected_for(lists, cfg.id);
    if (!(expected.lattice == cfg.lattice))
        throw std::runtime_error("verify: expected list lattice differs from configuration");

    const Escalator esc(cfg, RuleBook::load(opts.tables_path));
    const SurveyTable survey = esc.oracle().survey(bound, opts.workers);

    TheoremReport r{cfg.id, cfg.lattice, bound, {}, survey.exceptions(), false, 0, {}, {}, {}, 0};
    for (const Form& f : expected.forms)
        if (f.c <= bound)
            r.expected.push_back(f);
    r.match = r.expected == r.computed;

    const unsigned workers = std::max(1u, opts.workers);
    std::vector<std::vector<Form>> mismatches(workers);
    std::vector<std::map<std::string, std::size_t>> routes(workers);
    std::vector<std::size_t> counts(workers, 0);
    run_workers(workers, [&](unsigned w, unsigned stride) {
        for (Int a = 1 + w; a <= bound; a += stride)
            for (Int c = a; c <= bound; ++c)
                for (Int b = 0; 2 * b <= a; ++b) {
                    const Form f{a, b, c};
                    const Decision d = esc.decide(f);
                    ++counts[w];
                    ++routes[w][route_name(d.route)];
                    if (d.represented != survey.represented(f))
                        mismatches[w].push_back(f);
                }
    });
    for (unsigned w = 0; w < workers; ++w) {
        r.forms_checked += counts[w];
        r.decide_mismatches.insert(r.decide_mismatches.end(), mismatches[w].begin(), mismatches[w].end());
        for (const auto& [k, v] : routes[w])
            r.routes[k] += v;
    }
    std::sort(r.decide_mismatches.begin(), r.decide_mismatches.end());

    std::vector<Form> witnesses = r.computed;
    witnesses.insert(witnesses.end(), r.expected.begin(), r.expected.end());
    for (const Form& f : normalized(witnesses))
        r.evidence.push_back({f, esc.oracle().represents(f)});

    r.wall_seconds = seconds_since(start);
    return r;
}

std::vector<std::pair<GramLattice, int>> table1_lattices()
{
    const std::vector<std::pair<std::vector<Int>, int>> rows{
        {{1, 1, 1, 1, 1}, 1}, {{1, 1, 1, 1, 2}, 1}, {{1, 1, 1, 1, 3}, 1}, {{1, 1, 1, 2, 2}, 1},
        {{1, 1, 1, 2, 3}, 1}, {{1, 1, 1, 1, 5}, 2}, {{1, 1, 1, 2, 4}, 2}, {{1, 1, 1, 2, 5}, 2},
        {{1, 1, 1, 2, 7}, 2}, {{1, 1, 2, 2, 3}, 2}, {{1, 1, 2, 2, 5}, 2}, {{1, 1, 1, 3, 7}, 3},
        {{1, 1, 2, 3, 5}, 3}, {{1, 1, 2, 3, 8}, 3}};
    std::vector<std::pair<GramLattice, int>> out;
    for (const auto& [diag, box] : rows)
        out.emplace_back(GramLattice::diagonal(diag), box);
    return out;
}

bool Table1Report::passed() const
{
    if (entries.empty())
        return false;
    for (const auto& e : entries)
        if ((e.box == 1) != e.exceptions.empty())
            return false;
    return true;
}

Table1Report verify_table1(Int bound, unsigned workers)
{
    if (bound < 1)
        throw std::invalid_argument("verify: bound must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    Table1Report r;
    r.bound = bound;
    for (auto& [lattice, box] : table1_lattices()) {
        RepresentationOracle oracle(lattice);
        r.entries.push_back({lattice, box, oracle.exceptions_up_to(bound, workers)});
    }
    r.wall_seconds = seconds_since(start);
    return r;
}

bool SublatticeReport::passed() const
{
    if (entries.empty())
        return false;
    for (const auto& e : entries) {
        const bool represented = is_certificate(e.result);
        if (e.index == 1 ? represented : !(represented || e.listed))
            return false;
    }
    return true;
}

SublatticeReport verify_sublattice_claim(const std::string& id, int max_power, const VerifyOptions& opts)
{
    if (max_power < 0 || max_power > 3)
        throw std::invalid_argument("verify: sublattice power must be between 0 and 3");
    const EscalationConfig cfg = EscalationConfig::by_id(id);
    const auto lists = load_expected(opts.expected_path);
    const ExpectedList& expected = expected_for(lists, cfg.id);
    const RepresentationOracle oracle(cfg.lattice);

    SublatticeReport r{cfg.id, max_power, {}};
    for (const Form& ex : expected.forms) {
        Int index = 1;
        for (int k = 0; k <= max_power; ++k, index *= 2)
            for (const Form& sub : sublattices_of_index(ex, index))
                r.entries.push_back({ex, index, sub, oracle.represents(sub),
                                     std::binary_search(expected.forms.begin(), expected.forms.end(), sub)});
    }
    return r;
}

bool KExceptionsReport::passed() const
{
    if (!embedding_verified || in_k21.empty() || in_k21.size() != scaled_in_l.size())
        return false;
    for (const auto& e : in_k21)
        if (is_certificate(e.result))
            return false;
    for (const auto& e : scaled_in_l)
        if (!is_certificate(e.result))
            return false;
    return true;
}

KExceptionsReport verify_k_exceptions()
{
    const EscalationConfig cfg = EscalationConfig::theorem2();
    const auto& sc = *cfg.scaled;
    const GramLattice k21 = GramLattice::orthogonal_sum(sc.search.target, GramLattice::diagonal({sc.search.n}));
    const Embedding e = verify_fixed_embedding(cfg);

    KExceptionsReport r;
    r.embedding = e.map;
    r.embedding_verified = verify_embedding(cfg.lattice, k21.gram() * sc.scale, e);
    const RepresentationOracle k_oracle(k21);
    const RepresentationOracle l_oracle(cfg.lattice);
    for (const Form& f : {Form{5, 0, 61}, Form{9, 2, 13}}) {
        r.in_k21.push_back({f, k_oracle.represents(f)});
        const Form big = scale_form(f, sc.scale);
        r.scaled_in_l.push_back({big, l_oracle.represents(big)});
    }
    return r;
}

Json to_json(const TheoremReport& r)
{
    Json out;
    out["report"] = "theorem";
    out["id"] = r.id;
    out["lattice"] = to_json(r.lattice);
    out["bound"] = r.bound;
    out["note"] = kBoundDisclaimer;
    out["expected"] = forms_json(r.expected);
    out["computed"] = forms_json(r.computed);
    out["match"] = r.match;
    out["forms_checked"] = r.forms_checked;
    out["decide_mismatches"] = forms_json(r.decide_mismatches);
    out["routes"] = r.routes;
    Json ev = Json::array();
    for (const auto& e : r.evidence)
        ev.push_back(evidence_json(e));
    out["evidence"] = std::move(ev);
    out["passed"] = r.passed();
    return out;
}

Json to_json(const Table1Report& r)
{
    Json out;
    out["report"] = "table1";
    out["bound"] = r.bound;
    out["note"] = kBoundDisclaimer;
    Json rows = Json::array();
    for (const auto& e : r.entries)
        rows.push_back({{"lattice", to_json(e.lattice)},
                        {"box", e.box},
                        {"count", e.exceptions.size()},
                        {"exceptions", forms_json(e.exceptions)}});
    out["lattices"] = std::move(rows);
    out["passed"] = r.passed();
    return out;
}

Json to_json(const SublatticeReport& r)
{
    Json out;
    out["report"] = "sublattices";
    out["id"] = r.id;
    out["max_power"] = r.max_power;
    Json rows = Json::array();
    for (const auto& e : r.entries) {
        Json row = {{"exception", to_json(e.exception)},
                    {"index", e.index},
                    {"sublattice", to_json(e.sublattice)},
                    {"listed", e.listed}};
        const Json result = to_json(e.result);
        for (const auto& [k, v] : result.items())
            row[k] = v;
        rows.push_back(std::move(row));
    }
    out["entries"] = std::move(rows);
    out["passed"] = r.passed();
    return out;
}

Json to_json(const KExceptionsReport& r)
{
    Json out;
    out["report"] = "k-exceptions";
    out["embedding"] = to_json(r.embedding);
    out["embedding_verified"] = r.embedding_verified;
    Json k = Json::array(), l = Json::array();
    for (const auto& e : r.in_k21)
        k.push_back(evidence_json(e));
    for (const auto& e : r.scaled_in_l)
        l.push_back(evidence_json(e));
    out["in_k_21"] = std::move(k);
    out["scaled_in_l"] = std::move(l);
    out["passed"] = r.passed();
    return out;
}

std::string to_text(const TheoremReport& r)
{
    std::ostringstream out;
    out << "theorem " << r.id << " lattice " << r.lattice.describe() << " bound C = " << r.bound << "\n"
        << "NOTE: " << kBoundDisclaimer << "\n"
        << "expected (" << r.expected.size() << "): " << forms_text(r.expected) << "\n"
        << "computed (" << r.computed.size() << "): " << forms_text(r.computed) << "\n"
        << "exception lists " << (r.match ? "match" : "DIFFER") << "\n"
        << "decide cross-check: " << r.forms_checked << " forms, " << r.decide_mismatches.size()
        << " mismatches";
    if (!r.decide_mismatches.empty())
        out << ": " << forms_text(r.decide_mismatches);
    out << "\nroutes:";
    for (const auto& [k, v] : r.routes)
        out << " " << k << "=" << v;
    out << "\n";
    for (const auto& e : r.evidence)
        out << "  " << evidence_text(e) << "\n";
    out << (r.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string to_text(const Table1Report& r)
{
    std::ostringstream out;
    out << "table 1 survey, bound C = " << r.bound << "\n"
        << "NOTE: " << kBoundDisclaimer << "\n";
    for (const auto& e : r.entries)
        out << "  box " << e.box << " " << e.lattice.describe() << ": " << e.exceptions.size() << " exceptions "
            << forms_text(e.exceptions) << "\n";
    out << (r.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string to_text(const SublatticeReport& r)
{
    std::ostringstream out;
    out << "index 2^k sublattices of the " << r.id << " exceptions, k <= " << r.max_power << "\n";
    for (const auto& e : r.entries)
        out << "  " << e.exception << " index " << e.index << " -> "
            << evidence_text({e.sublattice, e.result}) << (e.listed && e.index > 1 ? " (listed exception)" : "") << "\n";
    out << (r.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string to_text(const KExceptionsReport& r)
{
    std::ostringstream out;
    out << "embedding of (K ⊥ ⟨21⟩) scaled by 7 into ⟨1,1,1,3,7⟩ "
        << (r.embedding_verified ? "verified" : "NOT verified") << ":\n"
        << r.embedding << "\n";
    for (const auto& e : r.in_k21)
        out << "  in K ⊥ ⟨21⟩: " << evidence_text(e) << "\n";
    for (const auto& e : r.scaled_in_l)
        out << "  in L: " << evidence_text(e) << "\n";
    out << (r.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

} // namespace quinrep
