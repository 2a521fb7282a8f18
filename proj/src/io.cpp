#include "quinrep/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace quinrep {

Json to_json(const Form& f)
{
    return Json::array({f.a, f.b, f.c});
}

Json to_json(const Vector& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

Json to_json(const Matrix& m)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const GramLattice& lattice)
{
    if (lattice.is_diagonal())
        return {{"diag", to_json(Vector(lattice.gram().diagonal()))}};
    return {{"gram", to_json(lattice.gram())}};
}

Json to_json(const RepresentationCertificate& cert)
{
    return {{"v1", to_json(cert.v1)}, {"v2", to_json(cert.v2)}};
}

Json to_json(const ExhaustionProof& p)
{
    return {{"norm_a", p.norm_a},
            {"norm_c", p.norm_c},
            {"target_b", p.target_b},
            {"vectors_a", p.vectors_a},
            {"vectors_c", p.vectors_c},
            {"enumeration_bound", p.enumeration_bound},
            {"pairs_checked", p.pairs_checked}};
}

Json to_json(const RepresentationResult& result)
{
    if (const auto* cert = std::get_if<RepresentationCertificate>(&result))
        return {{"represented", true}, {"certificate", to_json(*cert)}};
    return {{"represented", false}, {"exhaustion", to_json(std::get<ExhaustionProof>(result))}};
}

Json to_json(const Decision& d)
{
    Json out;
    out["form"] = to_json(d.input);
    out["reduced"] = to_json(d.reduced);
    out["outcome"] = d.represented ? "represented" : "not-represented";
    out["route"] = route_name(d.route);
    if (d.shift) {
        out["s"] = d.shift->s;
        out["t"] = d.shift->t;
        out["shifted"] = to_json(d.shift->shifted);
        out["rules"] = d.shift->rules;
    }
    if (d.certificate)
        out["certificate"] = to_json(*d.certificate);
    if (d.proof)
        out["exhaustion"] = to_json(*d.proof);
    return out;
}

GramLattice lattice_from_json(const Json& j)
{
    if (j.is_object() && j.contains("diag"))
        return GramLattice::diagonal(j.at("diag").get<std::vector<Int>>());
    const Json& rows = j.is_object() ? j.at("gram") : j;
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("lattice: expected a non-empty Gram matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto row = rows[static_cast<std::size_t>(i)].get<std::vector<Int>>();
        if (static_cast<Eigen::Index>(row.size()) != n)
            throw std::invalid_argument("lattice: Gram matrix must be square");
        for (Eigen::Index k = 0; k < n; ++k)
            g(i, k) = row[static_cast<std::size_t>(k)];
    }
    return GramLattice(std::move(g));
}

GramLattice parse_lattice_spec(const std::string& spec)
{
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in)
            throw std::invalid_argument("lattice: cannot open " + spec.substr(1));
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::exception& e) {
            throw std::invalid_argument(std::string("lattice: ") + e.what());
        }
        return lattice_from_json(j);
    }
    std::vector<Int> entries;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t end = std::min(spec.find(',', pos), spec.size());
        Int value = 0;
        const char* first = spec.data() + pos;
        const char* last = spec.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || first == last)
            throw std::invalid_argument("lattice: malformed diagonal spec '" + spec + "'");
        entries.push_back(value);
        pos = end + 1;
    }
    return GramLattice::diagonal(entries);
}

Form form_from_json(const Json& j)
{
    const auto v = j.get<std::vector<Int>>();
    if (v.size() == 2)
        return {v[0], 0, v[1]};
    if (v.size() != 3)
        throw std::invalid_argument("form: expected [a, b, c] or [a, c]");
    return {v[0], v[1], v[2]};
}

} // namespace quinrep
