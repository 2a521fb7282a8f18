#include "quinrep/escalation.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace quinrep {

namespace {

Vector extend(const Vector& u, Int last)
{
    Vector v(u.size() + 1);
    v.head(u.size()) = u;
    v(u.size()) = last;
    return v;
}

bool shift_is_coprime(const Form& f, const ShiftSearch& search, Int s, Int t)
{
    const Int dm = search.target.determinant();
    const Int head = f.a - search.n * s * s;
    const Int cross = f.b - search.n * s * t;
    for (Int p : prime_divisors(head)) {
        if (p == 2 || dm % p == 0 || (search.hard_prime && p == *search.hard_prime))
            continue;
        if (legendre(dm, p) == -1 && cross % p == 0)
            return false;
    }
    return true;
}

// Input coordinates from reduced coordinates: X·T⁻¹.
RepresentationCertificate pull_back(const RepresentationCertificate& cert, const Transform2<Int>& t)
{
    const Int det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
    const Int i00 = det * t(1, 1), i01 = -det * t(0, 1);
    const Int i10 = -det * t(1, 0), i11 = det * t(0, 0);
    return {cert.v1 * i00 + cert.v2 * i10, cert.v1 * i01 + cert.v2 * i11};
}

bool search_columns(const RepresentationOracle& target, const Matrix& gram, int col, Matrix& x)
{
    if (col == gram.cols())
        return true;
    const auto shell = target.shell(gram(col, col));
    const Matrix& g = target.lattice().gram();
    for (const Coords& c : *shell) {
        const Vector v = to_vector(c, target.lattice().rank());
        const Vector gv = g * v;
        bool fits = true;
        for (int j = 0; j < col && fits; ++j)
            fits = x.col(j).dot(gv) == gram(j, col);
        if (!fits)
            continue;
        x.col(col) = v;
        if (search_columns(target, gram, col + 1, x))
            return true;
    }
    return false;
}

} // namespace

GramLattice auxiliary_k()
{
    Matrix g(4, 4);
    g << 1, 0, 0, 0,
         0, 2, 1, 0,
         0, 1, 2, 1,
         0, 0, 1, 3;
    return GramLattice(std::move(g));
}

EscalationConfig EscalationConfig::theorem2()
{
    ShiftSearch k_search{auxiliary_k(), 21, {"Step3-K-Z2"}, 7};
    return {"T2",
            GramLattice::diagonal({1, 1, 1, 3, 7}),
            {GramLattice::diagonal({1, 1, 1, 3}), 7, {"Thm2-Z2", "Thm2-Z3"}, 7},
            30,
            ScaledRouteConfig{7, std::move(k_search)}};
}

EscalationConfig EscalationConfig::theorem3a()
{
    return {"T3a",
            GramLattice::diagonal({1, 1, 2, 3, 5}),
            {GramLattice::diagonal({1, 1, 2, 3}), 5, {"Thm3-Z2-n5", "Thm3-Z3"}, std::nullopt},
            30,
            std::nullopt};
}

EscalationConfig EscalationConfig::theorem3b()
{
    return {"T3b",
            GramLattice::diagonal({1, 1, 2, 3, 8}),
            {GramLattice::diagonal({1, 1, 2, 3}), 8, {"Thm3-Z2-n8", "Thm3-Z3"}, std::nullopt},
            30,
            std::nullopt};
}

EscalationConfig EscalationConfig::by_id(const std::string& id)
{
    std::string key = id;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (key == "t2")
        return theorem2();
    if (key == "t3a")
        return theorem3a();
    if (key == "t3b")
        return theorem3b();
    throw std::invalid_argument("unknown theorem configuration '" + id + "'");
}

std::optional<ShiftChoice> find_st(const Form& f, const ShiftSearch& search, const RuleBook& book)
{
    std::vector<const RuleTable*> tables;
    for (const auto& id : search.tables) {
        const RuleTable& tab = book.table(id);
        if (tab.assumes_maximal && !is_maximal(f, tab.prime))
            return std::nullopt;
        tables.push_back(&tab);
    }
    const Form mirror{f.c, f.b, f.a};
    const Int n = search.n;

    for (Int s : search.s_candidates) {
        if (f.a - n * s * s <= 0)
            continue;
        for (Int step = 0; step <= search.t_cap; ++step) {
            if (n * step * step >= f.c)
                break;
            for (Int t : {step, -step}) {
                if (t == -step && step == 0)
                    continue;
                const Form shifted = transform_st(f, n, s, t);
                if (!exceeds_positivity_bound(f.a, n, s, t) && !is_positive_definite(shifted))
                    continue;
                std::vector<std::string> labels;
                for (const RuleTable* tab : tables) {
                    auto label = tab->match(f, s, t);
                    if (!label)
                        label = tab->match(mirror, t, s);
                    if (!label)
                        break;
                    labels.push_back(tab->id + ":" + *label);
                }
                if (labels.size() != tables.size() || !shift_is_coprime(f, search, s, t))
                    continue;
                return ShiftChoice{s, t, shifted, std::move(labels)};
            }
        }
    }
    return std::nullopt;
}

std::string route_name(Route r)
{
    switch (r) {
    case Route::direct_oracle: return "direct-oracle";
    case Route::st_escalation: return "st-escalation";
    case Route::scaled_k_route: return "scaled-k-route";
    }
    return "unknown";
}

std::optional<Embedding> find_embedding(const RepresentationOracle& target, const Matrix& gram)
{
    Matrix x = Matrix::Zero(target.lattice().rank(), gram.cols());
    if (!search_columns(target, gram, 0, x))
        return std::nullopt;
    return Embedding{std::move(x)};
}

bool verify_embedding(const GramLattice& target, const Matrix& gram, const Embedding& e)
{
    return e.map.rows() == target.rank() && e.map.cols() == gram.cols() &&
           Matrix(e.map.transpose() * target.gram() * e.map) == gram;
}

Escalator::Escalator(EscalationConfig cfg, RuleBook book) : cfg_(std::move(cfg)), book_(std::move(book))
{
    const auto& search = cfg_.search;
    if (!(GramLattice::orthogonal_sum(search.target, GramLattice::diagonal({search.n})) == cfg_.lattice))
        throw std::logic_error("escalation config: lattice is not target ⊥ ⟨n⟩");
    for (const auto& id : search.tables)
        book_.table(id);

    l_oracle_ = std::make_shared<RepresentationOracle>(cfg_.lattice);
    m_oracle_ = std::make_shared<RepresentationOracle>(search.target);
    if (cfg_.scaled) {
        const auto& ks = cfg_.scaled->search;
        for (const auto& id : ks.tables)
            book_.table(id);
        k_oracle_ = std::make_shared<RepresentationOracle>(ks.target);
        k21_oracle_ = std::make_shared<RepresentationOracle>(
            GramLattice::orthogonal_sum(ks.target, GramLattice::diagonal({ks.n})));
        const Matrix gram = k21_oracle_->lattice().gram() * cfg_.scaled->scale;
        embedding_ = find_embedding(*l_oracle_, gram);
        if (!embedding_ || !verify_embedding(cfg_.lattice, gram, *embedding_))
            throw std::runtime_error("escalation config: scaled auxiliary lattice does not embed");
    }
}

const Embedding& Escalator::fixed_embedding() const
{
    if (!embedding_)
        throw std::logic_error("configuration has no scaled route");
    return *embedding_;
}

Decision Escalator::direct(const Form& r) const
{
    Decision d;
    d.reduced = r;
    auto result = l_oracle_->represents(r);
    if (auto* cert = std::get_if<RepresentationCertificate>(&result)) {
        d.represented = true;
        d.certificate = *cert;
    } else {
        d.proof = std::get<ExhaustionProof>(result);
    }
    return d;
}

Decision Escalator::scaled_route(const Form& r) const
{
    if (!cfg_.scaled)
        throw std::logic_error("configuration has no scaled route");
    const auto& sc = *cfg_.scaled;
    if (!is_reduced(r) || scale_ideal(r) % sc.scale != 0)
        throw std::invalid_argument("scaled_route: form must be reduced with scale divisible by " +
                                    std::to_string(sc.scale));
    const Form inner{r.a / sc.scale, r.b / sc.scale, r.c / sc.scale};
    const Int residue = mod(discriminant(inner), sc.scale);

    auto through_embedding = [&](const RepresentationCertificate& c) {
        Decision d;
        d.reduced = r;
        d.represented = true;
        d.route = Route::scaled_k_route;
        d.certificate = RepresentationCertificate{embedding_->map * c.v1, embedding_->map * c.v2};
        return d;
    };

    if (std::find(sc.residues.begin(), sc.residues.end(), residue) != sc.residues.end()) {
        if (auto choice = find_st(inner, sc.search, book_)) {
            auto result = k_oracle_->represents(choice->shifted);
            if (auto* cert = std::get_if<RepresentationCertificate>(&result)) {
                Decision d = through_embedding(
                    {extend(cert->v1, choice->s), extend(cert->v2, choice->t)});
                d.shift = *choice;
                return d;
            }
        }
        auto result = k21_oracle_->represents(inner);
        if (auto* cert = std::get_if<RepresentationCertificate>(&result))
            return through_embedding(*cert);
    }
    return direct(r);
}

Decision Escalator::decide(const Form& f) const
{
    if (!is_positive_definite(f))
        throw std::invalid_argument("decide: form must be positive definite");
    const Reduction<Int> red = minkowski_reduce(f);
    const Form& r = red.form;

    Decision d;
    if (cfg_.scaled && scale_ideal(r) % cfg_.scaled->scale == 0) {
        d = scaled_route(r);
    } else if (r.a < cfg_.direct_threshold) {
        d = direct(r);
    } else if (auto choice = find_st(r, cfg_.search, book_)) {
        auto result = m_oracle_->represents(choice->shifted);
        if (auto* cert = std::get_if<RepresentationCertificate>(&result)) {
            d.reduced = r;
            d.represented = true;
            d.route = Route::st_escalation;
            d.shift = *choice;
            d.certificate = RepresentationCertificate{extend(cert->v1, choice->s), extend(cert->v2, choice->t)};
        } else {
            d = direct(r);
        }
    } else {
        d = direct(r);
    }

    d.input = f;
    if (d.certificate) {
        d.certificate = pull_back(*d.certificate, red.transform);
        if (!verify_certificate(cfg_.lattice, f, *d.certificate))
            throw std::logic_error("decide: composed certificate failed exact verification");
    }
    return d;
}

Decision decide(const Form& f, const EscalationConfig& cfg)
{
    return Escalator(cfg).decide(f);
}

Embedding verify_fixed_embedding(const EscalationConfig& cfg)
{
    return Escalator(cfg).fixed_embedding();
}

} // namespace quinrep
