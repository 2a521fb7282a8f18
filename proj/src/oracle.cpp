#include "quinrep/oracle.hpp"

#include <thread>

namespace quinrep {

namespace {

struct Weights {
    Int w[kMaxRank]{};
};

Weights gram_times(const GramLattice& lattice, const Coords& v)
{
    Weights out;
    const int n = lattice.rank();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.w[i] += lattice.gram()(i, j) * v[j];
    return out;
}

inline Int dot(const Weights& w, const Coords& v)
{
    Int s = 0;
    for (int i = 0; i < kMaxRank; ++i)
        s += w.w[i] * v[i];
    return s;
}

bool leading_positive(const Coords& v)
{
    for (int i = 0; i < kMaxRank; ++i)
        if (v[i] != 0)
            return v[i] > 0;
    return false;
}

} // namespace

bool verify_certificate(const GramLattice& lattice, const Form& f, const RepresentationCertificate& cert)
{
    if (cert.v1.size() != lattice.rank() || cert.v2.size() != lattice.rank())
        return false;
    return lattice.q(cert.v1) == f.a && lattice.b(cert.v1, cert.v2) == f.b && lattice.q(cert.v2) == f.c;
}

SurveyTable::SurveyTable(Int bound) : bound_(bound)
{
    cells_.resize(static_cast<std::size_t>((bound + 1) * (bound + 1)));
    for (Int a = 1; a <= bound; ++a)
        for (Int c = a; c <= bound; ++c)
            row(a, c).assign(static_cast<std::size_t>(a / 2 + 1), 0);
}

bool SurveyTable::represented(const Form& f) const
{
    if (!is_reduced(f) || f.c > bound_ || f.a < 1)
        throw std::out_of_range("survey table queried outside its reduced range");
    return row(f.a, f.c)[static_cast<std::size_t>(f.b)] != 0;
}

void SurveyTable::set(Int a, Int b, Int c, bool value)
{
    row(a, c)[static_cast<std::size_t>(b)] = value ? 1 : 0;
}

std::vector<Form> SurveyTable::exceptions() const
{
    std::vector<Form> out;
    for (Int a = 1; a <= bound_; ++a)
        for (Int c = a; c <= bound_; ++c)
            for (Int b = 0; 2 * b <= a; ++b)
                if (!row(a, c)[static_cast<std::size_t>(b)])
                    out.push_back({a, b, c});
    return out;
}

RepresentationOracle::RepresentationOracle(GramLattice lattice) : lattice_(std::move(lattice)) {}

void RepresentationOracle::prepare(Int bound) const
{
    {
        std::lock_guard lock(mutex_);
        if (bound <= prepared_)
            return;
    }
    auto shells = vectors_up_to(lattice_, bound);
    std::lock_guard lock(mutex_);
    if (bound <= prepared_)
        return;
    for (Int m = 0; m <= bound; ++m)
        shells_[m] = std::make_shared<const std::vector<Coords>>(std::move(shells[static_cast<std::size_t>(m)]));
    prepared_ = bound;
}

std::shared_ptr<const std::vector<Coords>> RepresentationOracle::shell(Int m) const
{
    if (m < 0)
        return std::make_shared<const std::vector<Coords>>();
    {
        std::lock_guard lock(mutex_);
        auto it = shells_.find(m);
        if (it != shells_.end())
            return it->second;
    }
    auto computed = std::make_shared<const std::vector<Coords>>(shell_of_norm(lattice_, m));
    std::lock_guard lock(mutex_);
    auto [it, inserted] = shells_.emplace(m, computed);
    return it->second;
}

RepresentationResult RepresentationOracle::represents(const Form& f) const
{
    if (!is_positive_definite(f))
        throw std::invalid_argument("represents: binary form must be positive definite");
    const auto first = shell(f.a);
    const auto second = shell(f.c);

    ExhaustionProof proof;
    proof.norm_a = f.a;
    proof.norm_c = f.c;
    proof.target_b = f.b;
    proof.vectors_a = first->size();
    proof.vectors_c = second->size();
    proof.enumeration_bound = std::max(f.a, f.c);

    for (const Coords& v1 : *first) {
        const Weights w = gram_times(lattice_, v1);
        for (const Coords& v2 : *second) {
            ++proof.pairs_checked;
            if (dot(w, v2) == f.b) {
                RepresentationCertificate cert{to_vector(v1, lattice_.rank()), to_vector(v2, lattice_.rank())};
                if (!verify_certificate(lattice_, f, cert))
                    throw std::logic_error("represents: certificate failed exact verification");
                return cert;
            }
        }
    }
    return proof;
}

SurveyTable RepresentationOracle::survey(Int bound, unsigned workers) const
{
    if (bound < 1)
        throw std::invalid_argument("survey bound must be at least 1");
    workers = std::max(1u, workers);
    prepare(bound);
    SurveyTable table(bound);

    auto work = [&](unsigned id) {
        std::vector<char> found;
        for (Int a = 1 + id; a <= bound; a += workers) {
            const auto first = shell(a);
            for (Int c = a; c <= bound; ++c) {
                const auto second = shell(c);
                const Int half = a / 2;
                found.assign(static_cast<std::size_t>(half + 1), 0);
                Int remaining = half + 1;
                // (v1, v2) and (-v1, -v2) give the same data, and v2 -> -v2
                // flips b, so v1 ranges over one sign class and b over |B|.
                for (const Coords& v1 : *first) {
                    if (!leading_positive(v1))
                        continue;
                    const Weights w = gram_times(lattice_, v1);
                    for (const Coords& v2 : *second) {
                        Int bv = dot(w, v2);
                        if (bv < 0)
                            bv = -bv;
                        if (bv <= half && !found[static_cast<std::size_t>(bv)]) {
                            found[static_cast<std::size_t>(bv)] = 1;
                            if (--remaining == 0)
                                break;
                        }
                    }
                    if (remaining == 0)
                        break;
                }
                for (Int b = 0; b <= half; ++b)
                    table.set(a, b, c, found[static_cast<std::size_t>(b)] != 0);
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < workers; ++id)
            pool.emplace_back(work, id);
        for (auto& t : pool)
            t.join();
    }
    return table;
}

std::vector<Form> RepresentationOracle::exceptions_up_to(Int bound, unsigned workers) const
{
    return survey(bound, workers).exceptions();
}

} // namespace quinrep
