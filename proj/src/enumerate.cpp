#include "quinrep/enumerate.hpp"

#include <algorithm>

namespace quinrep {

Vector to_vector(const Coords& c, int rank)
{
    Vector v(rank);
    for (int i = 0; i < rank; ++i)
        v(i) = c[i];
    return v;
}

Coords to_coords(const Vector& v)
{
    Coords c{};
    for (Eigen::Index i = 0; i < v.size(); ++i)
        c[i] = static_cast<std::int32_t>(v(i));
    return c;
}

ShortVectorEnumerator::ShortVectorEnumerator(const GramLattice& lattice) : rank_(lattice.rank())
{
    const int n = rank_;
    Wide m[kMaxRank][kMaxRank];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            gram_[i][j] = lattice.gram()(i, j);
            m[i][j] = gram_[i][j];
        }

    Wide prev = 1;
    for (int k = 0; k < n; ++k) {
        minor_[k] = prev;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j)
                schur_[k][i][j] = m[i][j];
        const Wide pivot = m[k][k];
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) / prev;
        prev = pivot;
    }
}

std::vector<std::vector<Coords>> vectors_up_to(const GramLattice& lattice, Int bound)
{
    std::vector<std::vector<Coords>> shells(static_cast<std::size_t>(std::max<Int>(bound, -1) + 1));
    ShortVectorEnumerator(lattice).for_each(bound, [&](const Coords& x, Int norm) {
        shells[static_cast<std::size_t>(norm)].push_back(x);
    });
    for (auto& s : shells)
        std::sort(s.begin(), s.end());
    return shells;
}

std::vector<Coords> shell_of_norm(const GramLattice& lattice, Int m)
{
    std::vector<Coords> out;
    ShortVectorEnumerator(lattice).for_each(m, [&](const Coords& x, Int norm) {
        if (norm == m)
            out.push_back(x);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vector> vectors_of_norm(const GramLattice& lattice, Int m)
{
    if (m < 0)
        throw std::invalid_argument("vectors_of_norm: negative norm");
    std::vector<Vector> out;
    for (const Coords& c : shell_of_norm(lattice, m))
        out.push_back(to_vector(c, lattice.rank()));
    return out;
}

} // namespace quinrep
