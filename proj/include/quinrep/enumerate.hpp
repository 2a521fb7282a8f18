#pragma once

// Exact enumeration of lattice vectors of bounded norm.
//
// Coordinates are fixed from the last to the first. At depth k the remaining
// real minimum of Q over the free leading coordinates is S_k/D_k, where S_k is
// the Schur complement of the leading k×k block and D_k its determinant. The
// integer matrices P_k = D_k·S_k are exactly the Bareiss elimination states, so
// the admissible range of x_k comes from an integer square root and nothing is
// rounded.

#include <array>
#include <cstdint>
#include <vector>

#include "quinrep/forms.hpp"

namespace quinrep {

using Coords = std::array<std::int32_t, kMaxRank>;

Vector to_vector(const Coords& c, int rank);
Coords to_coords(const Vector& v);

class ShortVectorEnumerator {
  public:
    explicit ShortVectorEnumerator(const GramLattice& lattice);

    int rank() const { return rank_; }

    /// Calls visit(coords, norm) for every v with Q(v) <= bound, both signs.
    template <class Visitor>
    void for_each(Int bound, Visitor&& visit) const
    {
        if (bound < 0)
            return;
        Coords x{};
        descend(rank_ - 1, bound, x, visit);
    }

  private:
    template <class Visitor>
    void descend(int k, Int bound, Coords& x, Visitor& visit) const
    {
        const auto& p = schur_[k];
        const Wide alpha = p[k][k];
        Wide beta = 0;
        Wide gamma = 0;
        for (int i = k + 1; i < rank_; ++i) {
            beta += p[k][i] * x[i];
            for (int j = k + 1; j < rank_; ++j)
                gamma += p[i][j] * x[i] * x[j];
        }
        const Wide disc = beta * beta - alpha * (gamma - minor_[k] * Wide(bound));
        if (disc < 0)
            return;
        const Wide r = isqrt(disc);
        const Int lo = static_cast<Int>(ceil_div<Wide>(-r - beta, alpha));
        const Int hi = static_cast<Int>(floor_div<Wide>(r - beta, alpha));
        for (Int v = lo; v <= hi; ++v) {
            x[k] = static_cast<std::int32_t>(v);
            if (k == 0) {
                Int norm = 0;
                for (int i = 0; i < rank_; ++i)
                    for (int j = 0; j < rank_; ++j)
                        norm += gram_[i][j] * x[i] * x[j];
                visit(static_cast<const Coords&>(x), norm);
            } else {
                descend(k - 1, bound, x, visit);
            }
        }
        x[k] = 0;
    }

    int rank_;
    Int gram_[kMaxRank][kMaxRank]{};
    // schur_[k][i][j] for i, j >= k: (k+1)×(k+1) bordered minors.
    Wide schur_[kMaxRank][kMaxRank][kMaxRank]{};
    // minor_[k]: determinant of the leading k×k block (minor_[0] = 1).
    Wide minor_[kMaxRank]{};
};

/// Shells 0..bound, each sorted lexicographically.
std::vector<std::vector<Coords>> vectors_up_to(const GramLattice& lattice, Int bound);

/// The complete, lexicographically sorted set {v : Q(v) = m}.
std::vector<Coords> shell_of_norm(const GramLattice& lattice, Int m);

std::vector<Vector> vectors_of_norm(const GramLattice& lattice, Int m);

} // namespace quinrep
