#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "quinrep/enumerate.hpp"

using namespace quinrep;

namespace {

// All vectors of norm m inside the box |x_i| <= r.
std::vector<Coords> box_shell(const GramLattice& l, Int m, int r)
{
    std::vector<Coords> out;
    const int n = l.rank();
    Coords x{};
    for (int i = 0; i < n; ++i)
        x[i] = -r;
    while (true) {
        const Vector v = to_vector(x, n);
        if (l.q(v) == m)
            out.push_back(x);
        int i = n - 1;
        while (i >= 0 && x[i] == r) {
            x[i] = -r;
            --i;
        }
        if (i < 0)
            break;
        ++x[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST(Enumerate, Examples)
{
    const GramLattice l = GramLattice::diagonal({1, 1, 1, 3, 7});
    EXPECT_EQ(vectors_of_norm(l, 1).size(), 6u);
    const auto zero = vectors_of_norm(l, 0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(zero[0].isZero());
    EXPECT_EQ(vectors_of_norm(GramLattice::diagonal({1, 1, 1, 3}), 3).size(), 10u);
    EXPECT_THROW(vectors_of_norm(l, -1), std::invalid_argument);
}

TEST(Enumerate, MatchesBoxSearch)
{
    // Smallest eigenvalues are all above 1/3, so norm <= 12 forces |x_i| <= 6.
    Matrix k(4, 4);
    k << 1, 0, 0, 0, 0, 2, 1, 0, 0, 1, 2, 1, 0, 0, 1, 3;
    Matrix skew(3, 3);
    skew << 2, 1, 1, 1, 3, -1, 1, -1, 4;
    for (const GramLattice& l :
         {GramLattice::diagonal({1, 1, 2, 3}), GramLattice(k), GramLattice(skew), GramLattice::diagonal({1, 2, 3, 5, 8})})
        for (Int m = 0; m <= 12; ++m)
            EXPECT_EQ(shell_of_norm(l, m), box_shell(l, m, 6)) << l.describe() << " m=" << m;
}

TEST(Enumerate, ShellsAreSymmetricAndComplete)
{
    const GramLattice l = GramLattice::diagonal({1, 1, 2, 3, 8});
    const auto shells = vectors_up_to(l, 40);
    for (Int m = 1; m <= 40; ++m) {
        const auto& s = shells[static_cast<std::size_t>(m)];
        EXPECT_EQ(s.size() % 2, 0u);
        EXPECT_EQ(s, shell_of_norm(l, m));
        for (const Coords& c : s) {
            Coords neg{};
            for (int i = 0; i < kMaxRank; ++i)
                neg[i] = -c[i];
            EXPECT_TRUE(std::binary_search(s.begin(), s.end(), neg));
            EXPECT_EQ(l.q(to_vector(c, l.rank())), m);
        }
    }
}

TEST(Enumerate, SumOfFourSquaresCounts)
{
    // r_4(m) = 8·σ(m) for odd m.
    const GramLattice l = GramLattice::diagonal({1, 1, 1, 1});
    for (Int m : {1, 3, 5, 7, 9, 15, 21}) {
        Int sigma = 0;
        for (Int d = 1; d <= m; ++d)
            if (m % d == 0)
                sigma += d;
        EXPECT_EQ(static_cast<Int>(shell_of_norm(l, m).size()), 8 * sigma) << m;
    }
}
