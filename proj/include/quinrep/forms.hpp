#pragma once

// Binary forms and Gram lattices.
//
// Binary forms are templated on the integer scalar: the enumeration engines
// run on Int (64-bit), the command line works on BigInt so that reduction and
// the shifted-form transform never overflow.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "quinrep/arith.hpp"

namespace quinrep {

using BigInt = boost::multiprecision::cpp_int;

/// Gram data [a, b, c] = (a b; b c) of a rank-2 lattice.
template <class Scalar>
struct BinaryForm {
    Scalar a{};
    Scalar b{};
    Scalar c{};

    friend bool operator==(const BinaryForm& x, const BinaryForm& y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }

    /// Order used for every sorted output: by a, then c, then b.
    friend bool operator<(const BinaryForm& x, const BinaryForm& y)
    {
        if (x.a != y.a)
            return x.a < y.a;
        if (x.c != y.c)
            return x.c < y.c;
        return x.b < y.b;
    }

    friend std::ostream& operator<<(std::ostream& os, const BinaryForm& f)
    {
        return os << '[' << f.a << ',' << f.b << ',' << f.c << ']';
    }
};

using Form = BinaryForm<Int>;
using BigForm = BinaryForm<BigInt>;

template <class Scalar>
using Transform2 = Eigen::Matrix<Scalar, 2, 2>;

template <class Scalar>
Scalar discriminant(const BinaryForm<Scalar>& f)
{
    return f.a * f.c - f.b * f.b;
}

template <class Scalar>
bool is_positive_definite(const BinaryForm<Scalar>& f)
{
    return f.a > 0 && discriminant(f) > 0;
}

template <class Scalar>
bool is_reduced(const BinaryForm<Scalar>& f)
{
    return 0 <= f.b && 2 * f.b <= f.a && f.a <= f.c;
}

template <class Scalar>
Eigen::Matrix<Scalar, 2, 2> gram_of(const BinaryForm<Scalar>& f)
{
    Eigen::Matrix<Scalar, 2, 2> g;
    g << f.a, f.b, f.b, f.c;
    return g;
}

/// Tᵗ·G·T for a 2×2 basis change T.
template <class Scalar>
BinaryForm<Scalar> congruent_form(const BinaryForm<Scalar>& f, const Transform2<Scalar>& t)
{
    const Scalar p = t(0, 0), q = t(1, 0), r = t(0, 1), u = t(1, 1);
    return {Scalar(p * p * f.a + 2 * p * q * f.b + q * q * f.c), Scalar(p * r * f.a + (p * u + q * r) * f.b + q * u * f.c),
            Scalar(r * r * f.a + 2 * r * u * f.b + u * u * f.c)};
}

template <class Scalar>
struct Reduction {
    BinaryForm<Scalar> form;
    /// Columns express the reduced basis in the input basis.
    Transform2<Scalar> transform;
};

/// Gauss reduction to the canonical representative 0 <= 2b <= a <= c.
template <class Scalar>
Reduction<Scalar> minkowski_reduce(const BinaryForm<Scalar>& input)
{
    if (!is_positive_definite(input))
        throw std::invalid_argument("minkowski_reduce: form is not positive definite");

    Scalar a = input.a, b = input.b, c = input.c;
    Transform2<Scalar> t = Transform2<Scalar>::Identity();

    for (;;) {
        // e2 <- e2 - k e1 with 2(b - k a) in [-a, a)
        const Scalar k = floor_div<Scalar>(2 * b + a, 2 * a);
        if (k != 0) {
            c = c - 2 * k * b + k * k * a;
            b = b - k * a;
            t.col(1) -= k * t.col(0);
        }
        if (c < a) {
            std::swap(a, c);
            t.col(0).swap(t.col(1));
            continue;
        }
        break;
    }
    if (b < 0) {
        b = -b;
        t.col(1) = -t.col(1);
    }
    return {{a, b, c}, t};
}

template <class Scalar>
BinaryForm<Scalar> reduced(const BinaryForm<Scalar>& f)
{
    return minkowski_reduce(f).form;
}

template <class Scalar>
bool is_equivalent(const BinaryForm<Scalar>& x, const BinaryForm<Scalar>& y)
{
    return reduced(x) == reduced(y);
}

/// [a - n s², b - n s t, c - n t²]. The result may be indefinite.
template <class Scalar>
BinaryForm<Scalar> transform_st(const BinaryForm<Scalar>& f, const Scalar& n, const Scalar& s,
                                const Scalar& t)
{
    return {f.a - n * s * s, f.b - n * s * t, f.c - n * t * t};
}

template <class Scalar>
struct Ratio {
    Scalar num;
    Scalar den;

    friend bool operator==(const Ratio& x, const Ratio& y)
    {
        return x.num == y.num && x.den == y.den;
    }
};

/// (4/3)·n·(s² + |st| + t²) in lowest terms.
template <class Scalar>
Ratio<Scalar> positivity_bound(const Scalar& n, const Scalar& s, const Scalar& t)
{
    Scalar num = 4 * n * (s * s + abs_value(Scalar(s * t)) + t * t);
    Scalar den = 3;
    const Scalar g = gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

/// True when a lies strictly above the positivity bound for (n, s, t).
template <class Scalar>
bool exceeds_positivity_bound(const Scalar& a, const Scalar& n, const Scalar& s, const Scalar& t)
{
    const Ratio<Scalar> r = positivity_bound(n, s, t);
    return a * r.den > r.num;
}

/// Generator of the ideal of bilinear values.
template <class Scalar>
Scalar scale_ideal(const BinaryForm<Scalar>& f)
{
    return gcd(gcd(f.a, f.b), f.c);
}

/// Generator of the ideal of quadratic values.
template <class Scalar>
Scalar norm_ideal(const BinaryForm<Scalar>& f)
{
    return gcd(gcd(f.a, f.c), Scalar(2 * f.b));
}

template <class Scalar>
BinaryForm<Scalar> scale_form(const BinaryForm<Scalar>& f, const Scalar& k)
{
    return {f.a * k, f.b * k, f.c * k};
}

/// Reduced classes of the index-m sublattices, sorted. Bases d1·e1,
/// e·e1 + d2·e2 with d1·d2 = m and 0 <= e < d1.
template <class Scalar>
std::vector<BinaryForm<Scalar>> sublattices_of_index(const BinaryForm<Scalar>& f, const Scalar& m)
{
    if (m < 1)
        throw std::invalid_argument("sublattices_of_index: index must be positive");
    std::vector<BinaryForm<Scalar>> out;
    for (Scalar d1 = 1; d1 <= m; ++d1) {
        if (m % d1 != 0)
            continue;
        const Scalar d2 = m / d1;
        for (Scalar e = 0; e < d1; ++e) {
            BinaryForm<Scalar> g{d1 * d1 * f.a, d1 * (e * f.a + d2 * f.b),
                                 e * e * f.a + 2 * e * d2 * f.b + d2 * d2 * f.c};
            out.push_back(reduced(g));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <class Big>
Form narrow_form(const BinaryForm<Big>& f)
{
    return {narrow(f.a), narrow(f.b), narrow(f.c)};
}

inline BigForm widen_form(const Form& f)
{
    return {BigInt(f.a), BigInt(f.b), BigInt(f.c)};
}

// ---------------------------------------------------------------------------

using Matrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline constexpr int kMaxRank = 5;

/// Leading principal minors by fraction-free (Bareiss) elimination.
std::vector<Wide> leading_minors(const Matrix& g);

/// Symmetric positive definite integer Gram matrix of rank 1..5.
class GramLattice {
  public:
    explicit GramLattice(Matrix gram);

    static GramLattice diagonal(std::span<const Int> entries);
    static GramLattice diagonal(std::initializer_list<Int> entries);
    static GramLattice orthogonal_sum(const GramLattice& x, const GramLattice& y);

    int rank() const { return static_cast<int>(gram_.rows()); }
    const Matrix& gram() const { return gram_; }
    Int determinant() const { return determinant_; }
    bool is_diagonal() const;
    GramLattice scaled(Int k) const;

    Int q(const Vector& v) const { return v.dot(gram_ * v); }
    Int b(const Vector& v, const Vector& w) const { return v.dot(gram_ * w); }

    /// "⟨1,1,1,3,7⟩" for diagonal lattices, otherwise the row-major matrix.
    std::string describe() const;

    friend bool operator==(const GramLattice& x, const GramLattice& y) { return x.gram_ == y.gram_; }

  private:
    Matrix gram_;
    Int determinant_;
};

/// True iff the symmetric integer matrix is positive definite.
bool is_positive_definite(const Matrix& g);

} // namespace quinrep
