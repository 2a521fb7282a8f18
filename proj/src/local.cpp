#include "quinrep/local.hpp"

#include <algorithm>

namespace quinrep {

namespace {

Int powmod(Int base, Int exp, Int m)
{
    Wide result = 1;
    Wide b = mod(base, m);
    while (exp > 0) {
        if (exp & 1)
            result = result * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<Int>(result);
}

Int inverse_mod(Int a, Int p)
{
    return powmod(a, p - 2, p);
}

int capped_valuation(Int value, Int p, int cap)
{
    int v = 0;
    while (v < cap) {
        if (value % p != 0)
            return v;
        value /= p;
        ++v;
    }
    return cap;
}

// Depth-first walk of the primitive solution tree for one target form.
class PrimitiveTree {
  public:
    PrimitiveTree(int rank, Int p, const Int (&gram)[5][5], const Form& target, int max_depth)
        : n_(rank), p_(p), two_(p == 2), max_depth_(max_depth), h_{target.a, target.b, target.c}
    {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                s_[i][j] = gram[i][j];
    }

    bool run()
    {
        const int unknowns = 2 * n_;
        Int total = 1;
        for (int i = 0; i < unknowns; ++i)
            total *= p_;
        Matrix2 x{};
        for (Int code = 0; code < total; ++code) {
            Int rest = code;
            for (int r = 0; r < unknowns; ++r) {
                x.v[r / 2][r % 2] = rest % p_;
                rest /= p_;
            }
            if (!primitive(x) || !at_level(x, 1))
                continue;
            if (dfs(x, 1, p_))
                return true;
        }
        return false;
    }

  private:
    struct Matrix2 {
        Int v[5][2];
    };

    void residual(const Matrix2& x, Int out[3]) const
    {
        Int f11 = -h_[0], f12 = -h_[1], f22 = -h_[2];
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                f11 += s_[i][j] * x.v[i][0] * x.v[j][0];
                f12 += s_[i][j] * x.v[i][0] * x.v[j][1];
                f22 += s_[i][j] * x.v[i][1] * x.v[j][1];
            }
        out[0] = f11;
        out[1] = f12;
        out[2] = f22;
    }

    // Off-diagonal residue divisible by p^k, diagonal by p^(k + [p = 2]).
    bool at_level(const Matrix2& x, int k) const
    {
        Int f[3];
        residual(x, f);
        const Int off = ipow(p_, k);
        const Int diag = two_ ? off * 2 : off;
        return f[0] % diag == 0 && f[1] % off == 0 && f[2] % diag == 0;
    }

    bool primitive(const Matrix2& x) const
    {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (mod(x.v[i][0] * x.v[j][1] - x.v[j][0] * x.v[i][1], p_) != 0)
                    return true;
        return false;
    }

    // Hensel criterion on the elementary divisors of XᵗS modulo p^k.
    bool liftable(const Matrix2& x, int k) const
    {
        Int a[2][5]{};
        for (int r = 0; r < 2; ++r)
            for (int j = 0; j < n_; ++j)
                for (int i = 0; i < n_; ++i)
                    a[r][j] += x.v[i][r] * s_[i][j];
        int alpha1 = k;
        for (int r = 0; r < 2; ++r)
            for (int j = 0; j < n_; ++j)
                alpha1 = std::min(alpha1, capped_valuation(a[r][j], p_, k));
        int minors = k;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                minors = std::min(minors, capped_valuation(a[0][i] * a[1][j] - a[0][j] * a[1][i], p_, k));
        if (minors >= k)
            return false;
        const int alpha2 = minors - alpha1;
        return k >= 2 * alpha2 + 1 + (two_ ? 1 : 0);
    }

    // Residues that must vanish for X + p^k·Y to sit at level k + 1.
    void next_residues(const Matrix2& x, int k, Int out[3]) const
    {
        Int f[3];
        residual(x, f);
        const Int off = ipow(p_, k);
        const Int diag = two_ ? off * 2 : off;
        out[0] = mod(f[0] / diag, p_);
        out[1] = mod(f[1] / off, p_);
        out[2] = mod(f[2] / diag, p_);
    }

    bool dfs(const Matrix2& x, int k, Int pk)
    {
        if (liftable(x, k))
            return true;
        if (k >= max_depth_)
            return false;

        // The residues are affine in Y over 𝔽_p: probe Y = 0 and unit vectors.
        const int unknowns = 2 * n_;
        Int g0[3];
        next_residues(x, k, g0);
        Int lin[3][10];
        for (int r = 0; r < unknowns; ++r) {
            Matrix2 probe = x;
            probe.v[r / 2][r % 2] += pk;
            Int g[3];
            next_residues(probe, k, g);
            for (int e = 0; e < 3; ++e)
                lin[e][r] = mod(g[e] - g0[e], p_);
        }
        Int rhs[3];
        for (int e = 0; e < 3; ++e)
            rhs[e] = mod(-g0[e], p_);

        // Row reduction over 𝔽_p.
        int pivot_col[3];
        int rows = 0;
        for (int col = 0; col < unknowns && rows < 3; ++col) {
            int sel = -1;
            for (int e = rows; e < 3; ++e)
                if (lin[e][col] != 0) {
                    sel = e;
                    break;
                }
            if (sel < 0)
                continue;
            std::swap(lin[sel], lin[rows]);
            std::swap(rhs[sel], rhs[rows]);
            const Int inv = inverse_mod(lin[rows][col], p_);
            for (int c = 0; c < unknowns; ++c)
                lin[rows][c] = lin[rows][c] * inv % p_;
            rhs[rows] = rhs[rows] * inv % p_;
            for (int e = 0; e < 3; ++e) {
                if (e == rows || lin[e][col] == 0)
                    continue;
                const Int factor = lin[e][col];
                for (int c = 0; c < unknowns; ++c)
                    lin[e][c] = mod(lin[e][c] - factor * lin[rows][c], p_);
                rhs[e] = mod(rhs[e] - factor * rhs[rows], p_);
            }
            pivot_col[rows++] = col;
        }
        for (int e = rows; e < 3; ++e)
            if (rhs[e] != 0)
                return false;

        bool is_pivot[10]{};
        for (int e = 0; e < rows; ++e)
            is_pivot[pivot_col[e]] = true;
        std::vector<int> free_cols;
        for (int c = 0; c < unknowns; ++c)
            if (!is_pivot[c])
                free_cols.push_back(c);

        Int combos = 1;
        for (std::size_t i = 0; i < free_cols.size(); ++i)
            combos *= p_;
        Int y[10];
        for (Int code = 0; code < combos; ++code) {
            Int rest = code;
            for (int c = 0; c < unknowns; ++c)
                y[c] = 0;
            for (int c : free_cols) {
                y[c] = rest % p_;
                rest /= p_;
            }
            for (int e = 0; e < rows; ++e) {
                Int v = rhs[e];
                for (int c : free_cols)
                    v -= lin[e][c] * y[c];
                y[pivot_col[e]] = mod(v, p_);
            }
            Matrix2 child = x;
            for (int r = 0; r < unknowns; ++r)
                child.v[r / 2][r % 2] += pk * y[r];
            if (dfs(child, k + 1, pk * p_))
                return true;
        }
        return false;
    }

    int n_;
    Int p_;
    bool two_;
    int max_depth_;
    Int h_[3];
    Int s_[5][5]{};
};

} // namespace

int legendre(Int d, Int p)
{
    if (p == 2)
        throw std::invalid_argument("legendre: p must be an odd prime");
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("legendre: p must be an odd prime");
    const Int r = mod(d, p);
    if (r == 0)
        return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

Int nonsquare_unit(Int p)
{
    for (Int u = 2; u < p; ++u)
        if (legendre(u, p) == -1)
            return u;
    throw std::invalid_argument("nonsquare_unit: p must be an odd prime");
}

bool PrimeSet::contains(Int p) const
{
    return std::binary_search(primes.begin(), primes.end(), p);
}

PrimeSet prime_set(Int dM, Int bound)
{
    if (bound < 2)
        throw std::invalid_argument("prime_set: bound must be at least 2");
    PrimeSet out{dM, bound, {}};
    for (Int p : primes_up_to(bound)) {
        if (p == 2 || dM % p == 0)
            continue;
        if (legendre(dM, p) == -1)
            out.primes.push_back(p);
    }
    return out;
}

bool is_primitive(const Form& f, Int p)
{
    return scale_ideal(f) % p != 0;
}

bool is_maximal(const Form& f, Int p)
{
    auto extends = [&](Int x, Int y) {
        const Wide q = Wide(x) * x * f.a + Wide(2) * x * y * f.b + Wide(y) * y * f.c;
        return q % (Wide(p) * p) == 0 && (x * f.a + y * f.b) % p == 0 && (x * f.b + y * f.c) % p == 0;
    };
    if (extends(1, 0))
        return false;
    for (Int k = 0; k < p; ++k)
        if (extends(k, 1))
            return false;
    return true;
}

OddJordan jordan_split_odd(const Form& f, Int p)
{
    if (p == 2)
        throw std::invalid_argument("jordan_split_odd: p must be odd");
    const Int d = discriminant(f);
    if (d == 0)
        throw std::invalid_argument("jordan_split_odd: degenerate form");
    auto order = [&](Int v) { return v == 0 ? 1 << 20 : valuation(v, p); };
    auto unit_class = [&](Int v, int e) { return legendre(static_cast<Int>(v / ipow(p, e)), p); };

    Int first = f.a;
    const int va = order(f.a), vb = order(f.b), vc = order(f.c);
    if (va <= vb && va <= vc)
        first = f.a;
    else if (vc <= vb)
        first = f.c;
    else
        first = f.a + 2 * f.b + f.c;  // e1 + e2 carries the minimal order

    OddJordan out;
    out.order1 = valuation(first, p);
    out.class1 = unit_class(first, out.order1);
    const int vd = valuation(d, p);
    out.order2 = vd - out.order1;
    out.class2 = unit_class(d, vd) * out.class1;
    return out;
}

bool embeds_in_anisotropic_plane(const Form& f, Int p, Int delta)
{
    if (legendre(delta, p) != -1)
        throw std::invalid_argument("embeds_in_anisotropic_plane: delta must be a nonsquare unit");
    const OddJordan j = jordan_split_odd(f, p);
    if (j.order1 % 2 == 0 || j.order2 % 2 == 0)
        return false;
    // Same plane as p⟨1, -Δ⟩ iff -u1·u2 lies in the class of Δ.
    return legendre(-1, p) * j.class1 * j.class2 == legendre(delta, p);
}

LiftingSearch::LiftingSearch(const GramLattice& m, Int p) : rank_(m.rank()), p_(p)
{
    if (!is_prime(p))
        throw std::invalid_argument("LiftingSearch: p must be prime");
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            gram_[i][j] = m.gram()(i, j);
    const int vdm = m.determinant() % p == 0 ? valuation(m.determinant(), p) : 0;
    max_depth_ = 2 * vdm + 1 + (p == 2 ? 1 : 0);
    key_modulus_ = ipow(p, max_depth_ + 1);
}

bool LiftingSearch::primitively_represents(const Form& f) const
{
    const auto key = std::make_tuple(mod(f.a, key_modulus_), mod(f.b, key_modulus_), mod(f.c, key_modulus_));
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
    }
    const bool result = search_uncached(f);
    std::lock_guard lock(mutex_);
    memo_.emplace(key, result);
    return result;
}

bool LiftingSearch::search_uncached(const Form& f) const
{
    PrimitiveTree tree(rank_, p_, gram_, f, max_depth_);
    return tree.run();
}

bool LiftingSearch::represents(const Form& f) const
{
    const Int d = discriminant(f);
    if (d == 0)
        throw std::invalid_argument("LiftingSearch: degenerate form");
    const int v = valuation(d, p_);
    // Overlattices of index p^k: basis change [[p^i, e], [0, p^j]], 0 <= e < p^j.
    for (int k = 0; 2 * k <= v; ++k) {
        const Wide denom = Wide(ipow(p_, k)) * ipow(p_, k);
        for (int i = 0; i <= k; ++i) {
            const int j = k - i;
            const Int pi = ipow(p_, i), pj = ipow(p_, j);
            for (Int e = 0; e < pj; ++e) {
                const Wide n00 = Wide(pj) * pj * f.a;
                const Wide n01 = Wide(pj) * (Wide(-e) * f.a + Wide(pi) * f.b);
                const Wide n11 = Wide(e) * e * f.a - Wide(2) * e * pi * f.b + Wide(pi) * pi * f.c;
                if (n00 % denom != 0 || n01 % denom != 0 || n11 % denom != 0)
                    continue;
                const Form over{static_cast<Int>(n00 / denom), static_cast<Int>(n01 / denom),
                                static_cast<Int>(n11 / denom)};
                if (primitively_represents(over))
                    return true;
            }
        }
    }
    return false;
}

bool lifting_represents(const GramLattice& m, const Form& f, Int p)
{
    return LiftingSearch(m, p).represents(f);
}

LocalOracle::LocalOracle(GramLattice m) : m_(std::move(m))
{
    if (m_.rank() != 4)
        throw std::invalid_argument("LocalOracle: lattice must be quaternary");
}

const LiftingSearch& LocalOracle::lifter(Int p) const
{
    std::lock_guard lock(mutex_);
    auto& slot = lifters_[p];
    if (!slot)
        slot = std::make_unique<LiftingSearch>(m_, p);
    return *slot;
}

bool LocalOracle::represents(const Form& f, Int p) const
{
    if (discriminant(f) == 0)
        throw std::invalid_argument("local_represents: degenerate form");
    if (!is_prime(p))
        throw std::invalid_argument("local_represents: p must be prime");
    const Int dm = m_.determinant();
    if (p == 2 || dm % p == 0)
        return lifter(p).represents(f);
    if (legendre(dm, p) == 1)
        return true;
    return !embeds_in_anisotropic_plane(f, p, nonsquare_unit(p));
}

std::vector<Int> LocalOracle::relevant_primes(const Form& f) const
{
    std::vector<Int> out = prime_divisors(2 * m_.determinant());
    for (Int q : prime_divisors(discriminant(f)))
        out.push_back(q);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool LocalOracle::represents_everywhere(const Form& f) const
{
    for (Int p : relevant_primes(f))
        if (!represents(f, p))
            return false;
    return true;
}

bool local_represents(const GramLattice& m, const Form& f, Int p)
{
    return LocalOracle(m).represents(f, p);
}

} // namespace quinrep
