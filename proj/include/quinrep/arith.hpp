#pragma once

// Small exact integer helpers shared by every module. Values handled by the
// enumeration and local engines are bounded (norms of a few hundred, primes
// below a few thousand), so 64-bit storage with 128-bit intermediates is exact.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace quinrep {

using Int = std::int64_t;
using Wide = __int128;

template <class T>
T floor_div(const T& a, const T& b)
{
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

template <class T>
T ceil_div(const T& a, const T& b)
{
    return -floor_div<T>(-a, b);
}

/// Least nonnegative residue.
template <class T>
T mod(const T& a, const T& m)
{
    T r = a % m;
    if (r < 0)
        r += m;
    return r;
}

template <class T>
T abs_value(const T& a)
{
    return a < 0 ? T(-a) : a;
}

template <class T>
T gcd(T a, T b)
{
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        T r = a % b;
        a = b;
        b = r;
    }
    return a;
}

/// floor(sqrt(n)) for n >= 0, integer Newton iteration.
Wide isqrt(Wide n);

/// p-adic valuation of a nonzero integer.
int valuation(Wide n, Int p);

Int ipow(Int base, int exp);

bool is_prime(Int n);

/// Distinct prime divisors of |n|, ascending. n must be nonzero.
std::vector<Int> prime_divisors(Int n);

std::vector<Int> primes_up_to(Int bound);

/// Narrowing with a range check, used where arbitrary-precision input meets
/// the 64-bit engines.
template <class Big>
Int narrow(const Big& value)
{
    if (value > Big(INT64_MAX / 4) || value < Big(-(INT64_MAX / 4)))
        throw std::out_of_range("integer too large for the 64-bit engine");
    return static_cast<Int>(value);
}

} // namespace quinrep
