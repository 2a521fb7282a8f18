#include "quinrep/arith.hpp"

namespace quinrep {

Wide isqrt(Wide n)
{
    if (n < 0)
        throw std::domain_error("isqrt of a negative number");
    if (n < 2)
        return n;
    int bits = 0;
    for (Wide t = n; t != 0; t >>= 1)
        ++bits;
    Wide x = Wide(1) << ((bits + 1) / 2);
    for (;;) {
        Wide y = (x + n / x) / 2;
        if (y >= x)
            break;
        x = y;
    }
    while (x * x > n)
        --x;
    while ((x + 1) * (x + 1) <= n)
        ++x;
    return x;
}

int valuation(Wide n, Int p)
{
    if (n == 0)
        throw std::domain_error("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

Int ipow(Int base, int exp)
{
    Int r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

bool is_prime(Int n)
{
    if (n < 2)
        return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<Int> prime_divisors(Int n)
{
    if (n == 0)
        throw std::domain_error("prime divisors of zero");
    n = abs_value(n);
    std::vector<Int> out;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

std::vector<Int> primes_up_to(Int bound)
{
    std::vector<Int> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (Int i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (Int j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

} // namespace quinrep
