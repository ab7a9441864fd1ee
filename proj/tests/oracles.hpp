#pragma once

// Independent counting oracles built from generating functions.

#include <cstddef>
#include <vector>

namespace oracle {

using Series = std::vector<long long>; // coefficients of t^0 .. t^n

inline Series multiply(const Series& a, const Series& b, int n)
{
    Series out(n + 1, 0);
    for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= n && j < static_cast<int>(b.size()); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// Poincare series of the free graded-commutative algebra on the given degrees.
inline Series free_algebra(const std::vector<int>& degrees, int n)
{
    Series s(n + 1, 0);
    s[0] = 1;
    for (int d : degrees) {
        Series f(n + 1, 0);
        if (d % 2 != 0) {
            f[0] = 1;
            if (d <= n)
                f[d] = 1;
        } else {
            for (int k = 0; k <= n; k += d)
                f[k] = 1;
        }
        s = multiply(s, f, n);
    }
    return s;
}

// Words (a; w_1..w_k; c) counted by A(t) * 1/(1 - Bs(t)) * C(t) where Bs is
// the series of B in degrees >= 2 shifted down by one.
inline Series bar_words(const Series& a, const Series& b, const Series& c, int n)
{
    Series bs(n + 1, 0);
    for (int j = 2; j <= n + 1 && j < static_cast<int>(b.size()); ++j)
        bs[j - 1] = b[j];
    Series geometric(n + 1, 0), power(n + 1, 0);
    power[0] = 1;
    for (int k = 0; k <= n; ++k) {
        for (int i = 0; i <= n; ++i)
            geometric[i] += power[i];
        power = multiply(power, bs, n);
    }
    return multiply(multiply(a, geometric, n), c, n);
}

} // namespace oracle
