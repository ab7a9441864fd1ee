#include "chenbar/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace chenbar {

int term_degree(const Term& term, const std::vector<Generator>& generators)
{
    int deg = 0;
    for (const auto& [g, e] : term.factors)
        deg += generators.at(g).degree * e;
    return deg;
}

void add_term(NormalPolynomial& p, const Monomial& m, const Rational& c)
{
    if (is_zero(c))
        return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second))
            p.erase(it);
    }
}

FreeMonomials::FreeMonomials(std::vector<int> generator_degrees)
    : degrees_(std::move(generator_degrees))
{
    for (int d : degrees_)
        if (d < 1)
            throw std::invalid_argument("generator degree must be at least 1");
}

int FreeMonomials::degree(const Monomial& m) const
{
    int deg = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        deg += m[i] * degrees_[i];
    return deg;
}

Monomial FreeMonomials::generator(std::size_t i) const
{
    Monomial m = one();
    m.at(i) = 1;
    return m;
}

std::vector<Monomial> FreeMonomials::monomials(int degree) const
{
    std::vector<Monomial> out;
    if (degree < 0)
        return out;
    Monomial cur = one();
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (i == degrees_.size()) {
            if (remaining == 0)
                out.push_back(cur);
            return;
        }
        int max_e = remaining / degrees_[i];
        if (degrees_[i] % 2 != 0)
            max_e = std::min(max_e, 1);
        for (int e = 0; e <= max_e; ++e) {
            cur[i] = e;
            rec(i + 1, remaining - e * degrees_[i]);
        }
        cur[i] = 0;
    };
    rec(0, degree);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::optional<std::pair<int, Monomial>> FreeMonomials::multiply(const Monomial& a,
                                                                const Monomial& b) const
{
    Monomial prod(degrees_.size());
    int odd_in_a_after = 0; // odd factors of a with index greater than the current one
    int swaps = 0;
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        prod[i] = a[i] + b[i];
        if (degrees_[i] % 2 != 0 && prod[i] > 1)
            return std::nullopt;
    }
    // Bringing b's odd factor g_j past every odd factor g_i of a with i > j.
    for (std::size_t j = degrees_.size(); j-- > 0;) {
        if (degrees_[j] % 2 == 0)
            continue;
        if (b[j] == 1)
            swaps += odd_in_a_after;
        if (a[j] == 1)
            ++odd_in_a_after;
    }
    return std::make_pair(swaps % 2 == 0 ? 1 : -1, std::move(prod));
}

NormalPolynomial FreeMonomials::multiply(const NormalPolynomial& a, const NormalPolynomial& b) const
{
    NormalPolynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b)
            if (auto prod = multiply(ma, mb))
                add_term(out, prod->second, prod->first * ca * cb);
    return out;
}

NormalPolynomial FreeMonomials::normalize(const RawPolynomial& p) const
{
    NormalPolynomial out;
    for (const auto& term : p) {
        NormalPolynomial acc{{one(), term.coeff}};
        for (const auto& [g, e] : term.factors) {
            if (g >= degrees_.size())
                throw std::out_of_range("term refers to an unknown generator");
            if (e < 0)
                throw std::invalid_argument("negative exponent");
            for (int k = 0; k < e; ++k)
                acc = multiply(acc, NormalPolynomial{{generator(g), Rational(1)}});
        }
        for (const auto& [m, c] : acc)
            add_term(out, m, c);
    }
    return out;
}

NormalPolynomial FreeMonomials::differential(const Monomial& m,
                                             const std::vector<NormalPolynomial>& gen_diffs) const
{
    // Expand m into its ordered factor list and apply Leibniz term by term:
    // d(prefix * g * suffix) contributes (-1)^{|prefix|} prefix * dg * suffix.
    std::vector<std::size_t> factors;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k)
            factors.push_back(i);

    NormalPolynomial out;
    Monomial prefix = one();
    for (std::size_t t = 0; t < factors.size(); ++t) {
        std::size_t g = factors[t];
        Monomial suffix = one();
        for (std::size_t s = t + 1; s < factors.size(); ++s)
            ++suffix[factors[s]];
        int sign = degree(prefix) % 2 == 0 ? 1 : -1;
        auto left = multiply(NormalPolynomial{{prefix, Rational(sign)}}, gen_diffs.at(g));
        for (const auto& [mm, c] : multiply(left, NormalPolynomial{{suffix, Rational(1)}}))
            add_term(out, mm, c);
        ++prefix[g];
    }
    return out;
}

NormalPolynomial FreeMonomials::differential(const NormalPolynomial& p,
                                             const std::vector<NormalPolynomial>& gen_diffs) const
{
    NormalPolynomial out;
    for (const auto& [m, c] : p)
        for (const auto& [mm, cc] : differential(m, gen_diffs))
            add_term(out, mm, c * cc);
    return out;
}

} // namespace chenbar
