#pragma once

#include "chenbar/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chenbar {

struct Generator {
    std::string name;
    int degree = 1;

    bool odd() const { return degree % 2 != 0; }
    friend bool operator==(const Generator&, const Generator&) = default;
};

// A coefficient times generator powers in the order they were written.
// Order matters: swapping two odd factors flips the sign.
struct Term {
    Rational coeff = 1;
    std::vector<std::pair<std::size_t, int>> factors; // (generator index, exponent)

    friend bool operator==(const Term&, const Term&) = default;
};

using RawPolynomial = std::vector<Term>;

int term_degree(const Term& term, const std::vector<Generator>& generators);

// Exponent per generator. Odd generators only ever carry exponent 0 or 1.
using Monomial = std::vector<int>;
using NormalPolynomial = std::map<Monomial, Rational>;

// Arithmetic in the free graded-commutative algebra on a fixed ordered list of
// generators, with normal-form monomials g_0^{e_0} g_1^{e_1} ...
class FreeMonomials {
public:
    explicit FreeMonomials(std::vector<int> generator_degrees);

    std::size_t generator_count() const { return degrees_.size(); }
    int degree(const Monomial& m) const;
    Monomial one() const { return Monomial(degrees_.size(), 0); }
    Monomial generator(std::size_t i) const;

    // All normal-form monomials of the given degree, sorted descending.
    std::vector<Monomial> monomials(int degree) const;

    // (sign, product) or nullopt when an odd generator would be squared.
    std::optional<std::pair<int, Monomial>> multiply(const Monomial& a, const Monomial& b) const;
    NormalPolynomial multiply(const NormalPolynomial& a, const NormalPolynomial& b) const;

    NormalPolynomial normalize(const RawPolynomial& p) const;

    // Leibniz extension of d from generators. gen_diffs[i] is d(g_i).
    NormalPolynomial differential(const Monomial& m,
                                  const std::vector<NormalPolynomial>& gen_diffs) const;
    NormalPolynomial differential(const NormalPolynomial& p,
                                  const std::vector<NormalPolynomial>& gen_diffs) const;

private:
    std::vector<int> degrees_;
};

void add_term(NormalPolynomial& p, const Monomial& m, const Rational& c);

} // namespace chenbar
