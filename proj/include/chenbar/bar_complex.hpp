#pragma once

#include "chenbar/cdga.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chenbar {

// Basis word (alpha; omega_1, ..., omega_k; beta) of the normalized two-sided
// bar complex. Entries are global basis indices into the left, middle and
// right algebras; every middle entry has degree >= 2.
struct BarWord {
    std::size_t left = 0;
    std::vector<std::size_t> middle;
    std::size_t right = 0;

    std::size_t length() const { return middle.size(); }
    int bar_degree() const { return -static_cast<int>(middle.size()); }

    friend auto operator<=>(const BarWord&, const BarWord&) = default;
};

// Rational combination of words sharing one total degree.
class BarChain {
public:
    explicit BarChain(int degree = 0) : degree_(degree) {}

    int degree() const { return degree_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<BarWord, Rational>& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Rational coefficient(const BarWord& w) const;
    void add(const BarWord& w, const Rational& c);
    void add(const BarChain& other, const Rational& scale = 1);

    friend bool operator==(const BarChain&, const BarChain&) = default;

private:
    int degree_;
    std::map<BarWord, Rational> terms_;
};

// The diagram A <-f- B -g-> C feeding the bar construction.
class Triple {
public:
    Triple(AlgebraMorphism f, AlgebraMorphism g);

    const GradedAlgebra& left() const { return *f_.target(); }
    const GradedAlgebra& middle() const { return *f_.source(); }
    const GradedAlgebra& right() const { return *g_.target(); }
    const AlgebraMorphism& f() const { return f_; }
    const AlgebraMorphism& g() const { return g_; }
    bool has_zero_differentials() const;

    int total_degree(const BarWord& w) const;
    int tensor_degree(const BarWord& w) const;
    std::string format(const BarWord& w) const;
    std::string format(const BarChain& c) const;

private:
    AlgebraMorphism f_;
    AlgebraMorphism g_;
};

// Throws MiddleAlgebraNotSimplyConnected unless B^0 = Q.1 and B^1 = 0.
void require_simply_connected_middle(const Triple& t);

// Every word of total degree n, sorted. Needs the middle algebra through
// degree n + 1 and the outer algebras through degree n.
std::vector<BarWord> enumerate_words(const Triple& t, int n);

// Internal differential d (tensor degree +1).
BarChain bar_d(const Triple& t, const BarWord& w);
// Bar differential delta (bar degree +1). The sign is opposite to the
// displayed formula for -delta.
BarChain bar_delta(const Triple& t, const BarWord& w);

// Words and the matrices of d, delta and D = d + delta in total degrees
// 0..N. Construction verifies d^2 = delta^2 = d delta + delta d = D^2 = 0.
class BarWindow {
public:
    BarWindow(Triple triple, int truncation);

    const Triple& triple() const { return triple_; }
    int truncation() const { return truncation_; }

    const std::vector<BarWord>& words(int n) const { return words_.at(n); }
    std::optional<std::size_t> find(int n, const BarWord& w) const;
    std::size_t index(int n, const BarWord& w) const;

    // Matrices from total degree n to n + 1, for n < N.
    const RationalMatrix& d(int n) const { return d_.at(n); }
    const RationalMatrix& delta(int n) const { return delta_.at(n); }
    const RationalMatrix& D(int n) const { return total_.at(n); }

    SparseVector to_vector(const BarChain& c) const;
    BarChain to_chain(int n, const SparseVector& v) const;

    // (bar degree, total degree) -> number of words.
    std::map<std::pair<int, int>, std::size_t> word_counts() const;

private:
    Triple triple_;
    int truncation_;
    std::vector<std::vector<BarWord>> words_;
    std::vector<std::map<BarWord, std::size_t>> index_;
    std::vector<RationalMatrix> d_;
    std::vector<RationalMatrix> delta_;
    std::vector<RationalMatrix> total_;
};

BarWindow build_window(const Triple& t, int truncation);

// Target T with maps u: A -> T and v: C -> T such that u f = v g.
class ThetaTarget {
public:
    // Throws SquareNotCommuting when u f != v g.
    ThetaTarget(const Triple& t, AlgebraMorphism u, AlgebraMorphism v);

    const GradedAlgebra& algebra() const { return *u_.target(); }
    const AlgebraMorphism& u() const { return u_; }
    const AlgebraMorphism& v() const { return v_; }

private:
    AlgebraMorphism u_;
    AlgebraMorphism v_;
};

// Kills every word with a middle entry; (alpha;;beta) -> u(alpha) v(beta).
Element theta(const Triple& t, const ThetaTarget& target, const BarWord& w);
Element theta(const Triple& t, const ThetaTarget& target, const BarChain& c);

Rational bar_augmentation(const Triple& t, const BarChain& c);

// Vertical maps from one triple to another, commuting strictly with f and g.
struct Ladder {
    AlgebraMorphism left;
    AlgebraMorphism middle;
    AlgebraMorphism right;
};

// Chain map between windows, one matrix per total degree 0..N.
struct BarChainMap {
    std::vector<RationalMatrix> maps;
};

// Throws LadderNotCommuting, or InvariantViolation when a vertical map fails
// check_morphism.
BarChainMap induced_bar_map(const BarWindow& source, const BarWindow& target, const Ladder& ladder);

// Word-wise image under a ladder; exposed for multiplicativity tests.
BarChain apply_ladder(const Triple& target, const Ladder& ladder, const BarWord& w,
                      int total_degree);

} // namespace chenbar
