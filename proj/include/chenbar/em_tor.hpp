#pragma once

#include "chenbar/bar_complex.hpp"
#include "chenbar/shuffle.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chenbar {

using Bidegree = std::pair<int, int>; // (bar degree -k, tensor degree m)

struct TorClass {
    int total_degree = 0;
    std::optional<int> bar_degree; // set when the window is bigraded
    SparseVector representative;   // over the window words of total_degree
    std::string label;
};

// Structure constant of classes (p, i) * (q, j). value is nullopt when the
// product lands outside the valid range (unknown, not zero).
struct TorProduct {
    int left_degree = 0;
    std::size_t left = 0;
    int right_degree = 0;
    std::size_t right = 0;
    std::optional<SparseVector> value;
};

class TorResult {
public:
    int truncation = 0;
    int valid_up_to = 0;  // cohomology reported for total degrees 0..N-1
    bool bigraded = false; // all input differentials vanish, so D = delta
    std::map<Bidegree, std::size_t> bigraded_dims;
    std::vector<std::size_t> total_dims;
    std::vector<std::vector<TorClass>> classes; // per total degree
    std::vector<TorProduct> products;

    // Class coordinates of a D-cocycle of the window.
    SparseVector project(int degree, const SparseVector& cocycle) const;
    const TorProduct* product(int p, std::size_t i, int q, std::size_t j) const;

    struct Block {
        int bar_degree = 0;
        std::vector<std::size_t> words; // window indices in this total degree
        std::size_t offset = 0;         // first class index of the block
        Cohomology cohomology;
    };
    std::vector<std::vector<Block>> blocks; // per total degree
};

// H(window, D) in total degrees 0..N-1 with the shuffle-product structure.
TorResult bar_cohomology(const BarWindow& window);

// Recompute products from arbitrary cocycle representatives (one list per
// degree, same class order). Used to confirm representative independence.
std::vector<TorProduct> tor_products(const BarWindow& window, const TorResult& result,
                                     const std::vector<std::vector<SparseVector>>& reps);

// Tor over H(B) of H(X), H(E): the E_2 page. All differentials must vanish.
TorResult tor_algebra(const Triple& t, int truncation);

struct KoszulResult {
    int valid_up_to = 0;
    std::map<Bidegree, std::size_t> bigraded_dims;
    std::vector<std::size_t> total_dims;
};

// Tor from the finite complex X (x) Lambda(s c_i) (x) Gamma(s y_j) (x) E for a
// free graded-commutative base with even generators c_i and odd y_j.
// Throws NotPolynomialBase when the base has relations, a differential or a
// degree-1 generator.
KoszulResult koszul_tor_oracle(const Triple& t, int truncation);

struct OracleComparison {
    bool agree = true;
    std::vector<std::string> mismatches;
};

OracleComparison compare_with_oracle(const TorResult& tor, const KoszulResult& oracle);

struct WindowComparison {
    struct Row {
        int degree = 0;
        std::size_t dim1 = 0;
        std::size_t dim2 = 0;
        std::optional<bool> induced_iso;
    };
    std::vector<Row> rows;
    bool dims_equal = true;
    std::optional<bool> induced_iso; // set when a ladder was supplied
};

WindowComparison compare_windows(const BarWindow& w1, const BarWindow& w2,
                                 const Ladder* ladder = nullptr);

} // namespace chenbar
