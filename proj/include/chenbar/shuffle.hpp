#pragma once

#include "chenbar/bar_complex.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chenbar {

// One (p, q)-shuffle: slots[s] is false when position s takes the next entry of
// the first block and true for the second block. moved lists the 1-based pairs
// (i, j) such that b_i is moved past y_j.
struct Shuffle {
    std::vector<bool> slots;
    std::vector<std::pair<int, int>> moved;
};

// All C(p+q, p) shuffles, lexicographic in the positions of the first block.
std::vector<Shuffle> shuffles(int p, int q);

// Shuffle product of two words. nullopt when the product's total degree
// exceeds `truncation` (out of window, not zero).
std::optional<BarChain> bar_product(const Triple& t, const BarWord& w1, const BarWord& w2,
                                    int truncation);
std::optional<BarChain> bar_product(const Triple& t, const BarChain& c1, const BarChain& c2,
                                    int truncation);

// Products of window vectors, memoized per basis pair.
class WindowProduct {
public:
    explicit WindowProduct(const BarWindow& window);

    // Word product as a vector in degree n1 + n2; requires n1 + n2 <= N.
    const SparseVector& words(int n1, std::size_t i1, int n2, std::size_t i2);
    SparseVector multiply(int n1, const SparseVector& v1, int n2, const SparseVector& v2);

private:
    const BarWindow& window_;
    std::vector<std::vector<std::vector<std::optional<SparseVector>>>> cache_;
};

struct CdgaReport {
    std::vector<std::string> failures; // first counterexample per law, empty when valid
    std::size_t checks = 0;
    bool ok() const { return failures.empty(); }
};

// Exhaustive check of the unit law, graded commutativity, associativity, the
// Leibniz rule for D and closure of normalized words under the product.
CdgaReport check_cdga_structure(const BarWindow& window);

} // namespace chenbar
