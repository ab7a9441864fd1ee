#include "chenbar/shuffle.hpp"

#include <functional>

namespace chenbar {

std::vector<Shuffle> shuffles(int p, int q)
{
    if (p < 0 || q < 0)
        throw std::invalid_argument("shuffles: negative block size");
    std::vector<Shuffle> out;
    const int n = p + q;
    std::vector<int> first_positions;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(first_positions.size()) == p) {
            Shuffle s;
            s.slots.assign(n, true);
            for (int pos : first_positions)
                s.slots[pos] = false;
            // b_i sits at first_positions[i-1]; every y_j placed earlier is jumped.
            for (int i = 0; i < p; ++i) {
                int ys_before = first_positions[i] - i;
                for (int j = 0; j < ys_before; ++j)
                    s.moved.emplace_back(i + 1, j + 1);
            }
            out.push_back(std::move(s));
            return;
        }
        int remaining = p - static_cast<int>(first_positions.size());
        for (int pos = start; pos <= n - remaining; ++pos) {
            first_positions.push_back(pos);
            rec(pos + 1);
            first_positions.pop_back();
        }
    };
    rec(0);
    return out;
}

std::optional<BarChain> bar_product(const Triple& t, const BarWord& w1, const BarWord& w2,
                                    int truncation)
{
    const auto& a = t.left();
    const auto& b = t.middle();
    const auto& c = t.right();
    const int deg = t.total_degree(w1) + t.total_degree(w2);
    if (deg > truncation)
        return std::nullopt;

    const int dx = a.degree_of(w2.left);
    const int dc = c.degree_of(w1.right);
    const int k = static_cast<int>(w1.length()), l = static_cast<int>(w2.length());
    std::vector<int> sb, sy; // suspended degrees |b_i| - 1, |y_j| - 1
    int sum_sb = 0, sum_sy = 0;
    for (std::size_t m : w1.middle) {
        sb.push_back(b.degree_of(m) - 1);
        sum_sb += sb.back();
    }
    for (std::size_t m : w2.middle) {
        sy.push_back(b.degree_of(m) - 1);
        sum_sy += sy.back();
    }
    // eta = |c||x| + |x|(sum |b_i| - k) + |c|(sum |y_j| - l)
    const int eta = dc * dx + dx * sum_sb + dc * sum_sy;

    auto ax = a.multiply(a.basis_element(w1.left), a.basis_element(w2.left));
    auto cz = c.multiply(c.basis_element(w1.right), c.basis_element(w2.right));
    BarChain out(deg);
    if (!ax || !cz || ax->is_zero() || cz->is_zero())
        return out;

    for (const auto& s : shuffles(k, l)) {
        int n_sigma = 0;
        for (const auto& [i, j] : s.moved)
            n_sigma += sb[i - 1] * sy[j - 1];
        const Rational sign = (eta + n_sigma) % 2 == 0 ? 1 : -1;

        BarWord word;
        word.middle.reserve(k + l);
        std::size_t next1 = 0, next2 = 0;
        for (bool second : s.slots)
            word.middle.push_back(second ? w2.middle[next2++] : w1.middle[next1++]);
        for (const auto& [i, qa] : ax->coeffs)
            for (const auto& [j, qc] : cz->coeffs) {
                word.left = a.global_index(ax->degree, i);
                word.right = c.global_index(cz->degree, j);
                out.add(word, sign * qa * qc);
            }
    }
    return out;
}

std::optional<BarChain> bar_product(const Triple& t, const BarChain& c1, const BarChain& c2,
                                    int truncation)
{
    if (c1.degree() + c2.degree() > truncation)
        return std::nullopt;
    BarChain out(c1.degree() + c2.degree());
    for (const auto& [w1, q1] : c1)
        for (const auto& [w2, q2] : c2)
            out.add(*bar_product(t, w1, w2, truncation), q1 * q2);
    return out;
}

// --------------------------------------------------------------- WindowProduct

WindowProduct::WindowProduct(const BarWindow& window) : window_(window)
{
    const int n_max = window.truncation();
    cache_.resize(n_max + 1);
    for (int n1 = 0; n1 <= n_max; ++n1) {
        cache_[n1].resize(n_max + 1 - n1);
        for (int n2 = 0; n1 + n2 <= n_max; ++n2)
            cache_[n1][n2].resize(window.words(n1).size() * window.words(n2).size());
    }
}

const SparseVector& WindowProduct::words(int n1, std::size_t i1, int n2, std::size_t i2)
{
    auto& slot = cache_.at(n1).at(n2).at(i1 * window_.words(n2).size() + i2);
    if (!slot) {
        auto prod = bar_product(window_.triple(), window_.words(n1)[i1], window_.words(n2)[i2],
                                window_.truncation());
        slot = window_.to_vector(*prod);
    }
    return *slot;
}

SparseVector WindowProduct::multiply(int n1, const SparseVector& v1, int n2, const SparseVector& v2)
{
    SparseVector out;
    for (const auto& [i, p] : v1)
        for (const auto& [j, q] : v2)
            out.axpy(p * q, words(n1, i, n2, j));
    return out;
}

// ------------------------------------------------------- check_cdga_structure

CdgaReport check_cdga_structure(const BarWindow& window)
{
    const auto& t = window.triple();
    const int n_max = window.truncation();
    CdgaReport rep;
    WindowProduct prod(window);
    bool unit_ok = true, comm_ok = true, assoc_ok = true, leibniz_ok = true, closed_ok = true;

    auto fail = [&](bool& flag, std::string msg) {
        if (flag)
            rep.failures.push_back(std::move(msg));
        flag = false;
    };

    const BarWord unit_word{t.left().unit(), {}, t.right().unit()};
    const std::size_t unit_idx = window.index(0, unit_word);

    for (int n1 = 0; n1 <= n_max; ++n1)
        for (std::size_t i1 = 0; i1 < window.words(n1).size(); ++i1) {
            const auto& w1 = window.words(n1)[i1];
            auto e1 = SparseVector::unit(i1);
            ++rep.checks;
            if (prod.words(0, unit_idx, n1, i1) != e1 || prod.words(n1, i1, 0, unit_idx) != e1)
                fail(unit_ok, "unit law fails on " + t.format(w1));

            for (int n2 = 0; n1 + n2 <= n_max; ++n2)
                for (std::size_t i2 = 0; i2 < window.words(n2).size(); ++i2) {
                    const auto& w2 = window.words(n2)[i2];
                    const auto& p12 = prod.words(n1, i1, n2, i2);
                    const auto& p21 = prod.words(n2, i2, n1, i1);
                    ++rep.checks;

                    for (const auto& [j, q] : p12) {
                        (void)q;
                        for (std::size_t m : window.words(n1 + n2)[j].middle)
                            if (t.middle().degree_of(m) < 2)
                                fail(closed_ok, "product leaves the normalized words: " +
                                                    t.format(w1) + " * " + t.format(w2));
                    }

                    const Rational sign = (n1 * n2) % 2 == 0 ? 1 : -1;
                    if (p12 != sign * p21)
                        fail(comm_ok, "graded commutativity fails on " + t.format(w1) + " * " +
                                          t.format(w2));

                    if (n1 + n2 < n_max) {
                        auto lhs = window.D(n1 + n2).apply(p12);
                        auto rhs = prod.multiply(n1 + 1, window.D(n1).apply(e1), n2,
                                                 SparseVector::unit(i2));
                        rhs.axpy(n1 % 2 == 0 ? 1 : -1,
                                 prod.multiply(n1, e1, n2 + 1, window.D(n2).apply(SparseVector::unit(i2))));
                        if (lhs != rhs)
                            fail(leibniz_ok, "Leibniz rule fails on " + t.format(w1) + " * " +
                                                 t.format(w2));
                    }

                    for (int n3 = 0; n1 + n2 + n3 <= n_max; ++n3)
                        for (std::size_t i3 = 0; i3 < window.words(n3).size(); ++i3) {
                            ++rep.checks;
                            auto e3 = SparseVector::unit(i3);
                            auto left = prod.multiply(n1 + n2, p12, n3, e3);
                            auto right = prod.multiply(n1, e1, n2 + n3, prod.words(n2, i2, n3, i3));
                            if (left != right)
                                fail(assoc_ok, "associativity fails on " + t.format(w1) + ", " +
                                                   t.format(w2) + ", " +
                                                   t.format(window.words(n3)[i3]));
                        }
                }
        }
    return rep;
}

} // namespace chenbar
