#include "chenbar/em_tor.hpp"

#include "chenbar/errors.hpp"

#include <algorithm>
#include <functional>

namespace chenbar {

namespace {

SparseVector lift(const SparseVector& local, const std::vector<std::size_t>& ids)
{
    std::vector<SparseVector::Entry> entries;
    for (const auto& [i, c] : local)
        entries.emplace_back(ids[i], c);
    return SparseVector(std::move(entries));
}

SparseVector restrict_to(const SparseVector& v, const std::vector<std::size_t>& ids)
{
    std::vector<SparseVector::Entry> entries;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        Rational c = v.at(ids[k]);
        if (!is_zero(c))
            entries.emplace_back(k, std::move(c));
    }
    return SparseVector(std::move(entries));
}

std::vector<std::size_t> all_ids(std::size_t n)
{
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i)
        ids[i] = i;
    return ids;
}

std::vector<std::size_t> ids_of_length(const BarWindow& w, int n, std::size_t k)
{
    std::vector<std::size_t> ids;
    if (n < 0 || n > w.truncation())
        return ids;
    for (std::size_t i = 0; i < w.words(n).size(); ++i)
        if (w.words(n)[i].length() == k)
            ids.push_back(i);
    return ids;
}

} // namespace

// ------------------------------------------------------------------- TorResult

SparseVector TorResult::project(int degree, const SparseVector& cocycle) const
{
    SparseVector out;
    for (const auto& blk : blocks.at(degree)) {
        auto coords = blk.cohomology.project(restrict_to(cocycle, blk.words));
        for (const auto& [i, c] : coords)
            out.add(blk.offset + i, c);
    }
    return out;
}

const TorProduct* TorResult::product(int p, std::size_t i, int q, std::size_t j) const
{
    for (const auto& tp : products)
        if (tp.left_degree == p && tp.left == i && tp.right_degree == q && tp.right == j)
            return &tp;
    return nullptr;
}

std::vector<TorProduct> tor_products(const BarWindow& window, const TorResult& result,
                                     const std::vector<std::vector<SparseVector>>& reps)
{
    WindowProduct prod(window);
    std::vector<TorProduct> out;
    const int top = result.valid_up_to;
    for (int p = 0; p <= top; ++p)
        for (std::size_t i = 0; i < reps.at(p).size(); ++i)
            for (int q = p; q <= top; ++q)
                for (std::size_t j = (q == p ? i : 0); j < reps.at(q).size(); ++j) {
                    TorProduct tp{p, i, q, j, std::nullopt};
                    if (p + q <= top)
                        tp.value = result.project(p + q, prod.multiply(p, reps[p][i], q, reps[q][j]));
                    out.push_back(std::move(tp));
                }
    return out;
}

TorResult bar_cohomology(const BarWindow& window)
{
    const auto& t = window.triple();
    const int n_max = window.truncation();
    TorResult res;
    res.truncation = n_max;
    res.valid_up_to = n_max - 1;
    res.bigraded = t.has_zero_differentials();

    for (int n = 0; n <= res.valid_up_to; ++n) {
        std::vector<TorResult::Block> blocks;
        std::vector<TorClass> classes;
        const std::size_t here = window.words(n).size();
        const std::size_t below = n > 0 ? window.words(n - 1).size() : 0;
        const RationalMatrix d_in = n > 0 ? window.D(n - 1) : RationalMatrix(here, 0);
        const RationalMatrix& d_out = window.D(n);

        auto add_block = [&](int bar_degree, std::vector<std::size_t> ids,
                             const std::vector<std::size_t>& in_ids,
                             const std::vector<std::size_t>& out_ids, bool graded) {
            auto coh = cohomology_at(d_in.submatrix(ids, in_ids), d_out.submatrix(out_ids, ids));
            std::size_t offset = classes.size();
            for (std::size_t k = 0; k < coh.dim(); ++k) {
                TorClass cls;
                cls.total_degree = n;
                if (graded)
                    cls.bar_degree = bar_degree;
                cls.representative = lift(coh.representatives()[k], ids);
                cls.label = "[" + t.format(window.words(n)[ids[coh.representative_columns()[k]]]) + "]";
                classes.push_back(std::move(cls));
            }
            if (graded && coh.dim() > 0)
                res.bigraded_dims[{bar_degree, n - bar_degree}] = coh.dim();
            blocks.push_back(TorResult::Block{bar_degree, std::move(ids), offset, std::move(coh)});
        };

        if (res.bigraded) {
            // delta lowers the word length by one and preserves nothing else.
            for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
                auto ids = ids_of_length(window, n, k);
                if (ids.empty())
                    continue;
                add_block(-static_cast<int>(k), std::move(ids), ids_of_length(window, n - 1, k + 1),
                          k > 0 ? ids_of_length(window, n + 1, k - 1) : std::vector<std::size_t>{},
                          true);
            }
        }
        else {
            add_block(0, all_ids(here), all_ids(below), all_ids(window.words(n + 1).size()), false);
        }
        res.total_dims.push_back(classes.size());
        res.classes.push_back(std::move(classes));
        res.blocks.push_back(std::move(blocks));
    }

    std::vector<std::vector<SparseVector>> reps;
    for (const auto& per_degree : res.classes) {
        reps.emplace_back();
        for (const auto& cls : per_degree)
            reps.back().push_back(cls.representative);
    }
    res.products = tor_products(window, res, reps);
    return res;
}

TorResult tor_algebra(const Triple& t, int truncation)
{
    if (!t.has_zero_differentials())
        throw NonzeroDifferential("tor_algebra: inputs must be cohomology algebras (zero d)");
    require_simply_connected_middle(t);
    return bar_cohomology(build_window(t, truncation));
}

// --------------------------------------------------------------- Koszul oracle

namespace {

// Basis element of X (x) Lambda(s c) (x) Gamma(s y) (x) E.
struct KoszulWord {
    std::size_t left = 0;
    std::vector<int> powers; // per base generator: 0/1 for even, k for odd
    std::size_t right = 0;
    friend auto operator<=>(const KoszulWord&, const KoszulWord&) = default;
};

} // namespace

KoszulResult koszul_tor_oracle(const Triple& t, int truncation)
{
    const auto& base = t.middle();
    const auto& x = t.left();
    const auto& e = t.right();
    const auto& info = base.presentation();
    if (!info || !info->presentation.relations.empty() || !base.has_zero_differential())
        throw NotPolynomialBase(base.name() + ": oracle needs a free base with zero differential");
    if (!x.has_zero_differential() || !e.has_zero_differential())
        throw NonzeroDifferential("koszul_tor_oracle: modules must have zero differential");
    const auto& gens = info->presentation.generators;
    for (const auto& g : gens)
        if (g.degree < 2)
            throw NotPolynomialBase(base.name() + ": generator " + g.name +
                                    " of degree 1 gives an infinite Koszul complex");
    if (x.truncation() < truncation || e.truncation() < truncation || base.truncation() < truncation)
        throw InsufficientTruncation("koszul_tor_oracle: inputs truncated below the window");

    const std::size_t r = gens.size();
    std::vector<Element> f_img(r), g_img(r);
    for (std::size_t i = 0; i < r; ++i) {
        const auto& gen = info->generator_elements[i];
        if (gen.degree <= truncation) {
            f_img[i] = t.f().apply(gen);
            g_img[i] = t.g().apply(gen);
        }
    }

    auto word_length = [&](const KoszulWord& w) {
        int k = 0;
        for (int p : w.powers)
            k += p;
        return k;
    };

    std::vector<std::vector<KoszulWord>> words(truncation + 1);
    for (int n = 0; n <= truncation; ++n) {
        KoszulWord cur;
        cur.powers.assign(r, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
            if (i == r) {
                for (int dx = 0; dx <= remaining; ++dx)
                    for (std::size_t ix = 0; ix < x.dim(dx); ++ix)
                        for (std::size_t ie = 0; ie < e.dim(remaining - dx); ++ie) {
                            cur.left = x.global_index(dx, ix);
                            cur.right = e.global_index(remaining - dx, ie);
                            words[n].push_back(cur);
                        }
                return;
            }
            int step = gens[i].degree - 1;
            int max_p = gens[i].odd() ? remaining / step : std::min(1, remaining / step);
            for (int p = 0; p <= max_p; ++p) {
                cur.powers[i] = p;
                rec(i + 1, remaining - p * step);
            }
            cur.powers[i] = 0;
        };
        rec(0, n);
        std::sort(words[n].begin(), words[n].end());
    }
    std::vector<std::map<KoszulWord, std::size_t>> index(truncation + 1);
    for (int n = 0; n <= truncation; ++n)
        for (std::size_t i = 0; i < words[n].size(); ++i)
            index[n].emplace(words[n][i], i);

    // d(x (x) w (x) e) = (-1)^{|x|} x (x) dw (x) e, where d(s c) = c_L - c_R and
    // d(gamma_k(s y)) = (y_L - y_R) gamma_{k-1}(s y).
    auto differential = [&](const KoszulWord& w, int n) {
        SparseVector out;
        const Rational outer = x.degree_of(w.left) % 2 == 0 ? 1 : -1;
        auto add_left = [&](const KoszulWord& rest, const Element& img, const Rational& c) {
            auto prod = x.multiply(x.basis_element(w.left), img);
            for (const auto& [j, q] : prod->coeffs) {
                KoszulWord v = rest;
                v.left = x.global_index(prod->degree, j);
                out.add(index[n + 1].at(v), outer * c * q);
            }
        };
        auto add_right = [&](const KoszulWord& rest, const Element& img, const Rational& c) {
            auto prod = e.multiply(img, e.basis_element(w.right));
            for (const auto& [j, q] : prod->coeffs) {
                KoszulWord v = rest;
                v.right = e.global_index(prod->degree, j);
                out.add(index[n + 1].at(v), outer * c * q);
            }
        };
        int odd_before = 0; // exterior factors s c already passed
        int exterior_total = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (!gens[i].odd())
                exterior_total += w.powers[i];
        for (std::size_t i = 0; i < r; ++i) {
            if (w.powers[i] == 0)
                continue;
            KoszulWord rest = w;
            --rest.powers[i];
            if (!gens[i].odd()) {
                Rational s = odd_before % 2 == 0 ? 1 : -1;
                add_left(rest, f_img[i], s);
                add_right(rest, g_img[i], -s);
                ++odd_before;
            }
            else {
                add_left(rest, f_img[i], 1);
                add_right(rest, g_img[i], exterior_total % 2 == 0 ? -1 : 1);
            }
        }
        return out;
    };

    KoszulResult res;
    res.valid_up_to = truncation - 1;
    std::vector<RationalMatrix> dmat;
    for (int n = 0; n < truncation; ++n) {
        std::vector<SparseVector> cols;
        for (const auto& w : words[n])
            cols.push_back(differential(w, n));
        dmat.push_back(RationalMatrix::from_columns(words[n + 1].size(), std::move(cols)));
    }
    for (int n = 0; n <= res.valid_up_to; ++n) {
        std::size_t total = 0;
        for (int k = 0; k <= n; ++k) {
            auto ids_at = [&](int deg, int len) {
                std::vector<std::size_t> ids;
                if (deg < 0 || deg > truncation || len < 0)
                    return ids;
                for (std::size_t i = 0; i < words[deg].size(); ++i)
                    if (word_length(words[deg][i]) == len)
                        ids.push_back(i);
                return ids;
            };
            auto ids = ids_at(n, k);
            if (ids.empty())
                continue;
            RationalMatrix d_in = n > 0 ? dmat[n - 1].submatrix(ids, ids_at(n - 1, k + 1))
                                        : RationalMatrix(ids.size(), 0);
            RationalMatrix d_out = dmat[n].submatrix(ids_at(n + 1, k - 1), ids);
            auto coh = cohomology_at(d_in, d_out);
            if (coh.dim() > 0)
                res.bigraded_dims[{-k, n + k}] = coh.dim();
            total += coh.dim();
        }
        res.total_dims.push_back(total);
    }
    return res;
}

OracleComparison compare_with_oracle(const TorResult& tor, const KoszulResult& oracle)
{
    OracleComparison cmp;
    const int top = std::min(tor.valid_up_to, oracle.valid_up_to);
    for (int n = 0; n <= top; ++n)
        if (tor.total_dims.at(n) != oracle.total_dims.at(n))
            cmp.mismatches.push_back("total degree " + std::to_string(n) + ": bar " +
                                     std::to_string(tor.total_dims[n]) + " vs Koszul " +
                                     std::to_string(oracle.total_dims[n]));
    if (tor.bigraded) {
        auto in_range = [&](const Bidegree& b) { return b.first + b.second <= top; };
        std::map<Bidegree, std::pair<std::size_t, std::size_t>> both;
        for (const auto& [b, d] : tor.bigraded_dims)
            if (in_range(b))
                both[b].first = d;
        for (const auto& [b, d] : oracle.bigraded_dims)
            if (in_range(b))
                both[b].second = d;
        for (const auto& [b, dd] : both)
            if (dd.first != dd.second)
                cmp.mismatches.push_back("bidegree (" + std::to_string(b.first) + ", " +
                                         std::to_string(b.second) + "): bar " +
                                         std::to_string(dd.first) + " vs Koszul " +
                                         std::to_string(dd.second));
    }
    cmp.agree = cmp.mismatches.empty();
    return cmp;
}

// ------------------------------------------------------------- compare_windows

WindowComparison compare_windows(const BarWindow& w1, const BarWindow& w2, const Ladder* ladder)
{
    if (w1.truncation() != w2.truncation())
        throw std::invalid_argument("compare_windows: windows must share the truncation degree");
    auto h1 = bar_cohomology(w1);
    auto h2 = bar_cohomology(w2);
    std::optional<BarChainMap> map;
    if (ladder)
        map = induced_bar_map(w1, w2, *ladder);

    WindowComparison cmp;
    if (map)
        cmp.induced_iso = true;
    for (int n = 0; n <= h1.valid_up_to; ++n) {
        WindowComparison::Row row{n, h1.total_dims[n], h2.total_dims[n], std::nullopt};
        if (row.dim1 != row.dim2)
            cmp.dims_equal = false;
        if (map) {
            std::vector<SparseVector> cols;
            for (const auto& cls : h1.classes[n])
                cols.push_back(h2.project(n, map->maps[n].apply(cls.representative)));
            bool iso = row.dim1 == row.dim2 &&
                       rank_and_kernel(RationalMatrix::from_columns(row.dim2, std::move(cols))).rank ==
                           row.dim1;
            row.induced_iso = iso;
            if (!iso)
                cmp.induced_iso = false;
        }
        cmp.rows.push_back(row);
    }
    return cmp;
}

} // namespace chenbar
