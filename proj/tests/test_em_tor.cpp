#include "chenbar/em_tor.hpp"

#include "corpus.hpp"

#include <doctest.h>

using namespace chenbar;
using corpus::term;

namespace {

std::vector<std::size_t> head(const std::vector<std::size_t>& v, std::size_t n)
{
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

} // namespace

TEST_CASE("loop space of S^3")
{
    auto q = corpus::ground(11);
    Triple t = corpus::loop_triple(corpus::s3(11), q);
    auto tor = tor_algebra(t, 10);
    CHECK(tor.valid_up_to == 9);
    CHECK(tor.total_dims == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1, 0, 1, 0});
    // u^2 = 2 u_2 with u_2 the degree-4 class
    auto p = tor.product(2, 0, 2, 0);
    REQUIRE(p);
    REQUIRE(p->value);
    CHECK(*p->value == SparseVector::unit(0, 2));

    auto oracle = koszul_tor_oracle(t, 10);
    CHECK(compare_with_oracle(tor, oracle).agree);
}

TEST_CASE("loop space of S^2 from its cohomology")
{
    auto q = corpus::ground(7);
    auto tor = tor_algebra(corpus::loop_triple(corpus::hs2(7), q), 6);
    CHECK(tor.total_dims == std::vector<std::size_t>{1, 1, 1, 1, 1, 1});
    auto p = tor.product(1, 0, 1, 0);
    REQUIRE(p);
    CHECK(p->value->empty());
}

TEST_CASE("trivial triple")
{
    auto q = corpus::ground(6);
    auto tor = tor_algebra(corpus::loop_triple(q, q), 5);
    CHECK(tor.total_dims == std::vector<std::size_t>{1, 0, 0, 0, 0});
}

TEST_CASE("homogeneous space SU(2)/T")
{
    auto q = corpus::ground(11);
    auto c = corpus::qc(11);
    auto t = corpus::qt(11);
    Triple tr(corpus::aug(c, q), corpus::square(c, t));
    auto tor = tor_algebra(tr, 10);
    CHECK(tor.total_dims == std::vector<std::size_t>{1, 0, 1, 0, 0, 0, 0, 0, 0, 0});
    auto p = tor.product(2, 0, 2, 0);
    REQUIRE(p);
    CHECK(p->value->empty());
    CHECK(compare_with_oracle(tor, koszul_tor_oracle(tr, 10)).agree);
}

TEST_CASE("Tor of the base over itself and over the ground field")
{
    auto c = corpus::qc(11);
    auto id = AlgebraMorphism::identity(c);
    auto tor = tor_algebra(Triple(id, id), 10);
    for (int n = 0; n <= tor.valid_up_to; ++n)
        CHECK(tor.total_dims[n] == c->dim(n));
    for (const auto& [bideg, dim] : tor.bigraded_dims)
        if (bideg.first != 0)
            CHECK(dim == 0);

    auto q = corpus::ground(9);
    auto e = corpus::bundle(9);
    auto unit = corpus::map_gens("unit", q, e, {});
    auto tq = tor_algebra(Triple(AlgebraMorphism::identity(q), unit), 8);
    for (int n = 0; n <= tq.valid_up_to; ++n)
        CHECK(tq.total_dims[n] == e->dim(n));
}

TEST_CASE("Koszul oracle examples")
{
    // Q[c_2] over Q, Q: an exterior class in degree 1.
    auto q = corpus::ground(7);
    auto c2 = corpus::free_on("C2", {{"c", 2}}, 7);
    auto k = koszul_tor_oracle(corpus::loop_triple(c2, q), 6);
    CHECK(head(k.total_dims, 6) == std::vector<std::size_t>{1, 1, 0, 0, 0, 0});

    // Q[c_4, c_8]: Lambda(x_3, x_7).
    auto q12 = corpus::ground(12);
    auto b = corpus::free_on("B", {{"c", 4}, {"d", 8}}, 12);
    auto kb = koszul_tor_oracle(corpus::loop_triple(b, q12), 12);
    std::vector<std::size_t> expect(12, 0);
    expect[0] = expect[3] = expect[7] = expect[10] = 1;
    CHECK(head(kb.total_dims, 12) == expect);
    auto tb = tor_algebra(corpus::loop_triple(b, q12), 11);
    CHECK(compare_with_oracle(tb, kb).agree);

    // Non-polynomial bases are refused.
    CHECK_THROWS_AS(koszul_tor_oracle(corpus::loop_triple(corpus::hs2(7), q), 6), NotPolynomialBase);
    CHECK_THROWS_AS(koszul_tor_oracle(corpus::loop_triple(corpus::ms2(7), q), 6), NotPolynomialBase);
}

TEST_CASE("nonzero differentials are rejected by tor_algebra")
{
    auto q = corpus::ground(7);
    CHECK_THROWS_AS(tor_algebra(corpus::loop_triple(corpus::ms2(7), q), 6), NonzeroDifferential);
}

TEST_CASE("oracle agreement, bigraded consistency and the vanishing line on the corpus")
{
    for (const auto& nt : corpus::triples(11)) {
        const auto& t = nt.triple;
        TorResult tor = t.has_zero_differentials() ? tor_algebra(t, 10)
                                                   : bar_cohomology(BarWindow(t, 10));
        if (tor.bigraded) {
            std::vector<std::size_t> sums(tor.total_dims.size(), 0);
            for (const auto& [bideg, dim] : tor.bigraded_dims) {
                auto [bar, m] = bideg;
                if (m < -2 * bar)
                    CHECK_MESSAGE(dim == 0, nt.name << " (" << bar << ", " << m << ")");
                if (bar + m <= tor.valid_up_to)
                    sums[bar + m] += dim;
            }
            CHECK(sums == tor.total_dims);
        }
        if (t.has_zero_differentials() && t.middle().presentation()->presentation.relations.empty()) {
            CHECK_MESSAGE(compare_with_oracle(tor, koszul_tor_oracle(t, 10)).agree, nt.name);
        }
    }
}

TEST_CASE("products do not depend on the chosen representatives")
{
    auto q = corpus::ground(11);
    auto c = corpus::qc(11);
    auto t = corpus::qt(11);
    auto sq = corpus::square(c, t);
    auto inc = corpus::map_gens("incl", c, corpus::bundle(11), {{term(1, {{0, 1}})}});
    for (Triple tr : {corpus::loop_triple(corpus::s3(11), q), corpus::loop_triple(corpus::hs2(11), q),
                      Triple(sq, inc)}) {
        BarWindow w(tr, 10);
        auto tor = bar_cohomology(w);
        // Shift every representative by a coboundary.
        std::vector<std::vector<SparseVector>> reps(tor.valid_up_to + 1);
        for (int n = 0; n <= tor.valid_up_to; ++n)
            for (std::size_t i = 0; i < tor.classes[n].size(); ++i) {
                SparseVector r = tor.classes[n][i].representative;
                if (n > 0)
                    for (std::size_t j = 0; j < w.words(n - 1).size(); ++j)
                        r += (Rational(static_cast<long>(i + j + 1)) * w.D(n - 1).apply(SparseVector::unit(j)));
                reps[n].push_back(r);
            }
        auto perturbed = tor_products(w, tor, reps);
        REQUIRE(perturbed.size() == tor.products.size());
        for (std::size_t k = 0; k < perturbed.size(); ++k)
            CHECK(perturbed[k].value == tor.products[k].value);
    }
}

TEST_CASE("window comparison")
{
    auto q = corpus::ground(11);
    auto ms2 = corpus::ms2(11);
    auto hs2 = corpus::hs2(11);
    BarWindow wm(corpus::loop_triple(ms2, q), 10);
    BarWindow wh(corpus::loop_triple(hs2, q), 10);
    BarWindow ws(corpus::loop_triple(corpus::s3(11), q), 10);

    auto same = compare_windows(wh, wh);
    CHECK(same.dims_equal);

    auto collapse = corpus::map_gens("collapse", ms2, hs2, {{term(1, {{0, 1}})}, {}});
    Ladder ladder{AlgebraMorphism::identity(q), collapse, AlgebraMorphism::identity(q)};
    auto cmp = compare_windows(wm, wh, &ladder);
    CHECK(cmp.dims_equal);
    REQUIRE(cmp.induced_iso);
    CHECK(*cmp.induced_iso);
    for (const auto& row : cmp.rows)
        CHECK(row.dim1 == 1);

    auto diff = compare_windows(ws, wh);
    CHECK(!diff.dims_equal);
    CHECK(diff.rows[1].dim1 == 0);
    CHECK(diff.rows[1].dim2 == 1);
}
