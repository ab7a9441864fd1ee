#include "chenbar/shuffle.hpp"

#include "corpus.hpp"

#include <doctest.h>

#include <random>

using namespace chenbar;

namespace {

// Shuffle product straight from the defining formula, enumerating position
// masks instead of the library's shuffle list.
BarChain brute_product(const Triple& t, const BarWord& w1, const BarWord& w2)
{
    const auto& a = t.left();
    const auto& b = t.middle();
    const auto& c = t.right();
    int k = static_cast<int>(w1.length()), l = static_cast<int>(w2.length());
    auto deg = [&](std::size_t m) { return b.degree_of(m); };
    int sb = 0, sy = 0;
    for (auto m : w1.middle)
        sb += deg(m) - 1;
    for (auto m : w2.middle)
        sy += deg(m) - 1;
    int ac = c.degree_of(w1.right), ax = a.degree_of(w2.left);
    int eta = ac * ax + ax * sb + ac * sy;

    BarChain out(t.total_degree(w1) + t.total_degree(w2));
    const auto& left = a.product(w1.left, w2.left);
    const auto& right = c.product(w1.right, w2.right);
    int ldeg = a.degree_of(w1.left) + ax;
    int rdeg = ac + c.degree_of(w2.right);
    for (unsigned mask = 0; mask < (1u << (k + l)); ++mask) {
        if (__builtin_popcount(mask) != k)
            continue;
        std::vector<std::size_t> mid;
        std::vector<int> pos_b, pos_y;
        int bi = 0, yi = 0;
        for (int s = 0; s < k + l; ++s) {
            if (mask & (1u << s)) {
                pos_b.push_back(s);
                mid.push_back(w1.middle[bi++]);
            } else {
                pos_y.push_back(s);
                mid.push_back(w2.middle[yi++]);
            }
        }
        int n_sigma = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < l; ++j)
                if (pos_b[i] > pos_y[j])
                    n_sigma += (deg(w1.middle[i]) - 1) * (deg(w2.middle[j]) - 1);
        int sign = (eta + n_sigma) % 2 ? -1 : 1;
        for (const auto& [li, lc] : left)
            for (const auto& [ri, rc] : right)
                out.add(BarWord{a.global_index(ldeg, li), mid, c.global_index(rdeg, ri)},
                        sign * lc * rc);
    }
    return out;
}

std::size_t idx(const GradedAlgebra& a, const std::string& label)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.label(i) == label)
            return i;
    FAIL("no basis element " << label);
    return 0;
}

} // namespace

TEST_CASE("shuffle enumeration")
{
    auto s03 = shuffles(0, 3);
    REQUIRE(s03.size() == 1);
    CHECK(s03[0].moved.empty());

    auto s11 = shuffles(1, 1);
    REQUIRE(s11.size() == 2);
    CHECK(s11[0].moved.empty());
    CHECK(s11[1].moved == std::vector<std::pair<int, int>>{{1, 1}});

    CHECK(shuffles(2, 2).size() == 6);
    CHECK(shuffles(3, 4).size() == 35);
}

TEST_CASE("divided powers on the loop space of S^3")
{
    auto q = corpus::ground(11);
    auto s3 = corpus::s3(11);
    Triple t = corpus::loop_triple(s3, q);
    auto x = idx(*s3, "x");
    BarWord u{0, {x}, 0};
    auto sq = bar_product(t, u, u, 10);
    REQUIRE(sq);
    BarChain expect(4);
    expect.add(BarWord{0, {x, x}, 0}, 2);
    CHECK(*sq == expect);
    CHECK(!bar_product(t, BarWord{0, {x, x, x}, 0}, BarWord{0, {x, x, x}, 0}, 10));
}

TEST_CASE("square of the degree-1 class of the loop space of S^2 vanishes")
{
    auto q = corpus::ground(7);
    auto hs2 = corpus::hs2(7);
    Triple t = corpus::loop_triple(hs2, q);
    BarWord u{0, {idx(*hs2, "x")}, 0};
    auto sq = bar_product(t, u, u, 6);
    REQUIRE(sq);
    CHECK(sq->empty());
}

TEST_CASE("property: bar_product agrees with the brute-force formula")
{
    std::mt19937 rng(3);
    for (const auto& nt : corpus::triples(9)) {
        BarWindow w(nt.triple, 8);
        for (int trial = 0; trial < 150; ++trial) {
            int n1 = static_cast<int>(rng() % 9);
            int n2 = static_cast<int>(rng() % (9 - n1));
            if (w.words(n1).empty() || w.words(n2).empty())
                continue;
            const auto& w1 = w.words(n1)[rng() % w.words(n1).size()];
            const auto& w2 = w.words(n2)[rng() % w.words(n2).size()];
            auto p = bar_product(nt.triple, w1, w2, 8);
            REQUIRE(p);
            CHECK_MESSAGE(*p == brute_product(nt.triple, w1, w2),
                          nt.name << ": " << nt.triple.format(w1) << " * " << nt.triple.format(w2));
        }
    }
}

TEST_CASE("check_cdga_structure passes on the corpus")
{
    auto q = corpus::ground(4);
    CHECK(check_cdga_structure(BarWindow(corpus::loop_triple(q, q), 3)).ok());
    for (const auto& nt : corpus::triples(9)) {
        auto rep = check_cdga_structure(BarWindow(nt.triple, 8));
        CHECK_MESSAGE(rep.ok(), nt.name << ": " << (rep.ok() ? "" : rep.failures.front()));
        CHECK(rep.checks > 0);
    }
}

TEST_CASE("odd words square to zero and theta is multiplicative")
{
    for (const auto& nt : corpus::triples(9)) {
        const auto& t = nt.triple;
        BarWindow w(t, 8);
        WindowProduct prod(w);
        for (int n = 1; 2 * n <= 8; n += 2)
            for (std::size_t i = 0; i < w.words(n).size(); ++i)
                CHECK(prod.words(n, i, n, i).empty());
        if (!nt.target)
            continue;
        const auto& tgt = nt.target->algebra();
        for (int n1 = 0; n1 <= 8; ++n1)
            for (int n2 = 0; n1 + n2 <= 8; ++n2)
                for (std::size_t i = 0; i < w.words(n1).size(); ++i)
                    for (std::size_t j = 0; j < w.words(n2).size(); ++j) {
                        const auto& a = w.words(n1)[i];
                        const auto& b = w.words(n2)[j];
                        auto lhs = theta(t, *nt.target, w.to_chain(n1 + n2, prod.words(n1, i, n2, j)));
                        auto rhs = tgt.multiply(theta(t, *nt.target, a), theta(t, *nt.target, b));
                        CHECK(lhs == *rhs);
                    }
    }
}

TEST_CASE("products of normalized words stay normalized")
{
    for (const auto& nt : corpus::triples(9)) {
        BarWindow w(nt.triple, 8);
        for (int n1 = 0; n1 <= 8; ++n1)
            for (int n2 = 0; n1 + n2 <= 8; ++n2)
                for (const auto& a : w.words(n1))
                    for (const auto& b : w.words(n2)) {
                        auto p = bar_product(nt.triple, a, b, 8);
                        REQUIRE(p);
                        for (const auto& [v, c] : *p)
                            for (auto m : v.middle)
                                CHECK(nt.triple.middle().degree_of(m) >= 2);
                    }
    }
}
