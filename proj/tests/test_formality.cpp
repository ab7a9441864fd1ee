#include "chenbar/formality.hpp"

#include "corpus.hpp"

#include <doctest.h>

using namespace chenbar;
using corpus::term;

namespace {

struct Setup {
    AlgebraPtr q, c, t, e;
    AlgebraMorphism sq, inc, eps;

    explicit Setup(int n)
        : q(corpus::ground(n)), c(corpus::qc(n)), t(corpus::qt(n)), e(corpus::bundle(n)),
          sq(corpus::square(c, t)), inc(corpus::map_gens("incl", c, e, {{term(1, {{0, 1}})}})),
          eps(corpus::aug(c, q))
    {
    }
};

std::vector<std::size_t> pullback_dims(const FormalityCertificate& cert)
{
    std::vector<std::size_t> out;
    for (int n = 0; n <= cert.valid_up_to; ++n)
        out.push_back(cert.pullback->dim(n));
    return out;
}

} // namespace

TEST_CASE("free module checks")
{
    Setup s(12);
    auto bundle = check_free_module(s.inc);
    CHECK(bundle.free);
    CHECK(bundle.generator_degrees == std::vector<int>{0, 3});

    auto sphere = check_free_module(s.sq);
    CHECK(sphere.free);
    CHECK(sphere.generator_degrees == std::vector<int>{0, 2});
    CHECK(sphere.generator_labels == std::vector<std::string>{"1", "t"});

    auto point = check_free_module(s.eps);
    CHECK(!point.free);
    REQUIRE(point.witness);
    CHECK(point.witness->degree == 4);
    REQUIRE(point.witness->terms.size() == 1);
    CHECK(point.witness->terms[0].base_label == "c");
    CHECK(point.witness->terms[0].generator_label == "1");
    CHECK(point.witness->describe() == "c*1 = 0 in degree 4");
}

TEST_CASE("positive bar degree vanishing")
{
    Setup s(11);
    CHECK(check_positive_vanishing(tor_algebra(Triple(s.eps, s.sq), 10)));

    auto tor = tor_algebra(Triple(s.eps, s.eps), 10);
    CHECK(!check_positive_vanishing(tor));
    CHECK(tor.bigraded_dims.at({-1, 4}) == 1);

    auto id = AlgebraMorphism::identity(s.q);
    CHECK(check_positive_vanishing(tor_algebra(Triple(id, id), 10)));
    auto unit = corpus::map_gens("unit", s.q, s.e, {});
    CHECK(check_positive_vanishing(tor_algebra(Triple(id, unit), 10)));
}

TEST_CASE("certificates")
{
    Setup s(13);
    auto sphere = formality_certificate(Triple(s.eps, s.sq), 12, "sphere");
    CHECK(sphere.positive_vanishing);
    CHECK(sphere.projection_chain_map);
    CHECK(sphere.projection_cohomology_iso);
    CHECK(sphere.projection_multiplicative);
    CHECK(pullback_dims(sphere) == std::vector<std::size_t>{1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    auto u = sphere.pullback->global_index(2, 0);
    CHECK(sphere.pullback->product(u, u).empty());

    // Product bundle: the pull-back is X (x) fibre = Lambda(x_3).
    auto bundle = formality_certificate(Triple(s.eps, s.inc), 12, "bundle");
    CHECK(pullback_dims(bundle) == std::vector<std::size_t>{1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0});

    // Over Q[t]: Q[t] (x) Lambda(x_3).
    auto over_t = formality_certificate(Triple(s.sq, s.inc), 12, "bundle over t");
    CHECK(pullback_dims(over_t) == std::vector<std::size_t>{1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1});

    auto doc = render_certificate(sphere);
    CHECK(doc.find("\"assumptions\"") != std::string::npos);
    CHECK(doc.find("compatibly formal") != std::string::npos);
    CHECK(doc == render_certificate(formality_certificate(Triple(s.eps, s.sq), 12, "sphere")));
}

TEST_CASE("not free")
{
    Setup s(13);
    try {
        formality_certificate(Triple(s.eps, s.eps), 12, "point");
        FAIL("expected NotFree");
    } catch (const NotFree& e) {
        REQUIRE(e.result().witness);
        CHECK(e.result().witness->describe() == "c*1 = 0 in degree 4");
    }
}

TEST_CASE("freeness implies positive vanishing on the corpus")
{
    for (const auto& nt : corpus::triples(11)) {
        if (!nt.triple.has_zero_differentials())
            continue;
        auto free = check_free_module(nt.triple.g());
        auto tor = tor_algebra(nt.triple, 10);
        if (free.free)
            CHECK_MESSAGE(check_positive_vanishing(tor), nt.name);
    }
}

TEST_CASE("relabelled generators give the same certificate structure")
{
    Setup s(13);
    auto e2 = corpus::free_on("E", {{"x", 3}, {"c", 4}}, 13);
    auto inc2 = corpus::map_gens("incl", s.c, e2, {{term(1, {{1, 1}})}});
    auto a = formality_certificate(Triple(s.sq, s.inc), 12, "T");
    auto b = formality_certificate(Triple(s.sq, inc2), 12, "T");
    CHECK(a.bigraded_dims == b.bigraded_dims);
    CHECK(a.freeness.generator_degrees == b.freeness.generator_degrees);
    CHECK(pullback_dims(a) == pullback_dims(b));
}
