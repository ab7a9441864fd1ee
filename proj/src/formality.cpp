#include "chenbar/formality.hpp"

#include <json.hpp>

#include <sstream>

namespace chenbar {

std::string FreenessWitness::describe() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& term : terms) {
        Rational mag = abs(term.coeff);
        os << (sgn(term.coeff) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (mag != 1)
            os << to_string(mag) << " ";
        os << term.base_label << "*" << term.generator_label;
        first = false;
    }
    os << " = 0 in degree " << degree;
    return os.str();
}

FreenessResult check_free_module(const AlgebraMorphism& g)
{
    const auto& hb = *g.source();
    const auto& he = *g.target();
    const int n_max = g.truncation();
    FreenessResult res;

    for (int n = 0; n <= n_max; ++n) {
        struct Source {
            std::size_t base;
            std::size_t gen;
        };
        std::vector<Source> sources;
        std::vector<SparseVector> images;
        for (std::size_t k = 0; k < res.generators.size(); ++k) {
            int db = n - res.generator_degrees[k];
            if (db < 0)
                continue;
            for (std::size_t j = 0; j < hb.dim(db); ++j) {
                std::size_t b = hb.global_index(db, j);
                auto img = he.multiply(g.apply(hb.basis_element(b)),
                                       he.basis_element(res.generators[k]));
                sources.push_back({b, k});
                images.push_back(img->coeffs);
            }
        }
        auto m = RationalMatrix::from_columns(he.dim(n), images);
        auto rk = rank_and_kernel(m);
        if (rk.rank < sources.size()) {
            FreenessWitness wit;
            wit.degree = n;
            for (const auto& [i, c] : rk.kernel_basis.front())
                wit.terms.push_back({c, hb.label(sources[i].base),
                                     he.label(res.generators[sources[i].gen])});
            res.witness = std::move(wit);
            res.checked_up_to = n;
            return res;
        }
        Quotient rest(images, he.dim(n));
        for (std::size_t j : rest.rep_columns()) {
            std::size_t global = he.global_index(n, j);
            res.generators.push_back(global);
            res.generator_degrees.push_back(n);
            res.generator_labels.push_back(he.label(global));
        }
    }
    res.free = true;
    res.checked_up_to = n_max;
    return res;
}

bool check_positive_vanishing(const TorResult& tor)
{
    if (!tor.bigraded)
        throw std::invalid_argument("check_positive_vanishing: needs a bigraded Tor result");
    for (const auto& [bideg, dim] : tor.bigraded_dims)
        if (bideg.first != 0 && dim > 0)
            return false;
    return true;
}

NotFree::NotFree(FreenessResult result)
    : Error("criterion inapplicable: H(E) is not a free H(B)-module (" +
            (result.witness ? result.witness->describe() : std::string("no witness")) + ")"),
      result_(std::move(result))
{
}

namespace {

std::vector<std::size_t> short_words(const BarWindow& w, int n, std::size_t length)
{
    std::vector<std::size_t> ids;
    if (n < 0 || n > w.truncation())
        return ids;
    for (std::size_t i = 0; i < w.words(n).size(); ++i)
        if (w.words(n)[i].length() == length)
            ids.push_back(i);
    return ids;
}

} // namespace

FormalityCertificate formality_certificate(const Triple& t, int truncation, std::string triple_name)
{
    FormalityCertificate cert;
    cert.triple = std::move(triple_name);
    cert.truncation = truncation;
    cert.valid_up_to = truncation - 1;
    cert.assumptions = {
        "the input triple is the cohomology of a compatibly formal pair of maps (asserted, not checked)",
        "results are valid in total degrees 0.." + std::to_string(truncation - 1),
    };

    cert.freeness = check_free_module(t.g());
    if (!cert.freeness.free)
        throw NotFree(cert.freeness);

    if (!t.has_zero_differentials())
        throw NonzeroDifferential("formality_certificate: inputs must have zero differential");
    require_simply_connected_middle(t);
    BarWindow window(t, truncation);
    cert.tor = bar_cohomology(window);
    cert.bigraded_dims = cert.tor.bigraded_dims;
    cert.positive_vanishing = check_positive_vanishing(cert.tor);
    if (!cert.positive_vanishing)
        throw VanishingFailed("H(E) is free over H(B) but Tor has classes of nonzero bar degree");

    // X (x)_B E: bar-degree-0 words modulo delta of bar-degree -1 words.
    std::vector<std::vector<std::size_t>> zero_ids;
    std::vector<Quotient> quotients;
    AlgebraData data;
    data.name = "pullback(" + cert.triple + ")";
    data.truncation = truncation;
    std::vector<std::pair<int, std::size_t>> basis; // (degree, window word index)
    for (int n = 0; n <= truncation; ++n) {
        zero_ids.push_back(short_words(window, n, 0));
        std::vector<SparseVector> rel;
        if (n > 0) {
            auto m = window.D(n - 1).submatrix(zero_ids[n], short_words(window, n - 1, 1));
            for (std::size_t j = 0; j < m.cols(); ++j)
                rel.push_back(m.column(j));
        }
        quotients.emplace_back(rel, zero_ids[n].size());
        std::vector<std::string> labels;
        for (std::size_t col : quotients[n].rep_columns()) {
            std::size_t word = zero_ids[n][col];
            labels.push_back("[" + t.format(window.words(n)[word]) + "]");
            basis.emplace_back(n, word);
        }
        data.labels.push_back(std::move(labels));
    }

    auto project_zero = [&](int n, const SparseVector& v) {
        std::vector<SparseVector::Entry> entries;
        for (std::size_t k = 0; k < zero_ids[n].size(); ++k) {
            Rational c = v.at(zero_ids[n][k]);
            if (!is_zero(c))
                entries.emplace_back(k, std::move(c));
        }
        return quotients[n].project(SparseVector(std::move(entries)));
    };

    WindowProduct prod(window);
    data.products.assign(basis.size() * basis.size(), {});
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            auto [p, wa] = basis[a];
            auto [q, wb] = basis[b];
            if (p + q <= truncation)
                data.products[a * basis.size() + b] = project_zero(p + q, prod.words(p, wa, q, wb));
        }
    for (int n = 0; n < truncation; ++n)
        data.diff.emplace_back(data.labels[n + 1].size(), data.labels[n].size());
    cert.pullback = std::make_shared<const GradedAlgebra>(std::move(data));
    const auto& pb = *cert.pullback;

    std::vector<RationalMatrix> proj;
    for (int n = 0; n <= truncation; ++n) {
        std::vector<SparseVector> cols;
        for (std::size_t i = 0; i < window.words(n).size(); ++i)
            cols.push_back(project_zero(n, SparseVector::unit(i)));
        proj.push_back(RationalMatrix::from_columns(pb.dim(n), std::move(cols)));
    }

    cert.projection_chain_map = true;
    for (int n = 0; n < truncation; ++n)
        if (!(proj[n + 1] * window.D(n)).is_zero())
            cert.projection_chain_map = false;

    cert.projection_cohomology_iso = true;
    for (int n = 0; n <= cert.valid_up_to; ++n) {
        std::vector<SparseVector> cols;
        for (const auto& cls : cert.tor.classes[n])
            cols.push_back(proj[n].apply(cls.representative));
        std::size_t dim = cols.size();
        if (dim != pb.dim(n) ||
            rank_and_kernel(RationalMatrix::from_columns(pb.dim(n), std::move(cols))).rank != dim)
            cert.projection_cohomology_iso = false;
    }

    cert.projection_multiplicative = true;
    for (int n1 = 0; n1 <= truncation; ++n1)
        for (std::size_t i1 = 0; i1 < window.words(n1).size(); ++i1)
            for (int n2 = 0; n1 + n2 <= truncation; ++n2)
                for (std::size_t i2 = 0; i2 < window.words(n2).size(); ++i2) {
                    auto lhs = proj[n1 + n2].apply(prod.words(n1, i1, n2, i2));
                    auto rhs = pb.multiply(Element{n1, proj[n1].apply(SparseVector::unit(i1))},
                                           Element{n2, proj[n2].apply(SparseVector::unit(i2))});
                    if (lhs != rhs->coeffs)
                        cert.projection_multiplicative = false;
                }

    if (!cert.projection_chain_map || !cert.projection_cohomology_iso ||
        !cert.projection_multiplicative)
        throw CertificateInconsistent("bar-degree-0 projection failed its verification");
    return cert;
}

std::string render_certificate(const FormalityCertificate& cert)
{
    using nlohmann::json;
    const auto& pb = *cert.pullback;

    json gens = json::array();
    for (std::size_t k = 0; k < cert.freeness.generators.size(); ++k)
        gens.push_back({{"label", cert.freeness.generator_labels[k]},
                        {"degree", cert.freeness.generator_degrees[k]}});

    json bigraded = json::array();
    for (const auto& [b, d] : cert.bigraded_dims)
        bigraded.push_back({{"bar_degree", b.first},
                            {"tensor_degree", b.second},
                            {"total_degree", b.first + b.second},
                            {"dim", d}});

    json degrees = json::array();
    for (int n = 0; n <= cert.valid_up_to; ++n) {
        json labels = json::array();
        for (std::size_t j = 0; j < pb.dim(n); ++j)
            labels.push_back(pb.label(pb.global_index(n, j)));
        degrees.push_back({{"total_degree", n}, {"dim", pb.dim(n)}, {"basis", labels}});
    }

    json products = json::array();
    for (std::size_t a = 0; a < pb.size(); ++a)
        for (std::size_t b = a; b < pb.size(); ++b) {
            int deg = pb.degree_of(a) + pb.degree_of(b);
            if (pb.degree_of(a) == 0 || pb.degree_of(b) == 0 || deg > cert.valid_up_to)
                continue;
            products.push_back({{"left", pb.label(a)},
                                {"right", pb.label(b)},
                                {"product", pb.format(Element{deg, pb.product(a, b)})}});
        }

    json doc = {
        {"certificate", "formality of the pull-back"},
        {"triple", cert.triple},
        {"truncation", cert.truncation},
        {"valid_up_to", cert.valid_up_to},
        {"assumptions", cert.assumptions},
        {"free_module", {{"free", cert.freeness.free},
                         {"checked_up_to", cert.freeness.checked_up_to},
                         {"generators", gens}}},
        {"positive_bar_degree_vanishing", cert.positive_vanishing},
        {"tor_bigraded", bigraded},
        {"bar_degree_zero_projection", {{"chain_map", cert.projection_chain_map},
                                        {"cohomology_isomorphism", cert.projection_cohomology_iso},
                                        {"multiplicative", cert.projection_multiplicative}}},
        {"pullback_cohomology", {{"degrees", degrees}, {"products", products}}},
        {"verdict", "formal"},
    };
    return doc.dump(2) + "\n";
}

} // namespace chenbar
