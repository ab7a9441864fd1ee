#include "chenbar/cdga.hpp"

#include "chenbar/errors.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chenbar {

namespace {

constexpr std::size_t kMaxReported = 20;

int koszul_sign(int p, int q)
{
    return (p % 2 != 0 && q % 2 != 0) ? -1 : 1;
}

void report(std::vector<std::string>& out, std::string msg)
{
    if (out.size() < kMaxReported)
        out.push_back(std::move(msg));
}

} // namespace

// --------------------------------------------------------------- GradedAlgebra

GradedAlgebra::GradedAlgebra(AlgebraData data) : data_(std::move(data))
{
    const int n_max = data_.truncation;
    if (n_max < 0)
        throw InvariantViolation(data_.name + ": negative truncation degree");
    if (data_.labels.size() != static_cast<std::size_t>(n_max) + 1)
        throw InvariantViolation(data_.name + ": need one basis list per degree 0..N");
    if (data_.labels[0].size() != 1)
        throw InvariantViolation(data_.name + ": degree 0 must be spanned by the unit alone");

    std::size_t total = 0;
    for (int n = 0; n <= n_max; ++n) {
        offsets_.push_back(total);
        for (std::size_t i = 0; i < data_.labels[n].size(); ++i)
            degree_of_.push_back(n);
        total += data_.labels[n].size();
    }
    if (data_.products.size() != total * total)
        throw InvariantViolation(data_.name + ": product table has the wrong size");
    if (data_.diff.size() != static_cast<std::size_t>(n_max))
        throw InvariantViolation(data_.name + ": need one differential per degree 0..N-1");
    for (int n = 0; n < n_max; ++n)
        if (data_.diff[n].cols() != dim(n) || data_.diff[n].rows() != dim(n + 1))
            throw InvariantViolation(data_.name + ": differential in degree " + std::to_string(n) +
                                     " has the wrong shape");
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = 0; b < total; ++b) {
            int deg = degree_of_[a] + degree_of_[b];
            const auto& v = data_.products[a * total + b];
            if (deg > n_max ? !v.empty() : v.bound() > dim(deg))
                throw InvariantViolation(data_.name + ": product entry out of range");
        }

    auto violations = validate();
    if (!violations.empty()) {
        std::string msg = data_.name + ": invalid CDGA:";
        for (const auto& v : violations)
            msg += "\n  " + v;
        throw InvariantViolation(msg);
    }
}

GradedAlgebra GradedAlgebra::ground_field(int truncation, std::string name)
{
    AlgebraData data;
    data.name = std::move(name);
    data.truncation = truncation;
    data.labels.assign(truncation + 1, {});
    data.labels[0] = {"1"};
    data.products = {SparseVector::unit(0)};
    data.diff.reserve(truncation);
    for (int n = 0; n < truncation; ++n)
        data.diff.emplace_back(0, n == 0 ? 1 : 0);
    data.presentation = PresentationInfo{{}, {}, {Monomial{}}};
    return GradedAlgebra(std::move(data));
}

std::size_t GradedAlgebra::dim(int degree) const
{
    if (degree < 0 || degree > data_.truncation)
        return 0;
    return data_.labels[degree].size();
}

std::vector<std::size_t> GradedAlgebra::dims() const
{
    std::vector<std::size_t> out;
    for (int n = 0; n <= data_.truncation; ++n)
        out.push_back(dim(n));
    return out;
}

const std::string& GradedAlgebra::label(std::size_t global) const
{
    int deg = degree_of(global);
    return data_.labels[deg][global - offsets_[deg]];
}

std::string GradedAlgebra::format(const Element& e) const
{
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : e.coeffs) {
        Rational mag = abs(c);
        os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (mag != 1)
            os << to_string(mag) << " ";
        os << label(global_index(e.degree, i));
        first = false;
    }
    return os.str();
}

Element GradedAlgebra::basis_element(std::size_t global) const
{
    return Element{degree_of(global), SparseVector::unit(local_index(global))};
}

const SparseVector& GradedAlgebra::product(std::size_t a, std::size_t b) const
{
    if (degree_of(a) + degree_of(b) > data_.truncation)
        throw std::out_of_range(data_.name + ": product leaves the truncation window");
    return data_.products[a * size() + b];
}

std::optional<Element> GradedAlgebra::multiply(const Element& x, const Element& y) const
{
    int deg = x.degree + y.degree;
    if (deg > data_.truncation)
        return std::nullopt;
    Element out{deg, {}};
    for (const auto& [i, ci] : x.coeffs)
        for (const auto& [j, cj] : y.coeffs)
            out.coeffs.axpy(ci * cj, product(global_index(x.degree, i), global_index(y.degree, j)));
    return out;
}

Element GradedAlgebra::differential(const Element& x) const
{
    if (x.degree >= data_.truncation)
        throw std::out_of_range(data_.name + ": differential leaves the truncation window");
    return Element{x.degree + 1, data_.diff[x.degree].apply(x.coeffs)};
}

bool GradedAlgebra::has_zero_differential() const
{
    for (const auto& m : data_.diff)
        if (!m.is_zero())
            return false;
    return true;
}

Rational GradedAlgebra::augmentation(const Element& x) const
{
    return x.degree == 0 ? x.coeffs.at(0) : Rational(0);
}

Element GradedAlgebra::evaluate(const RawPolynomial& p, int degree) const
{
    if (!data_.presentation)
        throw std::logic_error(data_.name + ": evaluate needs a generator presentation");
    const auto& info = *data_.presentation;
    Element out{degree, {}};
    for (const auto& term : p) {
        if (term_degree(term, info.presentation.generators) != degree)
            throw InvalidPresentation(data_.name + ": polynomial is not homogeneous of degree " +
                                      std::to_string(degree));
        if (degree > data_.truncation)
            continue;
        Element acc{0, SparseVector::unit(0, term.coeff)};
        for (const auto& [g, e] : term.factors)
            for (int k = 0; k < e; ++k)
                acc = *multiply(acc, info.generator_elements.at(g));
        out.coeffs += acc.coeffs;
    }
    return out;
}

std::vector<std::string> GradedAlgebra::validate() const
{
    std::vector<std::string> out;
    const int n_max = data_.truncation;
    const std::size_t total = size();

    for (std::size_t b = 0; b < total; ++b) {
        auto local = SparseVector::unit(local_index(b));
        if (product(unit(), b) != local || product(b, unit()) != local)
            report(out, "unit law fails on " + label(b));
    }

    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = 0; b < total; ++b) {
            int p = degree_of(a), q = degree_of(b);
            if (p + q > n_max)
                continue;
            if (product(a, b) != Rational(koszul_sign(p, q)) * product(b, a))
                report(out, "graded commutativity fails on (" + label(a) + ", " + label(b) + ")");
        }

    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = 0; b < total; ++b) {
            if (degree_of(a) + degree_of(b) > n_max)
                continue;
            auto ea = basis_element(a);
            auto eb = basis_element(b);
            auto ab = *multiply(ea, eb);
            for (std::size_t c = 0; c < total; ++c) {
                if (ab.degree + degree_of(c) > n_max)
                    continue;
                auto ec = basis_element(c);
                if (*multiply(ab, ec) != *multiply(ea, *multiply(eb, ec)))
                    report(out, "associativity fails on (" + label(a) + ", " + label(b) + ", " +
                                    label(c) + ")");
            }
        }

    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = 0; b < total; ++b) {
            int p = degree_of(a), q = degree_of(b);
            if (p + q >= n_max)
                continue;
            auto ea = basis_element(a);
            auto eb = basis_element(b);
            auto lhs = differential(*multiply(ea, eb));
            auto rhs = *multiply(differential(ea), eb);
            rhs.coeffs.axpy(p % 2 == 0 ? 1 : -1, multiply(ea, differential(eb))->coeffs);
            if (lhs != rhs)
                report(out, "Leibniz rule fails on (" + label(a) + ", " + label(b) + ")");
        }

    for (int n = 0; n + 2 <= n_max; ++n)
        if (!(data_.diff[n + 1] * data_.diff[n]).is_zero())
            report(out, "d^2 != 0 in degree " + std::to_string(n));
    return out;
}

// ------------------------------------------------------------- AlgebraMorphism

AlgebraMorphism::AlgebraMorphism(std::string name, AlgebraPtr source, AlgebraPtr target,
                                 std::vector<RationalMatrix> maps)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)),
      maps_(std::move(maps))
{
    if (!source_ || !target_)
        throw std::invalid_argument("morphism " + name_ + ": null algebra");
    if (source_->truncation() != target_->truncation())
        throw InvariantViolation("morphism " + name_ + ": source and target truncations differ");
    if (maps_.size() != static_cast<std::size_t>(source_->truncation()) + 1)
        throw InvariantViolation("morphism " + name_ + ": need one matrix per degree");
    for (int n = 0; n <= source_->truncation(); ++n)
        if (maps_[n].cols() != source_->dim(n) || maps_[n].rows() != target_->dim(n))
            throw InvariantViolation("morphism " + name_ + ": matrix in degree " +
                                     std::to_string(n) + " has the wrong shape");
}

AlgebraMorphism AlgebraMorphism::identity(AlgebraPtr algebra)
{
    std::vector<RationalMatrix> maps;
    for (int n = 0; n <= algebra->truncation(); ++n)
        maps.push_back(RationalMatrix::identity(algebra->dim(n)));
    return AlgebraMorphism("id_" + algebra->name(), algebra, algebra, std::move(maps));
}

AlgebraMorphism AlgebraMorphism::from_generator_images(std::string name, AlgebraPtr source,
                                                       AlgebraPtr target,
                                                       const std::vector<Element>& images)
{
    const auto& info = source->presentation();
    if (!info)
        throw std::logic_error("morphism " + name + ": source has no generator presentation");
    const auto& gens = info->presentation.generators;
    if (images.size() != gens.size())
        throw InvalidPresentation("morphism " + name + ": one image per generator required");
    const int n_max = source->truncation();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].degree <= n_max && images[i].degree != gens[i].degree)
            throw InvalidPresentation("morphism " + name + ": image of " + gens[i].name +
                                      " has degree " + std::to_string(images[i].degree) +
                                      ", expected " + std::to_string(gens[i].degree));

    std::vector<RationalMatrix> maps;
    for (int n = 0; n <= n_max; ++n)
        maps.emplace_back(target->dim(n), source->dim(n));
    for (std::size_t b = 0; b < source->size(); ++b) {
        const auto& mono = info->basis_monomials.at(b);
        Element acc{0, SparseVector::unit(0)};
        for (std::size_t g = 0; g < mono.size(); ++g)
            for (int k = 0; k < mono[g]; ++k)
                acc = *target->multiply(acc, images[g]);
        maps[source->degree_of(b)].set_column(source->local_index(b), acc.coeffs);
    }
    return AlgebraMorphism(std::move(name), std::move(source), std::move(target), std::move(maps));
}

AlgebraMorphism AlgebraMorphism::augmentation(AlgebraPtr source, AlgebraPtr ground)
{
    std::vector<RationalMatrix> maps;
    for (int n = 0; n <= source->truncation(); ++n)
        maps.emplace_back(ground->dim(n), source->dim(n));
    maps[0].set(0, 0, 1);
    std::string name = "eps_" + source->name();
    return AlgebraMorphism(std::move(name), std::move(source), std::move(ground), std::move(maps));
}

Element AlgebraMorphism::apply(const Element& x) const
{
    return Element{x.degree, maps_.at(x.degree).apply(x.coeffs)};
}

AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner)
{
    if (inner.target()->dims() != outer.source()->dims())
        throw std::invalid_argument("compose: " + outer.name() + " cannot follow " + inner.name());
    std::vector<RationalMatrix> maps;
    for (int n = 0; n <= inner.truncation(); ++n)
        maps.push_back(outer.map(n) * inner.map(n));
    return AlgebraMorphism(outer.name() + "." + inner.name(), inner.source(), outer.target(),
                           std::move(maps));
}

MorphismReport check_morphism(const AlgebraMorphism& phi)
{
    MorphismReport rep;
    const auto& s = *phi.source();
    const auto& t = *phi.target();
    const int n_max = s.truncation();

    auto one = phi.apply(s.basis_element(s.unit()));
    if (one != t.basis_element(t.unit()))
        report(rep.violations, "unit not sent to unit: 1 -> " + t.format(one));
    if (t.augmentation(one) != s.augmentation(s.basis_element(s.unit())))
        report(rep.violations, "augmentation not preserved");

    for (int n = 0; n < n_max; ++n)
        if (t.diff(n) * phi.map(n) != phi.map(n + 1) * s.diff(n))
            report(rep.violations, "chain-map failure at degree " + std::to_string(n));

    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
            if (s.degree_of(a) + s.degree_of(b) > n_max)
                continue;
            auto ea = s.basis_element(a);
            auto eb = s.basis_element(b);
            auto lhs = phi.apply(*s.multiply(ea, eb));
            auto rhs = *t.multiply(phi.apply(ea), phi.apply(eb));
            if (lhs != rhs)
                report(rep.violations, "multiplicativity failure at pair (" + s.label(a) + ", " +
                                           s.label(b) + ")");
        }
    return rep;
}

// ------------------------------------------------------------------ build_free

namespace {

std::string monomial_label(const Monomial& m, const std::vector<Generator>& gens)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += gens[i].name;
        if (m[i] > 1)
            out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

void check_presentation(const GeneratorPresentation& pres, const std::string& name)
{
    const auto& gens = pres.generators;
    std::set<std::string> seen;
    for (const auto& g : gens) {
        if (g.name.empty())
            throw InvalidPresentation(name + ": empty generator name");
        if (!seen.insert(g.name).second)
            throw InvalidPresentation(name + ": duplicate generator " + g.name);
        if (g.degree < 1)
            throw InvalidPresentation(name + ": generator " + g.name + " must have degree >= 1");
    }
    if (pres.differentials.size() > gens.size())
        throw InvalidPresentation(name + ": more differentials than generators");
    for (std::size_t i = 0; i < pres.differentials.size(); ++i)
        for (const auto& term : pres.differentials[i]) {
            for (const auto& [g, e] : term.factors)
                if (g >= i)
                    throw InvalidPresentation(name + ": d " + gens[i].name +
                                              " may only use earlier generators");
            if (term_degree(term, gens) != gens[i].degree + 1)
                throw InvalidPresentation(name + ": d " + gens[i].name +
                                          " is not homogeneous of degree " +
                                          std::to_string(gens[i].degree + 1));
        }
    for (const auto& rel : pres.relations) {
        if (rel.empty())
            continue;
        int deg = term_degree(rel.front(), gens);
        for (const auto& term : rel) {
            for (const auto& [g, e] : term.factors)
                if (g >= gens.size())
                    throw InvalidPresentation(name + ": relation uses an unknown generator");
            if (term_degree(term, gens) != deg)
                throw InhomogeneousRelation(name + ": relation mixes degrees " +
                                            std::to_string(deg) + " and " +
                                            std::to_string(term_degree(term, gens)));
        }
    }
}

struct FreeWindow {
    std::vector<std::vector<Monomial>> monomials; // per degree
    std::vector<std::map<Monomial, std::size_t>> index;
    std::vector<Quotient> quotients;

    SparseVector to_vector(int degree, const NormalPolynomial& p) const
    {
        std::vector<SparseVector::Entry> entries;
        for (const auto& [m, c] : p)
            entries.emplace_back(index.at(degree).at(m), c);
        return SparseVector(std::move(entries));
    }

    SparseVector reduce(int degree, const NormalPolynomial& p) const
    {
        return quotients.at(degree).project(to_vector(degree, p));
    }
};

} // namespace

GradedAlgebra build_free(const GeneratorPresentation& pres, int truncation, std::string name)
{
    if (truncation < 0)
        throw InvalidPresentation(name + ": negative truncation degree");
    check_presentation(pres, name);
    const auto& gens = pres.generators;

    std::vector<int> degrees;
    for (const auto& g : gens)
        degrees.push_back(g.degree);
    FreeMonomials fm(degrees);

    std::vector<NormalPolynomial> gen_diffs(gens.size());
    for (std::size_t i = 0; i < pres.differentials.size(); ++i)
        gen_diffs[i] = fm.normalize(pres.differentials[i]);

    std::vector<std::pair<int, NormalPolynomial>> relations;
    for (const auto& rel : pres.relations)
        if (!rel.empty())
            relations.emplace_back(term_degree(rel.front(), gens), fm.normalize(rel));

    FreeWindow w;
    for (int n = 0; n <= truncation; ++n) {
        w.monomials.push_back(fm.monomials(n));
        std::map<Monomial, std::size_t> idx;
        for (std::size_t j = 0; j < w.monomials[n].size(); ++j)
            idx.emplace(w.monomials[n][j], j);
        w.index.push_back(std::move(idx));

        // Degree-n part of the ideal: monomial multiples of each relation.
        std::vector<SparseVector> ideal;
        for (const auto& [rdeg, rel] : relations) {
            if (rdeg > n)
                continue;
            for (const auto& m : w.monomials[n - rdeg])
                ideal.push_back(w.to_vector(n, fm.multiply(NormalPolynomial{{m, Rational(1)}}, rel)));
        }
        w.quotients.emplace_back(ideal, w.monomials[n].size());
    }

    for (const auto& [rdeg, rel] : relations)
        if (rdeg + 1 <= truncation && !w.reduce(rdeg + 1, fm.differential(rel, gen_diffs)).empty())
            throw InvalidPresentation(name + ": a relation is not closed under d");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int deg = gens[i].degree + 2;
        if (deg <= truncation && !w.reduce(deg, fm.differential(gen_diffs[i], gen_diffs)).empty())
            throw DSquareNonzero(name + ": d(d " + gens[i].name + ") != 0");
    }

    AlgebraData data;
    data.name = name;
    data.truncation = truncation;
    PresentationInfo info;
    info.presentation = pres;
    info.presentation.differentials.resize(gens.size());
    for (int n = 0; n <= truncation; ++n) {
        std::vector<std::string> labels;
        for (std::size_t j : w.quotients[n].rep_columns()) {
            labels.push_back(monomial_label(w.monomials[n][j], gens));
            info.basis_monomials.push_back(w.monomials[n][j]);
        }
        data.labels.push_back(std::move(labels));
    }
    if (data.labels[0].size() != 1)
        throw InvalidPresentation(name + ": relations kill the unit");

    const std::size_t total = info.basis_monomials.size();
    std::vector<int> degree_of;
    for (const auto& m : info.basis_monomials)
        degree_of.push_back(fm.degree(m));

    data.products.assign(total * total, {});
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = 0; b < total; ++b) {
            int deg = degree_of[a] + degree_of[b];
            if (deg > truncation)
                continue;
            NormalPolynomial prod;
            if (auto p = fm.multiply(info.basis_monomials[a], info.basis_monomials[b]))
                prod.emplace(p->second, Rational(p->first));
            data.products[a * total + b] = w.reduce(deg, prod);
        }

    std::size_t offset = 0;
    for (int n = 0; n < truncation; ++n) {
        std::size_t dn = data.labels[n].size();
        RationalMatrix d(data.labels[n + 1].size(), dn);
        for (std::size_t j = 0; j < dn; ++j)
            d.set_column(j, w.reduce(n + 1, fm.differential(info.basis_monomials[offset + j], gen_diffs)));
        data.diff.push_back(std::move(d));
        offset += dn;
    }

    for (std::size_t i = 0; i < gens.size(); ++i) {
        int deg = gens[i].degree;
        if (deg > truncation)
            info.generator_elements.push_back(Element{deg, {}});
        else
            info.generator_elements.push_back(
                Element{deg, w.reduce(deg, NormalPolynomial{{fm.generator(i), Rational(1)}})});
    }
    data.presentation = std::move(info);
    return GradedAlgebra(std::move(data));
}

// ---------------------------------------------------------- cohomology_algebra

namespace {

Cohomology cohomology_in_degree(const GradedAlgebra& a, int n)
{
    const int n_max = a.truncation();
    RationalMatrix d_in = n == 0 ? RationalMatrix(a.dim(0), 0) : a.diff(n - 1);
    RationalMatrix d_out = n < n_max ? a.diff(n) : RationalMatrix(0, a.dim(n));
    return Cohomology(d_in, d_out);
}

} // namespace

CohomologyAlgebra cohomology_algebra(const GradedAlgebra& a)
{
    const int n_max = a.truncation();
    CohomologyAlgebra out;
    out.valid_up_to = n_max - 1;

    AlgebraData data;
    data.name = "H(" + a.name() + ")";
    data.truncation = n_max;
    std::vector<SparseVector> reps; // by H global index
    std::vector<int> rep_degree;
    for (int n = 0; n <= n_max; ++n) {
        out.groups.push_back(cohomology_in_degree(a, n));
        const auto& g = out.groups.back();
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < g.dim(); ++k) {
            labels.push_back("[" + a.label(a.global_index(n, g.representative_columns()[k])) + "]");
            reps.push_back(g.representatives()[k]);
            rep_degree.push_back(n);
        }
        data.labels.push_back(std::move(labels));
    }

    const std::size_t total = reps.size();
    data.products.assign(total * total, {});
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j) {
            int deg = rep_degree[i] + rep_degree[j];
            if (deg > n_max)
                continue;
            auto prod = a.multiply(Element{rep_degree[i], reps[i]}, Element{rep_degree[j], reps[j]});
            data.products[i * total + j] = out.groups[deg].project(prod->coeffs);
        }
    for (int n = 0; n < n_max; ++n)
        data.diff.emplace_back(data.labels[n + 1].size(), data.labels[n].size());

    out.algebra = std::make_shared<const GradedAlgebra>(std::move(data));
    return out;
}

QuasiIsoResult is_quasi_iso(const AlgebraMorphism& phi)
{
    const auto& s = *phi.source();
    const auto& t = *phi.target();
    QuasiIsoResult res;
    res.checked_up_to = s.truncation() - 1;
    for (int n = 0; n <= res.checked_up_to; ++n) {
        auto hs = cohomology_in_degree(s, n);
        auto ht = cohomology_in_degree(t, n);
        bool ok = hs.dim() == ht.dim();
        if (ok) {
            std::vector<SparseVector> cols;
            for (const auto& rep : hs.representatives())
                cols.push_back(ht.project(phi.map(n).apply(rep)));
            ok = rank_and_kernel(RationalMatrix::from_columns(ht.dim(), std::move(cols))).rank ==
                 hs.dim();
        }
        if (!ok) {
            res.failing_degree = n;
            return res;
        }
    }
    res.is_quasi_iso = true;
    return res;
}

} // namespace chenbar
