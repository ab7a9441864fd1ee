#pragma once

#include "chenbar/linalg.hpp"
#include "chenbar/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chenbar {

// A homogeneous element: coordinates on the basis of one degree.
struct Element {
    int degree = 0;
    SparseVector coeffs;

    bool is_zero() const { return coeffs.empty(); }
    friend bool operator==(const Element&, const Element&) = default;
};

// Generators, their differentials and relations. Differentials may only use
// generators listed earlier, which makes the free part a KS-type complex.
struct GeneratorPresentation {
    std::vector<Generator> generators;
    std::vector<RawPolynomial> differentials; // one per generator, empty = 0
    std::vector<RawPolynomial> relations;

    friend bool operator==(const GeneratorPresentation&, const GeneratorPresentation&) = default;
};

// Extra data kept by algebras built from a presentation.
struct PresentationInfo {
    GeneratorPresentation presentation;
    std::vector<Element> generator_elements; // zero when the degree exceeds N
    std::vector<Monomial> basis_monomials;   // per global basis index
};

// Raw tables handed to the GradedAlgebra constructor.
struct AlgebraData {
    std::string name;
    int truncation = 0;
    std::vector<std::vector<std::string>> labels; // per degree 0..N
    // products[a * size + b]: coordinates in degree |a|+|b|; unused past N.
    std::vector<SparseVector> products;
    std::vector<RationalMatrix> diff; // diff[n]: degree n -> n+1, n < N
    std::optional<PresentationInfo> presentation;
};

// Finite window of a CDGA over Q: degrees 0..N with a monomial-style basis.
// Basis elements are addressed by a global index running through all degrees.
// Immutable once built; the constructor checks every structural invariant.
class GradedAlgebra {
public:
    explicit GradedAlgebra(AlgebraData data);

    // Q concentrated in degree 0.
    static GradedAlgebra ground_field(int truncation, std::string name = "Q");

    const std::string& name() const { return data_.name; }
    int truncation() const { return data_.truncation; }
    std::size_t dim(int degree) const;
    std::vector<std::size_t> dims() const;
    std::size_t size() const { return degree_of_.size(); }

    std::size_t unit() const { return 0; }
    int degree_of(std::size_t global) const { return degree_of_.at(global); }
    std::size_t local_index(std::size_t global) const { return global - offsets_.at(degree_of(global)); }
    std::size_t global_index(int degree, std::size_t local) const { return offsets_.at(degree) + local; }
    const std::string& label(std::size_t global) const;
    std::string format(const Element& e) const;

    Element basis_element(std::size_t global) const;
    Element zero(int degree) const { return Element{degree, {}}; }
    // Coordinates of b_a * b_b; only valid when |a| + |b| <= N.
    const SparseVector& product(std::size_t a, std::size_t b) const;
    // Product of elements; nullopt when the degree leaves the window.
    std::optional<Element> multiply(const Element& x, const Element& y) const;
    Element differential(const Element& x) const;
    const RationalMatrix& diff(int degree) const { return data_.diff.at(degree); }
    bool has_zero_differential() const;
    Rational augmentation(const Element& x) const;

    const std::optional<PresentationInfo>& presentation() const { return data_.presentation; }
    // Evaluate a polynomial in this algebra's generators. Requires a presentation.
    Element evaluate(const RawPolynomial& p, int degree) const;

    // Human-readable list of violated invariants (empty when valid).
    std::vector<std::string> validate() const;

private:
    AlgebraData data_;
    std::vector<std::size_t> offsets_;
    std::vector<int> degree_of_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Degree-preserving linear map given per degree; validity is checked
// separately by check_morphism.
class AlgebraMorphism {
public:
    AlgebraMorphism(std::string name, AlgebraPtr source, AlgebraPtr target,
                    std::vector<RationalMatrix> maps);

    static AlgebraMorphism identity(AlgebraPtr algebra);
    // Multiplicative extension of generator images; source needs a presentation.
    static AlgebraMorphism from_generator_images(std::string name, AlgebraPtr source,
                                                 AlgebraPtr target,
                                                 const std::vector<Element>& images);
    // The unique unital map to Q.
    static AlgebraMorphism augmentation(AlgebraPtr source, AlgebraPtr ground);

    const std::string& name() const { return name_; }
    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    int truncation() const { return source_->truncation(); }
    const RationalMatrix& map(int degree) const { return maps_.at(degree); }
    Element apply(const Element& x) const;

    friend bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b)
    {
        return a.maps_ == b.maps_;
    }

private:
    std::string name_;
    AlgebraPtr source_;
    AlgebraPtr target_;
    std::vector<RationalMatrix> maps_;
};

// outer after inner.
AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner);

struct MorphismReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

MorphismReport check_morphism(const AlgebraMorphism& phi);

// Free graded-commutative algebra on the presentation, modulo relations,
// truncated at N. Throws DSquareNonzero, InhomogeneousRelation,
// InvalidPresentation.
GradedAlgebra build_free(const GeneratorPresentation& pres, int truncation,
                         std::string name = "A");

struct CohomologyAlgebra {
    AlgebraPtr algebra; // zero differential, basis = chosen classes
    std::vector<Cohomology> groups; // per degree 0..N of the source
    int valid_up_to = 0;            // N-1: ker d at degree N is not visible

    SparseVector project(int degree, const SparseVector& cocycle) const
    {
        return groups.at(degree).project(cocycle);
    }
};

CohomologyAlgebra cohomology_algebra(const GradedAlgebra& a);

struct QuasiIsoResult {
    bool is_quasi_iso = false;
    int checked_up_to = 0;
    std::optional<int> failing_degree;
};

QuasiIsoResult is_quasi_iso(const AlgebraMorphism& phi);

} // namespace chenbar
