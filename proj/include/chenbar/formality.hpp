#pragma once

#include "chenbar/em_tor.hpp"
#include "chenbar/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chenbar {

// A vanishing combination sum_t coeff_t * b_t * gen_t in HE.
struct FreenessWitness {
    int degree = 0;
    struct Term {
        Rational coeff;
        std::string base_label;      // basis element of HB
        std::string generator_label; // module generator (basis element of HE)
    };
    std::vector<Term> terms;

    std::string describe() const;
};

struct FreenessResult {
    bool free = false;
    int checked_up_to = 0;
    std::vector<std::size_t> generators; // global basis indices of HE
    std::vector<int> generator_degrees;
    std::vector<std::string> generator_labels;
    std::optional<FreenessWitness> witness;
};

// Greedy degreewise test that HE is a free HB-module through g: adjoin the
// lowest-degree elements not yet generated and require HB (x) span(gens) -> HE
// to stay injective up to the truncation degree.
FreenessResult check_free_module(const AlgebraMorphism& g);

// True iff every class of nonzero bar degree vanishes in the valid range.
bool check_positive_vanishing(const TorResult& tor);

class NotFree : public Error {
public:
    explicit NotFree(FreenessResult result);
    const FreenessResult& result() const { return result_; }

private:
    FreenessResult result_;
};

// The certificate's own cross-checks disagree: an internal bug, never a
// property of the input.
class CertificateInconsistent : public Error {
public:
    using Error::Error;
};

// Freeness held but a class of nonzero bar degree survived.
class VanishingFailed : public CertificateInconsistent {
public:
    using CertificateInconsistent::CertificateInconsistent;
};

struct FormalityCertificate {
    std::string triple;
    int truncation = 0;
    int valid_up_to = 0;
    std::vector<std::string> assumptions;
    FreenessResult freeness;
    bool positive_vanishing = false;
    std::map<Bidegree, std::size_t> bigraded_dims;
    // Bar-degree-0 projection onto X (x)_B E viewed as a map of windows.
    bool projection_chain_map = false;
    bool projection_cohomology_iso = false;
    bool projection_multiplicative = false;
    AlgebraPtr pullback; // X (x)_B E, zero differential
    TorResult tor;
};

// Throws NotFree when the criterion does not apply, VanishingFailed or
// CertificateInconsistent on an internal inconsistency.
FormalityCertificate formality_certificate(const Triple& t, int truncation,
                                           std::string triple_name = "T");

// Stable JSON document; identical inputs give byte-identical output.
std::string render_certificate(const FormalityCertificate& cert);

} // namespace chenbar
