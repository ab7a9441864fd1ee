#pragma once

#include "chenbar/bar_complex.hpp"
#include "chenbar/cdga.hpp"
#include "chenbar/errors.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chenbar {

struct AlgebraDef {
    std::string name;
    GeneratorPresentation presentation;
    int line = 0;

    friend bool operator==(const AlgebraDef& a, const AlgebraDef& b)
    {
        return a.name == b.name && a.presentation == b.presentation;
    }
};

// Polynomials in `images` are written in the target's generators.
struct MorphismDef {
    std::string name;
    std::string source;
    std::string target;
    std::vector<std::pair<std::string, RawPolynomial>> images;
    int line = 0;

    friend bool operator==(const MorphismDef& a, const MorphismDef& b)
    {
        return a.name == b.name && a.source == b.source && a.target == b.target &&
               a.images == b.images;
    }
};

struct TripleDef {
    std::string name;
    std::string left, f;
    std::string middle;
    std::string right, g;
    int line = 0;

    friend bool operator==(const TripleDef& a, const TripleDef& b)
    {
        return a.name == b.name && a.left == b.left && a.f == b.f && a.middle == b.middle &&
               a.right == b.right && a.g == b.g;
    }
};

struct LadderDef {
    std::string name;
    std::string source, target; // triples
    std::string left, middle, right; // morphisms
    int line = 0;

    friend bool operator==(const LadderDef& a, const LadderDef& b)
    {
        return a.name == b.name && a.source == b.source && a.target == b.target &&
               a.left == b.left && a.middle == b.middle && a.right == b.right;
    }
};

struct Definitions {
    std::vector<AlgebraDef> algebras;
    std::vector<MorphismDef> morphisms;
    std::vector<TripleDef> triples;
    std::vector<LadderDef> ladders;

    const AlgebraDef* algebra(std::string_view name) const;
    const MorphismDef* morphism(std::string_view name) const;
    const TripleDef* triple(std::string_view name) const;
    const LadderDef* ladder(std::string_view name) const;

    friend bool operator==(const Definitions&, const Definitions&) = default;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }
    // The diagnostic without the position prefix.
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

inline constexpr int default_truncation = 12;

// Parses and validates every definition by building it at `truncation`.
Definitions parse_input(std::string_view text, int truncation = default_truncation);

std::string render(const Definitions& defs);
std::string render(const RawPolynomial& p, const std::vector<Generator>& generators);

// Builds named objects at one truncation degree, caching algebras and maps.
class Workspace {
public:
    Workspace(const Definitions& defs, int truncation);

    int truncation() const { return truncation_; }
    AlgebraPtr algebra(const std::string& name);
    AlgebraMorphism morphism(const std::string& name);
    Triple triple(const std::string& name);
    Ladder ladder(const std::string& name);

private:
    const Definitions& defs_;
    int truncation_;
    std::map<std::string, AlgebraPtr> algebras_;
};

} // namespace chenbar
