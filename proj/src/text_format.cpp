#include "chenbar/text_format.hpp"

#include <cctype>
#include <sstream>

namespace chenbar {

namespace {

template <class Def>
const Def* find_named(const std::vector<Def>& defs, std::string_view name)
{
    for (const auto& d : defs)
        if (d.name == name)
            return &d;
    return nullptr;
}

enum class Tok { Ident, Number, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), line, col});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            if (j + 1 < text.size() && text[j] == '/' &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                    ++j;
            }
            out.push_back({Tok::Number, std::string(text.substr(i, j - i)), line, col});
            advance(j - i);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::Symbol, "->", line, col});
            advance(2);
        } else if (std::string_view("{};=^*+-:").find(c) != std::string_view::npos) {
            out.push_back({Tok::Symbol, std::string(1, c), line, col});
            advance(1);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

std::string describe(const Token& t)
{
    switch (t.kind) {
    case Tok::End:
        return "end of input";
    case Tok::Ident:
        return "identifier '" + t.text + "'";
    case Tok::Number:
        return "number '" + t.text + "'";
    default:
        return "'" + t.text + "'";
    }
}

class Parser {
public:
    Parser(std::string_view text, int truncation) : toks_(tokenize(text)), n_(truncation) {}

    Definitions run()
    {
        while (peek().kind != Tok::End) {
            const Token& kw = peek();
            if (is_ident("algebra"))
                parse_algebra();
            else if (is_ident("morphism"))
                parse_morphism();
            else if (is_ident("triple"))
                parse_triple();
            else if (is_ident("ladder"))
                parse_ladder();
            else
                fail(kw, "expected 'algebra', 'morphism', 'triple' or 'ladder', got " +
                             describe(kw));
        }
        return std::move(defs_);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int n_;
    Definitions defs_;
    std::map<std::string, AlgebraPtr> built_;

    [[noreturn]] static void fail(const Token& t, const std::string& msg)
    {
        throw ParseError(t.line, t.column, msg);
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool is_ident(std::string_view word) const
    {
        return peek().kind == Tok::Ident && peek().text == word;
    }
    bool is_symbol(std::string_view s) const
    {
        return peek().kind == Tok::Symbol && peek().text == s;
    }

    const Token& expect_symbol(std::string_view s)
    {
        if (!is_symbol(s))
            fail(peek(), "expected '" + std::string(s) + "', got " + describe(peek()));
        return next();
    }
    const Token& expect_keyword(std::string_view word)
    {
        if (!is_ident(word))
            fail(peek(), "expected '" + std::string(word) + "', got " + describe(peek()));
        return next();
    }
    const Token& expect_ident(std::string_view what)
    {
        if (peek().kind != Tok::Ident)
            fail(peek(), "expected " + std::string(what) + ", got " + describe(peek()));
        return next();
    }
    int expect_int(std::string_view what)
    {
        const Token& t = peek();
        if (t.kind != Tok::Number || t.text.find('/') != std::string::npos)
            fail(t, "expected " + std::string(what) + ", got " + describe(t));
        next();
        try {
            return std::stoi(t.text);
        } catch (const std::exception&) {
            fail(t, "integer out of range: " + t.text);
        }
    }

    static std::size_t generator_index(const std::vector<Generator>& gens, std::string_view name)
    {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name)
                return i;
        return gens.size();
    }

    struct ParsedPoly {
        RawPolynomial poly;
        std::vector<Token> term_starts;
    };

    // Polynomial up to (not including) the terminating ';'.
    ParsedPoly parse_polynomial(const std::vector<Generator>& gens, const std::string& algebra)
    {
        ParsedPoly out;
        bool first = true;
        while (true) {
            Rational sign = 1;
            const Token& start = peek();
            if (is_symbol("+") || is_symbol("-")) {
                if (next().text == "-")
                    sign = -1;
            } else if (!first) {
                break;
            }
            Term term;
            term.coeff = sign;
            bool any = false;
            if (peek().kind == Tok::Number) {
                term.coeff *= parse_rational(next().text);
                any = true;
                if (is_symbol("*"))
                    next();
            }
            while (peek().kind == Tok::Ident) {
                const Token& g = next();
                std::size_t idx = generator_index(gens, g.text);
                if (idx == gens.size())
                    fail(g, "unknown generator '" + g.text + "' in algebra " + algebra);
                int e = 1;
                if (is_symbol("^")) {
                    next();
                    e = expect_int("exponent");
                    if (e < 1)
                        fail(g, "exponent must be positive");
                }
                term.factors.emplace_back(idx, e);
                any = true;
                if (is_symbol("*"))
                    next();
            }
            if (!any)
                fail(peek(), "expected a term, got " + describe(peek()));
            if (term.coeff == 0 && term.factors.empty()) {
                // a bare 0 is the zero polynomial
            } else {
                out.poly.push_back(std::move(term));
                out.term_starts.push_back(start);
            }
            first = false;
        }
        return out;
    }

    void check_degree(const ParsedPoly& p, const std::vector<Generator>& gens, int degree,
                      const std::string& context)
    {
        for (std::size_t k = 0; k < p.poly.size(); ++k) {
            int d = term_degree(p.poly[k], gens);
            if (d != degree)
                fail(p.term_starts[k], context + ": term has degree " + std::to_string(d) +
                                           ", expected " + std::to_string(degree));
        }
    }

    void parse_algebra()
    {
        const Token& kw = next();
        AlgebraDef def;
        def.line = kw.line;
        def.name = expect_ident("algebra name").text;
        if (defs_.algebra(def.name))
            fail(kw, "algebra " + def.name + " is already defined");
        expect_symbol("{");
        auto& pres = def.presentation;
        std::vector<bool> has_d;
        while (!is_symbol("}")) {
            if (is_ident("generator")) {
                next();
                const Token& g = expect_ident("generator name");
                if (generator_index(pres.generators, g.text) != pres.generators.size())
                    fail(g, "generator '" + g.text + "' declared twice");
                expect_keyword("deg");
                int deg = expect_int("generator degree");
                if (deg < 1)
                    fail(g, "generator '" + g.text + "' must have positive degree");
                pres.generators.push_back({g.text, deg});
                pres.differentials.emplace_back();
                has_d.push_back(false);
            } else if (is_ident("d")) {
                next();
                const Token& g = expect_ident("generator name");
                std::size_t idx = generator_index(pres.generators, g.text);
                if (idx == pres.generators.size())
                    fail(g, "unknown generator '" + g.text + "' in algebra " + def.name);
                if (has_d[idx])
                    fail(g, "differential of '" + g.text + "' given twice");
                expect_symbol("=");
                auto p = parse_polynomial(pres.generators, def.name);
                check_degree(p, pres.generators, pres.generators[idx].degree + 1,
                             "d " + g.text);
                for (std::size_t k = 0; k < p.poly.size(); ++k)
                    for (const auto& [gi, e] : p.poly[k].factors)
                        if (gi >= idx)
                            fail(p.term_starts[k], "d " + g.text + " may only use generators "
                                                   "declared before '" + g.text + "'");
                pres.differentials[idx] = std::move(p.poly);
                has_d[idx] = true;
            } else if (is_ident("relation")) {
                const Token& r = next();
                auto p = parse_polynomial(pres.generators, def.name);
                if (p.poly.empty())
                    fail(r, "relation is zero");
                check_degree(p, pres.generators, term_degree(p.poly.front(), pres.generators),
                             "relation");
                pres.relations.push_back(std::move(p.poly));
            } else {
                fail(peek(), "expected 'generator', 'd' or 'relation', got " + describe(peek()));
            }
            expect_symbol(";");
        }
        next();
        try {
            built_[def.name] = std::make_shared<const GradedAlgebra>(
                build_free(def.presentation, n_, def.name));
        } catch (const Error& e) {
            throw ParseError(kw.line, kw.column, "algebra " + def.name + ": " + e.what());
        }
        defs_.algebras.push_back(std::move(def));
    }

    const AlgebraDef& known_algebra(const Token& t)
    {
        const AlgebraDef* a = defs_.algebra(t.text);
        if (!a)
            fail(t, "unknown algebra '" + t.text + "'");
        return *a;
    }

    void parse_morphism()
    {
        const Token& kw = next();
        MorphismDef def;
        def.line = kw.line;
        def.name = expect_ident("morphism name").text;
        if (defs_.morphism(def.name))
            fail(kw, "morphism " + def.name + " is already defined");
        expect_symbol(":");
        const Token& src_tok = expect_ident("source algebra");
        expect_symbol("->");
        const Token& tgt_tok = expect_ident("target algebra");
        const auto& src = known_algebra(src_tok);
        const auto& tgt = known_algebra(tgt_tok);
        def.source = src.name;
        def.target = tgt.name;
        const auto& sgens = src.presentation.generators;
        const auto& tgens = tgt.presentation.generators;
        std::vector<Element> images;
        for (const auto& g : sgens)
            images.push_back(Element{g.degree, {}});
        std::vector<bool> seen(sgens.size(), false);

        expect_symbol("{");
        while (!is_symbol("}")) {
            const Token& g = expect_ident("generator name");
            std::size_t idx = generator_index(sgens, g.text);
            if (idx == sgens.size())
                fail(g, "unknown generator '" + g.text + "' in algebra " + src.name);
            if (seen[idx])
                fail(g, "image of '" + g.text + "' given twice");
            seen[idx] = true;
            expect_symbol("->");
            auto p = parse_polynomial(tgens, tgt.name);
            check_degree(p, tgens, sgens[idx].degree, "image of " + g.text);
            images[idx] = built_.at(tgt.name)->evaluate(p.poly, sgens[idx].degree);
            def.images.emplace_back(g.text, std::move(p.poly));
            expect_symbol(";");
        }
        next();
        try {
            auto phi = AlgebraMorphism::from_generator_images(def.name, built_.at(src.name),
                                                              built_.at(tgt.name), images);
            auto report = check_morphism(phi);
            if (!report.ok())
                fail(kw, "morphism " + def.name + " is not a CDGA map: " +
                             report.violations.front());
        } catch (const Error& e) {
            if (dynamic_cast<const ParseError*>(&e))
                throw;
            fail(kw, "morphism " + def.name + ": " + e.what());
        }
        defs_.morphisms.push_back(std::move(def));
    }

    const MorphismDef& known_morphism(const Token& t)
    {
        const MorphismDef* m = defs_.morphism(t.text);
        if (!m)
            fail(t, "unknown morphism '" + t.text + "'");
        return *m;
    }

    void parse_triple()
    {
        const Token& kw = next();
        TripleDef def;
        def.line = kw.line;
        def.name = expect_ident("triple name").text;
        if (defs_.triple(def.name))
            fail(kw, "triple " + def.name + " is already defined");
        expect_symbol("{");
        bool l = false, m = false, r = false;
        while (!is_symbol("}")) {
            const Token& slot = expect_ident("'left', 'middle' or 'right'");
            expect_symbol("=");
            const Token& alg = expect_ident("algebra name");
            known_algebra(alg);
            if (slot.text == "middle") {
                if (m)
                    fail(slot, "middle given twice");
                m = true;
                def.middle = alg.text;
            } else if (slot.text == "left" || slot.text == "right") {
                bool& flag = slot.text == "left" ? l : r;
                if (flag)
                    fail(slot, slot.text + " given twice");
                flag = true;
                expect_keyword("via");
                const Token& mor = expect_ident("morphism name");
                known_morphism(mor);
                (slot.text == "left" ? def.left : def.right) = alg.text;
                (slot.text == "left" ? def.f : def.g) = mor.text;
            } else {
                fail(slot, "expected 'left', 'middle' or 'right', got " + describe(slot));
            }
            expect_symbol(";");
        }
        const Token& close = next();
        if (!l || !m || !r)
            fail(close, "triple " + def.name + " needs left, middle and right");
        for (auto [mor, outer, side] : {std::tuple{def.f, def.left, "left"},
                                         std::tuple{def.g, def.right, "right"}}) {
            const auto* md = defs_.morphism(mor);
            if (md->source != def.middle || md->target != outer)
                fail(kw, "triple " + def.name + ": " + side + " map " + mor + " goes " +
                             md->source + " -> " + md->target + ", expected " + def.middle +
                             " -> " + outer);
        }
        defs_.triples.push_back(std::move(def));
    }

    void parse_ladder()
    {
        const Token& kw = next();
        LadderDef def;
        def.line = kw.line;
        def.name = expect_ident("ladder name").text;
        if (defs_.ladder(def.name))
            fail(kw, "ladder " + def.name + " is already defined");
        expect_symbol(":");
        const Token& s = expect_ident("source triple");
        expect_symbol("->");
        const Token& t = expect_ident("target triple");
        const TripleDef* src = defs_.triple(s.text);
        const TripleDef* tgt = defs_.triple(t.text);
        if (!src)
            fail(s, "unknown triple '" + s.text + "'");
        if (!tgt)
            fail(t, "unknown triple '" + t.text + "'");
        def.source = s.text;
        def.target = t.text;
        expect_symbol("{");
        while (!is_symbol("}")) {
            const Token& slot = expect_ident("'left', 'middle' or 'right'");
            expect_symbol("=");
            const Token& mor = expect_ident("morphism name");
            const auto& md = known_morphism(mor);
            std::string* field = nullptr;
            std::string from, to;
            if (slot.text == "left") {
                field = &def.left;
                from = src->left;
                to = tgt->left;
            } else if (slot.text == "middle") {
                field = &def.middle;
                from = src->middle;
                to = tgt->middle;
            } else if (slot.text == "right") {
                field = &def.right;
                from = src->right;
                to = tgt->right;
            } else {
                fail(slot, "expected 'left', 'middle' or 'right', got " + describe(slot));
            }
            if (!field->empty())
                fail(slot, slot.text + " given twice");
            if (md.source != from || md.target != to)
                fail(mor, "ladder " + def.name + ": " + mor.text + " goes " + md.source +
                              " -> " + md.target + ", expected " + from + " -> " + to);
            *field = mor.text;
            expect_symbol(";");
        }
        const Token& close = next();
        if (def.left.empty() || def.middle.empty() || def.right.empty())
            fail(close, "ladder " + def.name + " needs left, middle and right");
        defs_.ladders.push_back(std::move(def));
    }
};

std::string render_term(const Term& t, const std::vector<Generator>& gens, bool first)
{
    std::ostringstream os;
    Rational mag = abs(t.coeff);
    if (sgn(t.coeff) < 0)
        os << (first ? "-" : " - ");
    else if (!first)
        os << " + ";
    bool need_space = false;
    if (mag != 1 || t.factors.empty()) {
        os << to_string(mag);
        need_space = true;
    }
    for (const auto& [g, e] : t.factors) {
        if (need_space)
            os << ' ';
        os << gens.at(g).name;
        if (e != 1)
            os << '^' << e;
        need_space = true;
    }
    return os.str();
}

} // namespace

const AlgebraDef* Definitions::algebra(std::string_view name) const
{
    return find_named(algebras, name);
}
const MorphismDef* Definitions::morphism(std::string_view name) const
{
    return find_named(morphisms, name);
}
const TripleDef* Definitions::triple(std::string_view name) const
{
    return find_named(triples, name);
}
const LadderDef* Definitions::ladder(std::string_view name) const
{
    return find_named(ladders, name);
}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            message),
      line_(line), column_(column), message_(message)
{
}

Definitions parse_input(std::string_view text, int truncation)
{
    return Parser(text, truncation).run();
}

std::string render(const RawPolynomial& p, const std::vector<Generator>& generators)
{
    if (p.empty())
        return "0";
    std::string out;
    for (std::size_t k = 0; k < p.size(); ++k)
        out += render_term(p[k], generators, k == 0);
    return out;
}

std::string render(const Definitions& defs)
{
    std::ostringstream os;
    for (const auto& a : defs.algebras) {
        const auto& pres = a.presentation;
        os << "algebra " << a.name << " {\n";
        for (const auto& g : pres.generators)
            os << "    generator " << g.name << " deg " << g.degree << ";\n";
        for (std::size_t i = 0; i < pres.generators.size(); ++i)
            if (!pres.differentials[i].empty())
                os << "    d " << pres.generators[i].name << " = "
                   << render(pres.differentials[i], pres.generators) << ";\n";
        for (const auto& r : pres.relations)
            os << "    relation " << render(r, pres.generators) << ";\n";
        os << "}\n\n";
    }
    for (const auto& m : defs.morphisms) {
        const auto& tgens = defs.algebra(m.target)->presentation.generators;
        os << "morphism " << m.name << " : " << m.source << " -> " << m.target << " {\n";
        for (const auto& [g, p] : m.images)
            os << "    " << g << " -> " << render(p, tgens) << ";\n";
        os << "}\n\n";
    }
    for (const auto& t : defs.triples)
        os << "triple " << t.name << " { left = " << t.left << " via " << t.f
           << "; middle = " << t.middle << "; right = " << t.right << " via " << t.g << "; }\n";
    if (!defs.triples.empty())
        os << "\n";
    for (const auto& l : defs.ladders)
        os << "ladder " << l.name << " : " << l.source << " -> " << l.target << " { left = "
           << l.left << "; middle = " << l.middle << "; right = " << l.right << "; }\n";
    return os.str();
}

Workspace::Workspace(const Definitions& defs, int truncation) : defs_(defs), truncation_(truncation)
{
}

AlgebraPtr Workspace::algebra(const std::string& name)
{
    if (auto it = algebras_.find(name); it != algebras_.end())
        return it->second;
    const AlgebraDef* def = defs_.algebra(name);
    if (!def)
        throw Error("unknown algebra '" + name + "'");
    auto a = std::make_shared<const GradedAlgebra>(build_free(def->presentation, truncation_, name));
    algebras_[name] = a;
    return a;
}

AlgebraMorphism Workspace::morphism(const std::string& name)
{
    const MorphismDef* def = defs_.morphism(name);
    if (!def)
        throw Error("unknown morphism '" + name + "'");
    auto src = algebra(def->source);
    auto tgt = algebra(def->target);
    const auto& sgens = defs_.algebra(def->source)->presentation.generators;
    std::vector<Element> images;
    for (const auto& g : sgens) {
        Element img{g.degree, {}};
        for (const auto& [gname, poly] : def->images)
            if (gname == g.name)
                img = tgt->evaluate(poly, g.degree);
        images.push_back(std::move(img));
    }
    return AlgebraMorphism::from_generator_images(name, src, tgt, images);
}

Triple Workspace::triple(const std::string& name)
{
    const TripleDef* def = defs_.triple(name);
    if (!def)
        throw Error("unknown triple '" + name + "'");
    return Triple(morphism(def->f), morphism(def->g));
}

Ladder Workspace::ladder(const std::string& name)
{
    const LadderDef* def = defs_.ladder(name);
    if (!def)
        throw Error("unknown ladder '" + name + "'");
    return Ladder{morphism(def->left), morphism(def->middle), morphism(def->right)};
}

} // namespace chenbar
