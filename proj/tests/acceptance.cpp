// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
// exact; the only tolerance is the wall-clock budget for window construction.

#include "chenbar/em_tor.hpp"
#include "chenbar/formality.hpp"
#include "chenbar/shuffle.hpp"
#include "chenbar/text_format.hpp"

#include "corpus.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace chenbar;
using corpus::term;

namespace {

constexpr double window_budget_seconds = 10.0;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass)
            detail = why;
        pass = false;
    }
    void require(bool ok, const std::string& why)
    {
        if (!ok)
            fail(why);
    }
};

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (auto x : v)
        s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

std::vector<std::size_t> head(const std::vector<std::size_t>& v, std::size_t n)
{
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

TorResult tor_of(const Triple& t, int n)
{
    return t.has_zero_differentials() ? tor_algebra(t, n) : bar_cohomology(BarWindow(t, n));
}

Outcome sign_consistency()
{
    Outcome out;
    const int n = 12;
    double slowest = 0;
    for (const auto& nt : corpus::triples(n + 1)) {
        auto start = std::chrono::steady_clock::now();
        BarWindow w(nt.triple, n); // throws SignConsistencyError on failure
        for (int k = 0; k + 1 < n; ++k) {
            out.require((w.d(k + 1) * w.d(k)).is_zero(), nt.name + ": d^2 != 0");
            out.require((w.delta(k + 1) * w.delta(k)).is_zero(), nt.name + ": delta^2 != 0");
            out.require((w.d(k + 1) * w.delta(k) + w.delta(k + 1) * w.d(k)).is_zero(),
                        nt.name + ": d delta + delta d != 0");
            out.require((w.D(k + 1) * w.D(k)).is_zero(), nt.name + ": D^2 != 0");
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        slowest = std::max(slowest, secs);
        out.require(secs < window_budget_seconds, nt.name + " took " + std::to_string(secs) + " s");
    }
    if (out.pass) {
        std::ostringstream os;
        os << corpus::triples(2).size() << " triples at N=12, slowest " << std::fixed
           << std::setprecision(3) << slowest << " s";
        out.detail = os.str();
    }
    return out;
}

Outcome cdga_structure()
{
    Outcome out;
    std::size_t checks = 0;
    for (const auto& nt : corpus::triples(11)) {
        auto rep = check_cdga_structure(BarWindow(nt.triple, 10));
        checks += rep.checks;
        out.require(rep.ok(), nt.name + ": " + (rep.ok() ? "" : rep.failures.front()));
    }
    if (out.pass)
        out.detail = std::to_string(checks) + " exact checks at N=10, empty reports";
    return out;
}

Outcome loop_space()
{
    Outcome out;
    auto q = corpus::ground(13);
    Triple t = corpus::loop_triple(corpus::s3(13), q);
    auto tor = tor_algebra(t, 12);
    std::vector<std::size_t> expect{1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0};
    out.require(tor.total_dims == expect, "dims " + join(tor.total_dims));
    auto p = tor.product(2, 0, 2, 0);
    out.require(p && p->value && tor.classes[4].size() == 1 && *p->value == SparseVector::unit(0, 2),
                "u*u is not 2 times the degree-4 class");
    auto cmp = compare_with_oracle(tor, koszul_tor_oracle(t, 12));
    out.require(cmp.agree, cmp.agree ? "" : "oracle: " + cmp.mismatches.front());
    if (out.pass)
        out.detail = "dims " + join(tor.total_dims) + ", u*u = 2 u_2, Koszul oracle agrees";
    return out;
}

Outcome homogeneous_space()
{
    Outcome out;
    auto q = corpus::ground(11);
    auto c = corpus::qc(11);
    auto t = corpus::qt(11);
    Triple tr(corpus::aug(c, q), corpus::square(c, t));
    auto tor = tor_algebra(tr, 10);
    std::vector<std::size_t> expect{1, 0, 1, 0, 0, 0, 0, 0, 0, 0};
    out.require(tor.total_dims == expect, "dims " + join(tor.total_dims));
    auto p = tor.product(2, 0, 2, 0);
    out.require(p && p->value && p->value->empty(), "degree-2 class does not square to zero");
    auto cmp = compare_with_oracle(tor, koszul_tor_oracle(tr, 10));
    out.require(cmp.agree, cmp.agree ? "" : "oracle: " + cmp.mismatches.front());
    if (out.pass)
        out.detail = "dims " + join(tor.total_dims) + ", square zero, Koszul oracle agrees";
    return out;
}

Outcome quasi_iso_invariance()
{
    Outcome out;
    auto q = corpus::ground(11);
    auto ms2 = corpus::ms2(11);
    auto hs2 = corpus::hs2(11);
    BarWindow wm(corpus::loop_triple(ms2, q), 10);
    BarWindow wh(corpus::loop_triple(hs2, q), 10);
    auto collapse = corpus::map_gens("collapse", ms2, hs2, {{term(1, {{0, 1}})}, {}});
    Ladder ladder{AlgebraMorphism::identity(q), collapse, AlgebraMorphism::identity(q)};
    auto cmp = compare_windows(wm, wh, &ladder);
    out.require(cmp.dims_equal, "dimensions differ");
    out.require(cmp.rows.size() == 10, "expected degrees 0..9");
    for (const auto& r : cmp.rows)
        out.require(r.dim1 == 1 && r.dim2 == 1, "degree " + std::to_string(r.degree) + " is not 1");
    out.require(cmp.induced_iso.value_or(false), "ladder does not induce an isomorphism");
    if (out.pass)
        out.detail = "dims 1 in degrees 0..9 on both sides, induced isomorphism";
    return out;
}

Outcome formality_criterion()
{
    Outcome out;
    const int n = 12;
    auto q = corpus::ground(n + 1);
    auto c = corpus::qc(n + 1);
    auto t = corpus::qt(n + 1);
    auto e = corpus::bundle(n + 1);
    auto sq = corpus::square(c, t);
    auto inc = corpus::map_gens("incl", c, e, {{term(1, {{0, 1}})}});
    auto eps = corpus::aug(c, q);

    for (auto [name, tr] : {std::pair{std::string("(Q,Qc,Qt)"), Triple(eps, sq)},
                            std::pair{std::string("(Q,Qc,E)"), Triple(eps, inc)},
                            std::pair{std::string("(Qt,Qc,E)"), Triple(sq, inc)}}) {
        try {
            auto cert = formality_certificate(tr, n, name);
            out.require(cert.positive_vanishing, name + ": positive vanishing false");
            out.require(check_positive_vanishing(tor_algebra(tr, n)), name + ": vanishing");
        } catch (const Error& ex) {
            out.fail(name + ": " + ex.what());
        }
    }
    try {
        formality_certificate(Triple(eps, eps), n, "(Q,Qc,Q)");
        out.fail("(Q,Qc,Q): certificate issued");
    } catch (const NotFree& ex) {
        auto w = ex.result().witness;
        out.require(w && w->describe() == "c*1 = 0 in degree 4",
                    "(Q,Qc,Q): witness " + (w ? w->describe() : std::string("missing")));
    }
    if (out.pass)
        out.detail = "3 certificates issued, NotFree on (Q,Qc,Q) with witness c*1 = 0";
    return out;
}

Outcome theta_contract()
{
    Outcome out;
    std::size_t checked = 0;
    for (const auto& nt : corpus::triples(11)) {
        if (!nt.target)
            continue;
        const auto& t = nt.triple;
        const auto& target = *nt.target;
        const auto& tgt = target.algebra();
        BarWindow w(t, 10);
        WindowProduct prod(w);
        for (int n = 0; n <= 10; ++n)
            for (std::size_t i = 0; i < w.words(n).size(); ++i) {
                const auto& word = w.words(n)[i];
                auto th = theta(t, target, word);
                if (n < 10) {
                    auto dw = w.to_chain(n + 1, w.D(n).apply(SparseVector::unit(i)));
                    out.require(theta(t, target, dw) == tgt.differential(th),
                                nt.name + ": theta D != d theta on " + t.format(word));
                }
                if (n > 0) {
                    BarChain ch(n);
                    ch.add(word, 1);
                    out.require(bar_augmentation(t, ch) == 0,
                                nt.name + ": augmentation nonzero on " + t.format(word));
                }
                for (int m = 0; n + m <= 10; ++m)
                    for (std::size_t j = 0; j < w.words(m).size(); ++j) {
                        auto lhs = theta(t, target, w.to_chain(n + m, prod.words(n, i, m, j)));
                        auto rhs = tgt.multiply(th, theta(t, target, w.words(m)[j]));
                        out.require(rhs && lhs == *rhs, nt.name + ": theta not multiplicative");
                        ++checked;
                    }
            }
    }
    if (out.pass)
        out.detail = std::to_string(checked) + " product pairs at N=10, chain map, augmentation";
    return out;
}

Outcome vanishing_line()
{
    Outcome out;
    const int n = 12;
    std::size_t cells = 0;
    for (const auto& nt : corpus::triples(n + 1)) {
        auto tor = tor_of(nt.triple, n);
        if (tor.bigraded) {
            for (const auto& [bideg, dim] : tor.bigraded_dims) {
                ++cells;
                if (bideg.second < -2 * bideg.first && dim != 0)
                    out.fail(nt.name + ": Tor nonzero at (" + std::to_string(bideg.first) + ", " +
                             std::to_string(bideg.second) + ")");
            }
        } else {
            // D mixes the bigrading; the bound already holds for every word.
            BarWindow w(nt.triple, n);
            for (int k = 0; k <= n; ++k)
                for (const auto& word : w.words(k)) {
                    ++cells;
                    int m = nt.triple.tensor_degree(word);
                    out.require(m >= 2 * static_cast<int>(word.length()),
                                nt.name + ": word below the line " + nt.triple.format(word));
                }
        }
    }
    if (out.pass)
        out.detail = std::to_string(cells) + " bigraded cells and words at N=12";
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Dimension tables of every triple in a definitions file, as text.
std::string dimension_tables(const Definitions& defs, int n)
{
    Workspace ws(defs, n + 1);
    std::ostringstream os;
    std::vector<std::string> names;
    for (const auto& t : defs.triples)
        names.push_back(t.name);
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
        Triple t = ws.triple(name);
        BarWindow w(t, n);
        auto tor = bar_cohomology(w);
        os << name << " words";
        for (const auto& [key, count] : w.word_counts())
            os << " (" << key.first << "," << key.second << "):" << count;
        os << "\n" << name << " tor " << join(tor.total_dims);
        for (const auto& [b, d] : tor.bigraded_dims)
            os << " (" << b.first << "," << b.second << "):" << d;
        os << "\n";
    }
    return os.str();
}

// Certificate with basis labels removed, for comparisons across relabelling.
nlohmann::json label_free(const std::string& certificate)
{
    auto doc = nlohmann::json::parse(certificate);
    doc.erase("triple");
    for (auto& g : doc["free_module"]["generators"])
        g.erase("label");
    for (auto& d : doc["pullback_cohomology"]["degrees"])
        d.erase("basis");
    doc["pullback_cohomology"]["products"] = doc["pullback_cohomology"]["products"].size();
    return doc;
}

std::string certificate_for(const Definitions& defs, const std::string& triple, int n)
{
    Workspace ws(defs, n + 1);
    return render_certificate(formality_certificate(ws.triple(triple), n, triple));
}

// The corpus with generators renamed and reordered and definitions permuted.
std::string relabel(std::string text)
{
    auto replace_all = [&](const std::string& from, const std::string& to) {
        for (std::size_t pos = 0; (pos = text.find(from, pos)) != std::string::npos; pos += to.size())
            text.replace(pos, from.size(), to);
    };
    replace_all("algebra E {\n    generator c deg 4;\n    generator x deg 3;\n}",
                "algebra E {\n    generator z deg 3;\n    generator w deg 4;\n}");
    replace_all("incl : Qc -> E { c -> c; }", "incl : Qc -> E { c -> w; }");
    replace_all("algebra Qt { generator t deg 2; }", "algebra Qt { generator s deg 2; }");
    replace_all("c -> t^2;", "c -> s^2;");
    replace_all("generator e2 deg 2;\n    generator e3 deg 3;\n    d e3 = e2^2;",
                "generator a deg 2;\n    generator b deg 3;\n    d b = a^2;");
    replace_all("e2 -> x; e3 -> 0;", "a -> x; b -> 0;");
    return text;
}

Outcome determinism()
{
    Outcome out;
    const int n = 10;
    auto text = read_file(CHENBAR_DATA_DIR "/corpus.cdga");
    auto defs = parse_input(text);
    auto moved = parse_input(relabel(text));
    out.require(!(defs == moved), "relabelled corpus is identical to the original");

    auto tables = dimension_tables(defs, n);
    out.require(tables == dimension_tables(parse_input(text), n), "repeated tables differ");
    out.require(tables == dimension_tables(moved, n), "relabelled tables differ");

    for (const std::string triple : {"Sphere", "Bundle", "BundleT"}) {
        auto a = certificate_for(defs, triple, n);
        out.require(a == certificate_for(defs, triple, n), triple + ": certificate not byte-identical");
        out.require(label_free(a) == label_free(certificate_for(moved, triple, n)),
                    triple + ": relabelled certificate differs beyond labels");
    }
    if (out.pass)
        out.detail = "tables and certificates identical across runs and relabelling";
    return out;
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"sign consistency", sign_consistency},
        {"CDGA structure", cdga_structure},
        {"loop space of S^3", loop_space},
        {"homogeneous space SU(2)/T", homogeneous_space},
        {"quasi-isomorphism invariance", quasi_iso_invariance},
        {"formality criterion", formality_criterion},
        {"theta contract", theta_contract},
        {"vanishing line", vanishing_line},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first
                  << ": " << o.detail << " [" << std::fixed << std::setprecision(2) << secs
                  << " s]" << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}
