#include "chenbar/em_tor.hpp"
#include "chenbar/formality.hpp"
#include "chenbar/shuffle.hpp"
#include "chenbar/text_format.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace chenbar;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_not_free = 2;
constexpr int exit_inconsistent = 3;
constexpr int exit_input = 4;

struct Options {
    std::string input;
    bool json = false;
    int max_degree = default_truncation;
    std::string algebra;
    std::vector<std::string> triples;
    std::string ladder;
    bool check_cdga = false;
    bool oracle = false;
    std::string certificate;
};

std::string read_input(const std::string& path)
{
    std::ostringstream os;
    if (path == "-") {
        os << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in)
            throw Error("cannot open input file " + path);
        os << in.rdbuf();
    }
    return os.str();
}

// Plain-text table with left-aligned columns.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& os) const
    {
        std::vector<std::size_t> width;
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (width.size() <= i)
                    width.push_back(0);
                width[i] = std::max(width[i], r[i].size());
            }
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                line += r[i];
                if (i + 1 < r.size())
                    line += std::string(width[i] - r[i].size() + 2, ' ');
            }
            os << line << "\n";
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string combination(const SparseVector& v, const std::vector<std::string>& labels)
{
    if (v.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : v) {
        Rational mag = abs(c);
        if (sgn(c) < 0)
            out += first ? "-" : " - ";
        else if (!first)
            out += " + ";
        if (mag != 1)
            out += to_string(mag) + " ";
        out += labels.at(i);
        first = false;
    }
    return out;
}

void emit(const json& doc)
{
    std::cout << doc.dump(2) << "\n";
}

int run_cohomology(const Definitions& defs, const Options& opt)
{
    Workspace ws(defs, opt.max_degree);
    auto a = ws.algebra(opt.algebra);
    auto h = cohomology_algebra(*a);
    const auto& ha = *h.algebra;

    json degrees = json::array();
    Table table({"total_degree", "dim", "basis"});
    for (int n = 0; n <= h.valid_up_to; ++n) {
        std::vector<std::string> basis;
        for (std::size_t j = 0; j < ha.dim(n); ++j)
            basis.push_back(ha.label(ha.global_index(n, j)));
        std::string joined;
        for (const auto& b : basis)
            joined += (joined.empty() ? "" : " ") + b;
        table.add({std::to_string(n), std::to_string(ha.dim(n)), joined});
        degrees.push_back({{"total_degree", n}, {"dim", ha.dim(n)}, {"basis", basis}});
    }

    json products = json::array();
    Table ptable({"left", "right", "product"});
    for (std::size_t x = 0; x < ha.size(); ++x)
        for (std::size_t y = x; y < ha.size(); ++y) {
            int p = ha.degree_of(x), q = ha.degree_of(y);
            if (p == 0 || q == 0 || p + q > h.valid_up_to)
                continue;
            std::string prod = ha.format(Element{p + q, ha.product(x, y)});
            ptable.add({ha.label(x), ha.label(y), prod});
            products.push_back({{"left", ha.label(x)}, {"right", ha.label(y)}, {"product", prod}});
        }

    if (opt.json) {
        emit({{"algebra", opt.algebra},
              {"valid_up_to", h.valid_up_to},
              {"degrees", degrees},
              {"products", products}});
    } else {
        std::cout << "cohomology of " << opt.algebra << ", valid up to degree " << h.valid_up_to
                  << "\n\n";
        table.print(std::cout);
        std::cout << "\nproducts\n";
        ptable.print(std::cout);
    }
    return exit_ok;
}

// Triples are built one degree above the window: the middle algebra must
// cover every word and product of total degree N.
int run_bar(const Definitions& defs, const Options& opt)
{
    Workspace ws(defs, opt.max_degree + 1);
    BarWindow window(ws.triple(opt.triples.front()), opt.max_degree);

    json cells = json::array();
    Table table({"total_degree", "bar_degree", "dim"});
    std::map<std::pair<int, int>, std::size_t> by_total;
    for (const auto& [key, count] : window.word_counts())
        by_total[{key.second, key.first}] = count;
    for (const auto& [key, count] : by_total) {
        table.add({std::to_string(key.first), std::to_string(key.second), std::to_string(count)});
        cells.push_back({{"total_degree", key.first}, {"bar_degree", key.second}, {"dim", count}});
    }

    int code = exit_ok;
    json doc = {{"triple", opt.triples.front()}, {"valid_up_to", opt.max_degree}, {"cells", cells}};
    std::optional<CdgaReport> report;
    if (opt.check_cdga) {
        report = check_cdga_structure(window);
        doc["check_cdga"] = {{"ok", report->ok()},
                             {"checks", report->checks},
                             {"failures", report->failures}};
        if (!report->ok())
            code = exit_mismatch;
    }

    if (opt.json) {
        emit(doc);
    } else {
        std::cout << "bar window of " << opt.triples.front() << ", total degrees 0.."
                  << opt.max_degree << "\n\n";
        table.print(std::cout);
        if (report) {
            std::cout << "\ncdga structure: " << (report->ok() ? "ok" : "FAILED") << " ("
                      << report->checks << " checks)\n";
            for (const auto& f : report->failures)
                std::cout << "  " << f << "\n";
        }
    }
    return code;
}

int run_tor(const Definitions& defs, const Options& opt)
{
    Workspace ws(defs, opt.max_degree + 1);
    Triple t = ws.triple(opt.triples.front());
    TorResult tor = t.has_zero_differentials()
                        ? tor_algebra(t, opt.max_degree)
                        : bar_cohomology(BarWindow(t, opt.max_degree));

    json degrees = json::array();
    Table table({"total_degree", "dim"});
    for (int n = 0; n <= tor.valid_up_to; ++n) {
        table.add({std::to_string(n), std::to_string(tor.total_dims[n])});
        degrees.push_back({{"total_degree", n}, {"dim", tor.total_dims[n]}});
    }

    json cells = json::array();
    Table btable({"total_degree", "bar_degree", "dim"});
    std::map<std::pair<int, int>, std::size_t> by_total;
    for (const auto& [bideg, dim] : tor.bigraded_dims)
        by_total[{bideg.first + bideg.second, bideg.first}] = dim;
    for (const auto& [key, dim] : by_total) {
        auto [total, bar] = key;
        if (total > tor.valid_up_to || dim == 0)
            continue;
        btable.add({std::to_string(total), std::to_string(bar), std::to_string(dim)});
        cells.push_back({{"total_degree", total}, {"bar_degree", bar}, {"dim", dim}});
    }

    json products = json::array();
    Table ptable({"left", "right", "product"});
    for (const auto& pr : tor.products) {
        if (!pr.value || pr.left_degree == 0 || pr.right_degree == 0)
            continue;
        std::vector<std::string> labels;
        for (const auto& c : tor.classes[pr.left_degree + pr.right_degree])
            labels.push_back(c.label);
        const auto& l = tor.classes[pr.left_degree][pr.left].label;
        const auto& r = tor.classes[pr.right_degree][pr.right].label;
        std::string prod = combination(*pr.value, labels);
        ptable.add({l, r, prod});
        products.push_back({{"left", l}, {"right", r}, {"product", prod}});
    }

    json doc = {{"triple", opt.triples.front()},
                {"valid_up_to", tor.valid_up_to},
                {"bigraded", tor.bigraded},
                {"degrees", degrees},
                {"cells", cells},
                {"products", products}};

    int code = exit_ok;
    std::optional<OracleComparison> cmp;
    if (opt.oracle) {
        cmp = compare_with_oracle(tor, koszul_tor_oracle(t, opt.max_degree));
        doc["oracle"] = {{"agree", cmp->agree}, {"mismatches", cmp->mismatches}};
        if (!cmp->agree)
            code = exit_mismatch;
    }

    if (opt.json) {
        emit(doc);
    } else {
        std::cout << "Tor of " << opt.triples.front() << ", valid up to degree "
                  << tor.valid_up_to << "\n\n";
        table.print(std::cout);
        if (tor.bigraded) {
            std::cout << "\nbigraded\n";
            btable.print(std::cout);
        }
        std::cout << "\nproducts\n";
        ptable.print(std::cout);
        if (cmp) {
            std::cout << "\noracle: " << (cmp->agree ? "agree" : "MISMATCH") << "\n";
            for (const auto& m : cmp->mismatches)
                std::cout << "  " << m << "\n";
        }
    }
    return code;
}

int run_formality(const Definitions& defs, const Options& opt)
{
    Workspace ws(defs, opt.max_degree + 1);
    Triple t = ws.triple(opt.triples.front());
    try {
        auto cert = formality_certificate(t, opt.max_degree, opt.triples.front());
        std::string text = render_certificate(cert);
        std::ofstream out(opt.certificate, std::ios::binary);
        if (!out)
            throw Error("cannot write certificate to " + opt.certificate);
        out << text;
        if (opt.json)
            emit({{"triple", cert.triple},
                  {"valid_up_to", cert.valid_up_to},
                  {"verdict", "issued"},
                  {"certificate", opt.certificate}});
        else
            std::cout << "certificate issued for " << cert.triple << " (valid up to degree "
                      << cert.valid_up_to << "), written to " << opt.certificate << "\n";
        return exit_ok;
    } catch (const NotFree& e) {
        if (opt.json)
            emit({{"triple", opt.triples.front()},
                  {"valid_up_to", opt.max_degree - 1},
                  {"verdict", "inapplicable"},
                  {"witness", e.result().witness ? e.result().witness->describe() : ""}});
        else
            std::cout << e.what() << "\n";
        return exit_not_free;
    } catch (const CertificateInconsistent& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return exit_inconsistent;
    }
}

int run_compare(const Definitions& defs, const Options& opt)
{
    if (opt.triples.size() != 2)
        throw Error("compare needs exactly two --triple options");
    Workspace ws(defs, opt.max_degree + 1);
    BarWindow w1(ws.triple(opt.triples[0]), opt.max_degree);
    BarWindow w2(ws.triple(opt.triples[1]), opt.max_degree);
    std::optional<Ladder> ladder;
    if (!opt.ladder.empty()) {
        const LadderDef* def = defs.ladder(opt.ladder);
        if (!def)
            throw Error("unknown ladder '" + opt.ladder + "'");
        if (def->source != opt.triples[0] || def->target != opt.triples[1])
            throw Error("ladder " + opt.ladder + " goes " + def->source + " -> " + def->target +
                        ", not " + opt.triples[0] + " -> " + opt.triples[1]);
        ladder = ws.ladder(opt.ladder);
    }
    auto cmp = compare_windows(w1, w2, ladder ? &*ladder : nullptr);

    std::vector<std::string> header{"total_degree", "dim " + opt.triples[0],
                                    "dim " + opt.triples[1], "status"};
    if (ladder)
        header.push_back("induced_iso");
    Table table(header);
    json rows = json::array();
    for (const auto& r : cmp.rows) {
        std::vector<std::string> row{std::to_string(r.degree), std::to_string(r.dim1),
                                     std::to_string(r.dim2), r.dim1 == r.dim2 ? "=" : "differs"};
        json jr = {{"total_degree", r.degree}, {"dim", {r.dim1, r.dim2}}};
        if (r.induced_iso) {
            row.push_back(*r.induced_iso ? "yes" : "no");
            jr["induced_iso"] = *r.induced_iso;
        }
        table.add(row);
        rows.push_back(jr);
    }

    if (opt.json) {
        json doc = {{"triples", opt.triples},
                    {"valid_up_to", opt.max_degree - 1},
                    {"dims_equal", cmp.dims_equal},
                    {"rows", rows}};
        if (cmp.induced_iso)
            doc["induced_iso"] = *cmp.induced_iso;
        emit(doc);
    } else {
        std::cout << "compare " << opt.triples[0] << " with " << opt.triples[1]
                  << ", valid up to degree " << opt.max_degree - 1 << "\n\n";
        table.print(std::cout);
        std::cout << "\ndimensions " << (cmp.dims_equal ? "agree" : "differ");
        if (cmp.induced_iso)
            std::cout << "; ladder induces " << (*cmp.induced_iso ? "an isomorphism" : "no isomorphism");
        std::cout << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-sided bar constructions, Eilenberg-Moore Tor and formality of pull-backs"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", opt.input, "definitions file, or - for stdin")->required();
        sub->add_option("--max-degree", opt.max_degree, "truncation degree N")
            ->capture_default_str()
            ->check(CLI::Range(1, 1000));
        sub->add_flag("--json", opt.json, "machine-readable output");
    };

    auto* coh = app.add_subcommand("cohomology", "cohomology algebra of a CDGA");
    common(coh);
    coh->add_option("--algebra", opt.algebra)->required();

    auto* bar = app.add_subcommand("bar", "word counts of the bar window");
    common(bar);
    bar->add_option("--triple", opt.triples)->required()->expected(1);
    bar->add_flag("--check-cdga", opt.check_cdga, "verify the CDGA laws on the window");

    auto* tor = app.add_subcommand("tor", "bar cohomology with its product");
    common(tor);
    tor->add_option("--triple", opt.triples)->required()->expected(1);
    tor->add_flag("--oracle", opt.oracle, "cross-check against the Koszul complex");

    auto* form = app.add_subcommand("formality", "formality certificate for the pull-back");
    common(form);
    form->add_option("--triple", opt.triples)->required()->expected(1);
    form->add_option("--certificate", opt.certificate, "output path")->required();

    auto* cmp = app.add_subcommand("compare", "compare two bar windows");
    common(cmp);
    cmp->add_option("--triple", opt.triples)->required()->expected(2);
    cmp->add_option("--ladder", opt.ladder, "ladder from the first triple to the second");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_input;
    }

    try {
        Definitions defs = parse_input(read_input(opt.input));
        if (coh->parsed())
            return run_cohomology(defs, opt);
        if (bar->parsed())
            return run_bar(defs, opt);
        if (tor->parsed())
            return run_tor(defs, opt);
        if (form->parsed())
            return run_formality(defs, opt);
        return run_compare(defs, opt);
    } catch (const ParseError& e) {
        std::cerr << (opt.input == "-" ? "<stdin>" : opt.input) << ":" << e.line() << ":"
                  << e.column() << ": " << e.message() << "\n";
        return exit_input;
    } catch (const SignConsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return exit_inconsistent;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}
