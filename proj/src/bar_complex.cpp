#include "chenbar/bar_complex.hpp"

#include "chenbar/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace chenbar {

namespace {

Rational sign_of(int exponent)
{
    return exponent % 2 == 0 ? Rational(1) : Rational(-1);
}

// Adds c * (element of `alg` in its degree) at one slot of a word.
template <typename Place>
void add_expanded(BarChain& out, const GradedAlgebra& alg, const Element& e, const Rational& c,
                  Place place)
{
    for (const auto& [j, cj] : e.coeffs)
        out.add(place(alg.global_index(e.degree, j)), c * cj);
}

Element must_multiply(const GradedAlgebra& alg, const Element& x, const Element& y)
{
    auto p = alg.multiply(x, y);
    if (!p)
        throw InsufficientTruncation(alg.name() + ": product of degree " +
                                     std::to_string(x.degree + y.degree) +
                                     " exceeds the truncation window");
    return *p;
}

Element must_differentiate(const GradedAlgebra& alg, const Element& x)
{
    if (x.degree >= alg.truncation())
        throw InsufficientTruncation(alg.name() + ": differential of degree " +
                                     std::to_string(x.degree) + " exceeds the truncation window");
    return alg.differential(x);
}

} // namespace

// -------------------------------------------------------------------- BarChain

Rational BarChain::coefficient(const BarWord& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void BarChain::add(const BarWord& w, const Rational& c)
{
    if (is_zero(c))
        return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second))
            terms_.erase(it);
    }
}

void BarChain::add(const BarChain& other, const Rational& scale)
{
    for (const auto& [w, c] : other.terms_)
        add(w, scale * c);
}

// ---------------------------------------------------------------------- Triple

Triple::Triple(AlgebraMorphism f, AlgebraMorphism g) : f_(std::move(f)), g_(std::move(g))
{
    if (f_.source() != g_.source() && f_.source()->dims() != g_.source()->dims())
        throw std::invalid_argument("triple: f and g must share their source algebra");
}

bool Triple::has_zero_differentials() const
{
    return left().has_zero_differential() && middle().has_zero_differential() &&
           right().has_zero_differential();
}

int Triple::total_degree(const BarWord& w) const
{
    int deg = left().degree_of(w.left) + right().degree_of(w.right);
    for (std::size_t b : w.middle)
        deg += middle().degree_of(b) - 1;
    return deg;
}

int Triple::tensor_degree(const BarWord& w) const
{
    return total_degree(w) + static_cast<int>(w.length());
}

std::string Triple::format(const BarWord& w) const
{
    std::string out = "(" + left().label(w.left) + ";";
    for (std::size_t i = 0; i < w.middle.size(); ++i)
        out += (i ? ", " : " ") + middle().label(w.middle[i]);
    out += (w.middle.empty() ? ";" : "; ") + right().label(w.right) + ")";
    return out;
}

std::string Triple::format(const BarChain& c) const
{
    if (c.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, q] : c) {
        Rational mag = abs(q);
        os << (sgn(q) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (mag != 1)
            os << to_string(mag) << " ";
        os << format(w);
        first = false;
    }
    return os.str();
}

void require_simply_connected_middle(const Triple& t)
{
    const auto& b = t.middle();
    if (b.dim(0) != 1 || (b.truncation() >= 1 && b.dim(1) != 0))
        throw MiddleAlgebraNotSimplyConnected(
            b.name() + ": the middle algebra needs B^0 = Q and B^1 = 0 (found dim B^1 = " +
            std::to_string(b.dim(1)) + ")");
}

std::vector<BarWord> enumerate_words(const Triple& t, int n)
{
    require_simply_connected_middle(t);
    if (n < 0)
        return {};
    if (t.middle().truncation() < n + 1 || t.left().truncation() < n || t.right().truncation() < n)
        throw InsufficientTruncation("words of total degree " + std::to_string(n) +
                                     " need the middle algebra through degree " +
                                     std::to_string(n + 1) + " and the outer ones through " +
                                     std::to_string(n));
    const auto& a = t.left();
    const auto& b = t.middle();
    const auto& c = t.right();

    std::vector<BarWord> out;
    BarWord cur;
    std::function<void(int)> fill_middle = [&](int remaining) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int deg = 2; deg - 1 <= remaining; ++deg)
            for (std::size_t j = 0; j < b.dim(deg); ++j) {
                cur.middle.push_back(b.global_index(deg, j));
                fill_middle(remaining - (deg - 1));
                cur.middle.pop_back();
            }
    };
    for (int da = 0; da <= n; ++da)
        for (std::size_t ia = 0; ia < a.dim(da); ++ia)
            for (int dc = 0; da + dc <= n; ++dc)
                for (std::size_t ic = 0; ic < c.dim(dc); ++ic) {
                    cur.left = a.global_index(da, ia);
                    cur.right = c.global_index(dc, ic);
                    fill_middle(n - da - dc);
                }
    std::sort(out.begin(), out.end());
    return out;
}

BarChain bar_d(const Triple& t, const BarWord& w)
{
    const auto& a = t.left();
    const auto& b = t.middle();
    const auto& c = t.right();
    BarChain out(t.total_degree(w) + 1);

    add_expanded(out, a, must_differentiate(a, a.basis_element(w.left)), 1, [&](std::size_t g) {
        BarWord x = w;
        x.left = g;
        return x;
    });

    // eps_i = |alpha| + |omega_1| + ... + |omega_i| - i
    int eps = a.degree_of(w.left);
    for (std::size_t i = 0; i < w.middle.size(); ++i) {
        auto dw = must_differentiate(b, b.basis_element(w.middle[i]));
        add_expanded(out, b, dw, sign_of(eps + 1), [&](std::size_t g) {
            BarWord x = w;
            x.middle[i] = g;
            return x;
        });
        eps += b.degree_of(w.middle[i]) - 1;
    }

    add_expanded(out, c, must_differentiate(c, c.basis_element(w.right)), sign_of(eps),
                 [&](std::size_t g) {
                     BarWord x = w;
                     x.right = g;
                     return x;
                 });
    return out;
}

BarChain bar_delta(const Triple& t, const BarWord& w)
{
    const auto& a = t.left();
    const auto& b = t.middle();
    const auto& c = t.right();
    BarChain out(t.total_degree(w) + 1);
    const std::size_t k = w.middle.size();
    if (k == 0)
        return out;

    std::vector<int> eps(k + 1);
    eps[0] = a.degree_of(w.left);
    for (std::size_t i = 1; i <= k; ++i)
        eps[i] = eps[i - 1] + b.degree_of(w.middle[i - 1]) - 1;

    auto dropped = [&](std::size_t i) {
        BarWord x = w;
        x.middle.erase(x.middle.begin() + static_cast<std::ptrdiff_t>(i));
        return x;
    };

    // alpha * f(omega_1), with sign -(-1)^{eps_0}
    auto left_prod = must_multiply(a, a.basis_element(w.left),
                                   t.f().apply(b.basis_element(w.middle.front())));
    add_expanded(out, a, left_prod, -sign_of(eps[0]), [&](std::size_t g) {
        BarWord x = dropped(0);
        x.left = g;
        return x;
    });

    // omega_i * omega_{i+1}, with sign -(-1)^{eps_i}
    for (std::size_t i = 1; i < k; ++i) {
        auto prod = must_multiply(b, b.basis_element(w.middle[i - 1]), b.basis_element(w.middle[i]));
        add_expanded(out, b, prod, -sign_of(eps[i]), [&](std::size_t g) {
            BarWord x = dropped(i);
            x.middle[i - 1] = g;
            return x;
        });
    }

    // g(omega_k) * beta, with sign -(-1)^{eps_{k-1} + 1}
    auto right_prod = must_multiply(c, t.g().apply(b.basis_element(w.middle.back())),
                                    c.basis_element(w.right));
    add_expanded(out, c, right_prod, -sign_of(eps[k - 1] + 1), [&](std::size_t g) {
        BarWord x = dropped(k - 1);
        x.right = g;
        return x;
    });
    return out;
}

// ------------------------------------------------------------------- BarWindow

BarWindow::BarWindow(Triple triple, int truncation)
    : triple_(std::move(triple)), truncation_(truncation)
{
    if (truncation_ < 0)
        throw std::invalid_argument("bar window: negative truncation");
    require_simply_connected_middle(triple_);
    for (int n = 0; n <= truncation_; ++n) {
        words_.push_back(enumerate_words(triple_, n));
        std::map<BarWord, std::size_t> idx;
        for (std::size_t i = 0; i < words_[n].size(); ++i)
            idx.emplace(words_[n][i], i);
        index_.push_back(std::move(idx));
    }

    for (int n = 0; n < truncation_; ++n) {
        std::vector<SparseVector> dcols, deltacols, totalcols;
        for (const auto& w : words_[n]) {
            auto dv = to_vector(bar_d(triple_, w));
            auto deltav = to_vector(bar_delta(triple_, w));
            totalcols.push_back(dv + deltav);
            dcols.push_back(std::move(dv));
            deltacols.push_back(std::move(deltav));
        }
        const std::size_t rows = words_[n + 1].size();
        d_.push_back(RationalMatrix::from_columns(rows, std::move(dcols)));
        delta_.push_back(RationalMatrix::from_columns(rows, std::move(deltacols)));
        total_.push_back(RationalMatrix::from_columns(rows, std::move(totalcols)));
    }

    for (int n = 0; n + 2 <= truncation_; ++n) {
        auto fail = [&](const std::string& what) {
            throw SignConsistencyError("bar window: " + what + " != 0 from total degree " +
                                       std::to_string(n));
        };
        if (!(d_[n + 1] * d_[n]).is_zero())
            fail("d^2");
        if (!(delta_[n + 1] * delta_[n]).is_zero())
            fail("delta^2");
        if (!(d_[n + 1] * delta_[n] + delta_[n + 1] * d_[n]).is_zero())
            fail("d delta + delta d");
        if (!(total_[n + 1] * total_[n]).is_zero())
            fail("D^2");
    }
}

std::optional<std::size_t> BarWindow::find(int n, const BarWord& w) const
{
    if (n < 0 || n > truncation_)
        return std::nullopt;
    auto it = index_[n].find(w);
    if (it == index_[n].end())
        return std::nullopt;
    return it->second;
}

std::size_t BarWindow::index(int n, const BarWord& w) const
{
    auto i = find(n, w);
    if (!i)
        throw std::out_of_range("word " + triple_.format(w) + " not in window degree " +
                                std::to_string(n));
    return *i;
}

SparseVector BarWindow::to_vector(const BarChain& c) const
{
    std::vector<SparseVector::Entry> entries;
    entries.reserve(c.size());
    for (const auto& [w, q] : c)
        entries.emplace_back(index(c.degree(), w), q);
    return SparseVector(std::move(entries));
}

BarChain BarWindow::to_chain(int n, const SparseVector& v) const
{
    BarChain out(n);
    for (const auto& [i, q] : v)
        out.add(words_.at(n).at(i), q);
    return out;
}

std::map<std::pair<int, int>, std::size_t> BarWindow::word_counts() const
{
    std::map<std::pair<int, int>, std::size_t> out;
    for (int n = 0; n <= truncation_; ++n)
        for (const auto& w : words_[n])
            ++out[{w.bar_degree(), n}];
    return out;
}

BarWindow build_window(const Triple& t, int truncation)
{
    return BarWindow(t, truncation);
}

// ----------------------------------------------------------------------- theta

ThetaTarget::ThetaTarget(const Triple& t, AlgebraMorphism u, AlgebraMorphism v)
    : u_(std::move(u)), v_(std::move(v))
{
    if (u_.target() != v_.target() && u_.target()->dims() != v_.target()->dims())
        throw std::invalid_argument("theta: u and v must share their target");
    if (u_.source()->dims() != t.left().dims() || v_.source()->dims() != t.right().dims())
        throw std::invalid_argument("theta: u and v must start at the outer algebras");
    if (compose(u_, t.f()) != compose(v_, t.g()))
        throw SquareNotCommuting("theta: u f != v g");
}

Element theta(const Triple& t, const ThetaTarget& target, const BarWord& w)
{
    const auto& alg = target.algebra();
    int deg = t.total_degree(w);
    if (!w.middle.empty())
        return alg.zero(deg);
    auto x = target.u().apply(t.left().basis_element(w.left));
    auto y = target.v().apply(t.right().basis_element(w.right));
    return must_multiply(alg, x, y);
}

Element theta(const Triple& t, const ThetaTarget& target, const BarChain& c)
{
    Element out = target.algebra().zero(c.degree());
    for (const auto& [w, q] : c)
        out.coeffs.axpy(q, theta(t, target, w).coeffs);
    return out;
}

Rational bar_augmentation(const Triple& t, const BarChain& c)
{
    if (c.degree() != 0)
        return 0;
    Rational out = 0;
    for (const auto& [w, q] : c)
        if (w.middle.empty())
            out += q * t.left().augmentation(t.left().basis_element(w.left)) *
                   t.right().augmentation(t.right().basis_element(w.right));
    return out;
}

// --------------------------------------------------------------------- ladders

BarChain apply_ladder(const Triple& target, const Ladder& ladder, const BarWord& w,
                      int total_degree)
{
    const auto& src_a = *ladder.left.source();
    const auto& src_b = *ladder.middle.source();
    const auto& src_c = *ladder.right.source();
    const auto& a2 = target.left();
    const auto& b2 = target.middle();
    const auto& c2 = target.right();

    // Multilinear expansion, one slot at a time.
    std::vector<std::pair<BarWord, Rational>> partial;
    auto left_img = ladder.left.apply(src_a.basis_element(w.left));
    for (const auto& [j, q] : left_img.coeffs)
        partial.push_back({BarWord{a2.global_index(left_img.degree, j), {}, 0}, q});
    for (std::size_t m : w.middle) {
        auto img = ladder.middle.apply(src_b.basis_element(m));
        std::vector<std::pair<BarWord, Rational>> next;
        for (const auto& [pw, pq] : partial)
            for (const auto& [j, q] : img.coeffs) {
                BarWord x = pw;
                x.middle.push_back(b2.global_index(img.degree, j));
                next.push_back({std::move(x), pq * q});
            }
        partial = std::move(next);
    }
    auto right_img = ladder.right.apply(src_c.basis_element(w.right));
    BarChain out(total_degree);
    for (const auto& [pw, pq] : partial)
        for (const auto& [j, q] : right_img.coeffs) {
            BarWord x = pw;
            x.right = c2.global_index(right_img.degree, j);
            out.add(x, pq * q);
        }
    return out;
}

BarChainMap induced_bar_map(const BarWindow& source, const BarWindow& target, const Ladder& ladder)
{
    if (source.truncation() != target.truncation())
        throw std::invalid_argument("induced_bar_map: windows must share the truncation degree");
    for (const auto* phi : {&ladder.left, &ladder.middle, &ladder.right}) {
        auto rep = check_morphism(*phi);
        if (!rep.ok())
            throw InvariantViolation("ladder map " + phi->name() + " rejected: " +
                                     rep.violations.front());
    }
    const auto& t1 = source.triple();
    const auto& t2 = target.triple();
    if (ladder.left.source()->dims() != t1.left().dims() ||
        ladder.middle.source()->dims() != t1.middle().dims() ||
        ladder.right.source()->dims() != t1.right().dims() ||
        ladder.left.target()->dims() != t2.left().dims() ||
        ladder.middle.target()->dims() != t2.middle().dims() ||
        ladder.right.target()->dims() != t2.right().dims())
        throw std::invalid_argument("induced_bar_map: ladder does not connect the two triples");
    if (compose(ladder.left, t1.f()) != compose(t2.f(), ladder.middle))
        throw LadderNotCommuting("ladder: left square does not commute");
    if (compose(ladder.right, t1.g()) != compose(t2.g(), ladder.middle))
        throw LadderNotCommuting("ladder: right square does not commute");

    BarChainMap out;
    for (int n = 0; n <= source.truncation(); ++n) {
        std::vector<SparseVector> cols;
        for (const auto& w : source.words(n))
            cols.push_back(target.to_vector(apply_ladder(t2, ladder, w, n)));
        out.maps.push_back(RationalMatrix::from_columns(target.words(n).size(), std::move(cols)));
    }
    for (int n = 0; n < source.truncation(); ++n)
        if (target.D(n) * out.maps[n] != out.maps[n + 1] * source.D(n))
            throw LadderNotCommuting("induced map does not commute with D at total degree " +
                                     std::to_string(n));
    return out;
}

} // namespace chenbar
