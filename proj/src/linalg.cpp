#include "chenbar/linalg.hpp"

#include "chenbar/errors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace chenbar {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    if (s.empty())
        throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------- SparseVector

SparseVector::SparseVector(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& [i, c] : entries) {
        if (!entries_.empty() && entries_.back().first == i)
            entries_.back().second += c;
        else
            entries_.emplace_back(i, std::move(c));
    }
    std::erase_if(entries_, [](const Entry& e) { return is_zero(e.second); });
}

SparseVector SparseVector::unit(std::size_t i, Rational c)
{
    SparseVector v;
    if (!is_zero(c))
        v.entries_.emplace_back(i, std::move(c));
    return v;
}

Rational SparseVector::at(std::size_t i) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i)
        return it->second;
    return 0;
}

void SparseVector::add(std::size_t i, const Rational& c)
{
    if (is_zero(c))
        return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) {
        it->second += c;
        if (is_zero(it->second))
            entries_.erase(it);
    }
    else {
        entries_.insert(it, Entry{i, c});
    }
}

void SparseVector::axpy(const Rational& a, const SparseVector& x)
{
    if (is_zero(a) || x.empty())
        return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + x.entries_.size());
    auto k = entries_.begin();
    auto l = x.entries_.begin();
    while (k != entries_.end() && l != x.entries_.end()) {
        if (k->first < l->first)
            merged.push_back(std::move(*k++));
        else if (k->first > l->first) {
            merged.emplace_back(l->first, a * l->second);
            ++l;
        }
        else {
            Rational c = k->second + a * l->second;
            if (!is_zero(c))
                merged.emplace_back(k->first, std::move(c));
            ++k;
            ++l;
        }
    }
    for (; k != entries_.end(); ++k)
        merged.push_back(std::move(*k));
    for (; l != x.entries_.end(); ++l)
        merged.emplace_back(l->first, a * l->second);
    entries_ = std::move(merged);
}

SparseVector& SparseVector::operator*=(const Rational& a)
{
    if (is_zero(a))
        entries_.clear();
    for (auto& e : entries_)
        e.second *= a;
    return *this;
}

std::optional<std::size_t> SparseVector::leading_index() const
{
    if (entries_.empty())
        return std::nullopt;
    return entries_.front().first;
}

SparseVector operator+(SparseVector a, const SparseVector& b)
{
    a += b;
    return a;
}

SparseVector operator-(SparseVector a, const SparseVector& b)
{
    a -= b;
    return a;
}

SparseVector operator*(const Rational& c, SparseVector v)
{
    v *= c;
    return v;
}

// -------------------------------------------------------------- RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), columns_(cols)
{
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.columns_[i] = SparseVector::unit(i);
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows)
{
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, std::vector<SparseVector> columns)
{
    RationalMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        m.set_column(j, std::move(columns[j]));
    return m;
}

void RationalMatrix::set_column(std::size_t j, SparseVector v)
{
    if (j >= columns_.size() || v.bound() > rows_)
        throw std::out_of_range("matrix column out of bounds");
    columns_[j] = std::move(v);
}

void RationalMatrix::set(std::size_t i, std::size_t j, const Rational& value)
{
    if (i >= rows_ || j >= columns_.size())
        throw std::out_of_range("matrix entry out of bounds");
    auto& col = columns_[j];
    col.add(i, value - col.at(i));
}

SparseVector RationalMatrix::apply(const SparseVector& v) const
{
    if (v.bound() > cols())
        throw std::out_of_range("vector length exceeds matrix columns");
    SparseVector out;
    for (const auto& [j, c] : v)
        out.axpy(c, columns_[j]);
    return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const
{
    if (cols() != rhs.rows())
        throw std::invalid_argument("matrix product shape mismatch");
    RationalMatrix out(rows_, rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j)
        out.columns_[j] = apply(rhs.columns_[j]);
    return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols() != rhs.cols())
        throw std::invalid_argument("matrix sum shape mismatch");
    RationalMatrix out = *this;
    for (std::size_t j = 0; j < cols(); ++j)
        out.columns_[j] += rhs.columns_[j];
    return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols() != rhs.cols())
        throw std::invalid_argument("matrix difference shape mismatch");
    RationalMatrix out = *this;
    for (std::size_t j = 0; j < cols(); ++j)
        out.columns_[j] -= rhs.columns_[j];
    return out;
}

std::vector<SparseVector> RationalMatrix::row_vectors() const
{
    std::vector<std::vector<SparseVector::Entry>> rows(rows_);
    for (std::size_t j = 0; j < cols(); ++j)
        for (const auto& [i, c] : columns_[j])
            rows[i].emplace_back(j, c);
    std::vector<SparseVector> out;
    out.reserve(rows_);
    for (auto& r : rows)
        out.emplace_back(std::move(r));
    return out;
}

RationalMatrix RationalMatrix::transpose() const
{
    return from_columns(cols(), row_vectors());
}

RationalMatrix RationalMatrix::submatrix(const std::vector<std::size_t>& row_ids,
                                         const std::vector<std::size_t>& col_ids) const
{
    constexpr auto npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> row_slot(rows_, npos);
    for (std::size_t k = 0; k < row_ids.size(); ++k)
        row_slot.at(row_ids[k]) = k;
    RationalMatrix out(row_ids.size(), col_ids.size());
    for (std::size_t k = 0; k < col_ids.size(); ++k) {
        std::vector<SparseVector::Entry> entries;
        for (const auto& [i, c] : columns_.at(col_ids[k]))
            if (row_slot[i] != npos)
                entries.emplace_back(row_slot[i], c);
        out.columns_[k] = SparseVector(std::move(entries));
    }
    return out;
}

bool RationalMatrix::is_zero() const
{
    return std::all_of(columns_.begin(), columns_.end(),
                       [](const SparseVector& c) { return c.empty(); });
}

// ---------------------------------------------------------------- EchelonBasis

SparseVector EchelonBasis::reduce(SparseVector v) const
{
    if (rows_.empty())
        return v;
    // Rows are fully reduced, so clearing one pivot never touches another.
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto& [i, c] : v)
        if (rows_.count(i))
            hits.emplace_back(i, c);
    for (const auto& [p, c] : hits)
        v.axpy(-c, rows_.at(p));
    return v;
}

bool EchelonBasis::insert(SparseVector v)
{
    if (v.bound() > ambient_dim_)
        throw std::out_of_range("vector exceeds ambient dimension");
    v = reduce(std::move(v));
    if (v.empty())
        return false;
    std::size_t pivot = *v.leading_index();
    Rational lead = v.entries().front().second;
    v *= Rational(1) / lead;
    for (auto& [p, row] : rows_) {
        Rational c = row.at(pivot);
        if (!is_zero(c))
            row.axpy(-c, v);
    }
    rows_.emplace(pivot, std::move(v));
    return true;
}

std::vector<std::size_t> EchelonBasis::pivots() const
{
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (const auto& [p, row] : rows_)
        out.push_back(p);
    return out;
}

std::vector<std::size_t> EchelonBasis::free_columns() const
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < ambient_dim_; ++j)
        if (!rows_.count(j))
            out.push_back(j);
    return out;
}

namespace {

EchelonBasis row_echelon(const RationalMatrix& m)
{
    EchelonBasis rref(m.cols());
    for (auto& row : m.row_vectors())
        rref.insert(std::move(row));
    return rref;
}

std::vector<SparseVector> kernel_from(const EchelonBasis& rref)
{
    std::vector<SparseVector> basis;
    for (std::size_t j : rref.free_columns()) {
        SparseVector k = SparseVector::unit(j);
        for (const auto& [p, row] : rref.rows()) {
            Rational c = row.at(j);
            if (!is_zero(c))
                k.add(p, -c);
        }
        basis.push_back(std::move(k));
    }
    return basis;
}

} // namespace

RankKernel rank_and_kernel(const RationalMatrix& m)
{
    auto rref = row_echelon(m);
    return RankKernel{rref.rank(), kernel_from(rref)};
}

// -------------------------------------------------------------------- Quotient

Quotient::Quotient(const std::vector<SparseVector>& sub, std::size_t ambient_dim)
    : sub_(ambient_dim)
{
    for (const auto& v : sub) {
        if (v.bound() > ambient_dim)
            throw std::invalid_argument("subspace vector longer than ambient dimension");
        sub_.insert(v);
    }
    rep_columns_ = sub_.free_columns();
    column_slot_.assign(ambient_dim, std::numeric_limits<std::size_t>::max());
    for (std::size_t k = 0; k < rep_columns_.size(); ++k)
        column_slot_[rep_columns_[k]] = k;
}

std::vector<SparseVector> Quotient::representatives() const
{
    std::vector<SparseVector> reps;
    reps.reserve(rep_columns_.size());
    for (std::size_t j : rep_columns_)
        reps.push_back(SparseVector::unit(j));
    return reps;
}

SparseVector Quotient::project(const SparseVector& v) const
{
    if (v.bound() > ambient_dim())
        throw std::invalid_argument("vector longer than ambient dimension");
    std::vector<SparseVector::Entry> coords;
    for (auto& [j, c] : sub_.reduce(v))
        coords.emplace_back(column_slot_[j], c);
    return SparseVector(std::move(coords));
}

Quotient quotient_basis(const std::vector<SparseVector>& sub, std::size_t ambient_dim)
{
    return Quotient(sub, ambient_dim);
}

// ------------------------------------------------------------------ Cohomology

namespace {

struct CycleData {
    std::vector<SparseVector> kernel_basis;
    std::vector<std::size_t> cycle_columns;
};

CycleData cycles_of(const RationalMatrix& d_out)
{
    auto rref = row_echelon(d_out);
    return CycleData{kernel_from(rref), rref.free_columns()};
}

std::vector<SparseVector> restrict_to(const std::vector<SparseVector>& vs,
                                      const std::vector<std::size_t>& columns)
{
    std::vector<SparseVector> out;
    out.reserve(vs.size());
    for (const auto& v : vs) {
        std::vector<SparseVector::Entry> entries;
        for (std::size_t k = 0; k < columns.size(); ++k) {
            Rational c = v.at(columns[k]);
            if (!is_zero(c))
                entries.emplace_back(k, std::move(c));
        }
        out.emplace_back(std::move(entries));
    }
    return out;
}

void check_composable(const RationalMatrix& d_in, const RationalMatrix& d_out)
{
    if (d_in.rows() != d_out.cols())
        throw std::invalid_argument("cohomology_at: d_in codomain does not match d_out domain");
    if (!(d_out * d_in).is_zero())
        throw CompositionNonzero("cohomology_at: d_out * d_in != 0");
}

std::vector<SparseVector> columns_of(const RationalMatrix& m)
{
    std::vector<SparseVector> out;
    out.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        out.push_back(m.column(j));
    return out;
}

} // namespace

Cohomology::Cohomology(const RationalMatrix& d_in, const RationalMatrix& d_out)
    : ambient_dim_((check_composable(d_in, d_out), d_out.cols())),
      d_out_(d_out),
      kernel_basis_(),
      cycle_columns_(),
      classes_({}, 0)
{
    auto cycles = cycles_of(d_out);
    kernel_basis_ = std::move(cycles.kernel_basis);
    cycle_columns_ = std::move(cycles.cycle_columns);
    // Kernel vector k has a 1 at its own free column and 0 at the others, so the
    // coordinates of a cocycle on the kernel basis are its free-column entries.
    classes_ = Quotient(restrict_to(columns_of(d_in), cycle_columns_), cycle_columns_.size());
    for (std::size_t slot : classes_.rep_columns())
    {
        representatives_.push_back(kernel_basis_[slot]);
        representative_columns_.push_back(cycle_columns_[slot]);
    }
}

bool Cohomology::is_cocycle(const SparseVector& v) const
{
    return d_out_.apply(v).empty();
}

SparseVector Cohomology::cycle_coordinates(const SparseVector& z) const
{
    return restrict_to({z}, cycle_columns_).front();
}

SparseVector Cohomology::project(const SparseVector& cocycle) const
{
    if (!is_cocycle(cocycle))
        throw std::invalid_argument("Cohomology::project: argument is not a cocycle");
    return classes_.project(cycle_coordinates(cocycle));
}

Cohomology cohomology_at(const RationalMatrix& d_in, const RationalMatrix& d_out)
{
    return Cohomology(d_in, d_out);
}

} // namespace chenbar
