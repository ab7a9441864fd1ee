#pragma once

#include "chenbar/errors.hpp"
#include "chenbar/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace chenbar {

// Sparse vector over Q, entries sorted by index, zeros never stored.
class SparseVector {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVector() = default;
    // Sorts, merges duplicate indices and drops zeros.
    explicit SparseVector(std::vector<Entry> entries);

    static SparseVector unit(std::size_t i, Rational c = 1);

    bool empty() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    Rational at(std::size_t i) const;
    void add(std::size_t i, const Rational& c);
    // this += a * x
    void axpy(const Rational& a, const SparseVector& x);
    SparseVector& operator*=(const Rational& a);
    SparseVector& operator+=(const SparseVector& x)
    {
        axpy(1, x);
        return *this;
    }
    SparseVector& operator-=(const SparseVector& x)
    {
        axpy(-1, x);
        return *this;
    }

    std::optional<std::size_t> leading_index() const;
    std::size_t bound() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    std::vector<Entry> entries_;
};

SparseVector operator+(SparseVector a, const SparseVector& b);
SparseVector operator-(SparseVector a, const SparseVector& b);
SparseVector operator*(const Rational& c, SparseVector v);

// Column-major sparse matrix over Q.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    // Row-major dense input, convenient in tests.
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    static RationalMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    const SparseVector& column(std::size_t j) const { return columns_.at(j); }
    void set_column(std::size_t j, SparseVector v);
    Rational at(std::size_t i, std::size_t j) const { return columns_.at(j).at(i); }
    void set(std::size_t i, std::size_t j, const Rational& value);

    SparseVector apply(const SparseVector& v) const;
    RationalMatrix operator*(const RationalMatrix& rhs) const;
    RationalMatrix operator+(const RationalMatrix& rhs) const;
    RationalMatrix operator-(const RationalMatrix& rhs) const;
    RationalMatrix transpose() const;
    std::vector<SparseVector> row_vectors() const;
    RationalMatrix submatrix(const std::vector<std::size_t>& row_ids,
                             const std::vector<std::size_t>& col_ids) const;

    bool is_zero() const;
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<SparseVector> columns_;
};

// Span of a set of vectors kept in reduced row echelon form. The form is
// unique, so the result does not depend on insertion order.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

    // Returns true when v was independent of the current span.
    bool insert(SparseVector v);
    // Remainder of v after clearing every pivot column.
    SparseVector reduce(SparseVector v) const;
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t rank() const { return rows_.size(); }
    std::vector<std::size_t> pivots() const;
    std::vector<std::size_t> free_columns() const;
    const std::map<std::size_t, SparseVector>& rows() const { return rows_; }

private:
    std::size_t ambient_dim_;
    std::map<std::size_t, SparseVector> rows_; // pivot -> normalized row
};

struct RankKernel {
    std::size_t rank = 0;
    // One vector per free column j: 1 at j, minus the RREF column at the pivots.
    std::vector<SparseVector> kernel_basis;
};

RankKernel rank_and_kernel(const RationalMatrix& m);

// Complement of span(sub) spanned by standard basis vectors at the non-pivot
// columns of the canonical echelon form.
class Quotient {
public:
    Quotient(const std::vector<SparseVector>& sub, std::size_t ambient_dim);

    std::size_t dim() const { return rep_columns_.size(); }
    std::size_t ambient_dim() const { return sub_.ambient_dim(); }
    const std::vector<std::size_t>& rep_columns() const { return rep_columns_; }
    std::vector<SparseVector> representatives() const;
    // Coordinates of v on the representatives modulo span(sub).
    SparseVector project(const SparseVector& v) const;
    const EchelonBasis& sub() const { return sub_; }

private:
    EchelonBasis sub_;
    std::vector<std::size_t> rep_columns_;
    std::vector<std::size_t> column_slot_; // ambient column -> rep slot or npos
};

Quotient quotient_basis(const std::vector<SparseVector>& sub, std::size_t ambient_dim);

// H = ker(d_out) / im(d_in) at the middle slot of C' -> C -> C''.
class Cohomology {
public:
    // Throws CompositionNonzero when d_out * d_in != 0.
    Cohomology(const RationalMatrix& d_in, const RationalMatrix& d_out);

    std::size_t dim() const { return representatives_.size(); }
    std::size_t kernel_dim() const { return cycle_columns_.size(); }
    std::size_t image_rank() const { return classes_.sub().rank(); }
    std::size_t ambient_dim() const { return ambient_dim_; }

    const std::vector<SparseVector>& representatives() const { return representatives_; }
    // The free column of d_out at which each representative carries a 1.
    const std::vector<std::size_t>& representative_columns() const { return representative_columns_; }
    bool is_cocycle(const SparseVector& v) const;
    // Class coordinates of a cocycle. Throws std::invalid_argument otherwise.
    SparseVector project(const SparseVector& cocycle) const;

private:
    SparseVector cycle_coordinates(const SparseVector& z) const;

    std::size_t ambient_dim_;
    RationalMatrix d_out_;
    std::vector<SparseVector> kernel_basis_;
    std::vector<std::size_t> cycle_columns_; // free columns of d_out
    Quotient classes_;
    std::vector<SparseVector> representatives_;
    std::vector<std::size_t> representative_columns_;
};

Cohomology cohomology_at(const RationalMatrix& d_in, const RationalMatrix& d_out);

} // namespace chenbar
