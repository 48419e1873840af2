#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bspir {

/// A field element, always held as the canonical residue in [0, q).
using Elem = std::uint64_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public FieldError {
 public:
  using FieldError::FieldError;
};

class DuplicatePoint : public FieldError {
 public:
  using FieldError::FieldError;
};

class Singular : public FieldError {
 public:
  using FieldError::FieldError;
};

class ShapeMismatch : public FieldError {
 public:
  using FieldError::FieldError;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

/// Number of bits needed to write any residue mod q, i.e. ceil(log2 q).
unsigned bits_per_symbol(std::uint64_t q);

/// Prime field F_q.
class Field {
 public:
  explicit Field(std::uint64_t modulus);

  std::uint64_t modulus() const { return q_; }

  Elem reduce(std::uint64_t x) const { return x % q_; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return (s >= q_ || s < a) ? s - q_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (q_ - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : q_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % q_);
  }
  Elem pow(Elem base, std::uint64_t exp) const;
  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool operator==(const Field&) const = default;

 private:
  std::uint64_t q_;
};

/// Dense row-major matrix of field elements. The matrix itself is
/// field-agnostic; arithmetic takes the Field explicitly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data);
  Matrix(std::initializer_list<std::initializer_list<Elem>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<Elem>& data() const { return data_; }

  bool is_zero() const;
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

std::string to_string(const Matrix& m);

/// |points| x cols matrix with entry (i, j) = points[i]^j.
Matrix vandermonde(const Field& f, std::span<const Elem> points, std::size_t cols);

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Matrix add(const Field& f, const Matrix& a, const Matrix& b);
Matrix subtract(const Field& f, const Matrix& a, const Matrix& b);
Matrix scale_rows(const Field& f, const Matrix& m, std::span<const Elem> factors);

Matrix invert(const Field& f, const Matrix& m);
/// Returns X with a * X = b.
Matrix solve(const Field& f, const Matrix& a, const Matrix& b);

Matrix select_rows(const Matrix& m, std::span<const std::size_t> rows);
Matrix hconcat(const Matrix& left, const Matrix& right);
Matrix vconcat(const Matrix& top, const Matrix& bottom);
Matrix row_slice(const Matrix& m, std::size_t first, std::size_t count);

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b);

}  // namespace bspir
