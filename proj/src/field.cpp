#include "bspir/field.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

namespace bspir {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    throw ShapeMismatch(os.str());
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These seven bases are a deterministic witness set for n < 2^64.
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  std::uint64_t c = n | 1;
  while (!is_prime(c)) c += 2;
  return c;
}

unsigned bits_per_symbol(std::uint64_t q) {
  // ceil(log2 q) == bit width of (q - 1) for q >= 2.
  return q <= 1 ? 0 : static_cast<unsigned>(std::bit_width(q - 1));
}

Field::Field(std::uint64_t modulus) : q_(modulus) {
  if (!is_prime(modulus)) throw NotPrime("field modulus " + std::to_string(modulus) + " is not prime");
}

Elem Field::pow(Elem base, std::uint64_t exp) const { return powmod(base, exp, q_); }

Elem Field::inv(Elem a) const {
  if (a % q_ == 0) throw std::domain_error("inverse of zero");
  return powmod(a, q_ - 2, q_);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw ShapeMismatch("matrix data length does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Elem>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix vandermonde(const Field& f, std::span<const Elem> points, std::size_t cols) {
  if (cols == 0) throw std::invalid_argument("vandermonde: need at least one column");
  std::unordered_set<Elem> seen;
  for (Elem p : points) {
    if (!seen.insert(f.reduce(p)).second) throw DuplicatePoint("vandermonde: repeated point " + std::to_string(p));
  }
  Matrix v(points.size(), cols);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Elem x = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      v(i, j) = x;
      x = f.mul(x, f.reduce(points[i]));
    }
  }
  return v;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("multiply: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  const std::uint64_t q = f.modulus();
  const bool small_modulus = q <= (std::uint64_t{1} << 32);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t t = 0; t < a.cols(); ++t) {
        acc += static_cast<unsigned __int128>(a(i, t)) * b(t, j);
        // Products of residues below 2^32 fit in 64 bits and can be summed freely.
        if (!small_modulus) acc %= q;
      }
      out(i, j) = static_cast<Elem>(acc % q);
    }
  }
  return out;
}

Matrix add(const Field& f, const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
  return out;
}

Matrix subtract(const Field& f, const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "subtract");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.sub(a(i, j), b(i, j));
  return out;
}

Matrix scale_rows(const Field& f, const Matrix& m, std::span<const Elem> factors) {
  if (factors.size() != m.rows()) throw ShapeMismatch("scale_rows: factor count differs from row count");
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (Elem& e : out.row(i)) e = f.mul(e, factors[i]);
  return out;
}

Matrix solve(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) throw ShapeMismatch("solve: coefficient matrix is not square");
  if (a.rows() != b.rows()) throw ShapeMismatch("solve: right-hand side row count differs");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  Matrix lhs = a;
  Matrix rhs = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && lhs(pivot, col) == 0) ++pivot;
    if (pivot == n) throw Singular("matrix is singular");
    if (pivot != col) {
      std::swap_ranges(lhs.row(pivot).begin(), lhs.row(pivot).end(), lhs.row(col).begin());
      std::swap_ranges(rhs.row(pivot).begin(), rhs.row(pivot).end(), rhs.row(col).begin());
    }
    const Elem scale = f.inv(lhs(col, col));
    for (Elem& e : lhs.row(col)) e = f.mul(e, scale);
    for (Elem& e : rhs.row(col)) e = f.mul(e, scale);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || lhs(r, col) == 0) continue;
      const Elem factor = lhs(r, col);
      for (std::size_t c = col; c < n; ++c) lhs(r, c) = f.sub(lhs(r, c), f.mul(factor, lhs(col, c)));
      for (std::size_t c = 0; c < m; ++c) rhs(r, c) = f.sub(rhs(r, c), f.mul(factor, rhs(col, c)));
    }
  }
  return rhs;
}

Matrix invert(const Field& f, const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("invert: matrix is not square");
  return solve(f, m, Matrix::identity(m.rows()));
}

Matrix select_rows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= m.rows()) throw std::out_of_range("select_rows: row index out of range");
    std::copy(m.row(rows[i]).begin(), m.row(rows[i]).end(), out.row(i).begin());
  }
  return out;
}

Matrix hconcat(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) throw ShapeMismatch("hconcat: row counts differ");
  Matrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    auto dst = std::copy(left.row(r).begin(), left.row(r).end(), out.row(r).begin());
    std::copy(right.row(r).begin(), right.row(r).end(), dst);
  }
  return out;
}

Matrix vconcat(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw ShapeMismatch("vconcat: column counts differ");
  std::vector<Elem> data = top.data();
  data.insert(data.end(), bottom.data().begin(), bottom.data().end());
  return Matrix(top.rows() + bottom.rows(), top.cols(), std::move(data));
}

Matrix row_slice(const Matrix& m, std::size_t first, std::size_t count) {
  if (first + count > m.rows()) throw std::out_of_range("row_slice: range exceeds matrix");
  std::vector<Elem> data(m.data().begin() + static_cast<std::ptrdiff_t>(first * m.cols()),
                         m.data().begin() + static_cast<std::ptrdiff_t>((first + count) * m.cols()));
  return Matrix(count, m.cols(), std::move(data));
}

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) throw ShapeMismatch("dot: length mismatch");
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace bspir
