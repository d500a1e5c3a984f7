#include "tensegrity/exactlinalg.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace tensegrity {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DependentRays: return "DependentRays";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::SampleOnEdge: return "SampleOnEdge";
    case ErrorCode::InvalidNormal: return "InvalidNormal";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::FanInvalid: return "FanInvalid";
    case ErrorCode::NotAWall: return "NotAWall";
    case ErrorCode::DegenerateFan: return "DegenerateFan";
    case ErrorCode::UnsupportedCodim: return "UnsupportedCodim";
    case ErrorCode::GenericityViolation: return "GenericityViolation";
    case ErrorCode::InvalidFramework: return "InvalidFramework";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
  }
  return "Unknown";
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rat(m(r, c));
  return out;
}

RatVector to_rat(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& z : v) out.emplace_back(z);
  return out;
}

namespace {

template <class T>
Matrix<T> multiply_impl(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class T>
T dot_impl(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "dot product length mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) { return multiply_impl(a, b); }
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) { return multiply_impl(a, b); }

RatVector multiply(const RatMatrix& a, const RatVector& x) {
  if (a.cols() != x.size())
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  RatVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), std::span<const Rat>(x));
  return out;
}

Int dot(std::span<const Int> a, std::span<const Int> b) { return dot_impl(a, b); }
Rat dot(std::span<const Rat> a, std::span<const Rat> b) { return dot_impl(a, b); }

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorCode::DimensionMismatch, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int content(std::span<const Int> v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector primitive(std::span<const Int> v) {
  Int g = content(v);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "cannot primitivize the zero vector");
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(Int(x / g));
  return out;
}

IntVector clear_denominators(std::span<const Rat> v) {
  Int l = 1;
  for (const auto& q : v) l = lcm(l, Int(q.get_den()));
  IntVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(Int(q.get_num() * (l / q.get_den())));
  return out;
}

RatVector normalize_direction(std::span<const Rat> v) {
  IntVector z = clear_denominators(v);
  Int g = content(z);
  if (g == 0) return {v.begin(), v.end()};
  auto lead = std::find_if(z.begin(), z.end(), [](const Int& x) { return x != 0; });
  if (*lead < 0) g = -g;
  RatVector out;
  out.reserve(z.size());
  for (const auto& x : z) out.emplace_back(Int(x / g));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix s = a;
  IntMatrix left = IntMatrix::identity(m);
  IntMatrix right = IntMatrix::identity(n);

  auto add_row = [&](std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t c = 0; c < n; ++c) s(dst, c) += k * s(src, c);
    for (std::size_t c = 0; c < m; ++c) left(dst, c) += k * left(src, c);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t r = 0; r < m; ++r) s(r, dst) += k * s(r, src);
    for (std::size_t r = 0; r < n; ++r) right(r, dst) += k * right(r, src);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool exhausted = false;
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (s(i, j) == 0) continue;
          if (!pivot || mpz_cmpabs(s(i, j).get_mpz_t(), s(pivot->first, pivot->second).get_mpz_t()) < 0)
            pivot = {i, j};
        }
      if (!pivot) {
        exhausted = true;
        break;
      }
      s.swap_rows(t, pivot->first);
      left.swap_rows(t, pivot->first);
      s.swap_cols(t, pivot->second);
      right.swap_cols(t, pivot->second);

      bool cleared = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Int q = s(i, t) / s(t, t);
        if (q != 0) add_row(i, t, Int(-q));
        if (s(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Int q = s(t, j) / s(t, t);
        if (q != 0) add_col(j, t, Int(-q));
        if (s(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      add_row(t, *offender, Int(1));
    }
    if (exhausted) break;
    if (s(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) s(t, c) = -s(t, c);
      for (std::size_t c = 0; c < m; ++c) left(t, c) = -left(t, c);
    }
  }
  return {std::move(s), std::move(left), std::move(right), t};
}

std::vector<Int> elementary_divisors(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  std::vector<Int> out;
  for (std::size_t i = 0; i < snf.rank; ++i) out.push_back(snf.diagonal(i, i));
  return out;
}

Int lattice_index(const IntMatrix& rows) {
  auto divisors = elementary_divisors(rows);
  if (divisors.size() != rows.rows())
    throw Error(ErrorCode::DependentRays, "generators are linearly dependent");
  Int index = 1;
  for (const auto& d : divisors) index *= d;
  return index;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::optional<std::size_t> pivot;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (!pivot || mpz_cmpabs(h(i, c).get_mpz_t(), h(*pivot, c).get_mpz_t()) < 0)) pivot = i;
      if (!pivot) break;
      h.swap_rows(r, *pivot);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Int q = h(i, c) / h(r, c);
        for (std::size_t j = c; j < n; ++j) h(i, j) -= q * h(r, j);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0)
      for (std::size_t j = c; j < n; ++j) h(r, j) = -h(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q != 0)
        for (std::size_t j = c; j < n; ++j) h(i, j) -= q * h(r, j);
    }
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  const std::size_t n = a.cols();
  IntMatrix basis(n - snf.rank, n);
  for (std::size_t k = snf.rank; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) basis(k - snf.rank, r) = snf.right(r, k);
  return hermite_normal_form(basis);
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && m(i, k) == 0) ++i;
      if (i == n) return 0;
      m.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  RatMatrix m = a;
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

EchelonForm reduced_row_echelon(const RatMatrix& a) {
  RatMatrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const RatMatrix& a) { return reduced_row_echelon(a).pivots.size(); }
std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank; }

std::vector<RatVector> canonical_span_basis(const std::vector<RatVector>& vectors,
                                            std::size_t n) {
  RatMatrix m(vectors.size(), n);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n)
      throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vectors[i][j];
  }
  auto ech = reduced_row_echelon(m);
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < ech.pivots.size(); ++i)
    out.push_back(normalize_direction(ech.reduced.row(i)));
  return out;
}

std::vector<RatVector> kernel_basis(const RatMatrix& a) {
  auto ech = reduced_row_echelon(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<RatVector> raw;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(n);
    x[f] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) x[ech.pivots[i]] = -ech.reduced(i, f);
    raw.push_back(std::move(x));
  }
  return canonical_span_basis(raw, n);
}

void LinearSystem::add(std::string label, std::span<const Rat> coefficients) {
  if (coefficients.size() != variables_)
    throw Error(ErrorCode::DimensionMismatch, "constraint '" + label + "' has wrong length");
  rows_.append_row(coefficients);
  labels_.push_back(std::move(label));
}

std::vector<RatVector> solve_constrained(std::size_t variables, const RatMatrix& constraints) {
  if (constraints.rows() > 0 && constraints.cols() != variables)
    throw Error(ErrorCode::DimensionMismatch, "constraint columns do not match variable count");
  if (constraints.rows() == 0) return kernel_basis(RatMatrix(0, variables));
  return kernel_basis(constraints);
}

std::vector<RatVector> solve_constrained(const LinearSystem& system) {
  return solve_constrained(system.variables(), system.matrix());
}

bool in_span(std::span<const Rat> v, const std::vector<RatVector>& basis) {
  std::vector<RatVector> extended = basis;
  extended.emplace_back(v.begin(), v.end());
  return canonical_span_basis(extended, v.size()).size() ==
         canonical_span_basis(basis, v.size()).size();
}

bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b,
               std::size_t n) {
  return canonical_span_basis(a, n) == canonical_span_basis(b, n);
}

namespace {

bool is_integer_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Int parse_int(const std::string& text) {
  if (!is_integer_literal(text))
    throw Error(ErrorCode::ParseError, "not an integer: '" + text + "'");
  return Int(text[0] == '+' ? text.substr(1) : text, 10);
}

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int(text));
  std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  if (!is_integer_literal(num) || den.empty() ||
      !std::all_of(den.begin(), den.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(ErrorCode::ParseError, "not a rational 'p/q': '" + text + "'");
  Int q(den, 10);
  if (q == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  Rat r(parse_int(num), q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& q) { return q.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

}  // namespace tensegrity
