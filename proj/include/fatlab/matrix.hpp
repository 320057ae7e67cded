#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fatlab/rational.hpp"

namespace fatlab {

/// Dense matrix over the exact scalar. Row-major; subspace bases are stored
/// as column blocks throughout the library.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative shape");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_columns(int rows, const std::vector<std::vector<Rat>>& cols) {
    Mat m(rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
      if (static_cast<int>(cols[j].size()) != rows) throw std::invalid_argument("from_columns: ragged input");
      for (int i = 0; i < rows; ++i) m(i, static_cast<int>(j)) = cols[j][i];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Rat& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  std::vector<Rat> column(int c) const {
    std::vector<Rat> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
  }

  std::vector<Rat> row(int r) const {
    std::vector<Rat> v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
    return v;
  }

  void set_column(int c, const std::vector<Rat>& v) {
    if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("set_column: size mismatch");
    for (int i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const Rat& x : a_)
      if (x != 0) return false;
    return true;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat multiply: shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Rat& bkj = o(k, j);
          if (bkj != 0) r(i, j) += aik * bkj;
        }
      }
    return r;
  }

  std::vector<Rat> apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("Mat apply: size mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Mat operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat add: shape mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat sub: shape mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Mat scaled(const Rat& s) const {
    Mat r = *this;
    for (Rat& x : r.a_) x *= s;
    return r;
  }

  /// Horizontal concatenation [this | o].
  Mat hcat(const Mat& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hcat: row mismatch");
    Mat r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (int j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
  }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

/// In-place reduced row echelon form; returns the pivot column indices.
inline std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Rat inv = Rat(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rat f = m(r, col);
      for (int j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(Mat m) { return static_cast<int>(rref(m).size()); }

/// Basis of the null space {x : m x = 0}, returned as columns.
inline Mat kernel(Mat m) {
  const int n = m.cols();
  const std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(n, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return Mat::from_columns(n, basis);
}

/// Canonical representative of the column span: unique reduced echelon basis.
/// Guarantees span_canonical(A) == span_canonical(B) iff the spans coincide.
inline Mat span_canonical(const Mat& basis) {
  Mat t = basis.transpose();
  const std::vector<int> pivots = rref(t);
  Mat out(basis.rows(), static_cast<int>(pivots.size()));
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int i = 0; i < basis.rows(); ++i) out(i, static_cast<int>(r)) = t(static_cast<int>(r), i);
  return out;
}

/// Solves repeated membership/coordinate queries against a fixed full-rank
/// column basis. The transform row-reduces [basis | I]; coordinates read off
/// the pivot rows, membership requires zero residual rows.
class SpanSolver {
 public:
  explicit SpanSolver(Mat basis) : basis_(std::move(basis)) {
    const int d = basis_.rows();
    const int s = basis_.cols();
    Mat work = basis_.hcat(Mat::identity(d));
    const std::vector<int> pivots = rref(work);
    // The identity block always contributes pivots; the basis columns are
    // independent exactly when columns 0..s-1 are the leading pivots.
    for (int j = 0; j < s; ++j)
      if (j >= static_cast<int>(pivots.size()) || pivots[j] != j)
        throw std::invalid_argument("SpanSolver: basis columns are dependent");
    reduced_ = std::move(work);
    rank_ = s;
  }

  const Mat& basis() const { return basis_; }
  int dim() const { return rank_; }
  int ambient_dim() const { return basis_.rows(); }

  /// Coordinates of v in the basis, or nullopt when v is outside the span.
  std::optional<std::vector<Rat>> coords(const std::vector<Rat>& v) const {
    const int d = basis_.rows();
    const int s = rank_;
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("SpanSolver: dimension mismatch");
    std::vector<Rat> tv(d, Rat(0));
    for (int r = 0; r < d; ++r)
      for (int j = 0; j < d; ++j)
        if (reduced_(r, s + j) != 0 && v[j] != 0) tv[r] += reduced_(r, s + j) * v[j];
    for (int r = s; r < d; ++r)
      if (tv[r] != 0) return std::nullopt;
    tv.resize(s);
    return tv;
  }

  bool contains(const std::vector<Rat>& v) const { return coords(v).has_value(); }

  /// Rows spanning the left annihilator of the basis: a (d - s) x d matrix T
  /// with T * basis = 0 and T v = 0 iff v lies in the span.
  Mat annihilator() const {
    const int d = basis_.rows();
    const int s = rank_;
    Mat t(d - s, d);
    for (int r = s; r < d; ++r)
      for (int j = 0; j < d; ++j) t(r - s, j) = reduced_(r, s + j);
    return t;
  }

 private:
  Mat basis_;
  Mat reduced_;
  int rank_ = 0;
};

/// Growing span with coordinate recovery against the vectors kept so far.
/// Gaussian elimination maintained incrementally; each absorbed vector costs
/// O(dim * ambient).
class IncrementalSpan {
 public:
  explicit IncrementalSpan(int ambient) : d_(ambient) {}

  int ambient_dim() const { return d_; }
  int dim() const { return static_cast<int>(rows_.size()); }

  /// When v depends on the kept vectors, returns its coordinates over them
  /// (in insertion order); otherwise keeps v and returns nullopt.
  std::optional<std::vector<Rat>> add(const std::vector<Rat>& v) {
    if (static_cast<int>(v.size()) != d_) throw std::invalid_argument("IncrementalSpan: size mismatch");
    std::vector<Rat> w = v;
    std::vector<Rat> comb(dim() + 1, Rat(0));
    for (size_t j = 0; j < rows_.size(); ++j) {
      const Rat& lead = w[pivots_[j]];
      if (lead == 0) continue;
      const Rat f = lead / rows_[j][pivots_[j]];
      for (int i = 0; i < d_; ++i)
        if (rows_[j][i] != 0) w[i] -= f * rows_[j][i];
      for (size_t t = 0; t < combs_[j].size(); ++t) comb[t] += f * combs_[j][t];
    }
    int pivot = -1;
    for (int i = 0; i < d_; ++i)
      if (w[i] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) {
      comb.resize(dim());
      return comb;
    }
    comb.resize(dim() + 1, Rat(0));
    comb[dim()] = 1;
    // comb currently holds the reduction coefficients; the kept row equals
    // v - sum(f_j row_j), i.e. original coords are e_self - reductions
    for (size_t t = 0; t + 1 < comb.size(); ++t) comb[t] = -comb[t];
    rows_.push_back(std::move(w));
    pivots_.push_back(pivot);
    combs_.push_back(std::move(comb));
    return std::nullopt;
  }

  bool contains(const std::vector<Rat>& v) {
    // non-mutating probe
    std::vector<Rat> w = v;
    for (size_t j = 0; j < rows_.size(); ++j) {
      const Rat& lead = w[pivots_[j]];
      if (lead == 0) continue;
      const Rat f = lead / rows_[j][pivots_[j]];
      for (int i = 0; i < d_; ++i)
        if (rows_[j][i] != 0) w[i] -= f * rows_[j][i];
    }
    for (const Rat& x : w)
      if (x != 0) return false;
    return true;
  }

 private:
  int d_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<int> pivots_;
  std::vector<std::vector<Rat>> combs_;
};

/// Span of the union of two column families, canonicalized.
inline Mat span_sum(const Mat& a, const Mat& b) { return span_canonical(a.hcat(b)); }

/// Exact intersection of two column spans, canonicalized.
inline Mat span_intersect(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("span_intersect: ambient mismatch");
  if (a.cols() == 0 || b.cols() == 0) return Mat(a.rows(), 0);
  const Mat joint = a.hcat(b);
  const Mat null_basis = kernel(joint);
  std::vector<std::vector<Rat>> vecs;
  for (int k = 0; k < null_basis.cols(); ++k) {
    std::vector<Rat> v(a.rows(), Rat(0));
    for (int j = 0; j < a.cols(); ++j) {
      const Rat& c = null_basis(j, k);
      if (c == 0) continue;
      for (int i = 0; i < a.rows(); ++i) v[i] += c * a(i, j);
    }
    vecs.push_back(std::move(v));
  }
  return span_canonical(Mat::from_columns(a.rows(), vecs));
}

inline Rat determinant(Mat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  const int n = m.rows();
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (m(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) return Rat(0);
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const Rat inv = Rat(1) / m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Rat f = m(r, col) * inv;
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Exact Pfaffian of a skew-symmetric matrix (Parlett-Reid style elimination).
inline Rat pfaffian(Mat m) {
  const int n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("pfaffian: not square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m(i, j) != -m(j, i)) throw std::invalid_argument("pfaffian: matrix not skew-symmetric");
  if (n % 2 != 0) return Rat(0);
  Rat pf(1);
  for (int k = 0; k + 1 < n; k += 2) {
    int p = -1;
    for (int r = k + 1; r < n; ++r)
      if (m(k, r) != 0) {
        p = r;
        break;
      }
    if (p < 0) return Rat(0);
    if (p != k + 1) {
      for (int j = 0; j < n; ++j) std::swap(m(k + 1, j), m(p, j));
      for (int i = 0; i < n; ++i) std::swap(m(i, k + 1), m(i, p));
      pf = -pf;
    }
    const Rat pivot = m(k, k + 1);
    pf *= pivot;
    const Rat inv = Rat(1) / pivot;
    for (int r = k + 2; r < n; ++r) {
      if (m(k, r) != 0) {
        const Rat f = m(k, r) * inv;
        for (int j = 0; j < n; ++j) m(r, j) -= f * m(k + 1, j);
        for (int i = 0; i < n; ++i) m(i, r) -= f * m(i, k + 1);
      }
      if (m(k + 1, r) != 0) {
        const Rat g = m(k + 1, r) * inv;
        for (int j = 0; j < n; ++j) m(r, j) += g * m(k, j);
        for (int i = 0; i < n; ++i) m(i, r) += g * m(i, k);
      }
    }
  }
  return pf;
}

enum class FormClass { Zero, PosDef, NegDef, PosSemi, NegSemi, Indefinite };

/// Exact inertia classification of a symmetric form, with certificates:
/// kernel vectors for semidefinite forms, a positive and a negative vector
/// for indefinite ones.
struct FormClassification {
  FormClass kind = FormClass::Zero;
  std::vector<std::vector<Rat>> kernel_vectors;
  std::vector<Rat> positive_vector;
  std::vector<Rat> negative_vector;
};

inline FormClassification classify_symmetric_form(const Mat& g) {
  const int n = g.rows();
  if (g.cols() != n) throw std::invalid_argument("classify_symmetric_form: not square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g(i, j) != g(j, i)) throw std::invalid_argument("classify_symmetric_form: not symmetric");

  Mat w = g;
  Mat x = Mat::identity(n);  // congruence transform: x^T g x stays equal to w on processed block
  std::vector<int> pos_idx, neg_idx, zero_idx;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;

  FormClassification out;
  int k = 0;
  while (k < n) {
    int p = -1;
    for (int r = k; r < n; ++r)
      if (w(r, r) != 0) {
        p = r;
        break;
      }
    if (p < 0) {
      // No diagonal pivot left. Any remaining off-diagonal entry gives a
      // hyperbolic pair, hence indefiniteness.
      int hi = -1, hj = -1;
      for (int r = k; r < n && hi < 0; ++r)
        for (int c = r + 1; c < n; ++c)
          if (w(r, c) != 0) {
            hi = r;
            hj = c;
            break;
          }
      if (hi < 0) {
        for (int r = k; r < n; ++r) zero_idx.push_back(r);
        break;
      }
      std::vector<Rat> up(n, Rat(0)), un(n, Rat(0));
      const int s = rat_sign(w(hi, hj));
      for (int i = 0; i < n; ++i) {
        up[i] = x(i, hi) + x(i, hj);
        un[i] = x(i, hi) - x(i, hj);
      }
      out.kind = FormClass::Indefinite;
      out.positive_vector = (s > 0) ? up : un;
      out.negative_vector = (s > 0) ? un : up;
      return out;
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(w(p, j), w(k, j));
      for (int i = 0; i < n; ++i) std::swap(w(i, p), w(i, k));
      for (int i = 0; i < n; ++i) std::swap(x(i, p), x(i, k));
    }
    const Rat d = w(k, k);
    (rat_sign(d) > 0 ? pos_idx : neg_idx).push_back(k);
    const Rat inv = Rat(1) / d;
    for (int r = k + 1; r < n; ++r) {
      if (w(k, r) == 0) continue;
      const Rat f = w(k, r) * inv;
      for (int j = 0; j < n; ++j) w(r, j) -= f * w(k, j);
      for (int i = 0; i < n; ++i) w(i, r) -= f * w(i, k);
      for (int i = 0; i < n; ++i) x(i, r) -= f * x(i, k);
    }
    ++k;
  }

  for (int z : zero_idx) out.kernel_vectors.push_back(x.column(z));
  const bool has_pos = !pos_idx.empty(), has_neg = !neg_idx.empty(), has_zero = !zero_idx.empty();
  if (has_pos && has_neg) {
    out.kind = FormClass::Indefinite;
    out.positive_vector = x.column(pos_idx.front());
    out.negative_vector = x.column(neg_idx.front());
  } else if (has_pos) {
    out.kind = has_zero ? FormClass::PosSemi : FormClass::PosDef;
    out.positive_vector = x.column(pos_idx.front());
  } else if (has_neg) {
    out.kind = has_zero ? FormClass::NegSemi : FormClass::NegDef;
    out.negative_vector = x.column(neg_idx.front());
  } else {
    out.kind = FormClass::Zero;
  }
  return out;
}

inline bool is_negative_definite(const Mat& g) {
  return classify_symmetric_form(g).kind == FormClass::NegDef;
}

}  // namespace fatlab
