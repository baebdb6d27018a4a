#include "masure/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace masure {

std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  auto ok = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!ok(num) || !ok(den)) return std::nullopt;
  mpz_class n(num), d(den);
  if (d == 0) return std::nullopt;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat step_ceil(const Rat& x, const Rat& step, bool strict) {
  if (step <= 0) throw std::invalid_argument("step_ceil: step must be positive");
  Rat q = x / step;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  Rat out = Rat(c) * step;
  if (strict && out == x) out += step;
  return out;
}

bool in_step_lattice(const Rat& x, const Rat& step) {
  Rat q = x / step;
  return q.get_den() == 1;
}

int rat_sign(const Rat& r) { return sgn(r); }

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool RatMat::operator==(const RatMat& o) const {
  return rows == o.rows && cols == o.cols && a == o.a;
}

bool RatMat::operator<(const RatMat& o) const {
  if (rows != o.rows) return rows < o.rows;
  if (cols != o.cols) return cols < o.cols;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], o.a[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

RatMat mat_mul(const RatMat& x, const RatMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  RatMat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& xv = x.at(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < y.cols; ++j) out.at(i, j) += xv * y.at(k, j);
    }
  return out;
}

RatVec mat_apply(const RatMat& m, const RatVec& v) {
  if (m.cols != static_cast<int>(v.size()))
    throw std::invalid_argument("mat_apply: shape mismatch");
  RatVec out(m.rows, Rat(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) out[i] += m.at(i, j) * v[j];
  return out;
}

RatVec row_apply(const RatVec& f, const RatMat& m) {
  if (m.rows != static_cast<int>(f.size()))
    throw std::invalid_argument("row_apply: shape mismatch");
  RatVec out(m.cols, Rat(0));
  for (int i = 0; i < m.rows; ++i)
    if (f[i] != 0)
      for (int j = 0; j < m.cols; ++j) out[j] += f[i] * m.at(i, j);
  return out;
}

Rat dot(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s(0);
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

RatVec vec_add(const RatVec& x, const RatVec& y) {
  RatVec out(x);
  for (size_t i = 0; i < x.size(); ++i) out[i] += y[i];
  return out;
}

RatVec vec_sub(const RatVec& x, const RatVec& y) {
  RatVec out(x);
  for (size_t i = 0; i < x.size(); ++i) out[i] -= y[i];
  return out;
}

RatVec vec_scale(const Rat& c, const RatVec& x) {
  RatVec out(x);
  for (auto& v : out) v *= c;
  return out;
}

bool vec_is_zero(const RatVec& x) {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

int vec_cmp(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (size_t i = 0; i < x.size(); ++i) {
    int c = cmp(x[i], y[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int p = -1;
    for (int r = row; r < m.rows; ++r)
      if (m.at(r, col) != 0) { p = r; break; }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols; ++j) swap(m.at(p, j), m.at(row, j));
    Rat inv = 1 / m.at(row, col);
    for (int j = 0; j < m.cols; ++j) m.at(row, j) *= inv;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (int j = 0; j < m.cols; ++j) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int mat_rank(RatMat m) { return static_cast<int>(rref(m).size()); }

Rat mat_det(RatMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("mat_det: not square");
  Rat det(1);
  for (int col = 0; col < m.cols; ++col) {
    int p = -1;
    for (int r = col; r < m.rows; ++r)
      if (m.at(r, col) != 0) { p = r; break; }
    if (p < 0) return Rat(0);
    if (p != col) {
      for (int j = 0; j < m.cols; ++j) swap(m.at(p, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    Rat inv = 1 / m.at(col, col);
    for (int r = col + 1; r < m.rows; ++r) {
      if (m.at(r, col) == 0) continue;
      Rat f = m.at(r, col) * inv;
      for (int j = col; j < m.cols; ++j) m.at(r, j) -= f * m.at(col, j);
    }
  }
  return det;
}

std::vector<RatVec> kernel_basis(const RatMat& m) {
  RatMat r = m;
  std::vector<int> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(m.cols, Rat(0));
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(static_cast<int>(i), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  if (m.rows != static_cast<int>(b.size()))
    throw std::invalid_argument("solve: shape mismatch");
  RatMat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  for (int p : pivots)
    if (p == m.cols) return std::nullopt;
  RatVec x(m.cols, Rat(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(static_cast<int>(i), m.cols);
  return x;
}

std::optional<RatMat> mat_inverse(const RatMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("mat_inverse: not square");
  int n = m.rows;
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<int> pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
  RatMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

std::string vec_str(const RatVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

}  // namespace masure
