#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace masure {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;

/* Parse "p", "-p/q" etc.; rejects q == 0 and malformed input. */
std::optional<Rat> rat_parse(const std::string& s);
std::string rat_str(const Rat& r);

/* Smallest element of step*Z that is >= x (step > 0).  With strict set,
   smallest element > x. */
Rat step_ceil(const Rat& x, const Rat& step, bool strict = false);
bool in_step_lattice(const Rat& x, const Rat& step);

int rat_sign(const Rat& r);

struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

  Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static RatMat identity(int n);
  bool operator==(const RatMat& o) const;
  bool operator<(const RatMat& o) const;  // lexicographic, for ordered containers
};

RatMat mat_mul(const RatMat& x, const RatMat& y);
RatVec mat_apply(const RatMat& m, const RatVec& v);
/* Row vector times matrix: forms transform by composition. */
RatVec row_apply(const RatVec& f, const RatMat& m);

Rat dot(const RatVec& x, const RatVec& y);
RatVec vec_add(const RatVec& x, const RatVec& y);
RatVec vec_sub(const RatVec& x, const RatVec& y);
RatVec vec_scale(const Rat& c, const RatVec& x);
bool vec_is_zero(const RatVec& x);
int vec_cmp(const RatVec& x, const RatVec& y);  // lexicographic

/* Reduced row echelon form in place; returns pivot column per row. */
std::vector<int> rref(RatMat& m);
int mat_rank(RatMat m);
Rat mat_det(RatMat m);
/* Basis of the right kernel {v : m v = 0}, deterministic order. */
std::vector<RatVec> kernel_basis(const RatMat& m);
/* Solve m x = b; nullopt when inconsistent.  Free variables are set to 0. */
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);
/* Inverse of a square matrix; nullopt when singular. */
std::optional<RatMat> mat_inverse(const RatMat& m);

std::string vec_str(const RatVec& v);

}  // namespace masure
