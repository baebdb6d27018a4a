#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "masure/rational.hpp"
#include "masure/types.hpp"

namespace masure {

/* Entry value 0 in the Coxeter matrix encodes an infinite bond order. */
constexpr int kInfiniteOrder = 0;

enum class DatumKind { finite, affine, indefinite };

/* Generalized Cartan matrix a with a[i][j] = alpha_j(alphavee_i), together
   with the Coxeter matrix it induces.  Off-diagonal bond orders are
   restricted to {2, 3, 4, 6, oo}: these are the orders with an integral
   realization, which keeps every computation in exact rationals. */
class CoxeterDatum {
 public:
  static CoxeterDatum from_gcm(std::vector<std::vector<long long>> a);
  static CoxeterDatum from_coxeter_matrix(std::vector<std::vector<int>> m);
  static CoxeterDatum from_parts(std::vector<std::vector<int>> m,
                                 std::vector<std::vector<long long>> a);

  int rank() const { return rank_; }
  int m(int i, int j) const { return m_[i][j]; }
  long long a(int i, int j) const { return a_[i][j]; }
  const std::vector<std::vector<long long>>& gcm() const { return a_; }
  const std::vector<std::vector<int>>& coxeter_matrix() const { return m_; }

  DatumKind kind() const { return kind_; }
  /* Coordinates of the primitive positive null root; empty unless some
     component is affine.  Entries are 0 outside affine components. */
  const std::vector<long long>& delta() const { return delta_; }
  /* Generator indices of the (unique, when kind()==affine) affine component. */
  const std::vector<int>& affine_block() const { return affine_block_; }

  /* Conjugacy classes of generators: connected components under bonds of
     odd order.  class_of[i] identifies the W-orbit of the simple root i. */
  int orbit_class(int i) const { return orbit_class_[i]; }
  int orbit_class_count() const { return orbit_class_count_; }

 private:
  CoxeterDatum() = default;
  void finish();

  int rank_ = 0;
  std::vector<std::vector<int>> m_;
  std::vector<std::vector<long long>> a_;
  DatumKind kind_ = DatumKind::finite;
  std::vector<long long> delta_;
  std::vector<int> affine_block_;
  std::vector<int> orbit_class_;
  int orbit_class_count_ = 0;
};

/* Vector space V with independent simple roots (linear forms on V) and
   simple coroots realizing the datum: alpha_j(alphavee_i) = a(i,j). */
class Realization {
 public:
  /* Minimal realization of dimension 2*rank - rank(a). */
  static Realization standard(const CoxeterDatum& d);
  static Realization custom(const CoxeterDatum& d, int dim,
                            std::vector<RatVec> alpha,
                            std::vector<RatVec> alphavee);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  const RatVec& alpha(int i) const { return alpha_[i]; }
  const RatVec& alphavee(int i) const { return alphavee_[i]; }
  const RatMat& reflection(int i) const { return refl_[i]; }

  Rat eval_alpha(int i, const RatVec& v) const { return dot(alpha_[i], v); }
  /* Linear form of a root given by coordinates in the simple roots. */
  RatVec root_form(std::span<const long long> coords) const;
  RatVec root_form(const RatVec& coords) const;
  /* Express a form as coordinates over the simple roots; nullopt when the
     form is outside their span. */
  std::optional<RatVec> form_coords(const RatVec& form) const;

 private:
  void finish(const CoxeterDatum& d);
  int dim_ = 0, rank_ = 0;
  std::vector<RatVec> alpha_, alphavee_;
  std::vector<RatMat> refl_;
};

/* Group element: action matrix on V, inverse matrix, one reduced word. */
struct GroupElement {
  RatMat mat, inv;
  std::vector<int> word;
  int length() const { return static_cast<int>(word.size()); }
  bool operator==(const GroupElement& o) const { return mat == o.mat; }
  bool operator!=(const GroupElement& o) const { return !(mat == o.mat); }
};

struct RealRoot {
  std::vector<long long> coords;  // over the simple roots, all >=0 or all <=0
  int orbit_class = 0;
  long long height() const {
    long long h = 0;
    for (long long c : coords) h += c;
    return h;
  }
  bool positive() const { return height() > 0; }
};

class WeylGroup {
 public:
  WeylGroup(CoxeterDatum d, Realization r);
  explicit WeylGroup(CoxeterDatum d);

  const CoxeterDatum& datum() const { return datum_; }
  const Realization& realization() const { return real_; }
  int rank() const { return datum_.rank(); }

  GroupElement identity() const;
  GroupElement simple(int i) const;
  /* w * r_i, maintaining a reduced word. */
  GroupElement append(const GroupElement& w, int i) const;
  GroupElement reduce(std::span<const int> word) const;
  GroupElement mul(const GroupElement& x, const GroupElement& y) const;
  GroupElement inverse(const GroupElement& w) const;

  bool right_descent(const GroupElement& w, int i) const;
  bool left_descent(const GroupElement& w, int i) const;
  /* Bruhat-Chevalley order. */
  bool bruhat_leq(const GroupElement& u, const GroupElement& w) const;

  /* Image of a root (coordinates over simple roots) under the word,
     letters applied right to left. */
  std::vector<long long> act_on_root(std::span<const int> word,
                                     std::span<const long long> coords) const;
  RatVec act_on_root(std::span<const int> word, const RatVec& coords) const;

  /* Order of r_i r_j; kInfiniteOrder means infinite, certified by strict
     growth of root coordinates under iteration. */
  int product_order(int i, int j, int cap = 12) const;

  /* Ball of radius max_length in the word metric, sorted by (length, word). */
  std::vector<GroupElement> ball(int max_length) const;
  /* Full enumeration with a safety cap; nullopt when the cap is hit. */
  std::optional<std::vector<GroupElement>> enumerate(size_t cap) const;

 private:
  CoxeterDatum datum_;
  Realization real_;
};

/* Positive real roots of height <= H (negatives are their opposites). */
std::vector<RealRoot> roots_up_to_height(const CoxeterDatum& d, int H);

/* Positive imaginary roots of height <= H: lattice points of the positive
   root cone whose minimal orbit representative lands in the fundamental
   region (all Cartan pairings <= 0, connected support).  Exact in every
   kind; empty in finite type.  Sorted by (height, coords). */
std::vector<std::vector<long long>> imaginary_roots_up_to_height(const CoxeterDatum& d,
                                                                 int H);

/* Whether W(J) is finite.  The classifier decides via positivity of all
   principal minors of the J-submatrix; force_bfs enumerates the subgroup
   instead and may return undecided at the cap. */
Tern is_spherical(const CoxeterDatum& d, const std::vector<int>& J,
                  bool force_bfs = false, size_t cap = 10000);

}  // namespace masure
