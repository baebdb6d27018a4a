#pragma once

#include <vector>

#include "masure/coxeter.hpp"

namespace masure {

/* Facet of the Tits cone or its opposite: sign * w * F(J), where F(J) is the
   fundamental facet vanishing exactly on the generators in J and w is the
   minimal length representative of its coset modulo the fixator W(J). */
struct FacetAddress {
  int sign = +1;  // +1 for the cone, -1 for its opposite
  GroupElement w;
  std::vector<int> J;  // sorted

  bool same_as(const FacetAddress& o) const {
    return sign == o.sign && J == o.J && w == o.w;
  }
};

enum class LocateStatus { located, not_in_cone, unknown };

struct LocateResult {
  LocateStatus status = LocateStatus::unknown;
  FacetAddress address;  // valid when located
  int steps = 0;
};

inline constexpr int kDefaultLocateSteps = 10000;

/* Fold v into the fundamental domain by reflecting along the lowest simple
   root that is negative on it.  For affine data a membership certificate is
   checked first, so not_in_cone is exact there; indefinite data can time out
   with unknown. */
LocateResult locate(const WeylGroup& w, const RatVec& v,
                    int max_steps = kDefaultLocateSteps);

enum class ConePosition { interior, boundary, outside, unknown };

ConePosition cone_membership(const WeylGroup& w, const RatVec& v,
                             int max_steps = kDefaultLocateSteps);

/* The three vector preorders: y - x against the cone, its closure, and its
   interior (union zero). */
Tern vec_leq(const WeylGroup& w, const RatVec& x, const RatVec& y,
             int max_steps = kDefaultLocateSteps);
Tern vec_leq_closed(const WeylGroup& w, const RatVec& x, const RatVec& y,
                    int max_steps = kDefaultLocateSteps);
Tern vec_leq_open(const WeylGroup& w, const RatVec& x, const RatVec& y,
                  int max_steps = kDefaultLocateSteps);

/* Value of the primitive null root as a linear form (affine blocks only). */
Rat delta_eval(const WeylGroup& w, const RatVec& v);

/* Canonical minimal-length coset representative modulo W(J). */
GroupElement min_coset_rep(const WeylGroup& w, GroupElement g, const std::vector<int>& J);

}  // namespace masure
