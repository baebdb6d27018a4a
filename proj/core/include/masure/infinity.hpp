#pragma once

#include <map>
#include <utility>
#include <vector>

#include "masure/atlas.hpp"

namespace masure {

/* Parallelism class of sector faces, named by the least chart that carries
   the direction.  The base is the least corner of that window; it labels the
   class and need not itself carry a germ. */
struct FacetAtInfinity {
  int chart = -1;
  SectorFace rep;
  int sign = +1;
  std::vector<int> J;
  bool same_as(const FacetAtInfinity& o) const;
};

/* Quotient of the model apartment by the span of a type-J direction:
   projection along V_J = cap of the kernels of alpha_j onto the earliest
   coordinates complementing it, with the walls that descend. */
struct QuotientApartment {
  ApartmentModel model;
  RatMat projection;          /* quotient coords of a point */
  std::vector<int> J;         /* parent generators, sorted */
  std::vector<int> root_map;  /* parent root index -> quotient index or -1 */
};

QuotientApartment quotient_apartment(const ApartmentModel& m, const std::vector<int>& J);

/* Charts reachable while keeping a shortening of the germ of f, with the
   transported face there.  Includes the starting chart. */
std::map<int, SectorFace> germ_reach(const Atlas& atlas, int chart, const SectorFace& f,
                                     int path_cap = 6);

bool parallel(const Atlas& atlas, int c1, const SectorFace& f1, int c2,
              const SectorFace& f2, int path_cap = 6);

FacetAtInfinity facet_at_infinity(const Atlas& atlas, int chart, const SectorFace& f,
                                  int sign = +1, int path_cap = 6);

/* Vectorial distance between sector germs on the same side, and codistance
   between germs on opposite sides; sign1 is the side of the first germ.
   Chamber directions only; needs a chart carrying both germs. */
GroupElement d_plus(const Atlas& atlas, int c1, const SectorFace& q1, int c2,
                    const SectorFace& q2, int path_cap = 6);
GroupElement d_minus(const Atlas& atlas, int c1, const SectorFace& q1, int c2,
                     const SectorFace& q2, int path_cap = 6);
GroupElement d_star(const Atlas& atlas, int c1, const SectorFace& q1, int c2,
                    const SectorFace& q2, int sign1 = -1, int path_cap = 6);

CheckReport check_twinning(const Atlas& atlas, const AxiomCheckOptions& opts = {});

/* d_plus(Q+, Q') == d_star(Q-, Q') exactly when Q' sits in the chart spanned
   by the opposite pair (Q+, Q-). */
bool check_lemma_310(const Atlas& atlas, int cplus, const SectorFace& qplus, int cminus,
                     const SectorFace& qminus, int cprime, const SectorFace& qprime,
                     int path_cap = 6);

/* The charts carrying the direction class, with their windows pushed to the
   quotient apartment. */
struct Facade {
  std::vector<int> J;
  QuotientApartment quotient;
  std::vector<int> charts;
  std::vector<EnclosureRep> windows;  /* parallel to charts */
};

Facade facade(const Atlas& atlas, const FacetAtInfinity& f, int path_cap = 6);

/* The face based at x pointing into the class of f, in the least chart that
   holds an open piece of it. */
std::pair<int, SectorFace> unique_face_at(const Atlas& atlas, const MasurePoint& x,
                                          const FacetAtInfinity& f, int path_cap = 6);

/* Any two tree-atlas walls bound a common chart. */
CheckReport check_wall_coherence(const TreeAtlas& atlas);
/* Distinct charts have distinct end pairs, and the pairs round-trip. */
CheckReport check_end_injectivity(const TreeAtlas& atlas);

/* The germ of the ray toward a window leaf, in the least chart that has it. */
std::pair<int, SectorFace> tree_end_germ(const TreeAtlas& t, int leaf);

}  // namespace masure
