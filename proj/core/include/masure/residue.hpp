#pragma once

#include <map>
#include <utility>
#include <vector>

#include "masure/atlas.hpp"

namespace masure {

enum class ResidueMode { restricted, nonrestricted };

/* Chamber of the residue at x: the germ of a segment [x, y) leaving x into a
   chamber direction inside some chart window.  Germs from different charts
   are identified through a probe point close to x. */
struct ResidueChamber {
  RatVec dir;         // direction in the coordinates of reps.front().first
  GroupElement w;     // vectorial chamber of dir
  MasurePoint probe;  // normal form of x + t* dir
  bool plus_ok = false, minus_ok = false;  // usable as positive / negative germ
  std::vector<std::pair<int, RatVec>> reps;  // all chart realizations
  int restricted_class = -1;
};

/* Segment germs at a point together with the restricted reflection data:
   S_x holds one reflection per wall through x, W_x its closure when finite.
   Two germs share a restricted class when some chart shows them on the same
   side of every wall through x. */
struct Residue {
  const Atlas* atlas = nullptr;
  int path_cap = 6;
  MasurePoint x;                    // normal form of the base point
  std::map<int, RatVec> positions;  // chart -> transported coordinates of x
  std::vector<int> wall_roots;      // positive roots of walls through x, base chart
  std::vector<GroupElement> gens;   // S_x
  std::vector<GroupElement> group;  // W_x; empty when the closure blows up
  std::vector<ResidueChamber> chambers;
  int restricted_count = 0;
};

Residue residue_at(const Atlas& atlas, const MasurePoint& x, int path_cap = 6);

/* Weyl distance between chamber germs of one sign.  Restricted mode locates
   across the walls through x only and takes values in W_x; every chart
   carrying both germs must yield the same element. */
GroupElement d_residue(const Residue& res, int c1, int c2,
                       ResidueMode mode = ResidueMode::restricted, int sign = +1);
/* Codistance between a germ taken with sign1 and one with the opposite sign;
   identity characterizes opposition. */
GroupElement d_star_residue(const Residue& res, int c1, int c2,
                            ResidueMode mode = ResidueMode::restricted, int sign1 = -1);

/* Tw1-Tw3 for the restricted codistance, exhaustive over restricted classes. */
CheckReport check_residue_twinning(const Residue& res);
/* Every center C and opposite pair (C-, C+) satisfies
   d_*(C, C+) <= d_-(C, C-) in the Bruhat order of (W_x, S_x). */
CheckReport check_residue_folding(const Residue& res);

}  // namespace masure
