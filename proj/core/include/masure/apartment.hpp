#pragma once

#include <map>
#include <optional>

#include "masure/tits_cone.hpp"

namespace masure {

enum class ImaginaryPolicy { none, tame };
/* cl uses the per-orbit value groups d * Z; cl_real takes exact levels. */
enum class EncMode { lattice, real };

/* One signed root of the working set, with its linear form on V and, for
   real roots, the coroot giving the wall reflections. */
struct ApartmentRoot {
  std::vector<long long> coords;
  RatVec form;
  RatVec coroot;  // empty for imaginary roots
  int orbit_class = -1;
  bool imaginary = false;
  long long height() const {
    long long h = 0;
    for (long long c : coords) h += c;
    return h;
  }
};

struct Level {
  Rat k;
  bool strict = false;  // half-space taken open: alpha(v) + k > 0
  bool operator==(const Level& o) const { return k == o.k && strict == o.strict; }
};

/* Intersection of half-spaces D(alpha, k), one optional level per root of
   the working set; a missing level means no constraint in that direction. */
struct EnclosureRep {
  std::vector<std::optional<Level>> levels;  // parallel to model root table
  int truncation = 0;
  EncMode mode = EncMode::lattice;
  bool operator==(const EnclosureRep& o) const {
    return levels == o.levels && truncation == o.truncation && mode == o.mode;
  }
};

struct SectorFace {
  RatVec base;
  FacetAddress direction;
};

struct Chimney {
  RatVec base;
  FacetAddress base_facet;
  FacetAddress direction;
  EnclosureRep rep;
};

struct ChimneyClass {
  Tern splayed = Tern::undecided;
  Tern solid = Tern::undecided;
  bool full = false;
};

struct SpecialCheck {
  bool special = false;
  int truncation = 0;
  operator bool() const { return special; }
};

/* The model apartment: realization plus wall data.  Walls are the zero sets
   M(alpha, k) = {alpha(v) + k = 0} with k running over d * Z for the orbit
   class of alpha; imaginary roots carry exact rational levels when the
   policy admits them.  The working root set is truncated at height H. */
class ApartmentModel {
 public:
  ApartmentModel(CoxeterDatum d, Realization r, std::vector<Rat> gamma_step,
                 ImaginaryPolicy policy = ImaginaryPolicy::none, int truncation = 8);
  /* Standard realization, every value group Z. */
  static ApartmentModel standard(const CoxeterDatum& d,
                                 ImaginaryPolicy policy = ImaginaryPolicy::none,
                                 int truncation = 8);

  const WeylGroup& weyl() const { return weyl_; }
  const CoxeterDatum& datum() const { return weyl_.datum(); }
  const Realization& realization() const { return weyl_.realization(); }
  int dim() const { return weyl_.realization().dim(); }
  int truncation() const { return truncation_; }
  ImaginaryPolicy policy() const { return policy_; }

  const std::vector<ApartmentRoot>& roots() const { return roots_; }
  int root_count() const { return static_cast<int>(roots_.size()); }
  const ApartmentRoot& root(int idx) const { return roots_[idx]; }
  /* Index of the root with the given coordinates; -1 when absent. */
  int root_index(const std::vector<long long>& coords) const;
  int opposite(int idx) const { return opposite_[idx]; }
  /* Value group step of a real root; nullopt for imaginary ones (dense). */
  std::optional<Rat> gamma(int idx) const;
  Rat gamma_step(int orbit_class) const { return gamma_step_[orbit_class]; }

  /* Sign pattern of a root on the closed cone of a vectorial facet. */
  enum class ConeSign { vanishes, nonnegative, mixed };
  ConeSign cone_sign(int idx, const FacetAddress& dir) const;

  /* Translation lattice generator d_i * alphavee_i. */
  RatVec lattice_generator(int i) const;

 private:
  WeylGroup weyl_;
  std::vector<Rat> gamma_step_;
  ImaginaryPolicy policy_;
  int truncation_;
  std::vector<ApartmentRoot> roots_;
  std::vector<int> opposite_;
  std::map<std::vector<long long>, int> index_;
};

EnclosureRep enclose(const ApartmentModel& m, const std::vector<RatVec>& points,
                     EncMode mode = EncMode::lattice);
bool contains(const ApartmentModel& m, const EnclosureRep& e, const RatVec& point);

std::vector<std::pair<int, Rat>> walls_through(const ApartmentModel& m, const RatVec& x);
SpecialCheck is_special(const ApartmentModel& m, const RatVec& x);

/* Hull of the face x + closed direction cone, germ levels at the base. */
EnclosureRep sector_face_rep(const ApartmentModel& m, const SectorFace& f,
                             EncMode mode = EncMode::lattice);
Chimney make_chimney(const ApartmentModel& m, const RatVec& base,
                     const FacetAddress& base_facet, const FacetAddress& direction,
                     EncMode mode = EncMode::lattice);

ChimneyClass classify_chimney(const ApartmentModel& m, const Chimney& c);

/* Membership of xi in the closed cone of the direction facet. */
bool in_closed_direction(const ApartmentModel& m, const FacetAddress& dir, const RatVec& xi);
SectorFace shorten(const ApartmentModel& m, const SectorFace& f, const RatVec& xi);
Chimney shorten(const ApartmentModel& m, const Chimney& c, const RatVec& xi);

/* Chimney germs agree when the directions match and every level constraint
   that survives arbitrary shortening matches. */
bool germ_equal(const ApartmentModel& m, const Chimney& a, const Chimney& b);

/* v |-> lin * v + offset; the affine Weyl group acting on the apartment. */
struct AffineMap {
  RatMat lin;
  RatVec offset;
};
RatVec apply_map(const AffineMap& f, const RatVec& v);
AffineMap compose(const AffineMap& f, const AffineMap& g);
AffineMap inverse_map(const AffineMap& f);
AffineMap affine_from(const ApartmentModel& m, const GroupElement& w, const RatVec& translate);

/* Image enclosure under an affine Weyl map: levels transport along roots.
   A root whose image leaves the truncated working set throws when
   strict_roots, and is dropped otherwise. */
EnclosureRep transform(const ApartmentModel& m, const EnclosureRep& e, const GroupElement& w,
                       const RatVec& translate, bool strict_roots = true);

}  // namespace masure
