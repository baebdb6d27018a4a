#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "masure/apartment.hpp"

namespace masure {

/* No chart of the finite atlas witnesses the configuration; says nothing
   about the underlying geometry. */
struct IncompleteAtlas : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Identification of two charts on a domain: x in chart a equals
   w.mat * x + shift in chart b for x in the domain (a-coordinates). */
struct Gluing {
  int a = -1, b = -1;
  GroupElement w;
  RatVec shift;
  EnclosureRep domain;
};

struct MasurePoint {
  int chart = -1;
  RatVec coords;
};

struct Fold {
  GroupElement w_plus, w_minus;
  bool bruhat_ok = false;
};

/* Retraction image of a segment: polyline in the center's chart.  folds[i]
   sits at breakpoints[i+1]. */
struct FoldedSegment {
  std::vector<RatVec> breakpoints;
  std::vector<Fold> folds;
  bool positively_folded() const {
    for (const auto& f : folds)
      if (!f.bruhat_ok) return false;
    return true;
  }
};

struct CheckReport {
  std::string name;
  long long verified = 0, violations = 0, inconclusive = 0;
  long long enumerated = 0;
  std::vector<std::string> notes;  // details for failures, capped
  int truncation = 0;
  int path_cap = 0, word_cap = 0;
  long long sample_cap = 0;
  bool ok() const { return violations == 0; }
  void note(const std::string& s) {
    if (notes.size() < 32) notes.push_back(s);
  }
};

struct AxiomCheckOptions {
  int path_cap = 6;
  int word_cap = 8;
  long long sample_cap = 500;
  int segment_samples = 16;
  unsigned long long seed = 20240817ULL;
};

class Atlas {
 public:
  virtual ~Atlas() = default;
  Atlas(const Atlas&) = delete;
  Atlas& operator=(const Atlas&) = delete;

  const ApartmentModel& model() const { return model_; }
  virtual int chart_count() const = 0;
  virtual EnclosureRep window(int chart) const = 0;
  /* All gluings from chart a to chart b; empty when the charts are disjoint. */
  virtual std::vector<Gluing> gluings(int a, int b) const = 0;
  virtual std::vector<int> neighbors(int chart) const = 0;

  bool in_window(int chart, const RatVec& x) const;
  AffineMap gluing_map(const Gluing& g) const;

  /* Least chart id whose window contains the point, reached through gluings. */
  virtual MasurePoint normal_form(const MasurePoint& p, int path_cap = 6) const;
  bool same_point(const MasurePoint& p, const MasurePoint& q, int path_cap = 6) const;
  /* Some chart containing both points, with transported coordinates. */
  virtual std::optional<std::tuple<int, RatVec, RatVec>> common_chart(
      const MasurePoint& p, const MasurePoint& q, int path_cap = 6) const;

  /* Image of p under the retraction onto center_chart with the given center
     germ; the center must be a splayed full chimney germ. */
  virtual RatVec retract_point(int center_chart, const Chimney& center,
                               const MasurePoint& p, int path_cap = 6) const;

 protected:
  explicit Atlas(ApartmentModel m) : model_(std::move(m)) {}
  ApartmentModel model_;
};

/* The generic gluing-graph searches, callable on any atlas regardless of its
   own shortcuts; the shortcuts must agree with these. */
MasurePoint normal_form_bfs(const Atlas& atlas, const MasurePoint& p, int path_cap = 6);
std::optional<std::tuple<int, RatVec, RatVec>> common_chart_bfs(const Atlas& atlas,
                                                               const MasurePoint& p,
                                                               const MasurePoint& q,
                                                               int path_cap = 6);
RatVec retract_point_bfs(const Atlas& atlas, int center_chart, const Chimney& center,
                         const MasurePoint& p, int path_cap = 6);

/* Charts are the bi-infinite geodesics of the (q+1)-regular tree meeting the
   window of the given radius around the base vertex, i.e. unordered pairs of
   window boundary leaves; vertices sit at integer coordinates. */
class TreeAtlas final : public Atlas {
 public:
  TreeAtlas(int q, int depth, long long max_charts = 20000);

  int chart_count() const override { return static_cast<int>(chart_leaves_.size()); }
  EnclosureRep window(int chart) const override;
  std::vector<Gluing> gluings(int a, int b) const override;
  std::vector<int> neighbors(int chart) const override;
  MasurePoint normal_form(const MasurePoint& p, int path_cap = 6) const override;
  std::optional<std::tuple<int, RatVec, RatVec>> common_chart(
      const MasurePoint& p, const MasurePoint& q, int path_cap = 6) const override;
  RatVec retract_point(int center_chart, const Chimney& center, const MasurePoint& p,
                       int path_cap = 6) const override;

  int q() const { return q_; }
  int depth() const { return depth_; }
  int vertex_count() const { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_[v]; }
  int vertex_depth(int v) const { return depth_of_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  const std::vector<int>& leaves() const { return leaves_; }
  bool is_leaf(int v) const { return depth_of_[v] == depth_; }

  std::pair<int, int> leaves_of(int chart) const { return chart_leaves_[chart]; }
  int chart_of_leaves(int u, int v) const;
  const std::vector<int>& path(int chart) const { return paths_[chart]; }
  int window_length(int chart) const { return static_cast<int>(paths_[chart].size()) - 1; }
  /* Position of the vertex on the chart's geodesic; -1 when absent. */
  int position_in(int chart, int v) const { return pos_[chart][v]; }

  /* A point of the tree: a vertex (b < 0) or the interior point of the edge
     from a to its child b at parameter t in (0,1). */
  struct TreePoint {
    int a = -1, b = -1;
    Rat t = Rat(0);
    bool is_vertex() const { return b < 0; }
    bool operator==(const TreePoint& o) const { return a == o.a && b == o.b && t == o.t; }
  };
  TreePoint to_tree(int chart, const Rat& x) const;
  std::optional<Rat> to_chart(int chart, const TreePoint& p) const;
  TreePoint locate_point(const MasurePoint& p) const;

  int dist(int u, int v) const;
  Rat tree_dist(const TreePoint& x, const TreePoint& y) const;
  std::vector<int> path_between(int u, int v) const;
  /* Closest chart vertex to an off-chart point (the attaching vertex). */
  int junction(int chart, const TreePoint& p) const;
  /* Retraction in tree terms: center_end +1 folds toward low positions,
     -1 toward high ones. */
  Rat tree_retract(int center_chart, int center_end, const TreePoint& p) const;
  /* A chart through both points (geodesic extended to window leaves). */
  int chart_through(const TreePoint& x, const TreePoint& y) const;
  std::vector<int> charts_through_vertex(int v) const;

  /* The line apartment: A1 with walls on the integers. */
  static ApartmentModel line_model();

 private:
  int q_ = 0, depth_ = 0;
  std::vector<int> parent_, depth_of_;
  std::vector<std::vector<int>> children_;
  std::vector<int> leaves_, leaf_rank_;
  std::vector<std::pair<int, int>> chart_leaves_;
  std::vector<std::vector<int>> paths_;
  std::vector<std::vector<short>> pos_;
  std::vector<int> least_chart_vertex_, least_chart_edge_;
  std::vector<EnclosureRep> windows_;
};

/* Product of two tree atlases over the A1 x A1 grid model; chart ids are
   c1 * factor(1).chart_count() + c2. */
class ProductTreeAtlas final : public Atlas {
 public:
  ProductTreeAtlas(int q1, int q2, int depth, long long max_charts = 200000);

  int chart_count() const override;
  EnclosureRep window(int chart) const override;
  std::vector<Gluing> gluings(int a, int b) const override;
  std::vector<int> neighbors(int chart) const override;
  MasurePoint normal_form(const MasurePoint& p, int path_cap = 6) const override;
  std::optional<std::tuple<int, RatVec, RatVec>> common_chart(
      const MasurePoint& p, const MasurePoint& q, int path_cap = 6) const override;
  RatVec retract_point(int center_chart, const Chimney& center, const MasurePoint& p,
                       int path_cap = 6) const override;

  const TreeAtlas& factor(int i) const { return i == 0 ? t1_ : t2_; }
  int chart_id(int c1, int c2) const { return c1 * t2_.chart_count() + c2; }
  std::pair<int, int> factors_of(int chart) const;

  static ApartmentModel grid_model();

 private:
  TreeAtlas t1_, t2_;
};

/* Atlas given by explicit windows and gluings; construction rejects gluings
   whose translation moves some wall off the wall system. */
struct AtlasSpec {
  struct GluingSpec {
    int a = -1, b = -1;
    std::vector<int> word;
    RatVec shift;
    EnclosureRep domain;
  };
  std::vector<EnclosureRep> windows;
  std::vector<GluingSpec> gluings;
};

class ExplicitAtlas final : public Atlas {
 public:
  ExplicitAtlas(ApartmentModel m, AtlasSpec spec);

  int chart_count() const override { return static_cast<int>(windows_.size()); }
  EnclosureRep window(int chart) const override;
  std::vector<Gluing> gluings(int a, int b) const override;
  std::vector<int> neighbors(int chart) const override;

 private:
  std::vector<EnclosureRep> windows_;
  std::vector<std::vector<Gluing>> by_chart_;  // outgoing, indexed by a
};

RatVec retract(const Atlas& atlas, int center_chart, const Chimney& center,
               const MasurePoint& p);
FoldedSegment retract_segment(const Atlas& atlas, int center_chart, const Chimney& center,
                              const MasurePoint& x, const MasurePoint& y);
bool global_leq(const Atlas& atlas, const MasurePoint& x, const MasurePoint& y);

CheckReport check_MA2(const Atlas& atlas, const AxiomCheckOptions& opts = {});
CheckReport check_MA4(const Atlas& atlas, const AxiomCheckOptions& opts = {});
CheckReport check_MAO(const Atlas& atlas, const AxiomCheckOptions& opts = {});
CheckReport check_thickness(const TreeAtlas& atlas);
CheckReport check_half_apartment_unions(const TreeAtlas& atlas, long long cap = -1);
CheckReport check_cocycles(const Atlas& atlas, long long samples = 200);

/* Interior direction of the facet cone, pulled through the address. */
RatVec direction_vector(const ApartmentModel& m, const FacetAddress& dir);

}  // namespace masure
