#include "masure/coxeter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace masure {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

int bond_order_from_product(long long p, int i, int j) {
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default:
      if (p >= 4) return kInfiniteOrder;
      std::ostringstream os;
      os << "invalid Cartan product a(" << i << "," << j << ")*a(" << j << "," << i
         << ") = " << p;
      throw InputError(os.str());
  }
}

std::pair<long long, long long> cartan_pair_from_order(int m) {
  switch (m) {
    case 2: return {0, 0};
    case 3: return {-1, -1};
    case 4: return {-1, -2};
    case 6: return {-1, -3};
    case kInfiniteOrder: return {-2, -2};
    default: {
      std::ostringstream os;
      os << "bond order " << m << " has no integral realization; supported orders are 2, 3, 4, 6 and 0 (infinite)";
      throw InputError(os.str());
    }
  }
}

/* Root coordinates grow geometrically with word length in indefinite type, so
   descent tests run on arbitrary-precision integers. */
std::vector<mpz_class> act_word_exact(const CoxeterDatum& d, std::span<const int> word,
                                      std::vector<mpz_class> c) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int l = *it;
    mpz_class pairing = 0;
    for (int j = 0; j < d.rank(); ++j)
      if (c[j] != 0) pairing += c[j] * static_cast<long>(d.a(l, j));
    c[l] -= pairing;
  }
  return c;
}

std::vector<std::vector<int>> diagram_components(const CoxeterDatum& d) {
  int n = d.rank();
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = nc;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v)
        if (comp[v] < 0 && d.a(u, v) != 0) {
          comp[v] = nc;
          q.push(v);
        }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(nc);
  for (int i = 0; i < n; ++i) out[comp[i]].push_back(i);
  return out;
}

Rat principal_minor(const CoxeterDatum& d, const std::vector<int>& S) {
  int k = static_cast<int>(S.size());
  RatMat m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m.at(i, j) = Rat(static_cast<long>(d.a(S[i], S[j])));
  return mat_det(m);
}

bool all_principal_minors_positive(const CoxeterDatum& d, const std::vector<int>& S) {
  int k = static_cast<int>(S.size());
  require(k <= 24, "sphericity classifier limited to 24 generators");
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> sub;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.push_back(S[i]);
    if (principal_minor(d, sub) <= 0) return false;
  }
  return true;
}

enum class BlockType { finite, affine, indefinite };

BlockType classify_block(const CoxeterDatum& d, const std::vector<int>& S) {
  if (all_principal_minors_positive(d, S)) return BlockType::finite;
  if (principal_minor(d, S) != 0) return BlockType::indefinite;
  int k = static_cast<int>(S.size());
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<int> sub;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.push_back(S[i]);
    if (static_cast<int>(sub.size()) == k) continue;
    if (principal_minor(d, sub) <= 0) return BlockType::indefinite;
  }
  return BlockType::affine;
}

std::vector<long long> null_root_on_block(const CoxeterDatum& d, const std::vector<int>& S) {
  int k = static_cast<int>(S.size());
  RatMat m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m.at(i, j) = Rat(static_cast<long>(d.a(S[i], S[j])));
  std::vector<RatVec> ker = kernel_basis(m);
  require(ker.size() == 1, "affine block must have one-dimensional radical");
  RatVec c = ker[0];
  mpz_class lcm_den(1);
  for (const Rat& x : c) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<mpz_class> num(k);
  mpz_class g(0);
  for (int i = 0; i < k; ++i) {
    Rat scaled = c[i] * Rat(lcm_den);
    num[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num[i].get_mpz_t());
  }
  std::vector<long long> out(d.rank(), 0);
  bool flip = false;
  for (int i = 0; i < k; ++i)
    if (num[i] != 0) { flip = num[i] < 0; break; }
  for (int i = 0; i < k; ++i) {
    mpz_class v = num[i] / g;
    if (flip) v = -v;
    require(v > 0, "null root must have positive coordinates on its block");
    out[S[i]] = v.get_si();
  }
  return out;
}

}  // namespace

CoxeterDatum CoxeterDatum::from_gcm(std::vector<std::vector<long long>> a) {
  int n = static_cast<int>(a.size());
  require(n >= 1, "datum needs at least one generator");
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(a[i].size()) == n, "Cartan matrix must be square");
    require(a[i][i] == 2, "Cartan diagonal must equal 2");
    m[i][i] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      require(a[i][j] <= 0, "off-diagonal Cartan entries must be <= 0");
      require((a[i][j] == 0) == (a[j][i] == 0), "Cartan zero pattern must be symmetric");
      if (j > i) {
        int order = bond_order_from_product(a[i][j] * a[j][i], i, j);
        m[i][j] = m[j][i] = order;
      }
    }
  CoxeterDatum d;
  d.rank_ = n;
  d.m_ = std::move(m);
  d.a_ = std::move(a);
  d.finish();
  return d;
}

CoxeterDatum CoxeterDatum::from_coxeter_matrix(std::vector<std::vector<int>> m) {
  int n = static_cast<int>(m.size());
  require(n >= 1, "datum needs at least one generator");
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(m[i].size()) == n, "Coxeter matrix must be square");
    require(m[i][i] == 1, "Coxeter diagonal must equal 1");
    a[i][i] = 2;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      require(m[i][j] == m[j][i], "Coxeter matrix must be symmetric");
      require(m[i][j] == kInfiniteOrder || m[i][j] >= 2, "off-diagonal orders must be >= 2 or 0 (infinite)");
      auto [ij, ji] = cartan_pair_from_order(m[i][j]);
      a[i][j] = ij;
      a[j][i] = ji;
    }
  CoxeterDatum d;
  d.rank_ = n;
  d.m_ = std::move(m);
  d.a_ = std::move(a);
  d.finish();
  return d;
}

CoxeterDatum CoxeterDatum::from_parts(std::vector<std::vector<int>> m,
                                      std::vector<std::vector<long long>> a) {
  CoxeterDatum d = from_gcm(std::move(a));
  require(m.size() == d.m_.size(), "Coxeter and Cartan matrices disagree in size");
  for (int i = 0; i < d.rank_; ++i) {
    require(m[i].size() == d.m_[i].size(), "Coxeter matrix must be square");
    for (int j = 0; j < d.rank_; ++j)
      require(m[i][j] == d.m_[i][j], "Coxeter matrix inconsistent with Cartan matrix");
  }
  return d;
}

void CoxeterDatum::finish() {
  orbit_class_.assign(rank_, -1);
  std::vector<int> parent(rank_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < rank_; ++i)
    for (int j = i + 1; j < rank_; ++j)
      if (m_[i][j] != kInfiniteOrder && m_[i][j] % 2 == 1) parent[find(i)] = find(j);
  int next = 0;
  for (int i = 0; i < rank_; ++i) {
    int r = find(i);
    if (orbit_class_[r] < 0) orbit_class_[r] = next++;
    orbit_class_[i] = orbit_class_[r];
  }
  orbit_class_count_ = next;

  int affine_blocks = 0, indefinite_blocks = 0;
  for (const auto& block : diagram_components(*this)) {
    switch (classify_block(*this, block)) {
      case BlockType::finite:
        break;
      case BlockType::affine:
        ++affine_blocks;
        affine_block_ = block;
        delta_ = null_root_on_block(*this, block);
        break;
      case BlockType::indefinite:
        ++indefinite_blocks;
        break;
    }
  }
  if (indefinite_blocks > 0 || affine_blocks > 1) {
    kind_ = DatumKind::indefinite;
    if (affine_blocks != 1) {
      delta_.clear();
      affine_block_.clear();
    }
  } else if (affine_blocks == 1) {
    kind_ = DatumKind::affine;
  } else {
    kind_ = DatumKind::finite;
  }
}

Realization Realization::standard(const CoxeterDatum& d) {
  int k = d.rank();
  std::vector<RatVec> forms(k, RatVec(k, Rat(0)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) forms[j][i] = Rat(static_cast<long>(d.a(i, j)));

  /* Row basis of the forms restricted to the first k coordinates; dependent
     rows get one fresh coordinate each, giving dimension 2k - rank(a). */
  std::vector<int> dependent;
  {
    RatMat sel(0, k);
    int rank_so_far = 0;
    for (int j = 0; j < k; ++j) {
      RatMat trial(rank_so_far + 1, k);
      for (int r = 0; r < rank_so_far; ++r)
        for (int c = 0; c < k; ++c) trial.at(r, c) = sel.at(r, c);
      for (int c = 0; c < k; ++c) trial.at(rank_so_far, c) = forms[j][c];
      if (mat_rank(trial) > rank_so_far) {
        sel = trial;
        ++rank_so_far;
      } else {
        dependent.push_back(j);
      }
    }
  }
  int n = k + static_cast<int>(dependent.size());
  std::vector<RatVec> alpha(k, RatVec(n, Rat(0)));
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < k; ++c) alpha[j][c] = forms[j][c];
  for (size_t t = 0; t < dependent.size(); ++t) alpha[dependent[t]][k + static_cast<int>(t)] = 1;
  std::vector<RatVec> alphavee(k, RatVec(n, Rat(0)));
  for (int i = 0; i < k; ++i) alphavee[i][i] = 1;
  return custom(d, n, std::move(alpha), std::move(alphavee));
}

Realization Realization::custom(const CoxeterDatum& d, int dim,
                                std::vector<RatVec> alpha,
                                std::vector<RatVec> alphavee) {
  int k = d.rank();
  require(static_cast<int>(alpha.size()) == k && static_cast<int>(alphavee.size()) == k,
          "realization needs one root and one coroot per generator");
  for (int i = 0; i < k; ++i)
    require(static_cast<int>(alpha[i].size()) == dim &&
                static_cast<int>(alphavee[i].size()) == dim,
            "realization vectors must match the declared dimension");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      require(dot(alpha[j], alphavee[i]) == Rat(static_cast<long>(d.a(i, j))),
              "realization pairing must reproduce the Cartan matrix");
  RatMat rows(k, dim);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < dim; ++c) rows.at(i, c) = alpha[i][c];
  require(mat_rank(rows) == k, "simple roots must be linearly independent forms");

  Realization r;
  r.dim_ = dim;
  r.rank_ = k;
  r.alpha_ = std::move(alpha);
  r.alphavee_ = std::move(alphavee);
  r.finish(d);
  return r;
}

void Realization::finish(const CoxeterDatum&) {
  refl_.clear();
  for (int i = 0; i < rank_; ++i) {
    RatMat m = RatMat::identity(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m.at(r, c) -= alphavee_[i][r] * alpha_[i][c];
    refl_.push_back(std::move(m));
  }
}

RatVec Realization::root_form(std::span<const long long> coords) const {
  RatVec c(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) c[i] = Rat(static_cast<long>(coords[i]));
  return root_form(c);
}

RatVec Realization::root_form(const RatVec& coords) const {
  RatVec f(dim_, Rat(0));
  for (int i = 0; i < rank_; ++i)
    if (coords[i] != 0)
      for (int c = 0; c < dim_; ++c) f[c] += coords[i] * alpha_[i][c];
  return f;
}

std::optional<RatVec> Realization::form_coords(const RatVec& form) const {
  RatMat m(dim_, rank_);
  for (int i = 0; i < rank_; ++i)
    for (int c = 0; c < dim_; ++c) m.at(c, i) = alpha_[i][c];
  return solve(m, form);
}

WeylGroup::WeylGroup(CoxeterDatum d, Realization r) : datum_(std::move(d)), real_(std::move(r)) {}

WeylGroup::WeylGroup(CoxeterDatum d) : datum_(d), real_(Realization::standard(datum_)) {}

GroupElement WeylGroup::identity() const {
  return {RatMat::identity(real_.dim()), RatMat::identity(real_.dim()), {}};
}

GroupElement WeylGroup::simple(int i) const {
  return {real_.reflection(i), real_.reflection(i), {i}};
}

std::vector<long long> WeylGroup::act_on_root(std::span<const int> word,
                                              std::span<const long long> coords) const {
  std::vector<long long> c(coords.begin(), coords.end());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int l = *it;
    long long pairing = 0;
    for (int j = 0; j < datum_.rank(); ++j) pairing += c[j] * datum_.a(l, j);
    c[l] -= pairing;
  }
  return c;
}

RatVec WeylGroup::act_on_root(std::span<const int> word, const RatVec& coords) const {
  RatVec c(coords);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int l = *it;
    Rat pairing(0);
    for (int j = 0; j < datum_.rank(); ++j)
      if (c[j] != 0) pairing += c[j] * Rat(static_cast<long>(datum_.a(l, j)));
    c[l] -= pairing;
  }
  return c;
}

GroupElement WeylGroup::append(const GroupElement& w, int i) const {
  require(i >= 0 && i < datum_.rank(), "generator index out of range");
  std::vector<mpz_class> e(datum_.rank(), 0);
  e[i] = 1;
  std::vector<mpz_class> img = act_word_exact(datum_, w.word, std::move(e));
  bool ascent = true;
  for (const mpz_class& c : img)
    if (c < 0) { ascent = false; break; }

  if (ascent) {
    GroupElement out;
    out.word = w.word;
    out.word.push_back(i);
    out.mat = mat_mul(w.mat, real_.reflection(i));
    out.inv = mat_mul(real_.reflection(i), w.inv);
    return out;
  }

  /* Length drops: by the exchange property some letter of the reduced word
     can be deleted to give a reduced word for w * r_i. */
  RatMat target = mat_mul(w.mat, real_.reflection(i));
  int m = w.length();
  std::vector<RatMat> prefix(m + 1), suffix(m + 1);
  prefix[0] = RatMat::identity(real_.dim());
  for (int t = 0; t < m; ++t) prefix[t + 1] = mat_mul(prefix[t], real_.reflection(w.word[t]));
  suffix[m] = RatMat::identity(real_.dim());
  for (int t = m - 1; t >= 0; --t) suffix[t] = mat_mul(real_.reflection(w.word[t]), suffix[t + 1]);
  for (int t = 0; t < m; ++t) {
    if (!(mat_mul(prefix[t], suffix[t + 1]) == target)) continue;
    GroupElement out;
    out.word = w.word;
    out.word.erase(out.word.begin() + t);
    out.mat = target;
    out.inv = mat_mul(real_.reflection(i), w.inv);
    return out;
  }
  throw std::logic_error("exchange property failed; datum is inconsistent");
}

GroupElement WeylGroup::reduce(std::span<const int> word) const {
  GroupElement w = identity();
  for (int l : word) w = append(w, l);
  return w;
}

GroupElement WeylGroup::mul(const GroupElement& x, const GroupElement& y) const {
  GroupElement w = x;
  for (int l : y.word) w = append(w, l);
  return w;
}

GroupElement WeylGroup::inverse(const GroupElement& w) const {
  GroupElement out;
  out.mat = w.inv;
  out.inv = w.mat;
  out.word.assign(w.word.rbegin(), w.word.rend());
  return out;
}

bool WeylGroup::right_descent(const GroupElement& w, int i) const {
  std::vector<mpz_class> e(datum_.rank(), 0);
  e[i] = 1;
  std::vector<mpz_class> img = act_word_exact(datum_, w.word, std::move(e));
  for (const mpz_class& c : img)
    if (c < 0) return true;
  return false;
}

bool WeylGroup::left_descent(const GroupElement& w, int i) const {
  GroupElement winv = inverse(w);
  return right_descent(winv, i);
}

bool WeylGroup::bruhat_leq(const GroupElement& u, const GroupElement& w) const {
  GroupElement uu = u, ww = w;
  while (ww.length() > 0) {
    if (uu.length() == 0) return true;
    if (uu.length() > ww.length()) return false;
    int s = ww.word.back();
    ww = append(ww, s);
    if (right_descent(uu, s)) uu = append(uu, s);
  }
  return uu.length() == 0;
}

int WeylGroup::product_order(int i, int j, int cap) const {
  RatMat p = mat_mul(real_.reflection(i), real_.reflection(j));
  RatMat acc = RatMat::identity(real_.dim());
  for (int k = 1; k <= cap; ++k) {
    acc = mat_mul(acc, p);
    if (acc == RatMat::identity(real_.dim())) return k;
  }
  /* No finite order up to the cap; certify divergence by monotone growth of a
     root orbit.  r_j fixes the height-1 root e_i only up to adding e_j, so the
     iterates of e_i under r_i r_j stay positive and strictly gain height
     exactly when the product has infinite order. */
  std::vector<mpz_class> c(datum_.rank(), 0);
  c[i] = 1;
  std::vector<int> pair = {i, j};
  mpz_class prev = 1;
  for (int k = 0; k < cap; ++k) {
    c = act_word_exact(datum_, pair, std::move(c));
    mpz_class h = 0;
    for (const mpz_class& x : c) {
      if (x < 0) throw std::logic_error("order certification failed beyond cap");
      h += x;
    }
    if (h <= prev) throw std::logic_error("order certification failed beyond cap");
    prev = h;
  }
  return kInfiniteOrder;
}

std::vector<GroupElement> WeylGroup::ball(int max_length) const {
  std::vector<GroupElement> out;
  std::set<RatMat> seen;
  std::vector<GroupElement> frontier = {identity()};
  seen.insert(frontier[0].mat);
  out.push_back(frontier[0]);
  for (int len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<GroupElement> next;
    for (const GroupElement& w : frontier)
      for (int i = 0; i < datum_.rank(); ++i) {
        GroupElement wi = append(w, i);
        if (wi.length() != len) continue;
        if (seen.insert(wi.mat).second) next.push_back(std::move(wi));
      }
    std::sort(next.begin(), next.end(),
              [](const GroupElement& a, const GroupElement& b) { return a.word < b.word; });
    for (const GroupElement& w : next) out.push_back(w);
    frontier = std::move(next);
  }
  return out;
}

std::optional<std::vector<GroupElement>> WeylGroup::enumerate(size_t cap) const {
  std::vector<GroupElement> out;
  std::set<RatMat> seen;
  std::vector<GroupElement> frontier = {identity()};
  seen.insert(frontier[0].mat);
  out.push_back(frontier[0]);
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const GroupElement& w : frontier)
      for (int i = 0; i < datum_.rank(); ++i) {
        GroupElement wi = append(w, i);
        if (wi.length() <= w.length()) continue;
        if (seen.insert(wi.mat).second) {
          next.push_back(std::move(wi));
          if (seen.size() > cap) return std::nullopt;
        }
      }
    std::sort(next.begin(), next.end(),
              [](const GroupElement& a, const GroupElement& b) { return a.word < b.word; });
    for (const GroupElement& w : next) out.push_back(w);
    frontier = std::move(next);
  }
  return out;
}

std::vector<RealRoot> roots_up_to_height(const CoxeterDatum& d, int H) {
  require(H >= 1, "height bound must be >= 1");
  int n = d.rank();
  std::map<std::vector<long long>, int> seen;
  std::vector<RealRoot> out;
  std::queue<std::vector<long long>> work;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> e(n, 0);
    e[i] = 1;
    seen.emplace(e, d.orbit_class(i));
    work.push(e);
  }
  while (!work.empty()) {
    std::vector<long long> c = work.front();
    work.pop();
    int cls = seen.at(c);
    for (int l = 0; l < n; ++l) {
      long long pairing = 0;
      for (int j = 0; j < n; ++j) pairing += c[j] * d.a(l, j);
      std::vector<long long> img = c;
      img[l] -= pairing;
      long long h = 0;
      bool nonneg = true;
      for (long long x : img) {
        h += x;
        if (x < 0) nonneg = false;
      }
      if (!nonneg || h > H) continue;
      if (seen.emplace(img, cls).second) work.push(img);
    }
  }
  for (const auto& [coords, cls] : seen) out.push_back({coords, cls});
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.coords < b.coords;
  });
  return out;
}

std::vector<std::vector<long long>> imaginary_roots_up_to_height(const CoxeterDatum& d,
                                                                 int H) {
  require(H >= 1, "height bound must be >= 1");
  int n = d.rank();

  auto is_imaginary = [&](std::vector<long long> c) {
    /* Walk toward the fundamental region; height strictly decreases. */
    for (;;) {
      int drop = -1;
      for (int i = 0; i < n && drop < 0; ++i) {
        long long pairing = 0;
        for (int j = 0; j < n; ++j) pairing += c[j] * d.a(i, j);
        if (pairing > 0) drop = i;
      }
      if (drop < 0) break;
      long long pairing = 0;
      for (int j = 0; j < n; ++j) pairing += c[j] * d.a(drop, j);
      c[drop] -= pairing;
      for (long long x : c)
        if (x < 0) return false;
    }
    bool any = false;
    for (long long x : c) any = any || x != 0;
    if (!any) return false;
    /* Support must be connected in the diagram. */
    std::vector<int> supp;
    for (int i = 0; i < n; ++i)
      if (c[i] != 0) supp.push_back(i);
    std::set<int> comp = {supp[0]};
    std::queue<int> q;
    q.push(supp[0]);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : supp)
        if (!comp.count(v) && d.a(u, v) != 0) {
          comp.insert(v);
          q.push(v);
        }
    }
    return comp.size() == supp.size();
  };

  std::vector<std::vector<long long>> out;
  std::vector<long long> c(n, 0);
  /* Depth-first walk over lattice points with height <= H. */
  auto walk = [&](auto&& self, int pos, long long left) -> void {
    if (pos == n) {
      if (left < H && is_imaginary(c)) out.push_back(c);
      return;
    }
    for (long long v = 0; v <= left; ++v) {
      c[pos] = v;
      self(self, pos + 1, left - v);
    }
    c[pos] = 0;
  };
  walk(walk, 0, H);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    long long ha = std::accumulate(a.begin(), a.end(), 0LL);
    long long hb = std::accumulate(b.begin(), b.end(), 0LL);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return out;
}

Tern is_spherical(const CoxeterDatum& d, const std::vector<int>& J, bool force_bfs,
                  size_t cap) {
  for (int i : J) require(i >= 0 && i < d.rank(), "generator index out of range");
  std::vector<int> S(J);
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (S.empty()) return Tern::yes;
  if (!force_bfs) return all_principal_minors_positive(d, S) ? Tern::yes : Tern::no;

  /* Enumerate the standard parabolic subgroup; closure certifies finiteness. */
  Realization r = Realization::standard(d);
  WeylGroup w(d, r);
  std::set<RatMat> seen;
  std::vector<GroupElement> frontier = {w.identity()};
  seen.insert(frontier[0].mat);
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const GroupElement& g : frontier)
      for (int i : S) {
        GroupElement gi = w.append(g, i);
        if (seen.insert(gi.mat).second) {
          next.push_back(std::move(gi));
          if (seen.size() > cap) return Tern::undecided;
        }
      }
    frontier = std::move(next);
  }
  return Tern::yes;
}

}  // namespace masure
