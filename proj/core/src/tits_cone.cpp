#include "masure/tits_cone.hpp"

#include <algorithm>

namespace masure {

namespace {

/* Descend v toward the fundamental chamber closure; nullopt when the step
   budget runs out. */
std::optional<std::pair<FacetAddress, int>> descend(const WeylGroup& wg, RatVec v,
                                                    int sign, int max_steps) {
  const Realization& re = wg.realization();
  GroupElement w = wg.identity();
  int steps = 0;
  while (true) {
    int neg = -1;
    for (int i = 0; i < wg.rank(); ++i)
      if (re.eval_alpha(i, v) < 0) { neg = i; break; }
    if (neg < 0) break;
    if (++steps > max_steps) return std::nullopt;
    v = mat_apply(re.reflection(neg), v);
    w = wg.append(w, neg);
  }
  std::vector<int> J;
  for (int i = 0; i < wg.rank(); ++i)
    if (re.eval_alpha(i, v) == 0) J.push_back(i);
  FacetAddress addr{sign, min_coset_rep(wg, w, J), J};
  return std::make_pair(addr, steps);
}

bool in_core_subspace(const WeylGroup& wg, const RatVec& v) {
  for (int i : wg.datum().affine_block())
    if (wg.realization().eval_alpha(i, v) != 0) return false;
  return true;
}

}  // namespace

GroupElement min_coset_rep(const WeylGroup& wg, GroupElement g, const std::vector<int>& J) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j : J)
      if (wg.right_descent(g, j)) {
        g = wg.append(g, j);
        changed = true;
        break;
      }
  }
  return g;
}

Rat delta_eval(const WeylGroup& wg, const RatVec& v) {
  const auto& delta = wg.datum().delta();
  if (delta.empty()) throw InputError("datum has no affine block");
  Rat out(0);
  for (int i = 0; i < wg.rank(); ++i)
    if (delta[i] != 0) out += Rat(static_cast<long>(delta[i])) * wg.realization().eval_alpha(i, v);
  return out;
}

LocateResult locate(const WeylGroup& wg, const RatVec& v, int max_steps) {
  if (static_cast<int>(v.size()) != wg.realization().dim())
    throw InputError("vector dimension does not match the realization");

  const CoxeterDatum& d = wg.datum();
  if (d.kind() == DatumKind::affine) {
    Rat dv = delta_eval(wg, v);
    int s = rat_sign(dv);
    if (s == 0 && !in_core_subspace(wg, v)) return {LocateStatus::not_in_cone, {}, 0};
    int sign = (s < 0) ? -1 : +1;
    RatVec u = (s < 0) ? vec_scale(Rat(-1), v) : v;
    auto res = descend(wg, u, sign, max_steps);
    if (!res) return {LocateStatus::unknown, {}, max_steps};
    return {LocateStatus::located, res->first, res->second};
  }

  auto res = descend(wg, v, +1, max_steps);
  if (res) return {LocateStatus::located, res->first, res->second};
  if (d.kind() == DatumKind::finite) return {LocateStatus::unknown, {}, max_steps};
  auto neg = descend(wg, vec_scale(Rat(-1), v), -1, max_steps);
  if (neg) return {LocateStatus::located, neg->first, neg->second};
  return {LocateStatus::unknown, {}, max_steps};
}

ConePosition cone_membership(const WeylGroup& wg, const RatVec& v, int max_steps) {
  LocateResult r = locate(wg, v, max_steps);
  switch (r.status) {
    case LocateStatus::not_in_cone: return ConePosition::outside;
    case LocateStatus::unknown: return ConePosition::unknown;
    case LocateStatus::located: break;
  }
  if (r.address.sign < 0 && r.address.J.size() != static_cast<size_t>(wg.rank())) {
    /* On the opposite side only.  The affine certificate makes this exact;
       without one the positive side may merely have exceeded its budget. */
    return wg.datum().kind() == DatumKind::affine ? ConePosition::outside
                                                  : ConePosition::unknown;
  }
  Tern sph = is_spherical(wg.datum(), r.address.J);
  if (sph == Tern::undecided) return ConePosition::unknown;
  return sph == Tern::yes ? ConePosition::interior : ConePosition::boundary;
}

Tern vec_leq(const WeylGroup& wg, const RatVec& x, const RatVec& y, int max_steps) {
  RatVec v = vec_sub(y, x);
  LocateResult r = locate(wg, v, max_steps);
  switch (r.status) {
    case LocateStatus::not_in_cone: return Tern::no;
    case LocateStatus::unknown: return Tern::undecided;
    case LocateStatus::located: break;
  }
  if (r.address.sign > 0) return Tern::yes;
  if (r.address.J.size() == static_cast<size_t>(wg.rank())) return Tern::yes;
  /* Located only on the opposite side.  Affine data certifies exclusion via
     the null root; otherwise the positive search may just have timed out. */
  return wg.datum().kind() == DatumKind::affine ? Tern::no : Tern::undecided;
}

Tern vec_leq_closed(const WeylGroup& wg, const RatVec& x, const RatVec& y, int max_steps) {
  switch (wg.datum().kind()) {
    case DatumKind::finite: return Tern::yes;
    case DatumKind::affine: {
      RatVec v = vec_sub(y, x);
      return delta_eval(wg, v) >= 0 ? Tern::yes : Tern::no;
    }
    default: {
      /* No closure certificate for indefinite data; fall back to the cone
         itself, which only certifies the positive direction. */
      Tern t = vec_leq(wg, x, y, max_steps);
      return t == Tern::yes ? Tern::yes : Tern::undecided;
    }
  }
}

Tern vec_leq_open(const WeylGroup& wg, const RatVec& x, const RatVec& y, int max_steps) {
  RatVec v = vec_sub(y, x);
  if (vec_is_zero(v)) return Tern::yes;
  switch (cone_membership(wg, v, max_steps)) {
    case ConePosition::interior: return Tern::yes;
    case ConePosition::unknown: return Tern::undecided;
    default: return Tern::no;
  }
}

}  // namespace masure
