#include "approxlab/certificates.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace approxlab {

namespace {

TermPtr term_or(TermPtr t, const char* fallback) {
  return t ? std::move(t) : SetTerm::var(fallback);
}

}  // namespace

CoverCertificate CoverCertificate::make(TermPtr base_term, ElementSet base_set,
                                        ElementSet translates, TermPtr core_term,
                                        ElementSet core_set, Rat radius) {
  CoverCertificate cert{term_or(std::move(base_term), "base"), std::move(base_set),
                        std::move(translates),      term_or(std::move(core_term), "core"),
                        std::move(core_set),        std::move(radius)};
  if (!cert.verify())
    throw std::logic_error("cover certificate failed verification: " +
                           term_to_string(cert.base_term) + " is not within the translate cover");
  return cert;
}

bool CoverCertificate::verify() const {
  ElementSet covered = translates.product(core_set.thicken(radius));
  return base_set.subset_of(covered);
}

json CoverCertificate::to_json() const {
  json j;
  j["claim"] = "cover";
  j["base"] = term_to_string(base_term);
  j["base_size"] = base_set.count();
  j["translates"] = translates.indices();
  j["count"] = translates.count();
  j["core"] = term_to_string(core_term);
  j["radius"] = rat_to_json(radius);
  j["verified"] = verify();
  return j;
}

ElementSet useful_translate_pool(const ElementSet& target, const ElementSet& body,
                                 const Rat& radius) {
  return target.product(body.thicken(radius).inverse());
}

RoughCoverResult rough_cover(const ElementSet& target, const ElementSet& body, const Rat& radius,
                             const std::optional<ElementSet>& centers, const SolveOptions& opts,
                             TermPtr target_term, TermPtr body_term) {
  if (target.group().get() != body.group().get())
    throw std::invalid_argument("rough_cover mixes sets from different groups");
  const auto& g = *target.group();
  const GroupPtr gp = target.group();
  RoughCoverResult out;

  target_term = term_or(std::move(target_term), "base");
  body_term = term_or(std::move(body_term), "core");

  const std::vector<int> xs = target.indices();
  if (xs.empty()) {
    out.cover.value = 0;
    out.certificate = CoverCertificate::make(target_term, target, ElementSet(gp), body_term,
                                             body, radius);
    return out;
  }

  const ElementSet thick = body.thicken(radius);
  if (thick.empty()) {
    out.cover.status = SolveStatus::NoCover;
    return out;
  }
  const Bitset& tbits = thick.bits();

  std::vector<int> pool;
  if (centers) {
    if (centers->group().get() != gp.get())
      throw std::invalid_argument("rough_cover center pool from a different group");
    pool = centers->indices();
  } else {
    pool.resize(static_cast<std::size_t>(g.order()));
    for (int i = 0; i < g.order(); ++i) pool[static_cast<std::size_t>(i)] = i;
  }

  // Candidate mask for center a: which targets fall inside a·body·D_r(1),
  // i.e. a^-1·x in the thickened body.
  std::vector<Bitset> masks;
  std::vector<int> owner;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  for (int a : pool) {
    const int* row = g.mult_row(g.inverse(a));
    Bitset mask(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (tbits.test(static_cast<std::size_t>(row[xs[i]]))) mask.set(i);
    if (mask.none()) continue;
    auto& bucket = seen[mask.hash()];
    bool dup = false;
    for (std::size_t idx : bucket)
      if (masks[idx] == mask) {
        dup = true;
        break;
      }
    if (dup) continue;
    bucket.push_back(masks.size());
    masks.push_back(std::move(mask));
    owner.push_back(a);
  }

  CoverInstance inst;
  inst.universe = Bitset(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) inst.universe.set(i);
  inst.candidates = std::move(masks);
  SolveResult cover = exact_set_cover(inst, opts);

  out.cover.status = cover.status;
  out.cover.nodes = cover.nodes;
  out.cover.value = cover.value;
  out.cover.lower = cover.lower;
  out.cover.upper = cover.upper;
  for (int c : cover.witness) out.cover.witness.push_back(owner[static_cast<std::size_t>(c)]);
  std::sort(out.cover.witness.begin(), out.cover.witness.end());

  if (cover.status != SolveStatus::NoCover) {
    ElementSet delta(gp, Bitset::from_indices(static_cast<std::size_t>(g.order()),
                                              out.cover.witness));
    out.certificate = CoverCertificate::make(target_term, target, std::move(delta), body_term,
                                             body, radius);
  }
  return out;
}

json DetectResult::to_json() const {
  json j;
  j["passed"] = passed;
  j["determined"] = determined;
  j["reason"] = reason;
  j["cover"] = cover ? cover->to_json() : json(nullptr);
  j["certificate"] = certificate ? certificate->to_json() : json(nullptr);
  return j;
}

DetectResult is_metric_approx_subgroup(const ElementSet& X, int k, const Rat& r,
                                       const std::optional<ElementSet>& centers,
                                       const SolveOptions& opts) {
  DetectResult res;
  if (k < 0) throw std::invalid_argument("translate budget k must be nonnegative");
  if (!X.contains_identity()) {
    res.reason = "does not contain the identity";
    return res;
  }
  if (!X.is_symmetric()) {
    res.reason = "not symmetric";
    return res;
  }
  RoughCoverResult rc = rough_cover(X.power(2), X, r, centers, opts,
                                    SetTerm::power(SetTerm::var("X"), 2), SetTerm::var("X"));
  res.cover = rc.cover;
  switch (rc.cover.status) {
    case SolveStatus::NoCover:
      res.reason = "no translate cover of X*X exists";
      return res;
    case SolveStatus::Exact:
      if (rc.cover.value <= k) {
        res.passed = true;
        res.certificate = rc.certificate;
      } else {
        res.reason = "minimal translate count " + std::to_string(rc.cover.value) +
                     " exceeds k = " + std::to_string(k);
      }
      return res;
    case SolveStatus::Budget:
      if (rc.cover.upper <= k) {
        res.passed = true;  // a cover within k was found even though optimality is open
        res.certificate = rc.certificate;
      } else if (rc.cover.lower > k) {
        res.reason = "certified lower bound " + std::to_string(rc.cover.lower) +
                     " exceeds k = " + std::to_string(k);
      } else {
        res.determined = false;
        res.reason = "search budget exceeded with k inside the certified interval";
      }
      return res;
  }
  return res;
}

json CommensurabilityResult::to_json() const {
  json j;
  j["passed"] = passed;
  j["determined"] = determined;
  j["x_by_y"] = x_by_y.to_json();
  j["y_by_x"] = y_by_x.to_json();
  j["certificate_x_by_y"] = cert_x_by_y ? cert_x_by_y->to_json() : json(nullptr);
  j["certificate_y_by_x"] = cert_y_by_x ? cert_y_by_x->to_json() : json(nullptr);
  return j;
}

CommensurabilityResult commensurable(const ElementSet& X, const ElementSet& Y, int k,
                                     const Rat& r, const SolveOptions& opts) {
  CommensurabilityResult res;
  RoughCoverResult xy = rough_cover(X, Y, r, std::nullopt, opts, SetTerm::var("X"),
                                    SetTerm::var("Y"));
  RoughCoverResult yx = rough_cover(Y, X, r, std::nullopt, opts, SetTerm::var("Y"),
                                    SetTerm::var("X"));
  res.x_by_y = xy.cover;
  res.y_by_x = yx.cover;
  res.cert_x_by_y = xy.certificate;
  res.cert_y_by_x = yx.certificate;

  // -1 definitely over k, +1 definitely within, 0 undetermined.
  auto verdict = [k](const SolveResult& sr) {
    if (sr.status == SolveStatus::NoCover) return -1;
    if (sr.status == SolveStatus::Exact) return sr.value <= k ? 1 : -1;
    if (sr.upper <= k) return 1;
    if (sr.lower > k) return -1;
    return 0;
  };
  const int vx = verdict(xy.cover), vy = verdict(yx.cover);
  if (vx < 0 || vy < 0) {
    res.passed = false;
  } else if (vx > 0 && vy > 0) {
    res.passed = true;
  } else {
    res.determined = false;
  }
  return res;
}

json DisjointFamilyResult::to_json() const {
  json j;
  j["delta"] = delta.indices();
  j["delta_size"] = delta.count();
  j["l"] = rat_to_json(lipschitz.l);
  j["lipschitz_witness"] = json::array({lipschitz.x, lipschitz.a, lipschitz.b});
  j["certificate"] = certificate.to_json();
  json gate;
  gate["checked"] = gate_checked;
  gate["passed"] = gate_passed;
  if (k) {
    gate["k"] = rat_to_json(*k);
    gate["packing_x5"] = n5.to_json();
    gate["packing_x"] = n1.to_json();
    gate["delta_within_k"] = size_within_k;
  }
  j["growth_gate"] = gate;
  return j;
}

DisjointFamilyResult disjoint_translate_family(const ElementSet& X, const Rat& r,
                                               const std::optional<Rat>& k,
                                               const SolveOptions& opts) {
  if (!X.is_symmetric())
    throw std::invalid_argument("disjoint_translate_family requires a symmetric set");
  const GroupPtr gp = X.group();

  const ElementSet x4 = X.power(4);
  const ElementSet thick = X.thicken(r);  // D_r(X)
  ElementSet delta(gp);
  Bitset covered(static_cast<std::size_t>(gp->order()));
  x4.bits().for_each([&](std::size_t a) {
    ElementSet translate = thick.left_translate(static_cast<int>(a));
    if (!translate.bits().intersects(covered)) {
      delta.add(static_cast<int>(a));
      covered |= translate.bits();
    }
  });

  LipschitzResult lip = X.empty() ? LipschitzResult{Rat(0), -1, -1, -1}
                                  : lipschitz_constant(X, 2 * r);
  const Rat cert_radius = 2 * lip.l * r;
  CoverCertificate cert = CoverCertificate::make(
      SetTerm::power(SetTerm::var("X"), 4), x4, delta,
      SetTerm::power(SetTerm::var("X"), 2), X.power(2), cert_radius);

  DisjointFamilyResult res{std::move(delta), std::move(lip), std::move(cert),
                           k,               SolveResult{},   SolveResult{},
                           false,           false,           false};
  if (k) {
    res.n5 = packing_number(X.power(5), r, opts);
    res.n1 = packing_number(X, r, opts);
    res.gate_checked = res.n5.exact() && res.n1.exact();
    if (res.gate_checked) {
      res.gate_passed = Rat(res.n5.value) <= *k * Rat(res.n1.value);
      res.size_within_k = Rat(static_cast<long>(res.delta.count())) <= *k;
    }
  }
  return res;
}

}  // namespace approxlab
