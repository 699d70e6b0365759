#include "approxlab/zoo.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "approxlab/rng.hpp"

namespace approxlab {

namespace {

long long scale_num_ll(const Rat& scale) {
  if (!scale.get_num().fits_slong_p())
    throw std::invalid_argument("metric scale numerator too large");
  return scale.get_num().get_si();
}

long long scale_den_ll(const Rat& scale) {
  if (!scale.get_den().fits_slong_p())
    throw std::invalid_argument("metric scale denominator too large");
  return scale.get_den().get_si();
}

void require_positive_scale(const Rat& scale) {
  if (scale <= 0) throw std::invalid_argument("metric scale must be positive");
}

// Word lengths from the identity over right multiplication by `gens`
// (ascending order); -1 marks unreachable elements.
std::vector<int> word_lengths(const std::vector<int>& mult, int n, std::vector<int> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  depth[0] = 0;
  std::queue<int> queue;
  queue.push(0);
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop();
    for (int g : gens) {
      const int y = mult[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(g)];
      if (depth[static_cast<std::size_t>(y)] < 0) {
        depth[static_cast<std::size_t>(y)] = depth[static_cast<std::size_t>(x)] + 1;
        queue.push(y);
      }
    }
  }
  return depth;
}

GroupPtr finish_build(GroupData data, const GroupSpec& spec) {
  data.meta = json{{"spec", spec.to_json()}};
  BuildResult built = FiniteMetricGroup::build(data);
  if (!built.group) {
    std::string what = "constructed group failed validation";
    if (!built.report.issues.empty())
      what += ": " + built.report.issues.front().axiom + " (" +
              built.report.issues.front().detail + ")";
    throw std::logic_error(what);
  }
  return built.group;
}

GroupData build_cyclic_lee(const GroupSpec& spec) {
  if (spec.n < 1 || spec.n > 4096) throw std::invalid_argument("cyclic order out of range");
  require_positive_scale(spec.scale);
  const int n = static_cast<int>(spec.n);
  GroupData data;
  data.order = n;
  data.identity = 0;
  data.mult.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      data.mult[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  data.phi_form = true;
  data.den = scale_num_ll(spec.scale);
  const long long q = scale_den_ll(spec.scale);
  data.dist.resize(static_cast<std::size_t>(n));
  for (int z = 0; z < n; ++z)
    data.dist[static_cast<std::size_t>(z)] = static_cast<long long>(std::min(z, n - z)) * q;
  return data;
}

GroupData build_dihedral(const GroupSpec& spec) {
  if (spec.n < 1 || 2 * spec.n > 4096) throw std::invalid_argument("dihedral order out of range");
  require_positive_scale(spec.scale);
  const int n = static_cast<int>(spec.n);
  const int order = 2 * n;
  GroupData data;
  data.order = order;
  data.identity = 0;
  data.mult.resize(static_cast<std::size_t>(order) * order);
  auto idx = [n](int rot, int flip) { return rot + n * flip; };
  for (int i = 0; i < n; ++i)
    for (int f = 0; f < 2; ++f)
      for (int j = 0; j < n; ++j)
        for (int g = 0; g < 2; ++g) {
          const int rot = ((f == 0 ? i + j : i - j) % n + n) % n;
          data.mult[static_cast<std::size_t>(idx(i, f)) * order + idx(j, g)] = idx(rot, f ^ g);
        }
  std::vector<int> gens{idx(1 % n, 0), idx((n - 1) % n, 0), idx(0, 1)};
  const std::vector<int> depth = word_lengths(data.mult, order, gens);
  data.phi_form = true;
  data.den = scale_num_ll(spec.scale);
  const long long q = scale_den_ll(spec.scale);
  data.dist.resize(static_cast<std::size_t>(order));
  for (int z = 0; z < order; ++z) data.dist[static_cast<std::size_t>(z)] = depth[static_cast<std::size_t>(z)] * q;
  return data;
}

GroupData build_symmetric_hamming(const GroupSpec& spec) {
  if (spec.n < 1 || spec.n > 6) throw std::invalid_argument("symmetric degree must be 1..6");
  require_positive_scale(spec.scale);
  const int m = static_cast<int>(spec.n);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> rank;
  for (int i = 0; i < order; ++i) rank[perms[static_cast<std::size_t>(i)]] = i;

  GroupData data;
  data.order = order;
  data.identity = 0;
  data.mult.resize(static_cast<std::size_t>(order) * order);
  std::vector<int> comp(static_cast<std::size_t>(m));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      for (int i = 0; i < m; ++i)
        comp[static_cast<std::size_t>(i)] =
            perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
      data.mult[static_cast<std::size_t>(a) * order + b] = rank.at(comp);
    }
  data.phi_form = true;
  data.den = static_cast<long long>(m) * scale_num_ll(spec.scale);
  const long long q = scale_den_ll(spec.scale);
  data.dist.resize(static_cast<std::size_t>(order));
  for (int z = 0; z < order; ++z) {
    int moved = 0;
    for (int i = 0; i < m; ++i)
      if (perms[static_cast<std::size_t>(z)][static_cast<std::size_t>(i)] != i) ++moved;
    data.dist[static_cast<std::size_t>(z)] = static_cast<long long>(moved) * q;
  }
  return data;
}

GroupData build_product(const GroupSpec& spec) {
  if (spec.factors.empty()) throw std::invalid_argument("product needs at least one factor");
  require_positive_scale(spec.scale);
  std::vector<GroupPtr> parts;
  long long order = 1;
  for (const GroupSpec& f : spec.factors) {
    parts.push_back(make_group(f));
    order *= parts.back()->order();
    if (order > 4096) throw std::invalid_argument("product order exceeds 4096");
  }
  const int n = static_cast<int>(order);

  // Factor 0 is the least significant digit of the mixed-radix index.
  auto decode = [&](int x, std::vector<int>& digits) {
    for (const GroupPtr& part : parts) {
      digits.push_back(x % part->order());
      x /= part->order();
    }
  };

  mpz_class den_z = 1;
  for (const GroupPtr& part : parts) mpz_lcm(den_z.get_mpz_t(), den_z.get_mpz_t(), mpz_class(static_cast<long>(part->den())).get_mpz_t());
  den_z *= static_cast<long>(scale_num_ll(spec.scale));
  if (!den_z.fits_slong_p()) throw std::invalid_argument("combined denominator too large");
  const long long den = den_z.get_si();
  const long long q = scale_den_ll(spec.scale);

  GroupData data;
  data.order = n;
  data.identity = 0;
  data.mult.resize(static_cast<std::size_t>(n) * n);
  data.phi_form = true;
  data.den = den;
  data.dist.resize(static_cast<std::size_t>(n));

  std::vector<int> da, db;
  for (int a = 0; a < n; ++a) {
    da.clear();
    decode(a, da);
    for (int b = 0; b < n; ++b) {
      db.clear();
      decode(b, db);
      int encoded = 0;
      for (std::size_t i = parts.size(); i-- > 0;)
        encoded = encoded * parts[i]->order() +
                  parts[i]->mul(da[i], db[i]);
      data.mult[static_cast<std::size_t>(a) * n + b] = encoded;
    }
    // max metric over the common denominator (before the outer scale divide)
    long long best = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const long long scaled = parts[i]->phi_num(da[i]) * ((den / scale_num_ll(spec.scale)) / parts[i]->den());
      best = std::max(best, scaled);
    }
    data.dist[static_cast<std::size_t>(a)] = best * q;
  }
  return data;
}

GroupData build_word_metric(const GroupSpec& spec) {
  if (!spec.base) throw std::invalid_argument("word metric needs a base group");
  require_positive_scale(spec.scale);
  const GroupPtr base = make_group(*spec.base);
  const int n = base->order();
  if (spec.generators.empty()) throw std::invalid_argument("word metric needs generators");
  for (int g : spec.generators) {
    if (g < 0 || g >= n) throw std::invalid_argument("generator index out of range");
    if (std::find(spec.generators.begin(), spec.generators.end(), base->inverse(g)) ==
        spec.generators.end())
      throw std::invalid_argument("generating set is not symmetric");
  }

  // BFS relabeling: identity first, then discovery order (ascending generator
  // index at each step).
  std::vector<int> gens = spec.generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<int> relabel(static_cast<std::size_t>(n), -1);
  std::vector<int> old_of;
  std::vector<int> depth_of;  // by new index
  relabel[static_cast<std::size_t>(base->identity())] = 0;
  old_of.push_back(base->identity());
  depth_of.push_back(0);
  for (std::size_t head = 0; head < old_of.size(); ++head) {
    const int x = old_of[head];
    for (int g : gens) {
      const int y = base->mul(x, g);
      if (relabel[static_cast<std::size_t>(y)] < 0) {
        relabel[static_cast<std::size_t>(y)] = static_cast<int>(old_of.size());
        old_of.push_back(y);
        depth_of.push_back(depth_of[head] + 1);
      }
    }
  }
  if (static_cast<int>(old_of.size()) != n)
    throw std::invalid_argument("generators do not generate the group");

  GroupData data;
  data.order = n;
  data.identity = 0;
  data.mult.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      data.mult[static_cast<std::size_t>(a) * n + b] =
          relabel[static_cast<std::size_t>(base->mul(old_of[static_cast<std::size_t>(a)],
                                                     old_of[static_cast<std::size_t>(b)]))];
  data.phi_form = true;
  data.den = scale_num_ll(spec.scale);
  const long long q = scale_den_ll(spec.scale);
  data.dist.resize(static_cast<std::size_t>(n));
  for (int z = 0; z < n; ++z)
    data.dist[static_cast<std::size_t>(z)] = static_cast<long long>(depth_of[static_cast<std::size_t>(z)]) * q;
  return data;
}

}  // namespace

json GroupSpec::to_json() const {
  json j;
  j["kind"] = kind;
  if (kind == "cyclic_lee" || kind == "dihedral" || kind == "symmetric_hamming") j["n"] = n;
  if (kind == "product") {
    json fs = json::array();
    for (const GroupSpec& f : factors) fs.push_back(f.to_json());
    j["factors"] = fs;
  }
  if (kind == "word_metric") {
    j["base"] = base ? base->to_json() : json(nullptr);
    j["generators"] = generators;
  }
  j["scale"] = rat_to_json(scale);
  return j;
}

GroupSpec GroupSpec::from_json(const json& j) {
  GroupSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (j.contains("n")) spec.n = j.at("n").get<long>();
  if (j.contains("scale")) {
    auto parsed = rat_from_json(j.at("scale"));
    if (!parsed) throw std::invalid_argument("group spec: malformed scale");
    spec.scale = *parsed;
  }
  if (j.contains("factors"))
    for (const json& f : j.at("factors")) spec.factors.push_back(GroupSpec::from_json(f));
  if (j.contains("base") && !j.at("base").is_null())
    spec.base = std::make_shared<const GroupSpec>(GroupSpec::from_json(j.at("base")));
  if (j.contains("generators")) spec.generators = j.at("generators").get<std::vector<int>>();
  return spec;
}

GroupSpec GroupSpec::cyclic_lee(long n, Rat scale) {
  GroupSpec s;
  s.kind = "cyclic_lee";
  s.n = n;
  s.scale = std::move(scale);
  return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.kind = "product";
  s.factors = std::move(factors);
  return s;
}

GroupSpec GroupSpec::dihedral(long n, Rat scale) {
  GroupSpec s;
  s.kind = "dihedral";
  s.n = n;
  s.scale = std::move(scale);
  return s;
}

GroupSpec GroupSpec::symmetric_hamming(int m, Rat scale) {
  GroupSpec s;
  s.kind = "symmetric_hamming";
  s.n = m;
  s.scale = std::move(scale);
  return s;
}

GroupSpec GroupSpec::word_metric(GroupSpec base, std::vector<int> generators, Rat scale) {
  GroupSpec s;
  s.kind = "word_metric";
  s.base = std::make_shared<const GroupSpec>(std::move(base));
  s.generators = std::move(generators);
  s.scale = std::move(scale);
  return s;
}

GroupPtr make_group(const GroupSpec& spec) {
  GroupData data;
  if (spec.kind == "cyclic_lee")
    data = build_cyclic_lee(spec);
  else if (spec.kind == "product")
    data = build_product(spec);
  else if (spec.kind == "dihedral")
    data = build_dihedral(spec);
  else if (spec.kind == "symmetric_hamming")
    data = build_symmetric_hamming(spec);
  else if (spec.kind == "word_metric")
    data = build_word_metric(spec);
  else
    throw std::invalid_argument("unknown group kind: " + spec.kind);
  return finish_build(std::move(data), spec);
}

json InstanceSpec::to_json() const {
  return json{{"group", group.to_json()}, {"set_kind", set_kind}, {"params", params}, {"seed", seed}};
}

InstanceSpec InstanceSpec::from_json(const json& j) {
  InstanceSpec spec;
  spec.group = GroupSpec::from_json(j.at("group"));
  spec.set_kind = j.at("set_kind").get<std::string>();
  if (j.contains("params")) spec.params = j.at("params");
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

namespace {

ElementSet subgroup_closure(const GroupPtr& g, std::vector<int> gens) {
  for (int x : gens)
    if (x < 0 || x >= g->order()) throw std::invalid_argument("generator index out of range");
  ElementSet closure(g);
  closure.add(g->identity());
  std::vector<int> frontier{g->identity()};
  std::vector<int> steps = gens;
  for (int x : gens) steps.push_back(g->inverse(x));
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int s : frontier)
      for (int step : steps) {
        const int t = g->mul(s, step);
        if (!closure.contains(t)) {
          closure.add(t);
          next.push_back(t);
        }
      }
    frontier = std::move(next);
  }
  return closure;
}

ElementSet coset_union_set(const GroupPtr& g, const InstanceSpec& spec) {
  const std::vector<int> gens = spec.params.at("generators").get<std::vector<int>>();
  const int elem = spec.params.at("g").get<int>();
  if (elem < 0 || elem >= g->order()) throw std::invalid_argument("coset element out of range");
  const ElementSet H = subgroup_closure(g, gens);
  ElementSet X = H.set_union(H.left_translate(elem)).set_union(H.left_translate(g->inverse(elem)));
  return X.set_union(X.inverse());
}

}  // namespace

ElementSet make_instance_set(const InstanceSpec& spec, const GroupPtr& g) {
  auto radius_param = [&spec]() {
    auto parsed = rat_from_json(spec.params.at("radius"));
    if (!parsed) throw std::invalid_argument("instance spec: malformed radius");
    return *parsed;
  };
  if (spec.set_kind == "ball") {
    const Rat radius = radius_param();
    int center = g->identity();
    if (spec.params.contains("center")) center = spec.params.at("center").get<int>();
    if (center < 0 || center >= g->order())
      throw std::invalid_argument("ball center out of range");
    return ElementSet(g, std::vector<int>{center}).thicken(radius);
  }
  if (spec.set_kind == "subgroup")
    return subgroup_closure(g, spec.params.at("generators").get<std::vector<int>>());
  if (spec.set_kind == "coset_union") return coset_union_set(g, spec);
  if (spec.set_kind == "planted_progression") {
    const Rat radius = radius_param();
    ElementSet X = coset_union_set(g, spec).thicken(radius);
    return X.set_union(X.inverse());
  }
  if (spec.set_kind == "random_symmetric") {
    std::size_t target = spec.params.at("target_size").get<std::size_t>();
    target = std::min(target, static_cast<std::size_t>(g->order()));
    ElementSet X(g);
    X.add(g->identity());
    std::vector<int> pool;
    for (int x = 0; x < g->order(); ++x)
      if (x != g->identity()) pool.push_back(x);
    Rng rng(spec.seed);
    rng.shuffle(pool);
    for (int x : pool) {
      if (X.count() >= target) break;
      X.add(x);
      X.add(g->inverse(x));
    }
    return X;
  }
  throw std::invalid_argument("unknown instance kind: " + spec.set_kind);
}

std::pair<GroupPtr, ElementSet> make_instance(const InstanceSpec& spec) {
  GroupPtr g = make_group(spec.group);
  ElementSet X = make_instance_set(spec, g);
  return {std::move(g), std::move(X)};
}

std::string content_hash_hex(const FiniteMetricGroup& g) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(g.content_hash()));
  return std::string(buf);
}

json group_to_json(const FiniteMetricGroup& g, GroupFileFormat format) {
  const int n = g.order();
  if (format == GroupFileFormat::Auto)
    format = n <= 512 ? GroupFileFormat::Full : GroupFileFormat::Phi;
  json j;
  j["order"] = n;
  j["identity"] = g.identity();
  json mult = json::array();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult.push_back(g.mul(a, b));
  j["mult"] = std::move(mult);
  if (format == GroupFileFormat::Full) {
    json dist = json::array();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dist.push_back(rat_to_json(g.dist(a, b)));
    j["dist"] = std::move(dist);
  } else {
    json phi = json::array();
    for (int z = 0; z < n; ++z) phi.push_back(g.phi_num(z));
    j["dist"] = json{{"den", g.den()}, {"phi", std::move(phi)}};
  }
  json meta = g.meta().is_null() ? json::object() : g.meta();
  meta["bi_invariant"] = g.bi_invariant();
  meta["content_hash"] = content_hash_hex(g);
  j["meta"] = std::move(meta);
  return j;
}

void save_group(const std::string& path, const FiniteMetricGroup& g, GroupFileFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << group_to_json(g, format).dump(2) << "\n";
}

GroupData group_data_from_json(const json& j) {
  GroupData data;
  data.order = j.at("order").get<int>();
  data.identity = j.at("identity").get<int>();
  data.mult = j.at("mult").get<std::vector<int>>();
  const json& dist = j.at("dist");
  if (dist.is_object()) {
    data.phi_form = true;
    data.den = dist.at("den").get<long long>();
    data.dist = dist.at("phi").get<std::vector<long long>>();
  } else {
    data.phi_form = false;
    // Rebase all entries onto one common denominator.
    std::vector<Rat> entries;
    entries.reserve(dist.size());
    mpz_class den = 1;
    for (const json& e : dist) {
      auto parsed = rat_from_json(e);
      if (!parsed) throw std::runtime_error("malformed distance entry " + e.dump());
      entries.push_back(*parsed);
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), entries.back().get_den().get_mpz_t());
    }
    if (!den.fits_slong_p()) throw std::runtime_error("distance denominators too large");
    data.den = den.get_si();
    data.dist.reserve(entries.size());
    for (const Rat& e : entries) {
      mpz_class num = e.get_num() * (den / e.get_den());
      if (!num.fits_slong_p()) throw std::runtime_error("distance numerator too large");
      data.dist.push_back(num.get_si());
    }
  }
  if (j.contains("meta")) {
    data.meta = j.at("meta");
    if (data.meta.contains("bi_invariant"))
      data.claimed_bi_invariant = data.meta.at("bi_invariant").get<bool>();
  }
  return data;
}

GroupPtr group_from_json(const json& j) {
  BuildResult built = FiniteMetricGroup::build(group_data_from_json(j));
  if (!built.group) {
    std::string what = "group file failed validation";
    if (built.report.structural_error && !built.report.issues.empty())
      what += ": " + built.report.issues.front().detail;
    else if (!built.report.issues.empty()) {
      const ValidationIssue& issue = built.report.issues.front();
      what += ": axiom " + issue.axiom + " (" + issue.detail + "), witness [";
      for (std::size_t i = 0; i < issue.witness.size(); ++i)
        what += (i ? "," : "") + std::to_string(issue.witness[i]);
      what += "]";
    }
    throw std::runtime_error(what);
  }
  return built.group;
}

GroupPtr load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j = json::parse(in);
  return group_from_json(j);
}

void save_instance(const std::string& path, const InstanceSpec& spec,
                   const std::string& group_file) {
  auto [g, X] = make_instance(spec);
  json j;
  j["spec"] = spec.to_json();
  j["group"] = json{{"file", group_file.empty() ? json(nullptr) : json(group_file)},
                    {"hash", content_hash_hex(*g)}};
  j["set"] = X.indices();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::pair<GroupPtr, ElementSet> load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j = json::parse(in);
  InstanceSpec spec = InstanceSpec::from_json(j.at("spec"));
  GroupPtr g;
  const json& group_ref = j.at("group");
  if (group_ref.contains("file") && !group_ref.at("file").is_null()) {
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    g = load_group((base / group_ref.at("file").get<std::string>()).string());
  } else {
    g = make_group(spec.group);
  }
  const std::string want_hash = group_ref.at("hash").get<std::string>();
  if (content_hash_hex(*g) != want_hash)
    throw std::runtime_error("instance file group hash mismatch");
  ElementSet X = make_instance_set(spec, g);
  const std::vector<int> stored = j.at("set").get<std::vector<int>>();
  if (stored != X.indices())
    throw std::runtime_error("instance file set does not match its spec");
  return {std::move(g), std::move(X)};
}

}  // namespace approxlab
