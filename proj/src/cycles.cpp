#include "fzeta/cycles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fzeta {

namespace {

Int int_pow(Int base, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void dfs_proper(const Graph& g, Vertex origin, int m, std::vector<Vertex>& cur,
                std::vector<ClosedPath>& out) {
  const int i = static_cast<int>(cur.size()) - 1;
  const Vertex last = cur.back();
  const Vertex prev = i >= 1 ? cur[static_cast<std::size_t>(i) - 1] : -1;
  for (Vertex w : g.neighbors(last)) {
    if (w == prev) continue;
    if (i + 1 == m) {
      if (w == origin) {
        ClosedPath p;
        p.v = cur;
        p.v.push_back(origin);
        out.push_back(std::move(p));
      }
      continue;
    }
    cur.push_back(w);
    dfs_proper(g, origin, m, cur, out);
    cur.pop_back();
  }
}

// Transport tables: every composite copy map K_p -> K_ambient, with a
// lookup sorted by image vertex for subset tests and pullbacks, and a
// per-ambient-vertex candidate index (copy images overlap only on
// frontiers, so candidate lists stay short).
struct TransportMap {
  VertexSet image;
  std::vector<std::pair<Vertex, Vertex>> back;  // (image vertex, source vertex)
};

struct TransportContext {
  int ambient;
  std::vector<std::vector<TransportMap>> per_size;        // index p-1, p = 1..ambient
  std::vector<std::vector<std::vector<int>>> candidates;  // [p-1][ambient vertex] -> map ids
};

TransportContext make_transport_context(const Exhaustion& x) {
  TransportContext ctx;
  ctx.ambient = x.max_level();
  const std::size_t nv = static_cast<std::size_t>(x.level(ctx.ambient).vertex_count());
  for (int p = 1; p <= ctx.ambient; ++p) {
    std::vector<TransportMap> maps;
    std::vector<std::vector<int>> cand(nv);
    for (const CopyMap& gamma : all_copy_maps(x, p, ctx.ambient)) {
      TransportMap t;
      t.image = gamma.image();
      t.back.reserve(gamma.map.size());
      for (std::size_t s = 0; s < gamma.map.size(); ++s)
        t.back.emplace_back(gamma.map[s], static_cast<Vertex>(s));
      std::sort(t.back.begin(), t.back.end());
      for (Vertex v : t.image) cand[static_cast<std::size_t>(v)].push_back(static_cast<int>(maps.size()));
      maps.push_back(std::move(t));
    }
    ctx.per_size.push_back(std::move(maps));
    ctx.candidates.push_back(std::move(cand));
  }
  return ctx;
}

Vertex pull_back(const TransportMap& t, Vertex v) {
  auto it = std::lower_bound(t.back.begin(), t.back.end(), std::make_pair(v, Vertex(-1)));
  return it->second;
}

// (size, canonical transported cycle) for a cycle in ambient coordinates;
// size 0 means no containing copy image at this truncation.
std::pair<int, std::vector<Vertex>> transport_normal_form(const TransportContext& ctx,
                                                          const std::vector<Vertex>& cycle) {
  for (int p = 1; p <= ctx.ambient; ++p) {
    const auto& maps = ctx.per_size[static_cast<std::size_t>(p) - 1];
    const auto& cand = ctx.candidates[static_cast<std::size_t>(p) - 1];
    std::vector<Vertex> best;
    for (int id : cand[static_cast<std::size_t>(cycle.front())]) {
      const TransportMap& t = maps[static_cast<std::size_t>(id)];
      bool inside = true;
      for (Vertex v : cycle)
        if (!vertex_set_contains(t.image, v)) {
          inside = false;
          break;
        }
      if (!inside) continue;
      std::vector<Vertex> moved;
      moved.reserve(cycle.size());
      for (Vertex v : cycle) moved.push_back(pull_back(t, v));
      moved = canonical_rotation(moved);
      if (best.empty() || moved < best) best = std::move(moved);
    }
    if (!best.empty()) return {p, best};
  }
  return {0, {}};
}

std::vector<Vertex> embed_cycle(const Exhaustion& x, int level, const std::vector<Vertex>& cycle) {
  CopyMap e = x.embedding_into(level, x.max_level());
  std::vector<Vertex> out;
  out.reserve(cycle.size());
  for (Vertex v : cycle) out.push_back(e(v));
  return out;
}

}  // namespace

std::uint64_t proper_path_budget(int d, std::size_t origin_count, int m) {
  if (m <= 1 || d <= 1) return origin_count;
  double est = static_cast<double>(origin_count) * d * std::pow(static_cast<double>(d - 1), m - 2);
  return est > 1e18 ? UINT64_MAX : static_cast<std::uint64_t>(est);
}

std::vector<ClosedPath> enumerate_proper_closed(const Graph& g, int m, const VertexSet& origins,
                                                std::uint64_t budget) {
  if (m < 1) throw std::invalid_argument("path length must be >= 1");
  std::uint64_t est = proper_path_budget(g.max_degree(), origins.size(), m);
  if (est > budget)
    throw std::runtime_error("cycle enumeration budget exceeded: estimate " + std::to_string(est) +
                             " > budget " + std::to_string(budget));
  std::vector<ClosedPath> out;
  std::vector<Vertex> cur;
  for (Vertex o : origins) {
    cur.assign(1, o);
    dfs_proper(g, o, m, cur, out);
  }
  return out;
}

PathClassification classify_path(const Graph& g, const ClosedPath& p) {
  const int m = p.length();
  if (m < 1 || p.v.front() != p.v.back()) throw std::invalid_argument("path is not closed");
  for (int i = 0; i < m; ++i)
    if (!g.adjacent(p.v[static_cast<std::size_t>(i)], p.v[static_cast<std::size_t>(i) + 1]))
      throw std::invalid_argument("path steps off edges");
  for (int i = 1; i < m; ++i)
    if (p.v[static_cast<std::size_t>(i) - 1] == p.v[static_cast<std::size_t>(i) + 1])
      throw std::invalid_argument("path is not proper");
  PathClassification c{};
  c.has_tail = m >= 2 && p.v[1] == p.v[static_cast<std::size_t>(m) - 1];
  c.reduced = !c.has_tail;
  std::vector<Vertex> cyc(p.v.begin(), p.v.end() - 1);
  c.primitive = c.reduced && cycle_period(cyc) == m;
  return c;
}

std::vector<Vertex> canonical_rotation(const std::vector<Vertex>& cycle) {
  const std::size_t m = cycle.size();
  std::vector<Vertex> best = cycle;
  std::vector<Vertex> rot(m);
  for (std::size_t s = 1; s < m; ++s) {
    for (std::size_t i = 0; i < m; ++i) rot[i] = cycle[(i + s) % m];
    if (rot < best) best = rot;
  }
  return best;
}

int cycle_period(const std::vector<Vertex>& cycle) {
  const int m = static_cast<int>(cycle.size());
  for (int l = 1; l < m; ++l) {
    if (m % l != 0) continue;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      ok = cycle[static_cast<std::size_t>(i)] == cycle[static_cast<std::size_t>((i + l) % m)];
    if (ok) return l;
  }
  return m;
}

Census reduced_cycle_census(const Graph& g, int max_len, std::uint64_t budget) {
  Census census;
  VertexSet all;
  for (Vertex v = 0; v < g.vertex_count(); ++v) all.push_back(v);
  for (int m = 1; m <= max_len; ++m) {
    CensusRow row;
    row.m = m;
    std::set<std::vector<Vertex>> reps;
    for (const ClosedPath& p : enumerate_proper_closed(g, m, all, budget)) {
      if (m >= 2 && p.v[1] == p.v[static_cast<std::size_t>(m) - 1]) continue;
      ++row.raw_reduced;
      reps.insert(canonical_rotation(std::vector<Vertex>(p.v.begin(), p.v.end() - 1)));
    }
    row.shift_classes = reps.size();
    census.rows.push_back(row);
    census.class_reps.emplace_back(reps.begin(), reps.end());
  }
  return census;
}

Rational mu_closed_form(Family f, int size) {
  switch (f) {
    case Family::gasket: return Rational(2, int_pow(3, size + 1));
    case Family::vicsek: return Rational(1, 3 * int_pow(5, size));
    case Family::lindstrom: return Rational(1, 4 * int_pow(7, size));
    case Family::carpet: break;
  }
  throw std::domain_error("no closed-form multiplicity for this family");
}

std::vector<std::pair<int, Rational>> mu_ratio_sequence(const Exhaustion& x, int size) {
  std::vector<std::pair<int, Rational>> out;
  const Int beta = x.branching();
  for (int n = size; n + 1 <= x.max_level(); ++n) {
    Int copies = int_pow(beta, n - size);
    out.emplace_back(n, Rational(copies, Int(x.level(n + 1).vertex_count())));
  }
  return out;
}

MuEstimate mu_estimate(const Exhaustion& x, int size) {
  MuEstimate e;
  if (x.max_level() == 1 && x.copies.empty()) {  // degenerate single graph
    e.value = Rational(1, Int(x.level(1).vertex_count()));
    e.gap = 0;
    e.exact = true;
    return e;
  }
  if (x.family != Family::carpet) {
    e.value = mu_closed_form(x.family, size);
    e.gap = 0;
    e.exact = true;
    return e;
  }
  auto seq = mu_ratio_sequence(x, size);
  if (seq.empty()) throw std::domain_error("not enough levels for multiplicity estimate");
  e.value = seq.back().second;
  e.exact = false;
  // Upper bound on the limit: |K_m| >= |G(N,m)| |Omega_{N,1}| gives
  // limit <= branching^(N-1-size) / |Omega_{N,1}| at the deepest level N.
  const int N = x.max_level();
  const Graph& deep = x.level(N);
  VertexSet b1 = ball(deep, x.g_frontiers[static_cast<std::size_t>(N) - 1], 1);
  Int omega = Int(deep.vertex_count()) - Int(b1.size());
  if (omega <= 0) throw std::domain_error("interior too small for multiplicity bound");
  Rational upper(int_pow(x.branching(), N - 1 - size), omega);
  e.gap = upper - e.value;
  return e;
}

CycleRecord cycle_stats(const Exhaustion& x, int level, const ClosedPath& c) {
  PathClassification cls = classify_path(x.level(level), c);
  if (!cls.reduced) throw std::invalid_argument("cycle_stats needs a reduced cycle");
  std::vector<Vertex> cyc(c.v.begin(), c.v.end() - 1);
  TransportContext ctx = make_transport_context(x);
  auto [size, rep] = transport_normal_form(ctx, embed_cycle(x, level, cyc));
  CycleRecord r;
  r.length = c.length();
  r.primitive = cls.primitive;
  r.effective_length = cycle_period(cyc);
  r.size = size;
  if (size == 0) {
    r.rep = canonical_rotation(cyc);
    return r;  // size undetermined at this truncation; mu left unset
  }
  r.rep = rep;
  MuEstimate mu = mu_estimate(x, size);
  r.mu = mu.value;
  r.density = Rational(x.branching()) * mu.value;
  r.mu_exact = mu.exact;
  r.mu_gap = mu.gap;
  return r;
}

namespace {

struct ClassKey {
  int size;
  std::vector<Vertex> rep;
  auto operator<=>(const ClassKey&) const = default;
};

// G-classes of reduced cycles per length, collected by enumerating at one
// level and transporting to minimal-size normal form.
std::vector<std::map<ClassKey, int>> g_classes_at(const Exhaustion& x, int max_len, int level,
                                                  const TransportContext& ctx,
                                                  std::uint64_t budget) {
  Census census = reduced_cycle_census(x.level(level), max_len, budget);
  std::vector<std::map<ClassKey, int>> out(static_cast<std::size_t>(max_len));
  for (int m = 1; m <= max_len; ++m) {
    for (const auto& rep : census.class_reps[static_cast<std::size_t>(m) - 1]) {
      auto [size, moved] = transport_normal_form(ctx, embed_cycle(x, level, rep));
      if (size == 0)
        throw std::runtime_error("reduced cycle not contained in any copy image; level " +
                                 std::to_string(level) + " length " + std::to_string(m));
      out[static_cast<std::size_t>(m) - 1].emplace(ClassKey{size, moved}, cycle_period(rep));
    }
  }
  return out;
}

}  // namespace

std::vector<WeightedCensusRow> weighted_census(const Exhaustion& x, int max_len, int level,
                                               std::uint64_t budget) {
  TransportContext ctx = make_transport_context(x);
  auto classes = g_classes_at(x, max_len, level, ctx, budget);
  std::vector<std::map<ClassKey, int>> shallower;
  if (level >= 2) shallower = g_classes_at(x, max_len, level - 1, ctx, budget);
  const Rational beta(x.branching());
  std::vector<WeightedCensusRow> out;
  for (int m = 1; m <= max_len; ++m) {
    WeightedCensusRow row;
    row.m = m;
    const auto& cl = classes[static_cast<std::size_t>(m) - 1];
    row.g_classes = cl.size();
    for (const auto& [key, eff_len] : cl)
      row.weighted += beta * mu_estimate(x, key.size).value * Rational(eff_len);
    row.stabilized = level >= 2 && cl == shallower[static_cast<std::size_t>(m) - 1];
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<CycleRecord> prime_class_records(const Exhaustion& x, int max_len, int level,
                                             std::uint64_t budget) {
  Census census = reduced_cycle_census(x.level(level), max_len, budget);
  TransportContext ctx = make_transport_context(x);
  std::map<ClassKey, CycleRecord> classes;
  for (int m = 1; m <= max_len; ++m) {
    for (const auto& rep : census.class_reps[static_cast<std::size_t>(m) - 1]) {
      if (cycle_period(rep) != m) continue;  // prime classes only
      auto [size, moved] = transport_normal_form(ctx, embed_cycle(x, level, rep));
      if (size == 0)
        throw std::runtime_error("prime cycle not contained in any copy image");
      ClassKey key{size, moved};
      if (classes.count(key)) continue;
      CycleRecord r;
      r.rep = moved;
      r.length = m;
      r.primitive = true;
      r.size = size;
      r.effective_length = m;
      MuEstimate mu = mu_estimate(x, size);
      r.mu = mu.value;
      r.density = Rational(x.branching()) * mu.value;
      r.mu_exact = mu.exact;
      r.mu_gap = mu.gap;
      classes.emplace(std::move(key), std::move(r));
    }
  }
  std::vector<CycleRecord> out;
  out.reserve(classes.size());
  for (auto& [key, rec] : classes) out.push_back(std::move(rec));
  return out;
}

}  // namespace fzeta
