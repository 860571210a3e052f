#include "titscone/bh.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace titscone {

std::vector<NodeSet> associates(const ArrangementGraph& graph) {
  const CoxeterContext& ctx = graph.context();
  std::set<NodeSet> seen;
  for (unsigned i = 0; i < graph.size(); ++i) seen.insert(graph.chamber(i).I);
  // close under wall-crossing targets (cheap and algebraic)
  std::deque<NodeSet> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    NodeSet I = queue.front();
    queue.pop_front();
    for (unsigned a : ctx.diagram().all_nodes() - I) {
      auto data = wall_crossing_data(ctx, I, a);
      if (data && seen.insert(data->target).second) queue.push_back(data->target);
    }
  }
  return {seen.begin(), seen.end()};
}

bool is_bh_morphism(const GroupElement& x, NodeSet I, NodeSet K) {
  if (I.size() != K.size()) return false;
  const CoxeterContext& ctx = x.context();
  for (unsigned k : K) {
    Root img = act(x, ctx.simple_root(k));
    bool matched = false;
    for (unsigned i : I) {
      if (img == ctx.simple_root(i)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

std::vector<GroupElement> enumerate_bh_hom(const CoxeterContext& ctx, NodeSet I, NodeSet K) {
  if (!ctx.is_finite_type()) throw NotFiniteTypeError("enumerate_bh_hom: finite type required");
  std::vector<GroupElement> out;
  for (const GroupElement& w : enumerate_group(ctx, 1u << 20))
    if (is_bh_morphism(w, I, K)) out.push_back(w);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

namespace {

bool root_supported_in(const Root& r, NodeSet I) {
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    if (I.contains(static_cast<unsigned>(i))) continue;
    if (!r.coords[i].is_zero()) return false;
  }
  return true;
}

// Phi+_M - Phi+_I as an explicit set, or nullopt when generation exceeds the
// cutoffs (infinite or indeterminate; the two cases are separated by the
// caller's status).
std::optional<std::vector<Root>> inversion_target(const CoxeterContext& ctx, NodeSet M, NodeSet I,
                                                  std::size_t cutoff, bool& indeterminate) {
  indeterminate = false;
  std::vector<Root> outside;
  std::unordered_set<Root> seen;
  std::deque<Root> queue;
  for (unsigned m : M) {
    Root r = ctx.simple_root(m);
    if (seen.insert(r).second) queue.push_back(r);
  }
  std::size_t total_cap = cutoff * 8 + 1024;
  while (!queue.empty()) {
    Root r = queue.front();
    queue.pop_front();
    if (!root_supported_in(r, I)) {
      outside.push_back(r);
      if (outside.size() > cutoff) return std::nullopt;  // infinite
    }
    for (unsigned m : M) {
      Root s = apply_simple_to_root(ctx, m, r);
      if (s.is_positive() && seen.insert(s).second) {
        if (seen.size() > total_cap) {
          indeterminate = true;
          return std::nullopt;
        }
        queue.push_back(s);
      }
    }
  }
  return outside;
}

}  // namespace

RankTwoResult rank_two_lcm(const CoxeterContext& ctx, NodeSet I, unsigned a, unsigned b,
                           std::size_t cutoff) {
  if (a == b || I.contains(a) || I.contains(b))
    throw InternalError("rank_two_lcm: a, b must be distinct nodes outside I");
  RankTwoResult result;
  NodeSet M = I.with(a).with(b);
  // only the components of Gamma(M) meeting {a, b} matter; the rest of M
  // contributes roots inside Phi_I only
  NodeSet D = ctx.diagram().component(M, a) | ctx.diagram().component(M, b);

  std::vector<Root> target;
  if (ctx.is_finite_parabolic(D)) {
    for (const Root& r : positive_roots(ctx, D, 1u << 20))
      if (!root_supported_in(r, I)) target.push_back(r);
  } else {
    bool indeterminate = false;
    auto got = inversion_target(ctx, D, I & D, cutoff, indeterminate);
    if (!got) {
      result.status = indeterminate ? RankTwoStatus::indeterminate : RankTwoStatus::infinite;
      return result;
    }
    target = std::move(*got);
  }

  // w is the element of W_M with inversion set exactly Phi+_M - Phi+_I:
  // peel simple roots off the target set from the right.
  std::unordered_set<Root> remaining(target.begin(), target.end());
  std::vector<unsigned> letters_reversed;
  while (!remaining.empty()) {
    bool found = false;
    for (unsigned m : M) {
      Root alpha = ctx.simple_root(m);
      if (!remaining.count(alpha)) continue;
      remaining.erase(alpha);
      std::unordered_set<Root> next;
      for (const Root& r : remaining) next.insert(apply_simple_to_root(ctx, m, r));
      remaining = std::move(next);
      letters_reversed.push_back(m);
      found = true;
      break;
    }
    if (!found) throw InternalError("rank_two_lcm: target set is not an inversion set");
  }
  std::vector<unsigned> word(letters_reversed.rbegin(), letters_reversed.rend());
  GroupElement w = ctx.from_word(word);
  for (const Root& r : target)
    if (!act(w, r).is_negative())
      throw InternalError("rank_two_lcm: constructed element misses an inversion");
  for (unsigned i : I & D)
    if (!act(w, ctx.simple_root(i)).is_positive())
      throw InternalError("rank_two_lcm: constructed element flips Phi+_I");
  GroupElement v = w.inverse();
  if (v.length() != target.size()) throw InternalError("rank_two_lcm: length mismatch");

  // peel the two standard expressions, first factor prescribed
  auto peel = [&ctx](const GroupElement& v, NodeSet I0, unsigned first) {
    std::vector<std::pair<unsigned, NodeSet>> expr;
    GroupElement r = v;
    NodeSet curI = I0;
    while (!r.is_identity()) {
      std::vector<std::pair<unsigned, WallCrossingData>> candidates;
      for (unsigned c : ctx.diagram().all_nodes() - curI) {
        auto data = wall_crossing_data(ctx, curI, c);
        if (!data) continue;
        GroupElement rest = data->v.inverse() * r;
        if (data->v.length() + rest.length() == r.length())
          candidates.emplace_back(c, *data);
      }
      unsigned chosen;
      if (expr.empty()) {
        chosen = first;
        bool ok = false;
        for (const auto& [c, d] : candidates) ok |= (c == first);
        if (!ok) throw InternalError("rank_two_lcm: prescribed first factor does not divide");
      } else {
        if (candidates.size() != 1)
          throw InternalError("rank_two_lcm: standard expression continuation not unique");
        chosen = candidates.front().first;
      }
      for (const auto& [c, d] : candidates) {
        if (c != chosen) continue;
        expr.emplace_back(c, curI);
        r = d.v.inverse() * r;
        curI = d.target;
        break;
      }
    }
    return expr;
  };
  RankTwoLcm lcm;
  lcm.element = v;
  lcm.expr_a = peel(v, I, a);
  lcm.expr_b = peel(v, I, b);
  if (lcm.expr_a.size() != lcm.expr_b.size())
    throw InternalError("rank_two_lcm: standard expressions of different lengths");
  result.status = RankTwoStatus::computed;
  result.lcm = std::move(lcm);
  return result;
}

GroupoidPresentation bh_presentation(const ArrangementGraph& graph) {
  const CoxeterContext& ctx = graph.context();
  GroupoidPresentation pres;
  pres.kind = GroupoidPresentation::Kind::coxeter;
  pres.base = graph.J();
  pres.objects = associates(graph);
  pres.complete = graph.saturated();

  for (NodeSet I : pres.objects) {
    for (unsigned a : ctx.diagram().all_nodes() - I) {
      auto data = wall_crossing_data(ctx, I, a);
      if (!data) continue;
      GroupoidGenerator gen;
      gen.source = I;
      gen.target = data->target;
      gen.a = a;
      gen.back_a = data->back_node;
      gen.payload = data->v;
      pres.generators.push_back(std::move(gen));
    }
  }

  // involution relations, one per unordered arrow pair
  for (unsigned g = 0; g < pres.generators.size(); ++g) {
    auto partner = pres.find_generator(pres.generators[g].target, pres.generators[g].back_a);
    if (!partner) throw InternalError("bh_presentation: missing reverse arrow");
    if (*partner < g) continue;
    pres.relations.push_back({{g, *partner}, {}});
  }

  // rank-two relations
  for (NodeSet I : pres.objects) {
    std::vector<unsigned> outside = (ctx.diagram().all_nodes() - I).to_vector();
    for (std::size_t ai = 0; ai < outside.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < outside.size(); ++bi) {
        RankTwoResult r = rank_two_lcm(ctx, I, outside[ai], outside[bi]);
        if (r.status == RankTwoStatus::indeterminate) {
          ++pres.indeterminate_pairs;
          continue;
        }
        if (r.status == RankTwoStatus::infinite) continue;
        auto to_word = [&pres](const std::vector<std::pair<unsigned, NodeSet>>& expr) {
          std::vector<unsigned> word;
          for (const auto& [a, I] : expr) {
            auto g = pres.find_generator(I, a);
            if (!g) throw InternalError("bh_presentation: expression step is not a generator");
            word.push_back(*g);
          }
          return word;
        };
        pres.relations.push_back({to_word(r.lcm->expr_a), to_word(r.lcm->expr_b)});
      }
    }
  }
  return pres;
}

CheckReport universal_cover_check(const ArrangementGraph& graph) {
  const CoxeterContext& ctx = graph.context();
  CheckReport report;

  // every edge element is a BH morphism between its second labels
  {
    bool ok = true;
    std::string witness;
    for (const auto& e : graph.all_edges()) {
      if (!is_bh_morphism(e.v, graph.chamber(e.from).I, graph.chamber(e.to).I)) {
        ok = false;
        witness = "edge at chamber " + std::to_string(e.from);
        break;
      }
    }
    report.add("edges_are_bh_morphisms", ok, witness);
  }

  if (!ctx.is_finite_type()) {
    report.add("hom_set_checks_skipped_infinite_type", true, "finite-type only");
    return report;
  }

  auto objects = associates(graph);
  // unique path lifting: for every morphism w in Hom(I,K) and every chamber
  // in the fiber over I, (x w, K) is again a chamber
  {
    bool ok = true;
    std::string witness;
    std::size_t lifted = 0;
    for (NodeSet I : objects) {
      for (NodeSet K : objects) {
        auto homs = enumerate_bh_hom(ctx, I, K);
        for (unsigned i = 0; i < graph.size() && ok; ++i) {
          if (graph.chamber(i).I != I) continue;
          for (const GroupElement& w : homs) {
            ChamberLabel lift{graph.chamber(i).x * w, K};
            if (!graph.find(lift)) {
              ok = false;
              witness = "missing lift over chamber " + std::to_string(i);
              break;
            }
            ++lifted;
          }
        }
      }
    }
    report.add("unique_path_lifting", ok,
               ok ? std::to_string(lifted) + " lifts verified" : witness);
  }

  // morphism spaces of the cover are singletons: x^-1 y is a BH morphism for
  // every ordered chamber pair, and it is the only connecting element
  {
    bool ok = true;
    std::string witness;
    for (unsigned i = 0; i < graph.size() && ok; ++i) {
      for (unsigned j = 0; j < graph.size(); ++j) {
        GroupElement w = graph.chamber(i).x.inverse() * graph.chamber(j).x;
        if (!is_bh_morphism(w, graph.chamber(i).I, graph.chamber(j).I)) {
          ok = false;
          witness = "chambers " + std::to_string(i) + "," + std::to_string(j);
          break;
        }
      }
    }
    report.add("cover_hom_spaces_singletons", ok, witness);
  }

  // deck action: free on chambers, transitive on each fiber, fibers of size
  // |N_J|
  {
    auto quotient = enumerate_normaliser_quotient(ctx, graph.J());
    bool ok = true;
    std::string witness;
    for (const GroupElement& n : quotient) {
      if (n.is_identity()) continue;
      for (unsigned i = 0; i < graph.size(); ++i) {
        if (normaliser_act(n, graph.chamber(i), graph.J()) == graph.chamber(i)) {
          ok = false;
          witness = "fixed chamber " + std::to_string(i);
          break;
        }
      }
    }
    report.add("deck_action_free", ok, witness);

    bool fibers_ok = true;
    std::string fiber_witness;
    for (NodeSet I : objects) {
      std::vector<unsigned> fiber;
      for (unsigned i = 0; i < graph.size(); ++i)
        if (graph.chamber(i).I == I) fiber.push_back(i);
      if (fiber.size() != quotient.size()) {
        fibers_ok = false;
        fiber_witness = "fiber size mismatch";
        break;
      }
      // transitivity: the orbit of the first fiber element covers the fiber
      std::set<unsigned> orbit;
      for (const GroupElement& n : quotient) {
        auto moved = graph.find(normaliser_act(n, graph.chamber(fiber.front()), graph.J()));
        if (moved) orbit.insert(*moved);
      }
      if (orbit.size() != fiber.size()) {
        fibers_ok = false;
        fiber_witness = "orbit does not cover fiber";
        break;
      }
    }
    report.add("deck_action_fiber_transitive", fibers_ok, fiber_witness);
  }
  return report;
}

namespace {

struct PathKey {
  unsigned source;
  std::vector<unsigned> walls;
  bool operator==(const PathKey& o) const { return source == o.source && walls == o.walls; }
};

struct PathKeyHash {
  std::size_t operator()(const PathKey& p) const {
    std::size_t h = p.source;
    for (unsigned w : p.walls) h = hash_combine(h, w + 1);
    return h;
  }
};

}  // namespace

std::optional<bool> positive_path_equal(const ArrangementGraph& graph, const ChamberPath& p,
                                        const ChamberPath& q, std::size_t max_states) {
  auto pv = path_vertices(graph, p);
  auto qv = path_vertices(graph, q);
  if (pv.front() != qv.front() || pv.back() != qv.back())
    throw ValidationError("positive_path_equal: paths must share source and target");
  if (p.walls.size() != q.walls.size()) return false;  // moves preserve length

  PathKey start{p.source, p.walls};
  PathKey goal{q.source, q.walls};
  if (start == goal) return true;

  std::unordered_set<PathKey, PathKeyHash> visited{start};
  std::deque<PathKey> queue{start};
  while (!queue.empty()) {
    PathKey cur = queue.front();
    queue.pop_front();
    std::vector<unsigned> verts = path_vertices(graph, ChamberPath{cur.source, cur.walls});
    // replace any geodesic subpath by any other geodesic with the same ends
    for (std::size_t i = 0; i < cur.walls.size(); ++i) {
      for (std::size_t j = i + 1; j <= cur.walls.size(); ++j) {
        ChamberPath sub{verts[i], {cur.walls.begin() + i, cur.walls.begin() + j}};
        if (!is_geodesic(graph, sub)) continue;
        for (const ChamberPath& alt : geodesics_between(graph, verts[i], verts[j])) {
          if (alt.walls == sub.walls) continue;
          PathKey next{cur.source, {}};
          next.walls.insert(next.walls.end(), cur.walls.begin(), cur.walls.begin() + i);
          next.walls.insert(next.walls.end(), alt.walls.begin(), alt.walls.end());
          next.walls.insert(next.walls.end(), cur.walls.begin() + j, cur.walls.end());
          if (next == goal) return true;
          if (visited.insert(next).second) {
            if (visited.size() > max_states) return std::nullopt;
            queue.push_back(next);
          }
        }
      }
    }
  }
  return false;
}

CheckReport atomic_matsumoto_check(const ArrangementGraph& graph,
                                   const AtomicMatsumotoOptions& opts) {
  const CoxeterContext& ctx = graph.context();
  CheckReport report;

  // memoized rank-two instances: (I, a at waypoint) -> list of relation
  // instances as wall-label sequences
  struct Instance {
    std::vector<unsigned> from;  // wall labels of one side
    std::vector<unsigned> to;    // wall labels of the other side
  };
  std::map<std::uint64_t, std::vector<Instance>> instances;
  auto instances_at = [&](NodeSet I) -> const std::vector<Instance>& {
    auto it = instances.find(I.bits());
    if (it != instances.end()) return it->second;
    std::vector<Instance> list;
    std::vector<unsigned> outside = (ctx.diagram().all_nodes() - I).to_vector();
    for (std::size_t ai = 0; ai < outside.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < outside.size(); ++bi) {
        RankTwoResult r = rank_two_lcm(ctx, I, outside[ai], outside[bi]);
        if (r.status != RankTwoStatus::computed) continue;
        auto walls = [](const std::vector<std::pair<unsigned, NodeSet>>& expr) {
          std::vector<unsigned> w;
          for (const auto& [a, obj] : expr) w.push_back(a);
          return w;
        };
        list.push_back({walls(r.lcm->expr_a), walls(r.lcm->expr_b)});
        list.push_back({walls(r.lcm->expr_b), walls(r.lcm->expr_a)});
      }
    }
    return instances.emplace(I.bits(), std::move(list)).first->second;
  };

  // safe pairs: all pairs when saturated, else require the whole geodesic
  // fan to sit strictly inside the ball
  std::size_t pair_count = 0, geodesic_count = 0, class_failures = 0;
  std::string witness;
  bool limit_hit = false;

  auto bfs_dist_from = [&graph](unsigned s) {
    std::vector<int> d(graph.size(), -1);
    d[s] = 0;
    std::deque<unsigned> q{s};
    while (!q.empty()) {
      unsigned cur = q.front();
      q.pop_front();
      for (const auto& e : graph.edges_from(cur)) {
        if (d[e.to] < 0) {
          d[e.to] = d[cur] + 1;
          q.push_back(e.to);
        }
      }
    }
    return d;
  };

  for (unsigned s = 0; s < graph.size() && !limit_hit; ++s) {
    std::vector<int> dist = bfs_dist_from(s);
    for (unsigned t = 0; t < graph.size(); ++t) {
      if (dist[t] < 0) continue;
      if (!graph.saturated()) {
        if (!graph.radius()) continue;
        if (graph.depth(s) + static_cast<unsigned>(dist[t]) >= *graph.radius()) continue;
      }
      if (++pair_count > opts.pair_limit) {
        limit_hit = true;
        break;
      }
      auto geos = geodesics_between(graph, s, t, opts.geodesic_limit);
      geodesic_count += geos.size();
      if (geos.size() <= 1) continue;

      // union-find over the geodesics
      std::map<std::vector<unsigned>, std::size_t> idx;
      for (std::size_t k = 0; k < geos.size(); ++k) idx[geos[k].walls] = k;
      std::vector<std::size_t> parent(geos.size());
      for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = k;
      auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (std::size_t k = 0; k < geos.size(); ++k) {
        auto verts = path_vertices(graph, geos[k]);
        for (std::size_t pos = 0; pos < geos[k].walls.size(); ++pos) {
          NodeSet I = graph.chamber(verts[pos]).I;
          for (const Instance& inst : instances_at(I)) {
            if (pos + inst.from.size() > geos[k].walls.size()) continue;
            if (!std::equal(inst.from.begin(), inst.from.end(), geos[k].walls.begin() + pos))
              continue;
            std::vector<unsigned> rewritten(geos[k].walls.begin(), geos[k].walls.begin() + pos);
            rewritten.insert(rewritten.end(), inst.to.begin(), inst.to.end());
            rewritten.insert(rewritten.end(), geos[k].walls.begin() + pos + inst.from.size(),
                             geos[k].walls.end());
            auto it = idx.find(rewritten);
            if (it == idx.end()) continue;  // rewrite leaves the geodesic set: cannot happen
            parent[find(k)] = find(it->second);
          }
        }
      }
      std::set<std::size_t> classes;
      for (std::size_t k = 0; k < geos.size(); ++k) classes.insert(find(k));
      if (classes.size() != 1) {
        ++class_failures;
        if (witness.empty())
          witness = "chambers " + std::to_string(s) + " -> " + std::to_string(t) + ": " +
                    std::to_string(classes.size()) + " classes among " +
                    std::to_string(geos.size()) + " geodesics";
      }
    }
  }

  std::ostringstream stats;
  stats << pair_count << " pairs, " << geodesic_count << " geodesics";
  if (limit_hit) {
    report.add("atomic_matsumoto_pair_limit", false, "pair limit exceeded");
    return report;
  }
  report.add("atomic_matsumoto_connected", class_failures == 0,
             class_failures == 0 ? stats.str() : witness);
  return report;
}

}  // namespace titscone
