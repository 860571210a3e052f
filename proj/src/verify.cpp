#include "titscone/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "titscone/bh.hpp"
#include "titscone/cosetenum.hpp"
#include "titscone/garside.hpp"

namespace titscone {

void parallel_for_index(unsigned threads, std::size_t n,
                        const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  unsigned count = std::min<std::size_t>(threads, n);
  for (unsigned t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

// Brute-force Cham(J) labels per the Labelling Theorem; finite type only.
std::vector<ChamberLabel> algebraic_labels(const CoxeterContext& ctx, NodeSet J) {
  std::vector<ChamberLabel> out;
  for (const GroupElement& x : enumerate_group(ctx, 1u << 20)) {
    for (std::uint64_t bits = 0; bits < (1ULL << ctx.rank()); ++bits) {
      NodeSet I(bits);
      if (I.size() != J.size()) continue;
      ChamberLabel c{x, I};
      if (is_valid_chamber_label(c, J)) out.push_back(c);
    }
  }
  return out;
}

}  // namespace

CheckReport verify_arrangement(const ArrangementGraph& graph, const VerifyOptions& opts) {
  const CoxeterContext& ctx = graph.context();
  CheckReport report;
  const bool finite = ctx.is_finite_type();

  // wall-crossing involution on every edge
  {
    bool ok = true;
    std::string witness;
    for (const auto& e : graph.all_edges()) {
      auto data = wall_crossing_data(ctx, graph.chamber(e.from).I, e.a);
      if (!data) {
        ok = false;
        witness = "edge wall not crossable";
        break;
      }
      auto back = simple_wall_crossing(graph.chamber(e.to), data->back_node);
      if (!back || !(back->first == graph.chamber(e.from)) || !(e.v * back->second).is_identity()) {
        ok = false;
        witness = "involution fails at chamber " + std::to_string(e.from) + ", wall " +
                  ctx.diagram().name(e.a);
        break;
      }
    }
    report.add("wall_crossing_involution", ok, witness);
  }

  // every BFS label satisfies the full chamber label invariants
  {
    std::vector<char> good(graph.size(), 1);
    parallel_for_index(opts.threads, graph.size(), [&](std::size_t i) {
      good[i] = is_valid_chamber_label(graph.chamber(static_cast<unsigned>(i)), graph.J()) ? 1 : 0;
    });
    std::string witness;
    bool ok = true;
    for (std::size_t i = 0; i < good.size(); ++i) {
      if (!good[i]) {
        ok = false;
        witness = "chamber " + std::to_string(i);
        break;
      }
    }
    report.add("label_validity", ok, witness);
  }

  // wall count bound: candidate faces are the nodes outside I
  {
    bool ok = true;
    std::string witness;
    for (unsigned i = 0; i < graph.size(); ++i) {
      unsigned walls = static_cast<unsigned>(graph.edges_from(i).size()) + graph.boundary(i).size();
      if (walls > ctx.rank() - graph.J().size()) {
        ok = false;
        witness = "chamber " + std::to_string(i);
        break;
      }
    }
    report.add("wall_count_bound", ok, witness);
  }

  // half-space/length criterion on every crossable wall
  {
    std::vector<char> good(graph.size(), 1);
    parallel_for_index(opts.threads, graph.size(), [&](std::size_t i) {
      for (const auto& e : graph.edges_from(static_cast<unsigned>(i)))
        if (!halfspace_crosscheck(graph, static_cast<unsigned>(i), e.a)) good[i] = 0;
    });
    bool ok = std::all_of(good.begin(), good.end(), [](char c) { return c != 0; });
    report.add("halfspace_length_criterion", ok, ok ? "" : "criterion mismatch");
  }

  if (finite) {
    // Labelling Theorem bijection and sign vector separation
    auto algebraic = algebraic_labels(ctx, graph.J());
    bool bijective = algebraic.size() == graph.size();
    for (const auto& label : algebraic)
      if (!graph.find(label)) bijective = false;
    report.add("labelling_bijection", bijective,
               std::to_string(graph.size()) + " chambers vs " + std::to_string(algebraic.size()) +
                   " algebraic labels");
    std::set<std::vector<int>> vectors;
    for (unsigned i = 0; i < graph.size(); ++i) vectors.insert(graph.sign_vector(i));
    report.add("sign_vectors_distinct", vectors.size() == graph.size());

    // normaliser action: free, fiber-transitive, commutes with crossings
    auto quotient = enumerate_normaliser_quotient(ctx, graph.J());
    bool action_ok = true;
    std::string witness;
    for (const GroupElement& n : quotient) {
      for (unsigned i = 0; i < graph.size() && action_ok; ++i) {
        ChamberLabel moved = normaliser_act(n, graph.chamber(i), graph.J());
        if (!graph.find(moved)) {
          action_ok = false;
          witness = "orbit leaves the chamber set";
        }
        if (!n.is_identity() && moved == graph.chamber(i)) {
          action_ok = false;
          witness = "action not free";
        }
      }
    }
    for (NodeSet I : associates(graph)) {
      std::vector<unsigned> fiber;
      for (unsigned i = 0; i < graph.size(); ++i)
        if (graph.chamber(i).I == I) fiber.push_back(i);
      if (fiber.empty() || fiber.size() != quotient.size()) {
        action_ok = false;
        witness = "fiber size != |N_J|";
        break;
      }
      std::set<unsigned> orbit;
      for (const GroupElement& n : quotient) {
        auto to = graph.find(normaliser_act(n, graph.chamber(fiber.front()), graph.J()));
        if (to) orbit.insert(*to);
      }
      if (orbit != std::set<unsigned>(fiber.begin(), fiber.end())) {
        action_ok = false;
        witness = "action not transitive on a fiber";
        break;
      }
    }
    report.add("normaliser_action", action_ok, witness);

    if (graph.J().empty()) {
      bool count_ok = graph.size() == enumerate_group(ctx, 1u << 20).size();
      bool edges_ok = true;
      for (unsigned i = 0; i < graph.size(); ++i)
        if (graph.edges_from(i).size() != ctx.rank()) edges_ok = false;
      report.add("coxeter_chamber_count", count_ok && edges_ok,
                 std::to_string(graph.size()) + " chambers");
    }
  } else {
    report.add("labelling_bijection", true, "skipped (finite type only)");
    report.add("normaliser_action", true, "skipped (finite type only)");
  }

  // geodesic distances agree with separation counts on safe pairs
  {
    bool ok = true;
    std::string witness;
    std::size_t checked = 0;
    for (unsigned s = 0; s < graph.size() && ok; ++s) {
      for (unsigned t = 0; t < graph.size(); ++t) {
        if (!graph.saturated()) {
          if (!graph.radius()) continue;
          unsigned sep = graph.separation_distance(s, t);
          if (graph.depth(s) + sep >= *graph.radius()) continue;
        }
        auto geos = geodesics_between(graph, s, t, 1u << 14);
        if (geos.empty()) {
          ok = false;
          witness = "no geodesic found";
          break;
        }
        for (const auto& p : geos) {
          if (!is_geodesic(graph, p) || p.walls.size() != graph.separation_distance(s, t)) {
            ok = false;
            witness = "geodesic mismatch between " + std::to_string(s) + " and " + std::to_string(t);
            break;
          }
        }
        ++checked;
        if (checked > 4000) break;  // sampling bound on large graphs
      }
      if (checked > 4000) break;
    }
    report.add("geodesic_distances", ok,
               ok ? std::to_string(checked) + " pairs checked" : witness);
  }

  return report;
}

CheckReport verify_groupoid(const ArrangementGraph& graph, const VerifyOptions& opts) {
  (void)opts;
  const CoxeterContext& ctx = graph.context();
  CheckReport report = universal_cover_check(graph);
  const bool finite = ctx.is_finite_type();

  // standard expressions of every available rank-two lcm
  {
    bool ok = true;
    std::string witness;
    std::size_t instances = 0;
    for (NodeSet I : associates(graph)) {
      std::vector<unsigned> outside = (ctx.diagram().all_nodes() - I).to_vector();
      for (std::size_t ai = 0; ai < outside.size() && ok; ++ai) {
        for (std::size_t bi = ai + 1; bi < outside.size(); ++bi) {
          auto r = rank_two_lcm(ctx, I, outside[ai], outside[bi]);
          if (r.status != RankTwoStatus::computed) continue;
          ++instances;
          auto evaluate = [&ctx](const std::vector<std::pair<unsigned, NodeSet>>& expr,
                                 unsigned* total) {
            GroupElement g = ctx.identity_element();
            *total = 0;
            for (const auto& [a, I] : expr) {
              auto data = wall_crossing_data(ctx, I, a);
              g = g * data->v;
              *total += data->v.length();
            }
            return g;
          };
          unsigned la = 0, lb = 0;
          GroupElement pa = evaluate(r.lcm->expr_a, &la);
          GroupElement pb = evaluate(r.lcm->expr_b, &lb);
          bool good = r.lcm->expr_a.size() == r.lcm->expr_b.size() && pa == r.lcm->element &&
                      pb == r.lcm->element && la == r.lcm->element.length() &&
                      lb == r.lcm->element.length();
          // join property in the left weak order
          auto va = wall_crossing_data(ctx, I, outside[ai])->v;
          auto vb = wall_crossing_data(ctx, I, outside[bi])->v;
          good = good && prefix_leq(va, r.lcm->element) && prefix_leq(vb, r.lcm->element);
          if (finite) good = good && weak_join(va, vb) == r.lcm->element;
          if (!good) {
            ok = false;
            witness = "lcm at object " + ctx.diagram().set_to_string(I);
            break;
          }
        }
      }
    }
    report.add("standard_expressions", ok,
               ok ? std::to_string(instances) + " instances" : witness);
  }

  // lcm divides every common multiple in the enumerated Hom sets
  if (finite && ctx.rank() <= 3) {
    bool ok = true;
    std::string witness;
    for (NodeSet I : associates(graph)) {
      std::vector<unsigned> outside = (ctx.diagram().all_nodes() - I).to_vector();
      for (std::size_t ai = 0; ai < outside.size() && ok; ++ai) {
        for (std::size_t bi = ai + 1; bi < outside.size(); ++bi) {
          auto r = rank_two_lcm(ctx, I, outside[ai], outside[bi]);
          if (r.status != RankTwoStatus::computed) continue;
          auto va = wall_crossing_data(ctx, I, outside[ai])->v;
          auto vb = wall_crossing_data(ctx, I, outside[bi])->v;
          for (const GroupElement& w : enumerate_group(ctx, 1u << 20)) {
            bool morphism = false;
            for (NodeSet K : associates(graph))
              if (is_bh_morphism(w, I, K)) morphism = true;
            if (!morphism) continue;
            if (prefix_leq(va, w) && prefix_leq(vb, w) && !prefix_leq(r.lcm->element, w)) {
              ok = false;
              witness = "common multiple not divided at " + ctx.diagram().set_to_string(I);
              break;
            }
          }
        }
      }
    }
    report.add("lcm_divides_common_multiples", ok, witness);
  } else {
    report.add("lcm_divides_common_multiples", true, "skipped (finite rank <= 3 only)");
  }

  // presented vertex group has order |N_J|
  if (finite) {
    auto pres = bh_presentation(graph);
    auto vg = vertex_group_presentation(pres);
    auto order = coset_enumeration_order(vg.finite_presentation());
    auto expected = enumerate_normaliser_quotient(ctx, graph.J()).size();
    bool ok = order.has_value() && *order == expected;
    report.add("vertex_group_order", ok,
               "presented order " + (order ? std::to_string(*order) : std::string("?")) +
                   ", |N_J| = " + std::to_string(expected));
  } else {
    report.add("vertex_group_order", true, "skipped (finite type only)");
  }

  // positive path equality: geodesics with equal endpoints are equal, and
  // the relation is symmetric on sampled non-geodesic paths
  {
    bool ok = true;
    std::string witness;
    std::size_t sampled = 0;
    for (unsigned s = 0; s < graph.size() && ok; ++s) {
      for (unsigned t = 0; t < graph.size(); ++t) {
        if (!graph.saturated()) {
          if (!graph.radius()) continue;
          if (graph.depth(s) + graph.separation_distance(s, t) + 1 >= *graph.radius()) continue;
        }
        auto geos = geodesics_between(graph, s, t, 1u << 12);
        if (geos.size() < 2) continue;
        auto eq = positive_path_equal(graph, geos[0], geos[1]);
        if (eq != std::optional<bool>(true)) {
          ok = false;
          witness = "geodesics not positively equal";
          break;
        }
        auto eq_back = positive_path_equal(graph, geos[1], geos[0]);
        if (eq_back != std::optional<bool>(true)) {
          ok = false;
          witness = "relation not symmetric";
          break;
        }
        if (++sampled >= 40) break;
      }
      if (sampled >= 40) break;
    }
    report.add("positive_path_equality", ok,
               ok ? std::to_string(sampled) + " geodesic pairs" : witness);
  }

  report.merge(atomic_matsumoto_check(graph));
  return report;
}

CheckReport verify_garside(const ArrangementGraph& graph, const VerifyOptions& opts) {
  const CoxeterContext& ctx = graph.context();
  CheckReport report;
  if (!ctx.is_finite_type()) {
    report.add("garside_suite", true, "skipped (finite type only)");
    return report;
  }
  auto ctx_ptr = graph.context_ptr();

  // pi(mu(a,I)) = v_{a,I} with matching word length
  {
    bool ok = true;
    std::string witness;
    for (NodeSet I : associates(graph)) {
      for (unsigned a : ctx.diagram().all_nodes() - I) {
        auto data = wall_crossing_data(ctx, I, a);
        GarsideElement mu = garside_mu(ctx_ptr, a, I);
        if (!(mu.image() == data->v) || mu.word_length() != data->v.length()) {
          ok = false;
          witness = "mu(" + ctx.diagram().name(a) + ", " + ctx.diagram().set_to_string(I) + ")";
          break;
        }
      }
    }
    report.add("mu_projects_to_v", ok, witness);
  }

  // normal form properties on random positive words
  {
    std::mt19937 rng(opts.seed);
    std::uniform_int_distribution<unsigned> node(0, ctx.rank() - 1);
    std::uniform_int_distribution<unsigned> len(0, 12);
    bool ok = true;
    for (int trial = 0; trial < 24 && ok; ++trial) {
      auto random_word = [&] {
        GarsideElement g(ctx_ptr);
        for (unsigned k = len(rng); k-- > 0;)
          g = g * positive_lift(ctx.simple_reflection(node(rng)));
        return g;
      };
      GarsideElement x = random_word(), y = random_word(), z = random_word();
      ok = ok && GarsideElement(ctx_ptr, x.factors()) == x;
      ok = ok && (x * y) * z == x * (y * z);
      ok = ok && (x * y).image() == x.image() * y.image();
      ok = ok && (x * y).word_length() == x.word_length() + y.word_length();
    }
    report.add("normal_form_properties", ok);
  }

  // lcm of mu generators = lift of v_{a,b,I}; factorizations match the
  // lifted standard expressions with equal lengths
  {
    bool ok = true;
    std::string witness;
    for (NodeSet I : associates(graph)) {
      std::vector<unsigned> outside = (ctx.diagram().all_nodes() - I).to_vector();
      for (std::size_t ai = 0; ai < outside.size() && ok; ++ai) {
        for (std::size_t bi = ai + 1; bi < outside.size(); ++bi) {
          auto r = rank_two_lcm(ctx, I, outside[ai], outside[bi]);
          if (r.status != RankTwoStatus::computed) {
            ok = false;
            witness = "rank-two lcm missing in finite type";
            break;
          }
          GarsideElement mua = garside_mu(ctx_ptr, outside[ai], I);
          GarsideElement mub = garside_mu(ctx_ptr, outside[bi], I);
          GarsideElement lcm = left_lcm(mua, mub);
          auto lift_expr = [&](const std::vector<std::pair<unsigned, NodeSet>>& expr) {
            GarsideElement g(ctx_ptr);
            for (const auto& [a, obj] : expr) g = g * garside_mu(ctx_ptr, a, obj);
            return g;
          };
          bool good = lcm.image() == r.lcm->element;
          good = good && lcm == positive_lift(r.lcm->element);
          good = good && lift_expr(r.lcm->expr_a) == lcm && lift_expr(r.lcm->expr_b) == lcm;
          good = good && r.lcm->expr_a.size() == r.lcm->expr_b.size();
          good = good && left_divides(mua, lcm) && left_divides(mub, lcm);
          if (!good) {
            ok = false;
            witness = "lcm at object " + ctx.diagram().set_to_string(I);
            break;
          }
        }
      }
    }
    report.add("lcm_matches_standard_expressions", ok, witness);
  }

  // ribbon relations hold as positive normal forms, pi-bar is consistent,
  // and the short exact sequence closes at desk scale
  {
    auto ribbon = ribbon_presentation(graph);  // throws if relation sides differ
    auto pb = pi_bar(ribbon);
    std::size_t expected = enumerate_normaliser_quotient(ctx, graph.J()).size();
    report.add("ribbon_relations", true,
               std::to_string(ribbon.relations.size()) + " relations verified");
    report.add("pi_bar_image_order", pb.image_order == expected,
               "image order " + std::to_string(pb.image_order) + ", |N_J| = " +
                   std::to_string(expected));

    auto kernel = kernel_presentation(ribbon);
    bool kernel_ok = kernel.transversal.size() == expected;
    for (const auto& v : kernel.values)
      if (!v.image().is_identity()) kernel_ok = false;
    report.add("exact_sequence", kernel_ok,
               std::to_string(kernel.presentation.names.size()) + " kernel generators, index " +
                   std::to_string(kernel.transversal.size()));
  }

  // functor G: geodesics map to the positive lift of the path element, and
  // positively equal paths have equal images
  {
    bool ok = true;
    std::string witness;
    std::size_t sampled = 0;
    for (unsigned s = 0; s < graph.size() && ok; ++s) {
      for (unsigned t = 0; t < graph.size(); ++t) {
        auto geos = geodesics_between(graph, s, t, 1u << 12);
        for (const auto& p : geos) {
          if (!(functor_G(graph, p) == positive_lift(path_element(graph, p)))) {
            ok = false;
            witness = "geodesic image mismatch";
            break;
          }
        }
        if (!ok) break;
        if (geos.size() >= 2) {
          if (!(functor_G(graph, geos[0]) == functor_G(graph, geos[1]))) {
            ok = false;
            witness = "equal paths with different images";
            break;
          }
        }
        if (++sampled >= 200) break;
      }
      if (sampled >= 200) break;
    }
    report.add("functor_G_well_defined", ok, witness);
  }
  return report;
}

CheckReport verify_all(const ArrangementGraph& graph, const VerifyOptions& opts) {
  CheckReport report = verify_arrangement(graph, opts);
  report.merge(verify_groupoid(graph, opts));
  report.merge(verify_garside(graph, opts));
  return report;
}

}  // namespace titscone
