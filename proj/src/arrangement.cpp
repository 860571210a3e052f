#include "titscone/arrangement.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace titscone {

bool is_valid_chamber_label(const ChamberLabel& c, NodeSet J) {
  if (c.I.size() != J.size()) return false;
  const CoxeterContext& ctx = c.x.context();
  for (unsigned i : c.I)
    if (!act(c.x, ctx.simple_root(i)).is_positive()) return false;
  // W_J x = x W_I, both directions of the conjugation test
  for (unsigned j : J) {
    GroupElement conj = c.x.inverse() * ctx.simple_reflection(j) * c.x;
    if (!in_parabolic(conj, c.I)) return false;
  }
  for (unsigned i : c.I) {
    GroupElement conj = c.x * ctx.simple_reflection(i) * c.x.inverse();
    if (!in_parabolic(conj, J)) return false;
  }
  return true;
}

std::size_t RestrictedHyperplane::hash() const {
  std::size_t h = 0x41f3b2ULL;
  for (const auto& s : functional) h = hash_combine(h, s.hash());
  return h;
}

bool scalar_vector_less(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const auto& ca = a[i].coeffs();
    const auto& cb = b[i].coeffs();
    for (std::size_t k = 0; k < std::min(ca.size(), cb.size()); ++k) {
      if (ca[k] != cb[k]) return ca[k] < cb[k];
    }
  }
  return a.size() < b.size();
}

bool is_J_root(const Root& alpha, NodeSet J) {
  // span{alpha_j : j in J} is a coordinate subspace of the simple-root
  // basis, so membership is a coordinate support check.
  for (std::size_t i = 0; i < alpha.coords.size(); ++i) {
    if (J.contains(static_cast<unsigned>(i))) continue;
    if (!alpha.coords[i].is_zero()) return true;
  }
  return false;
}

RestrictedHyperplane restricted_hyperplane(const Root& alpha, NodeSet J) {
  if (!is_J_root(alpha, J)) throw ValidationError("restricted_hyperplane: not a J-root");
  RestrictedHyperplane h;
  h.functional = alpha.coords;
  const NumberField& f = h.functional.at(0).field();
  for (unsigned j : J) h.functional[j] = f.zero();
  Scalar lead = f.zero();
  for (const auto& s : h.functional) {
    if (!s.is_zero()) {
      lead = s;
      break;
    }
  }
  Scalar inv = lead.inverse();
  for (auto& s : h.functional) s = s * inv;
  return h;
}

std::optional<WallCrossingData> wall_crossing_data(const CoxeterContext& ctx, NodeSet I,
                                                   unsigned a) {
  if (I.contains(a)) throw InternalError("wall_crossing_data: a must lie outside I");
  NodeSet comp = ctx.component(I, a);
  if (!ctx.is_finite_parabolic(comp)) return std::nullopt;
  WallCrossingData out;
  out.component = comp;
  GroupElement w_comp = ctx.longest_element(comp);
  GroupElement w_sub = ctx.longest_element(comp.without(a));
  out.v = w_sub * w_comp;
  out.back_node = ctx.iota(comp, a);
  out.target = I.with(a).without(out.back_node);
  return out;
}

std::optional<std::pair<ChamberLabel, GroupElement>> simple_wall_crossing(const ChamberLabel& c,
                                                                          unsigned a) {
  const CoxeterContext& ctx = c.x.context();
  auto data = wall_crossing_data(ctx, c.I, a);
  if (!data) return std::nullopt;
  ChamberLabel target{c.x * data->v, data->target};
  // the wall crossing formula lands on a label that is already minimal
  for (unsigned i : target.I) {
    if (!act(target.x, ctx.simple_root(i)).is_positive())
      throw InternalError("simple_wall_crossing: target label not minimal in its coset");
  }
  return std::make_pair(std::move(target), data->v);
}

ThetaPoint chamber_sample_point(const ChamberLabel& c, NodeSet J) {
  const CoxeterContext& ctx = c.x.context();
  NodeSet complement = ctx.diagram().all_nodes() - c.I;
  ThetaPoint phi = ctx.fundamental_coweight_sum(complement);
  ThetaPoint out = contragredient_act(c.x, phi);
  for (unsigned j : J) {
    if (out.pair(ctx.simple_root(j)).sign() != 0)
      throw InternalError("chamber_sample_point: point not in Theta_J");
  }
  for (unsigned i : c.I) {
    if (out.pair(act(c.x, ctx.simple_root(i))).sign() != 0)
      throw InternalError("chamber_sample_point: point not on the I-walls");
  }
  for (unsigned j : complement) {
    if (out.pair(act(c.x, ctx.simple_root(j))).sign() <= 0)
      throw InternalError("chamber_sample_point: point not interior");
  }
  return out;
}

// ---------------------------------------------------------------------------
// ArrangementGraph

std::optional<unsigned> ArrangementGraph::find(const ChamberLabel& c) const {
  auto it = index_.find(c.hash());
  if (it == index_.end()) return std::nullopt;
  for (unsigned i : it->second)
    if (chambers_[i] == c) return i;
  return std::nullopt;
}

std::vector<ArrangementGraph::Edge> ArrangementGraph::all_edges() const {
  std::vector<Edge> out;
  for (const auto& list : out_) out.insert(out.end(), list.begin(), list.end());
  return out;
}

const ArrangementGraph::Edge* ArrangementGraph::edge_from(unsigned i, unsigned a) const {
  for (const Edge& e : out_.at(i))
    if (e.a == a) return &e;
  return nullptr;
}

void ArrangementGraph::ensure_signs() const {
  std::call_once(cache_->once, [this] {
    cache_->samples.reserve(chambers_.size());
    cache_->signs.reserve(chambers_.size());
    for (const ChamberLabel& c : chambers_) {
      ThetaPoint p = chamber_sample_point(c, J_);
      std::vector<int> row;
      row.reserve(hyperplanes_.size());
      for (const auto& h : hyperplanes_) {
        Root functional{h.functional};
        int s = p.pair(functional).sign();
        if (s == 0) throw InternalError("ArrangementGraph: sample point lies on a hyperplane");
        row.push_back(s);
      }
      cache_->samples.push_back(std::move(p));
      cache_->signs.push_back(std::move(row));
    }
  });
}

const ThetaPoint& ArrangementGraph::sample_point(unsigned i) const {
  ensure_signs();
  return cache_->samples.at(i);
}

int ArrangementGraph::sign(unsigned i, unsigned h) const {
  ensure_signs();
  return cache_->signs.at(i).at(h);
}

const std::vector<int>& ArrangementGraph::sign_vector(unsigned i) const {
  ensure_signs();
  return cache_->signs.at(i);
}

std::vector<unsigned> ArrangementGraph::separating(unsigned s, unsigned t) const {
  ensure_signs();
  std::vector<unsigned> out;
  for (unsigned h = 0; h < hyperplanes_.size(); ++h)
    if (cache_->signs[s][h] != cache_->signs[t][h]) out.push_back(h);
  return out;
}

unsigned ArrangementGraph::separation_distance(unsigned s, unsigned t) const {
  return static_cast<unsigned>(separating(s, t).size());
}

void ArrangementGraph::finalize(std::vector<ChamberLabel> chambers, std::vector<unsigned> depth,
                                std::vector<std::vector<Edge>> out, std::vector<NodeSet> boundary) {
  // canonical order: ShortLex on the word of x, then the set I
  std::vector<unsigned> order(chambers.size());
  for (unsigned i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&chambers](unsigned a, unsigned b) {
    const auto& wa = chambers[a].x.word();
    const auto& wb = chambers[b].x.word();
    if (wa.size() != wb.size()) return wa.size() < wb.size();
    if (wa != wb) return wa < wb;
    return chambers[a].I.bits() < chambers[b].I.bits();
  });
  std::vector<unsigned> rank_of(order.size());
  for (unsigned newIdx = 0; newIdx < order.size(); ++newIdx) rank_of[order[newIdx]] = newIdx;

  chambers_.clear();
  depth_.clear();
  out_.assign(chambers.size(), {});
  boundary_.assign(chambers.size(), NodeSet());
  for (unsigned newIdx = 0; newIdx < order.size(); ++newIdx) {
    unsigned oldIdx = order[newIdx];
    chambers_.push_back(chambers[oldIdx]);
    depth_.push_back(depth[oldIdx]);
    boundary_[newIdx] = boundary[oldIdx];
    index_[chambers[oldIdx].hash()].push_back(newIdx);
  }

  // collect hyperplanes from every candidate wall of every chamber
  const CoxeterContext& ctx = *ctx_;
  std::vector<RestrictedHyperplane> hyps;
  std::unordered_map<std::size_t, std::vector<unsigned>> hyp_index;
  auto lookup = [&](const RestrictedHyperplane& h) -> std::optional<unsigned> {
    auto it = hyp_index.find(h.hash());
    if (it == hyp_index.end()) return std::nullopt;
    for (unsigned k : it->second)
      if (hyps[k] == h) return k;
    return std::nullopt;
  };
  for (const ChamberLabel& c : chambers_) {
    for (unsigned a : ctx.diagram().all_nodes() - c.I) {
      RestrictedHyperplane h = restricted_hyperplane(act(c.x, ctx.simple_root(a)), J_);
      if (!lookup(h)) {
        hyp_index[h.hash()].push_back(static_cast<unsigned>(hyps.size()));
        hyps.push_back(std::move(h));
      }
    }
  }
  std::sort(hyps.begin(), hyps.end(), [](const RestrictedHyperplane& a, const RestrictedHyperplane& b) {
    return scalar_vector_less(a.functional, b.functional);
  });
  hyp_index.clear();
  for (unsigned k = 0; k < hyps.size(); ++k) hyp_index[hyps[k].hash()].push_back(k);
  hyperplanes_ = std::move(hyps);

  auto hyp_of = [&](const Root& r) -> unsigned {
    RestrictedHyperplane h = restricted_hyperplane(r, J_);
    auto it = hyp_index.find(h.hash());
    if (it != hyp_index.end()) {
      for (unsigned k : it->second)
        if (hyperplanes_[k] == h) return k;
    }
    throw InternalError("ArrangementGraph: wall hyperplane missing from collection");
  };

  for (unsigned oldIdx = 0; oldIdx < out.size(); ++oldIdx) {
    for (Edge e : out[oldIdx]) {
      e.from = rank_of[e.from];
      e.to = rank_of[e.to];
      const ChamberLabel& src = chambers_[e.from];
      e.hyperplane = hyp_of(act(src.x, ctx.simple_root(e.a)));
      out_[e.from].push_back(e);
    }
  }
  for (auto& list : out_)
    std::sort(list.begin(), list.end(), [](const Edge& a, const Edge& b) { return a.a < b.a; });
}

ArrangementGraph enumerate_chambers(std::shared_ptr<const CoxeterContext> ctx, NodeSet J,
                                    std::optional<unsigned> radius) {
  const CoxeterDiagram& diagram = ctx->diagram();
  if (!J.subset_of(diagram.all_nodes())) throw ValidationError("J is not a subset of the nodes");
  if (!radius && !ctx->is_finite_type())
    throw RadiusRequiredError("enumerate_chambers: radius required for non-finite-type diagrams");

  ArrangementGraph g;
  g.ctx_ = ctx;
  g.J_ = J;
  g.radius_ = radius;

  std::vector<ChamberLabel> chambers;
  std::vector<unsigned> depth;
  std::vector<std::vector<ArrangementGraph::Edge>> out;
  std::vector<NodeSet> boundary;
  std::unordered_map<std::size_t, std::vector<unsigned>> index;

  auto find = [&](const ChamberLabel& c) -> std::optional<unsigned> {
    auto it = index.find(c.hash());
    if (it == index.end()) return std::nullopt;
    for (unsigned i : it->second)
      if (chambers[i] == c) return i;
    return std::nullopt;
  };
  auto insert = [&](const ChamberLabel& c, unsigned d) -> unsigned {
    unsigned idx = static_cast<unsigned>(chambers.size());
    index[c.hash()].push_back(idx);
    chambers.push_back(c);
    depth.push_back(d);
    out.emplace_back();
    boundary.emplace_back();
    return idx;
  };

  ChamberLabel base{ctx->identity_element(), J};
  insert(base, 0);
  bool pruned = false;
  std::deque<unsigned> queue{0};
  // memoized crossing data per (I, a)
  std::map<std::pair<std::uint64_t, unsigned>, std::optional<WallCrossingData>> crossing_cache;

  while (!queue.empty()) {
    unsigned cur = queue.front();
    queue.pop_front();
    ChamberLabel label = chambers[cur];
    unsigned d = depth[cur];
    for (unsigned a : diagram.all_nodes() - label.I) {
      auto key = std::make_pair(label.I.bits(), a);
      auto it = crossing_cache.find(key);
      if (it == crossing_cache.end())
        it = crossing_cache.emplace(key, wall_crossing_data(*ctx, label.I, a)).first;
      const auto& data = it->second;
      if (!data) {
        boundary[cur] = boundary[cur].with(a);
        continue;
      }
      ChamberLabel target{label.x * data->v, data->target};
      for (unsigned i : target.I) {
        if (!act(target.x, ctx->simple_root(i)).is_positive())
          throw InternalError("enumerate_chambers: crossing produced a non-minimal label");
      }
      auto existing = find(target);
      if (existing) {
        out[cur].push_back({cur, *existing, a, data->v, 0});
        continue;
      }
      if (radius && d >= *radius) {
        pruned = true;  // target outside the requested ball
        continue;
      }
      unsigned idx = insert(target, d + 1);
      out[cur].push_back({cur, idx, a, data->v, 0});
      queue.push_back(idx);
    }
  }
  g.saturated_ = !pruned;
  g.finalize(std::move(chambers), std::move(depth), std::move(out), std::move(boundary));
  // base chamber has the empty word, hence sorts first
  g.base_ = 0;
  if (!(g.chambers_.at(0).x.is_identity() && g.chambers_.at(0).I == J))
    throw InternalError("enumerate_chambers: base chamber not first in canonical order");
  return g;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

nlohmann::json word_json(const CoxeterDiagram& d, const std::vector<unsigned>& word) {
  auto arr = nlohmann::json::array();
  for (unsigned i : word) arr.push_back(d.name(i));
  return arr;
}

nlohmann::json set_json(const CoxeterDiagram& d, NodeSet s) {
  auto arr = nlohmann::json::array();
  for (unsigned i : s) arr.push_back(d.name(i));
  return arr;
}

NodeSet set_from_json(const CoxeterDiagram& d, const nlohmann::json& arr) {
  NodeSet s;
  for (const auto& v : arr) s = s.with(d.index_of(v.get<std::string>()));
  return s;
}

std::vector<unsigned> word_from_json(const CoxeterDiagram& d, const nlohmann::json& arr) {
  std::vector<unsigned> w;
  for (const auto& v : arr) w.push_back(d.index_of(v.get<std::string>()));
  return w;
}

}  // namespace

std::string ArrangementGraph::to_json(const CoxeterDiagram& diagram) const {
  nlohmann::json j;
  j["diagram"] = nlohmann::json::parse(diagram.json());
  j["J"] = set_json(diagram, J_);
  if (radius_) j["radius"] = *radius_;
  else j["radius"] = nullptr;
  j["saturated"] = saturated_;
  auto chambers = nlohmann::json::array();
  for (unsigned i = 0; i < chambers_.size(); ++i) {
    nlohmann::json c;
    c["x"] = word_json(diagram, chambers_[i].x.word());
    c["I"] = set_json(diagram, chambers_[i].I);
    c["depth"] = depth_[i];
    c["uncrossable"] = set_json(diagram, boundary_[i]);
    chambers.push_back(std::move(c));
  }
  j["chambers"] = std::move(chambers);
  auto edges = nlohmann::json::array();
  for (const Edge& e : all_edges()) {
    nlohmann::json ej;
    ej["from"] = e.from;
    ej["a"] = diagram.name(e.a);
    ej["to"] = e.to;
    ej["v"] = word_json(diagram, e.v.word());
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  return j.dump(2);
}

std::string ArrangementGraph::to_dot(const CoxeterDiagram& diagram) const {
  std::ostringstream os;
  os << "digraph titscone {\n";
  for (unsigned i = 0; i < chambers_.size(); ++i) {
    os << "  c" << i << " [label=\"(";
    const auto& w = chambers_[i].x.word();
    if (w.empty()) os << "e";
    for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "." : "") << diagram.name(w[k]);
    os << ", " << diagram.set_to_string(chambers_[i].I) << ")";
    if (!boundary_[i].empty()) os << " bdry=" << diagram.set_to_string(boundary_[i]);
    os << "\"];\n";
  }
  for (const Edge& e : all_edges()) {
    os << "  c" << e.from << " -> c" << e.to << " [label=\"" << diagram.name(e.a) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

ArrangementGraph ArrangementGraph::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed arrangement JSON: ") + e.what());
  }
  CoxeterDiagram diagram = CoxeterDiagram::parse(j.at("diagram").dump());
  auto ctx = CoxeterContext::make(diagram);
  ArrangementGraph g;
  g.ctx_ = ctx;
  g.J_ = set_from_json(diagram, j.at("J"));
  if (!j.at("radius").is_null()) g.radius_ = j.at("radius").get<unsigned>();
  g.saturated_ = j.at("saturated").get<bool>();

  std::vector<ChamberLabel> chambers;
  std::vector<unsigned> depth;
  std::vector<NodeSet> boundary;
  for (const auto& cj : j.at("chambers")) {
    ChamberLabel c{ctx->from_word(word_from_json(diagram, cj.at("x"))),
                   set_from_json(diagram, cj.at("I"))};
    chambers.push_back(std::move(c));
    depth.push_back(cj.at("depth").get<unsigned>());
    boundary.push_back(set_from_json(diagram, cj.at("uncrossable")));
  }
  std::vector<std::vector<Edge>> out(chambers.size());
  for (const auto& ej : j.at("edges")) {
    Edge e;
    e.from = ej.at("from").get<unsigned>();
    e.to = ej.at("to").get<unsigned>();
    e.a = diagram.index_of(ej.at("a").get<std::string>());
    e.v = ctx->from_word(word_from_json(diagram, ej.at("v")));
    out.at(e.from).push_back(std::move(e));
  }
  g.finalize(std::move(chambers), std::move(depth), std::move(out), std::move(boundary));
  g.base_ = 0;
  return g;
}

// ---------------------------------------------------------------------------
// normaliser machinery

bool is_normaliser_element(const GroupElement& g, NodeSet J) {
  const CoxeterContext& ctx = g.context();
  for (unsigned j : J) {
    if (!in_parabolic(g * ctx.simple_reflection(j) * g.inverse(), J)) return false;
    if (!in_parabolic(g.inverse() * ctx.simple_reflection(j) * g, J)) return false;
  }
  return true;
}

ChamberLabel normaliser_act(const GroupElement& g, const ChamberLabel& c, NodeSet J) {
  if (!is_normaliser_element(g, J))
    throw ValidationError("normaliser_act: element does not normalise W_J");
  return ChamberLabel{min_coset_rep(g * c.x, c.I), c.I};
}

std::vector<GroupElement> enumerate_normaliser_quotient(const CoxeterContext& ctx, NodeSet J) {
  if (!ctx.is_finite_type())
    throw NotFiniteTypeError("enumerate_normaliser_quotient: finite type required");
  std::vector<GroupElement> out;
  for (const GroupElement& x : enumerate_group(ctx, 1u << 20)) {
    bool permutes = true;
    for (unsigned j : J) {
      Root img = act(x, ctx.simple_root(j));
      bool is_simple_in_J = false;
      for (unsigned jp : J) {
        if (img == ctx.simple_root(jp)) {
          is_simple_in_J = true;
          break;
        }
      }
      if (!is_simple_in_J) {
        permutes = false;
        break;
      }
    }
    if (permutes) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

// ---------------------------------------------------------------------------
// paths

std::vector<unsigned> path_vertices(const ArrangementGraph& g, const ChamberPath& p) {
  std::vector<unsigned> verts{p.source};
  unsigned cur = p.source;
  for (unsigned a : p.walls) {
    const auto* e = g.edge_from(cur, a);
    if (e == nullptr) throw ValidationError("path: no crossing at the requested wall");
    cur = e->to;
    verts.push_back(cur);
  }
  return verts;
}

GroupElement path_element(const ArrangementGraph& g, const ChamberPath& p) {
  GroupElement v = g.context().identity_element();
  unsigned cur = p.source;
  for (unsigned a : p.walls) {
    const auto* e = g.edge_from(cur, a);
    if (e == nullptr) throw ValidationError("path: no crossing at the requested wall");
    v = v * e->v;
    cur = e->to;
  }
  return v;
}

bool is_geodesic(const ArrangementGraph& g, const ChamberPath& p) {
  GroupElement v = g.context().identity_element();
  unsigned total = 0;
  unsigned cur = p.source;
  for (unsigned a : p.walls) {
    const auto* e = g.edge_from(cur, a);
    if (e == nullptr) throw ValidationError("path: no crossing at the requested wall");
    v = v * e->v;
    total += e->v.length();
    cur = e->to;
  }
  return v.length() == total;
}

std::vector<ChamberPath> geodesics_between(const ArrangementGraph& g, unsigned s, unsigned t,
                                           std::size_t limit) {
  std::vector<ChamberPath> out;
  ChamberPath cur{s, {}};
  auto dfs = [&](auto&& self, unsigned at) -> void {
    if (at == t) {
      out.push_back(cur);
      if (out.size() > limit) throw InternalError("geodesics_between: limit exceeded");
      return;
    }
    for (const auto& e : g.edges_from(at)) {
      if (g.sign(at, e.hyperplane) == g.sign(t, e.hyperplane)) continue;
      cur.walls.push_back(e.a);
      self(self, e.to);
      cur.walls.pop_back();
    }
  };
  dfs(dfs, s);
  return out;
}

bool halfspace_crosscheck(const ArrangementGraph& g, unsigned c, unsigned a) {
  const CoxeterContext& ctx = g.context();
  const ChamberLabel& label = g.chamber(c);
  auto data = wall_crossing_data(ctx, label.I, a);
  if (!data) throw ValidationError("halfspace_crosscheck: wall is not crossable");
  Root wall_root = act(label.x, ctx.simple_root(a));
  ThetaPoint base = chamber_sample_point(g.chamber(g.base_index()), g.J());
  ThetaPoint mine = chamber_sample_point(label, g.J());
  int sign_base = base.pair(wall_root).sign();
  int sign_mine = mine.pair(wall_root).sign();
  if (sign_base == 0 || sign_mine == 0)
    throw InternalError("halfspace_crosscheck: sample point on the wall");
  bool same_side = sign_base == sign_mine;
  bool additive = (label.x * data->v).length() == label.x.length() + data->v.length();
  return same_side == additive;
}

}  // namespace titscone
