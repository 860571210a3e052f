#include "titscone/garside.hpp"

#include "titscone/bh.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace titscone {

namespace {

void require_finite_type(const CoxeterContext& ctx, const char* who) {
  if (!ctx.is_finite_type()) throw NotFiniteTypeError(std::string(who) + ": finite type required");
}

// left-weighted condition: every left descent of v is a right descent of u
bool pair_normal(const GroupElement& u, const GroupElement& v) {
  const CoxeterContext& ctx = u.context();
  for (unsigned s = 0; s < ctx.rank(); ++s)
    if (v.left_descent(s) && !u.right_descent(s)) return false;
  return true;
}

// slide letters from the head of v into u until the pair is left-weighted
void normalize_pair(GroupElement& u, GroupElement& v) {
  const CoxeterContext& ctx = u.context();
  for (;;) {
    bool moved = false;
    for (unsigned s = 0; s < ctx.rank(); ++s) {
      if (v.left_descent(s) && !u.right_descent(s)) {
        GroupElement g = ctx.simple_reflection(s);
        u = u * g;
        v = g * v;
        moved = true;
      }
    }
    if (!moved) return;
  }
}

std::vector<GroupElement> normalize_factors(const CoxeterContext& ctx,
                                            std::vector<GroupElement> factors) {
  (void)ctx;
  auto drop_identities = [&factors] {
    factors.erase(std::remove_if(factors.begin(), factors.end(),
                                 [](const GroupElement& g) { return g.is_identity(); }),
                  factors.end());
  };
  drop_identities();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = factors.size(); i-- > 1;) {
      GroupElement u = factors[i - 1];
      GroupElement v = factors[i];
      if (pair_normal(u, v)) continue;
      normalize_pair(u, v);
      factors[i - 1] = u;
      factors[i] = v;
      changed = true;
    }
    if (changed) drop_identities();
  }
  return factors;
}

}  // namespace

GarsideElement::GarsideElement(std::shared_ptr<const CoxeterContext> ctx,
                               std::vector<GroupElement> factors)
    : ctx_(std::move(ctx)) {
  require_finite_type(*ctx_, "GarsideElement");
  factors_ = normalize_factors(*ctx_, std::move(factors));
}

const CoxeterContext& GarsideElement::context() const {
  if (!ctx_) throw InternalError("GarsideElement: no context");
  return *ctx_;
}

unsigned GarsideElement::word_length() const {
  unsigned total = 0;
  for (const auto& f : factors_) total += f.length();
  return total;
}

GroupElement GarsideElement::image() const {
  GroupElement g = context().identity_element();
  for (const auto& f : factors_) g = g * f;
  return g;
}

GarsideElement GarsideElement::operator*(const GarsideElement& o) const {
  std::vector<GroupElement> all = factors_;
  all.insert(all.end(), o.factors_.begin(), o.factors_.end());
  return GarsideElement(ctx_ ? ctx_ : o.ctx_, std::move(all));
}

bool GarsideElement::operator==(const GarsideElement& o) const {
  if (factors_.size() != o.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!(factors_[i] == o.factors_[i])) return false;
  return true;
}

std::size_t GarsideElement::hash() const {
  std::size_t h = 0x6a09e667ULL;
  for (const auto& f : factors_) h = hash_combine(h, f.hash());
  return h;
}

std::string GarsideElement::to_string() const {
  if (factors_.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " | ";
    const auto& w = factors_[i].word();
    for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "." : "") << w[k];
  }
  return os.str();
}

GarsideElement positive_lift(const GroupElement& w) {
  auto ctx = w.context().shared_from_this();
  require_finite_type(*ctx, "positive_lift");
  if (w.is_identity()) return GarsideElement(ctx);
  return GarsideElement(ctx, {w});
}

GarsideElement garside_delta(std::shared_ptr<const CoxeterContext> ctx, NodeSet I) {
  require_finite_type(*ctx, "garside_delta");
  return positive_lift(ctx->longest_element(I));
}

GarsideElement garside_mu(std::shared_ptr<const CoxeterContext> ctx, unsigned a, NodeSet I) {
  require_finite_type(*ctx, "garside_mu");
  auto data = wall_crossing_data(*ctx, I, a);
  if (!data) throw InternalError("garside_mu: wall not crossable in finite type");
  GarsideElement mu = positive_lift(data->v);
  // double-entry bookkeeping: Delta_I mu = Delta_{I+a}
  if (garside_delta(ctx, I) * mu != garside_delta(ctx, I.with(a)))
    throw InternalError("garside_mu: Delta_I mu != Delta_{I+a}");
  return mu;
}

bool left_divides(const GarsideElement& u, const GarsideElement& w) {
  std::deque<GroupElement> need(u.factors().begin(), u.factors().end());
  GarsideElement rest = w;
  while (!need.empty()) {
    if (rest.is_identity()) return false;
    GroupElement t = need.front();
    need.pop_front();
    GroupElement head = rest.factors().front();
    if (!prefix_leq(t, head)) return false;
    std::vector<GroupElement> tail(rest.factors().begin(), rest.factors().end());
    tail.front() = t.inverse() * head;
    rest = GarsideElement(rest.context_ptr(), std::move(tail));
  }
  return true;
}

GarsideElement left_quotient(const GarsideElement& u, const GarsideElement& w) {
  std::deque<GroupElement> need(u.factors().begin(), u.factors().end());
  GarsideElement rest = w;
  while (!need.empty()) {
    if (rest.is_identity()) throw ValidationError("left_quotient: u does not divide w");
    GroupElement t = need.front();
    need.pop_front();
    GroupElement head = rest.factors().front();
    if (!prefix_leq(t, head)) throw ValidationError("left_quotient: u does not divide w");
    std::vector<GroupElement> tail(rest.factors().begin(), rest.factors().end());
    tail.front() = t.inverse() * head;
    rest = GarsideElement(rest.context_ptr(), std::move(tail));
  }
  return rest;
}

GarsideElement left_lcm(const GarsideElement& u, const GarsideElement& v) {
  const CoxeterContext& ctx = u.context_ptr() ? u.context() : v.context();
  auto ctx_ptr = u.context_ptr() ? u.context_ptr() : v.context_ptr();
  require_finite_type(ctx, "left_lcm");

  // the lcm grid over simple factors: each cell completes the square
  // T . E = L . S = join(L, T)
  std::vector<GroupElement> top(v.factors().begin(), v.factors().end());
  std::vector<GroupElement> row_rights;
  for (const GroupElement& left0 : u.factors()) {
    GroupElement left = left0;
    for (auto& t : top) {
      GroupElement join = weak_join(left, t);
      GroupElement east = t.inverse() * join;    // vertical continuation of u's side
      GroupElement south = left.inverse() * join;  // horizontal continuation of v's side
      t = south;
      left = east;
    }
    row_rights.push_back(left);
  }
  std::vector<GroupElement> bottom = top;

  std::vector<GroupElement> lcm_factors(u.factors().begin(), u.factors().end());
  lcm_factors.insert(lcm_factors.end(), bottom.begin(), bottom.end());
  GarsideElement lcm(ctx_ptr, std::move(lcm_factors));

  std::vector<GroupElement> other(v.factors().begin(), v.factors().end());
  other.insert(other.end(), row_rights.begin(), row_rights.end());
  if (GarsideElement(ctx_ptr, std::move(other)) != lcm)
    throw InternalError("left_lcm: grid closure mismatch");
  return lcm;
}

// ---------------------------------------------------------------------------
// ArtinElement

ArtinElement::ArtinElement(GarsideElement positive) : positive_(std::move(positive)) {
  canonicalize();
}

ArtinElement::ArtinElement(long delta_power, GarsideElement positive)
    : delta_power_(delta_power), positive_(std::move(positive)) {
  canonicalize();
}

void ArtinElement::canonicalize() {
  if (positive_.is_identity()) return;
  const CoxeterContext& ctx = positive_.context();
  GroupElement w0 = ctx.longest_element(ctx.diagram().all_nodes());
  std::vector<GroupElement> factors = positive_.factors();
  std::size_t lead = 0;
  while (lead < factors.size() && factors[lead] == w0) ++lead;
  if (lead > 0) {
    delta_power_ += static_cast<long>(lead);
    factors.erase(factors.begin(), factors.begin() + lead);
    positive_ = GarsideElement(positive_.context_ptr(), std::move(factors));
  }
}

GroupElement ArtinElement::image() const {
  if (!positive_.context_ptr()) throw InternalError("ArtinElement: no context");
  const CoxeterContext& ctx = positive_.context();
  GroupElement g = ctx.identity_element();
  GroupElement w0 = ctx.longest_element(ctx.diagram().all_nodes());
  long p = delta_power_ % 2;
  if (p != 0) g = w0;
  return g * positive_.image();
}

namespace {

// tau(u) = w0 u w0, the Delta-conjugation diagram automorphism
GarsideElement tau(const GarsideElement& x) {
  if (x.is_identity()) return x;
  const CoxeterContext& ctx = x.context();
  GroupElement w0 = ctx.longest_element(ctx.diagram().all_nodes());
  std::vector<GroupElement> factors;
  factors.reserve(x.factors().size());
  for (const auto& f : x.factors()) factors.push_back(w0 * f * w0);
  return GarsideElement(x.context_ptr(), std::move(factors));
}

}  // namespace

ArtinElement ArtinElement::operator*(const ArtinElement& o) const {
  // (Delta^p u)(Delta^q v) = Delta^(p+q) tau^q(u) v
  GarsideElement left = positive_;
  if (o.delta_power_ % 2 != 0) left = tau(left);
  return ArtinElement(delta_power_ + o.delta_power_, left * o.positive_);
}

ArtinElement ArtinElement::inverse() const {
  if (positive_.is_identity()) return ArtinElement(-delta_power_, positive_);
  const CoxeterContext& ctx = positive_.context();
  auto ctx_ptr = positive_.context_ptr();
  GroupElement w0 = ctx.longest_element(ctx.diagram().all_nodes());
  // sigma_f^-1 = Delta^-1 sigma_{tau(f^-1 w0)} = Delta^-1 sigma_{w0 f^-1}
  ArtinElement result{GarsideElement(ctx_ptr)};
  const auto& factors = positive_.factors();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    result = result * ArtinElement(-1, GarsideElement(ctx_ptr, {w0 * it->inverse()}));
  return result * ArtinElement(-delta_power_, GarsideElement(ctx_ptr));
}

bool ArtinElement::operator==(const ArtinElement& o) const {
  return delta_power_ == o.delta_power_ && positive_ == o.positive_;
}

std::string ArtinElement::to_string() const {
  std::ostringstream os;
  if (delta_power_ != 0) os << "D^" << delta_power_ << " . ";
  os << positive_.to_string();
  return os.str();
}

// ---------------------------------------------------------------------------
// ribbon groupoid

GroupoidPresentation ribbon_presentation(const ArrangementGraph& graph) {
  const CoxeterContext& ctx = graph.context();
  require_finite_type(ctx, "ribbon_presentation");
  auto ctx_ptr = graph.context_ptr();

  GroupoidPresentation pres;
  pres.kind = GroupoidPresentation::Kind::artin;
  pres.base = graph.J();
  pres.objects = associates(graph);
  pres.complete = graph.saturated();

  for (NodeSet I : pres.objects) {
    for (unsigned a : ctx.diagram().all_nodes() - I) {
      auto data = wall_crossing_data(ctx, I, a);
      if (!data) throw InternalError("ribbon_presentation: uncrossable wall in finite type");
      (void)garside_mu(ctx_ptr, a, I);  // runs the Delta-division cross-check
      GroupoidGenerator gen;
      gen.source = I;
      gen.target = data->target;
      gen.a = a;
      gen.back_a = data->back_node;
      gen.payload = data->v;
      pres.generators.push_back(std::move(gen));
    }
  }

  for (NodeSet I : pres.objects) {
    std::vector<unsigned> outside = (ctx.diagram().all_nodes() - I).to_vector();
    for (std::size_t ai = 0; ai < outside.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < outside.size(); ++bi) {
        RankTwoResult r = rank_two_lcm(ctx, I, outside[ai], outside[bi]);
        if (r.status != RankTwoStatus::computed)
          throw InternalError("ribbon_presentation: rank-two lcm missing in finite type");
        auto to_word = [&pres](const std::vector<std::pair<unsigned, NodeSet>>& expr) {
          std::vector<unsigned> word;
          for (const auto& [a, I] : expr) {
            auto g = pres.find_generator(I, a);
            if (!g) throw InternalError("ribbon_presentation: expression step not a generator");
            word.push_back(*g);
          }
          return word;
        };
        GroupoidRelation rel{to_word(r.lcm->expr_a), to_word(r.lcm->expr_b)};
        // both sides must have the same Garside normal form
        auto side_value = [&](const std::vector<unsigned>& word) {
          GarsideElement prod(ctx_ptr);
          for (unsigned g : word) prod = prod * positive_lift(pres.generators[g].payload);
          return prod;
        };
        GarsideElement lhs = side_value(rel.lhs);
        GarsideElement rhs = side_value(rel.rhs);
        if (lhs != rhs)
          throw InternalError("ribbon_presentation: relation sides differ as positive elements");
        pres.relations.push_back(std::move(rel));
      }
    }
  }
  return pres;
}

PiBarResult pi_bar(const GroupoidPresentation& ribbon) {
  PiBarResult out;
  if (ribbon.kind != GroupoidPresentation::Kind::artin)
    throw ValidationError("pi_bar: expects a ribbon presentation");
  const CoxeterContext* ctx = nullptr;
  for (const auto& g : ribbon.generators) {
    ctx = &g.payload.context();
    break;
  }
  if (ctx == nullptr) {
    out.report.add("pi_bar_relations_hold", true, "no generators");
    out.image_order = 1;
    return out;
  }

  bool ok = true;
  std::string witness;
  for (std::size_t r = 0; r < ribbon.relations.size(); ++r) {
    auto value = [&](const std::vector<unsigned>& word) {
      GroupElement g = ctx->identity_element();
      for (unsigned gi : word) g = g * ribbon.generators[gi].payload;
      return g;
    };
    if (!(value(ribbon.relations[r].lhs) == value(ribbon.relations[r].rhs))) {
      ok = false;
      witness = "relation " + std::to_string(r);
      break;
    }
  }
  if (!ok) throw InternalError("pi_bar: a ribbon relation fails in W at " + witness);
  out.report.add("pi_bar_relations_hold", true,
                 std::to_string(ribbon.relations.size()) + " relations verified");

  // order of the image of the vertex group: close the pi-images of the
  // vertex generators under multiplication
  auto data = vertex_group_data(ribbon);
  std::vector<GroupElement> gens = data.group.images;
  std::vector<GroupElement> elements{ctx->identity_element()};
  std::unordered_map<std::size_t, std::vector<unsigned>> index;
  index[elements[0].hash()].push_back(0);
  auto known = [&](const GroupElement& g) {
    auto it = index.find(g.hash());
    if (it == index.end()) return false;
    for (unsigned i : it->second)
      if (elements[i] == g) return true;
    return false;
  };
  for (std::size_t at = 0; at < elements.size(); ++at) {
    for (const GroupElement& g : gens) {
      for (const GroupElement& next : {elements[at] * g, elements[at] * g.inverse()}) {
        if (!known(next)) {
          index[next.hash()].push_back(static_cast<unsigned>(elements.size()));
          elements.push_back(next);
        }
      }
    }
  }
  out.image_order = elements.size();
  return out;
}

std::vector<ArtinElement> ribbon_vertex_values(const GroupoidPresentation& ribbon,
                                               const VertexGroupData& data) {
  const CoxeterContext* rawctx = nullptr;
  for (const auto& g : ribbon.generators) {
    rawctx = &g.payload.context();
    break;
  }
  if (rawctx == nullptr) return {};
  auto ctx_ptr = rawctx->shared_from_this();

  auto object_index = [&ribbon](NodeSet s) -> unsigned {
    for (unsigned i = 0; i < ribbon.objects.size(); ++i)
      if (ribbon.objects[i] == s) return i;
    throw InternalError("ribbon_vertex_values: object lookup failed");
  };
  auto path_value = [&](unsigned obj) {
    ArtinElement p{GarsideElement(ctx_ptr)};
    for (unsigned g : data.tree.path_from_base[obj])
      p = p * ArtinElement(positive_lift(ribbon.generators[g].payload));
    return p;
  };
  std::vector<ArtinElement> values(data.group.names.size(), ArtinElement(GarsideElement(ctx_ptr)));
  for (unsigned g = 0; g < ribbon.generators.size(); ++g) {
    if (data.letter[g] <= 0) continue;  // artin kind assigns positive letters only
    ArtinElement to_src = path_value(object_index(ribbon.generators[g].source));
    ArtinElement from_tgt = path_value(object_index(ribbon.generators[g].target));
    values[static_cast<unsigned>(data.letter[g]) - 1] =
        to_src * ArtinElement(positive_lift(ribbon.generators[g].payload)) * from_tgt.inverse();
  }
  return values;
}

KernelPresentation kernel_presentation(const GroupoidPresentation& ribbon) {
  if (ribbon.kind != GroupoidPresentation::Kind::artin)
    throw ValidationError("kernel_presentation: expects a ribbon presentation");
  auto data = vertex_group_data(ribbon);
  const GroupPresentation& vg = data.group;
  if (vg.names.empty()) {
    const CoxeterContext* rawctx = nullptr;
    for (const auto& g : ribbon.generators) {
      rawctx = &g.payload.context();
      break;
    }
    KernelPresentation out;
    if (rawctx != nullptr) {
      out.transversal = enumerate_normaliser_quotient(*rawctx, ribbon.base);
      if (out.transversal.size() > 1)
        throw InternalError("kernel_presentation: trivial vertex group but N_J nontrivial");
    }
    return out;
  }
  const CoxeterContext& ctx = vg.images.front().context();
  auto values = ribbon_vertex_values(ribbon, data);

  // cosets of the kernel = elements of N_J, ShortLex order
  std::vector<GroupElement> quotient = enumerate_normaliser_quotient(ctx, ribbon.base);
  auto coset_of = [&quotient](const GroupElement& g) -> unsigned {
    for (unsigned i = 0; i < quotient.size(); ++i)
      if (quotient[i] == g) return i;
    throw InternalError("kernel_presentation: pi-bar image leaves N_J");
  };

  // the coset action: right multiplication in N_J by the generator images
  const unsigned n = static_cast<unsigned>(quotient.size());
  const unsigned k = static_cast<unsigned>(vg.names.size());
  std::vector<std::vector<unsigned>> transversal_word(n);
  std::vector<bool> have(n, false);
  std::vector<std::vector<int>> step(n, std::vector<int>(k, -1));
  for (unsigned c = 0; c < n; ++c)
    for (unsigned g = 0; g < k; ++g) step[c][g] = coset_of(quotient[c] * vg.images[g]);

  std::vector<std::pair<unsigned, unsigned>> tree_edge;  // (coset, letter) pairs in the BFS tree
  std::vector<std::vector<bool>> is_tree(n, std::vector<bool>(k, false));
  std::deque<unsigned> queue;
  unsigned e_idx = coset_of(ctx.identity_element());
  have[e_idx] = true;
  queue.push_back(e_idx);
  while (!queue.empty()) {
    unsigned cur = queue.front();
    queue.pop_front();
    for (unsigned g = 0; g < k; ++g) {
      unsigned nxt = static_cast<unsigned>(step[cur][g]);
      if (have[nxt]) continue;
      have[nxt] = true;
      is_tree[cur][g] = true;
      transversal_word[nxt] = transversal_word[cur];
      transversal_word[nxt].push_back(g);
      queue.push_back(nxt);
    }
  }
  for (bool h : have)
    if (!h) throw InternalError("kernel_presentation: pi-bar is not surjective onto N_J");

  // Schreier generators x_{c,g} for non-tree edges
  KernelPresentation out;
  std::vector<std::vector<int>> schreier(n, std::vector<int>(k, 0));
  auto transversal_value = [&](unsigned c) {
    ArtinElement v{GarsideElement(ctx.shared_from_this())};
    for (unsigned g : transversal_word[c]) v = v * values[g];
    return v;
  };
  for (unsigned c = 0; c < n; ++c) {
    for (unsigned g = 0; g < k; ++g) {
      if (is_tree[c][g]) continue;
      int fresh = static_cast<int>(out.presentation.names.size()) + 1;
      schreier[c][g] = fresh;
      out.presentation.names.push_back("k" + std::to_string(fresh));
      out.presentation.images.push_back(ctx.identity_element());
      ArtinElement value = transversal_value(c) * values[g] *
                           transversal_value(static_cast<unsigned>(step[c][g])).inverse();
      if (!value.image().is_identity())
        throw InternalError("kernel_presentation: Schreier generator has nontrivial pi-image");
      out.values.push_back(std::move(value));
    }
  }

  // relator rewriting: for every coset c and relator r, trace u_c r u_c^-1
  for (unsigned c = 0; c < n; ++c) {
    for (const auto& rel : vg.relators) {
      std::vector<int> word;
      unsigned cur = c;
      for (int letter : rel) {
        unsigned g = static_cast<unsigned>(std::abs(letter)) - 1;
        if (letter > 0) {
          if (!is_tree[cur][g] && schreier[cur][g] != 0) word.push_back(schreier[cur][g]);
          cur = static_cast<unsigned>(step[cur][g]);
        } else {
          // find the source coset c' with c' . g = cur
          unsigned prev = 0;
          bool found = false;
          for (unsigned cc = 0; cc < n; ++cc) {
            if (static_cast<unsigned>(step[cc][g]) == cur) {
              prev = cc;
              found = true;
              break;
            }
          }
          if (!found) throw InternalError("kernel_presentation: coset action not invertible");
          if (!is_tree[prev][g] && schreier[prev][g] != 0) word.push_back(-schreier[prev][g]);
          cur = prev;
        }
      }
      if (cur != c) throw InternalError("kernel_presentation: relator does not close");
      std::vector<int> reduced;
      for (int l : word) {
        if (!reduced.empty() && reduced.back() == -l) reduced.pop_back();
        else reduced.push_back(l);
      }
      if (!reduced.empty()) out.presentation.relators.push_back(std::move(reduced));
    }
  }
  out.transversal = quotient;
  return out;
}

GarsideElement functor_G(const ArrangementGraph& graph, const ChamberPath& path) {
  require_finite_type(graph.context(), "functor_G");
  GarsideElement result(graph.context_ptr());
  unsigned cur = path.source;
  for (unsigned a : path.walls) {
    const auto* e = graph.edge_from(cur, a);
    if (e == nullptr) throw ValidationError("functor_G: path leaves the graph");
    result = result * positive_lift(e->v);
    cur = e->to;
  }
  return result;
}

}  // namespace titscone
