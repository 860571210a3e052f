#include "titscone/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace titscone {

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(const NumberField& f, unsigned n) {
  Matrix m(n, f.zero());
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(n_, at(0, 0).field().zero());
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned k = 0; k < n_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (unsigned j = 0; j < n_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  std::vector<Scalar> r(n_, at(0, 0).field().zero());
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      if (at(i, j).is_zero() || v[j].is_zero()) continue;
      r[i] += at(i, j) * v[j];
    }
  return r;
}

std::vector<Scalar> Matrix::apply_transpose(const std::vector<Scalar>& v) const {
  std::vector<Scalar> r(n_, at(0, 0).field().zero());
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      if (at(j, i).is_zero() || v[j].is_zero()) continue;
      r[i] += at(j, i) * v[j];
    }
  return r;
}

std::size_t Matrix::hash() const {
  std::size_t h = 0x9d3f1ac2ULL + n_;
  for (const auto& s : a_) h = hash_combine(h, s.hash());
  return h;
}

// ---------------------------------------------------------------------------
// Root / ThetaPoint

std::size_t Root::hash() const {
  std::size_t h = 0x517cc1b7ULL;
  for (const auto& s : coords) h = hash_combine(h, s.hash());
  return h;
}

bool Root::is_zero() const {
  for (const auto& s : coords)
    if (!s.is_zero()) return false;
  return true;
}

int Root::sign() const {
  bool pos = false, neg = false;
  for (const auto& s : coords) {
    int sg = s.sign();
    if (sg > 0) pos = true;
    if (sg < 0) neg = true;
  }
  if (pos && neg) throw InternalError("Root::sign: mixed signs, not a root");
  if (pos) return 1;
  if (neg) return -1;
  return 0;
}

Scalar ThetaPoint::pair(const Root& r) const {
  Scalar acc = coords.at(0).field().zero();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero() || r.coords[i].is_zero()) continue;
    acc += coords[i] * r.coords[i];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// GroupElement

struct GroupElement::Payload {
  std::shared_ptr<const CoxeterContext> ctx;
  Matrix mat;
  Matrix inv;
  unsigned length_bound = 0;
  mutable std::once_flag once;
  mutable std::vector<unsigned> word;
};

const CoxeterContext& GroupElement::context() const { return *p_->ctx; }

const Matrix& GroupElement::matrix() const { return p_->mat; }

const Matrix& GroupElement::inverse_matrix() const { return p_->inv; }

namespace {

// Sign of the root sitting in column i of a W-matrix. Columns of group
// element matrices are roots, so the first nonzero coordinate decides.
int column_root_sign(const Matrix& m, unsigned i) {
  for (unsigned k = 0; k < m.size(); ++k) {
    int s = m.at(k, i).sign();
    if (s != 0) return s;
  }
  throw InternalError("column_root_sign: zero matrix column");
}

// Lexicographically minimal reduced word of g, obtained by walking y = g^-1
// down with right multiplications: the smallest i with y . alpha_i negative
// is the smallest left descent of g, i.e. the first letter of the word.
std::vector<unsigned> lexmin_word(const CoxeterContext& ctx, Matrix y, unsigned bound) {
  std::vector<unsigned> word;
  const unsigned n = ctx.rank();
  for (;;) {
    bool found = false;
    for (unsigned i = 0; i < n; ++i) {
      if (column_root_sign(y, i) < 0) {
        word.push_back(i);
        apply_simple_right(ctx, y, i);
        found = true;
        break;
      }
    }
    if (!found) break;
    if (word.size() > bound) throw InternalError("lexmin_word: descent walk exceeded bound; matrix not in W");
  }
  if (y != Matrix::identity(ctx.field(), n))
    throw InternalError("lexmin_word: walk terminated away from identity");
  return word;
}

}  // namespace

const std::vector<unsigned>& GroupElement::word() const {
  const Payload& p = *p_;
  std::call_once(p.once, [&p] { p.word = lexmin_word(*p.ctx, p.inv, p.length_bound); });
  return p.word;
}

bool GroupElement::is_identity() const {
  const unsigned n = p_->mat.size();
  return p_->mat == Matrix::identity(p_->ctx->field(), n);
}

GroupElement GroupElement::inverse() const {
  auto q = std::make_shared<Payload>();
  q->ctx = p_->ctx;
  q->mat = p_->inv;
  q->inv = p_->mat;
  q->length_bound = p_->length_bound;
  return GroupElement(std::move(q));
}

Root GroupElement::image_of_simple(unsigned i) const {
  const Matrix& m = p_->mat;
  Root r;
  r.coords.reserve(m.size());
  for (unsigned k = 0; k < m.size(); ++k) r.coords.push_back(m.at(k, i));
  return r;
}

Root GroupElement::inverse_image_of_simple(unsigned i) const {
  const Matrix& m = p_->inv;
  Root r;
  r.coords.reserve(m.size());
  for (unsigned k = 0; k < m.size(); ++k) r.coords.push_back(m.at(k, i));
  return r;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  const CoxeterContext& ctx = g.context();
  return ctx.from_matrices(g.matrix() * h.matrix(), h.inverse_matrix() * g.inverse_matrix(),
                           1u << 28);
}

bool shortlex_less(const GroupElement& a, const GroupElement& b) {
  const auto& wa = a.word();
  const auto& wb = b.word();
  if (wa.size() != wb.size()) return wa.size() < wb.size();
  return wa < wb;
}

// ---------------------------------------------------------------------------
// CoxeterContext

CoxeterContext::CoxeterContext(CoxeterDiagram diagram) : diagram_(std::move(diagram)) {
  field_ = NumberField::make(diagram_.field_order());
  const unsigned n = diagram_.rank();
  const NumberField& f = *field_;

  two_b_ = Matrix(n, f.zero());
  bilinear_ = Matrix(n, f.zero());
  Scalar two = f.from_int(2);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      unsigned m = diagram_.bond(i, j);
      Scalar v = f.zero();
      if (i == j) {
        v = two;  // 2 B(alpha_i, alpha_i) = 2
      } else if (m == kInfiniteBond) {
        v = f.from_int(-2);
      } else if (m == 2) {
        v = f.zero();
      } else {
        v = -f.two_cos_pi_over(m);
      }
      two_b_.at(i, j) = v;
      bilinear_.at(i, j) = v / two;
    }
  }

  refl_.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    Matrix s = Matrix::identity(f, n);
    // s_i(alpha_j) = alpha_j - 2B(alpha_j, alpha_i) alpha_i
    for (unsigned j = 0; j < n; ++j) s.at(i, j) -= two_b_.at(j, i);
    refl_.push_back(std::move(s));
  }
}

std::shared_ptr<const CoxeterContext> CoxeterContext::make(CoxeterDiagram diagram) {
  return std::shared_ptr<const CoxeterContext>(new CoxeterContext(std::move(diagram)));
}

void apply_simple_right(const CoxeterContext& ctx, Matrix& m, unsigned i) {
  // columns: col_j -= 2B(j, i) col_i, then col_i is negated (j = i case).
  const unsigned n = m.size();
  std::vector<Scalar> coli;
  coli.reserve(n);
  for (unsigned k = 0; k < n; ++k) coli.push_back(m.at(k, i));
  for (unsigned j = 0; j < n; ++j) {
    const Scalar& c = ctx.two_b(j, i);
    if (c.is_zero()) continue;
    for (unsigned k = 0; k < n; ++k) m.at(k, j) -= c * coli[k];
  }
}

void apply_simple_left(const CoxeterContext& ctx, Matrix& m, unsigned i) {
  // row_i <- row_i - sum_l 2B(l, i) row_l
  const unsigned n = m.size();
  std::vector<Scalar> acc;
  acc.reserve(n);
  for (unsigned j = 0; j < n; ++j) acc.push_back(m.at(i, j));
  for (unsigned l = 0; l < n; ++l) {
    const Scalar& c = ctx.two_b(l, i);
    if (c.is_zero()) continue;
    for (unsigned j = 0; j < n; ++j) acc[j] -= c * m.at(l, j);
  }
  for (unsigned j = 0; j < n; ++j) m.at(i, j) = acc[j];
}

GroupElement CoxeterContext::from_matrices(Matrix mat, Matrix inv, unsigned length_bound) const {
  auto p = std::make_shared<GroupElement::Payload>();
  p->ctx = shared_from_this();
  p->mat = std::move(mat);
  p->inv = std::move(inv);
  p->length_bound = length_bound;
  return GroupElement(std::move(p));
}

GroupElement CoxeterContext::identity_element() const {
  Matrix id = Matrix::identity(*field_, rank());
  return from_matrices(id, id, 0);
}

GroupElement CoxeterContext::simple_reflection(unsigned i) const {
  if (i >= rank()) throw InternalError("simple_reflection: node index out of range");
  return from_matrices(refl_[i], refl_[i], 1);
}

GroupElement CoxeterContext::from_word(const std::vector<unsigned>& word) const {
  Matrix mat = Matrix::identity(*field_, rank());
  Matrix inv = mat;
  for (unsigned i : word) {
    if (i >= rank()) throw ValidationError("word contains node index out of range");
    apply_simple_right(*this, mat, i);
    apply_simple_left(*this, inv, i);
    // inv accumulates reversed: inv = s_i * inv, giving (w s_i)^-1
  }
  return from_matrices(std::move(mat), std::move(inv), static_cast<unsigned>(word.size()));
}

Root CoxeterContext::simple_root(unsigned i) const {
  Root r;
  r.coords.assign(rank(), field_->zero());
  r.coords[i] = field_->one();
  return r;
}

Root CoxeterContext::zero_root() const {
  Root r;
  r.coords.assign(rank(), field_->zero());
  return r;
}

ThetaPoint CoxeterContext::zero_point() const {
  ThetaPoint p;
  p.coords.assign(rank(), field_->zero());
  return p;
}

ThetaPoint CoxeterContext::fundamental_coweight_sum(NodeSet support) const {
  ThetaPoint p = zero_point();
  for (unsigned i : support) p.coords[i] = field_->one();
  return p;
}

bool CoxeterContext::is_finite_parabolic(NodeSet I) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = finite_cache_.find(I.bits());
    if (it != finite_cache_.end()) return it->second;
  }
  // Sylvester: the restriction of B to span{alpha_i : i in I} is positive
  // definite iff Gaussian elimination meets only positive pivots.
  std::vector<unsigned> idx = I.to_vector();
  const unsigned k = static_cast<unsigned>(idx.size());
  bool result = true;
  if (k > 0) {
    Matrix sub(k, field_->zero());
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) sub.at(i, j) = bilinear_.at(idx[i], idx[j]);
    for (unsigned p = 0; p < k && result; ++p) {
      if (sub.at(p, p).sign() <= 0) {
        result = false;
        break;
      }
      for (unsigned i = p + 1; i < k; ++i) {
        if (sub.at(i, p).is_zero()) continue;
        Scalar f = sub.at(i, p) / sub.at(p, p);
        for (unsigned j = p; j < k; ++j) sub.at(i, j) -= f * sub.at(p, j);
      }
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  finite_cache_.emplace(I.bits(), result);
  return result;
}

GroupElement CoxeterContext::longest_element(NodeSet I) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = longest_cache_.find(I.bits());
    if (it != longest_cache_.end()) return it->second;
  }
  if (!is_finite_parabolic(I))
    throw NotFiniteTypeError("longest_element: parabolic subgroup is not finite");
  Matrix mat = Matrix::identity(*field_, rank());
  Matrix inv = mat;
  unsigned steps = 0;
  constexpr unsigned kCap = 1u << 22;
  for (;;) {
    bool found = false;
    for (unsigned i : I) {
      int sign = 1;
      for (unsigned k = 0; k < rank(); ++k) {
        int s = mat.at(k, i).sign();
        if (s != 0) {
          sign = s;
          break;
        }
      }
      if (sign > 0) {
        apply_simple_right(*this, mat, i);
        apply_simple_left(*this, inv, i);
        found = true;
        break;
      }
    }
    if (!found) break;
    if (++steps > kCap) throw InternalError("longest_element: walk exceeded cap");
  }
  GroupElement w = from_matrices(std::move(mat), std::move(inv), steps);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  longest_cache_.emplace(I.bits(), w);
  return w;
}

unsigned CoxeterContext::iota(NodeSet I, unsigned j) const {
  if (!I.contains(j)) throw InternalError("iota: node not in set");
  GroupElement w = longest_element(I);
  Root img = w.image_of_simple(j);
  for (unsigned k : I) {
    bool match = true;
    for (unsigned t = 0; t < rank(); ++t) {
      const Scalar& c = img.coords[t];
      if (t == k ? !(c + field_->one()).is_zero() : !c.is_zero()) {
        match = false;
        break;
      }
    }
    if (match) return k;
  }
  throw InternalError("iota: w_I . alpha_j is not the negative of a simple root");
}

NodeSet CoxeterContext::component(NodeSet I, unsigned a) const {
  if (I.contains(a)) throw InternalError("component: a must lie outside I");
  return diagram_.component(I.with(a), a);
}

// ---------------------------------------------------------------------------
// Free operations

Root act(const GroupElement& g, const Root& r) {
  Root out;
  out.coords = g.matrix().apply(r.coords);
  return out;
}

ThetaPoint contragredient_act(const GroupElement& g, const ThetaPoint& phi) {
  // (g . phi)(alpha_i) = phi(g^-1 . alpha_i), so coordinates transform by the
  // transpose of the inverse matrix.
  ThetaPoint out;
  out.coords = g.inverse_matrix().apply_transpose(phi.coords);
  return out;
}

Root apply_simple_to_root(const CoxeterContext& ctx, unsigned i, const Root& r) {
  // s_i(v) = v - 2B(v, alpha_i) alpha_i
  Scalar c = ctx.field().zero();
  for (unsigned j = 0; j < ctx.rank(); ++j) {
    if (r.coords[j].is_zero()) continue;
    c += r.coords[j] * ctx.two_b(j, i);
  }
  Root out = r;
  out.coords[i] -= c;
  return out;
}

GroupElement min_coset_rep(const GroupElement& g, NodeSet I) {
  const CoxeterContext& ctx = g.context();
  Matrix mat = g.matrix();
  Matrix inv = g.inverse_matrix();
  unsigned steps = 0;
  constexpr unsigned kCap = 1u << 22;
  for (;;) {
    bool found = false;
    for (unsigned i : I) {
      int sign = 1;
      for (unsigned k = 0; k < ctx.rank(); ++k) {
        int s = mat.at(k, i).sign();
        if (s != 0) {
          sign = s;
          break;
        }
      }
      if (sign < 0) {
        apply_simple_right(ctx, mat, i);
        apply_simple_left(ctx, inv, i);
        found = true;
        break;
      }
    }
    if (!found) break;
    if (++steps > kCap) throw InternalError("min_coset_rep: walk exceeded cap");
  }
  return ctx.from_matrices(std::move(mat), std::move(inv), 1u << 28);
}

bool in_parabolic(const GroupElement& g, NodeSet I) {
  return min_coset_rep(g, I).is_identity();
}

std::vector<GroupElement> enumerate_group(const CoxeterContext& ctx, std::size_t max_size) {
  std::vector<GroupElement> out;
  std::unordered_set<GroupElement> seen;
  std::deque<GroupElement> queue;
  GroupElement e = ctx.identity_element();
  out.push_back(e);
  seen.insert(e);
  queue.push_back(e);
  while (!queue.empty()) {
    GroupElement g = queue.front();
    queue.pop_front();
    for (unsigned i = 0; i < ctx.rank(); ++i) {
      GroupElement h = g * ctx.simple_reflection(i);
      if (seen.insert(h).second) {
        if (out.size() >= max_size)
          throw NotFiniteTypeError("enumerate_group: group larger than cap");
        out.push_back(h);
        queue.push_back(h);
      }
    }
  }
  return out;
}

std::vector<Root> positive_roots(const CoxeterContext& ctx, NodeSet I, std::size_t max_size) {
  std::vector<Root> out;
  std::unordered_set<Root> seen;
  std::deque<Root> queue;
  for (unsigned i : I) {
    Root r = ctx.simple_root(i);
    if (seen.insert(r).second) {
      out.push_back(r);
      queue.push_back(r);
    }
  }
  while (!queue.empty()) {
    Root r = queue.front();
    queue.pop_front();
    for (unsigned j : I) {
      Root s = apply_simple_to_root(ctx, j, r);
      if (s.is_positive() && seen.insert(s).second) {
        if (out.size() >= max_size)
          throw NotFiniteTypeError("positive_roots: root system larger than cap");
        out.push_back(s);
        queue.push_back(s);
      }
    }
  }
  return out;
}

std::vector<Root> positive_roots_depth_bounded(const CoxeterContext& ctx, unsigned depth) {
  std::vector<Root> out;
  std::unordered_set<Root> seen;
  std::vector<Root> frontier;
  for (unsigned i = 0; i < ctx.rank(); ++i) {
    Root r = ctx.simple_root(i);
    if (seen.insert(r).second) {
      out.push_back(r);
      frontier.push_back(r);
    }
  }
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<Root> next;
    for (const Root& r : frontier) {
      for (unsigned j = 0; j < ctx.rank(); ++j) {
        Root s = apply_simple_to_root(ctx, j, r);
        if (s.is_positive() && seen.insert(s).second) {
          out.push_back(s);
          next.push_back(s);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool prefix_leq(const GroupElement& u, const GroupElement& w) {
  GroupElement rest = u.inverse() * w;
  return u.length() + rest.length() == w.length();
}

GroupElement weak_meet(const GroupElement& x, const GroupElement& y) {
  const CoxeterContext& ctx = x.context();
  // Only inverse matrices are needed: s is a left descent of x iff column s
  // of x^-1 is a negative root, and peeling x <- s x turns x^-1 into x^-1 s.
  Matrix xi = x.inverse_matrix();
  Matrix yi = y.inverse_matrix();
  Matrix mm = Matrix::identity(ctx.field(), ctx.rank());
  Matrix mi = mm;
  auto left_descent = [&ctx](const Matrix& inv, unsigned i) {
    for (unsigned k = 0; k < ctx.rank(); ++k) {
      int s = inv.at(k, i).sign();
      if (s != 0) return s < 0;
    }
    throw InternalError("weak_meet: zero matrix column");
  };
  for (;;) {
    bool found = false;
    for (unsigned i = 0; i < ctx.rank(); ++i) {
      if (left_descent(xi, i) && left_descent(yi, i)) {
        apply_simple_right(ctx, xi, i);
        apply_simple_right(ctx, yi, i);
        apply_simple_right(ctx, mm, i);
        apply_simple_left(ctx, mi, i);
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  return ctx.from_matrices(std::move(mm), std::move(mi), 1u << 28);
}

GroupElement weak_join(const GroupElement& x, const GroupElement& y) {
  const CoxeterContext& ctx = x.context();
  GroupElement w0 = ctx.longest_element(ctx.diagram().all_nodes());
  return w0 * weak_meet(w0 * x, w0 * y);
}

}  // namespace titscone
