#include <doctest.h>

#include <random>
#include <unordered_set>

#include "oracles.hpp"
#include "titscone/coxeter.hpp"

using namespace titscone;

namespace {

std::shared_ptr<const CoxeterContext> make_ctx(const std::string& json) {
  return CoxeterContext::make(CoxeterDiagram::parse(json));
}

const char* kA2 = R"({"nodes":["1","2"],"edges":[["1","2",3]]})";
const char* kA3 = R"({"nodes":["1","2","3"],"edges":[["1","2",3],["2","3",3]]})";
const char* kB2 = R"({"nodes":["1","2"],"edges":[["1","2",4]]})";
const char* kB3 = R"({"nodes":["1","2","3"],"edges":[["1","2",4],["2","3",3]]})";
const char* kDinf = R"({"nodes":["1","2"],"edges":[["1","2","inf"]]})";
const char* kAffineA2 = R"({"nodes":["1","2","3"],"edges":[["1","2",3],["2","3",3],["1","3",3]]})";
const char* kHFragment = R"({"nodes":["1","2","3"],"edges":[["1","2",5]]})";

}  // namespace

TEST_CASE("parse_diagram fixes the scalar field") {
  auto a2 = CoxeterDiagram::parse(kA2);
  CHECK(a2.rank() == 2);
  CHECK(a2.field_order() == 3);
  auto f = NumberField::make(a2.field_order());
  CHECK(f->degree() == 1);  // 2cos(pi/3) = 1, scalars rational

  auto dinf = CoxeterDiagram::parse(kDinf);
  CHECK(dinf.field_order() == 2);
  CHECK(dinf.bond(0, 1) == kInfiniteBond);

  auto h = CoxeterDiagram::parse(kHFragment);
  CHECK(h.field_order() == 5);
  auto f5 = NumberField::make(5);
  CHECK(f5->minimal_polynomial() == QPoly(std::vector<Rational>{-1, -1, 1}));
}

TEST_CASE("parse_diagram rejects malformed input") {
  CHECK_THROWS_AS(CoxeterDiagram::parse("{nodes}"), ValidationError);
  CHECK_THROWS_AS(CoxeterDiagram::parse(R"({"nodes":["1","1"]})"), ValidationError);
  CHECK_THROWS_AS(CoxeterDiagram::parse(R"({"nodes":["1","2"],"edges":[["1","2",1]]})"),
                  ValidationError);
  CHECK_THROWS_AS(CoxeterDiagram::parse(R"({"nodes":["1","2"],"edges":[["1","3",3]]})"),
                  ValidationError);
  CHECK_THROWS_AS(
      CoxeterDiagram::parse(R"({"nodes":["1","2"],"edges":[["1","2",3],["2","1",4]]})"),
      ValidationError);
  CHECK_THROWS_AS(CoxeterDiagram::parse(R"({"nodes":["1","2"],"edges":[["1","1",3]]})"),
                  ValidationError);
}

TEST_CASE("bilinear form entries") {
  auto ctx = make_ctx(kA2);
  const Matrix& b = ctx->bilinear_form();
  const NumberField& f = ctx->field();
  CHECK(b.at(0, 0) == f.one());
  CHECK(b.at(0, 1) == f.from_rational(Rational(-1, 2)));
  CHECK(b.at(1, 0) == f.from_rational(Rational(-1, 2)));

  auto dctx = make_ctx(kDinf);
  CHECK(dctx->bilinear_form().at(0, 1) == dctx->field().from_int(-1));

  auto bctx = make_ctx(kB2);
  // -(1/2) * 2cos(pi/4) = -sqrt(2)/2, exactly in Q(sqrt 2)
  Scalar c = bctx->field().generator();
  CHECK(bctx->bilinear_form().at(0, 1) == -(c / bctx->field().from_int(2)));
  Scalar v = bctx->bilinear_form().at(0, 1);
  CHECK((v * v) == bctx->field().from_rational(Rational(1, 2)));
}

TEST_CASE("action on roots") {
  auto ctx = make_ctx(kA2);
  GroupElement s1 = ctx->simple_reflection(0);
  GroupElement s2 = ctx->simple_reflection(1);

  Root a1 = ctx->simple_root(0);
  Root a2 = ctx->simple_root(1);
  Root sum;
  sum.coords = {ctx->field().one(), ctx->field().one()};

  // s1 . alpha_1 = -alpha_1
  Root img = act(s1, a1);
  CHECK(img.coords[0] == -ctx->field().one());
  CHECK(img.coords[1] == ctx->field().zero());

  // s2 . (alpha_1 + alpha_2) = alpha_1
  CHECK(act(s2, sum) == a1);

  // identity fixes everything
  CHECK(act(ctx->identity_element(), sum) == sum);
}

TEST_CASE("contragredient pairing identity") {
  auto ctx = make_ctx(kB3);
  std::mt19937 rng(12345);
  std::uniform_int_distribution<unsigned> node(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<unsigned> word;
    for (int k = 0; k < 6; ++k) word.push_back(node(rng));
    GroupElement g = ctx->from_word(word);
    ThetaPoint phi = ctx->fundamental_coweight_sum(NodeSet::of({0, 2}));
    Root v;
    v.coords = {ctx->field().from_int(1), ctx->field().from_int(-2), ctx->field().from_int(3)};
    Scalar lhs = contragredient_act(g, phi).pair(act(g, v));
    CHECK(lhs == phi.pair(v));
  }
}

TEST_CASE("length and canonical word") {
  auto ctx = make_ctx(kA2);
  CHECK(ctx->identity_element().length() == 0);
  CHECK(ctx->identity_element().word().empty());

  GroupElement g = ctx->from_word({0, 1, 0});
  CHECK(g.length() == 3);
  CHECK(g.word() == std::vector<unsigned>{0, 1, 0});

  // Matsumoto: the other reduced word gives the same canonical form
  GroupElement h = ctx->from_word({1, 0, 1});
  CHECK(h == g);
  CHECK(h.word() == std::vector<unsigned>{0, 1, 0});

  // non-reduced input is reduced
  CHECK(ctx->from_word({0, 0}).length() == 0);
  CHECK(ctx->from_word({0, 1, 1, 0}).length() == 0);
}

TEST_CASE("canonical word is lexicographically minimal among reduced words") {
  // brute force over all of W(B2) and W(A3) via Cayley oracles
  auto check_diagram = [](const char* json, const std::vector<oracle::Perm>& gens) {
    auto ctx = make_ctx(json);
    oracle::CayleyOracle cayley(gens);
    for (const auto& p : cayley.elements) {
      auto words = cayley.reduced_words(p);
      auto lexmin = *std::min_element(words.begin(), words.end());
      GroupElement g = ctx->from_word(words.front());
      CHECK(g.word() == lexmin);
      CHECK(g.length() == static_cast<unsigned>(cayley.length(p)));
    }
  };
  oracle::PermOracle s4(4);
  check_diagram(kA3, {s4.simple(0), s4.simple(1), s4.simple(2)});
  check_diagram(kB2, oracle::b_type_generators(2));
}

TEST_CASE("length equals inversion count over positive roots") {
  std::mt19937 rng(99);
  for (const char* json : {kA3, kB3, kDinf, kAffineA2}) {
    auto ctx = make_ctx(json);
    std::uniform_int_distribution<unsigned> node(0, ctx->rank() - 1);
    auto roots = positive_roots_depth_bounded(*ctx, 10);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<unsigned> word;
      for (int k = 0; k < 8; ++k) word.push_back(node(rng));
      GroupElement g = ctx->from_word(word);
      unsigned inversions = 0;
      for (const Root& r : roots)
        if (act(g, r).is_negative()) ++inversions;
      CHECK(g.length() == inversions);
    }
  }
}

TEST_CASE("canonical word recomputation is idempotent") {
  auto ctx = make_ctx(kB3);
  std::mt19937 rng(7);
  std::uniform_int_distribution<unsigned> node(0, 2);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<unsigned> word;
    for (int k = 0; k < 9; ++k) word.push_back(node(rng));
    GroupElement g = ctx->from_word(word);
    GroupElement h = ctx->from_word(g.word());
    CHECK(h == g);
    CHECK(h.word() == g.word());
  }
}

TEST_CASE("min_coset_rep") {
  auto ctx = make_ctx(kA2);
  GroupElement s1 = ctx->simple_reflection(0);
  CHECK(min_coset_rep(s1, NodeSet::of({0})).is_identity());

  GroupElement g = ctx->from_word({1, 0, 1});
  GroupElement rep = min_coset_rep(g, NodeSet::of({1}));
  CHECK(rep == ctx->from_word({1, 0}));

  // brute force in S3: minimal length element of g W_{s2}
  oracle::PermOracle s3(3);
  oracle::Perm gp = s3.from_word({1, 0, 1});
  oracle::Perm cosmate = oracle::perm_mul(gp, s3.simple(1));
  CHECK(s3.length(cosmate) > 0);
  CHECK(s3.length(gp) == 3);
  CHECK(s3.length(cosmate) == 2);  // s2 s1 has length 2: rep matches

  CHECK(min_coset_rep(g, NodeSet()) == g);

  // invariants on random elements of B3
  auto bctx = make_ctx(kB3);
  std::mt19937 rng(3);
  std::uniform_int_distribution<unsigned> node(0, 2);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<unsigned> word;
    for (int k = 0; k < 7; ++k) word.push_back(node(rng));
    GroupElement x = bctx->from_word(word);
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
      NodeSet I(bits);
      GroupElement r = min_coset_rep(x, I);
      for (unsigned i : I) CHECK(act(r, bctx->simple_root(i)).is_positive());
      CHECK(in_parabolic(r.inverse() * x, I));
    }
  }
}

TEST_CASE("is_finite_parabolic") {
  auto a2 = make_ctx(kA2);
  CHECK(a2->is_finite_parabolic(NodeSet::of({0, 1})));

  auto dinf = make_ctx(kDinf);
  CHECK_FALSE(dinf->is_finite_parabolic(NodeSet::of({0, 1})));
  CHECK(dinf->is_finite_parabolic(NodeSet::of({0})));

  auto aff = make_ctx(kAffineA2);
  CHECK_FALSE(aff->is_finite_parabolic(aff->diagram().all_nodes()));
  CHECK(aff->is_finite_parabolic(NodeSet::of({0, 1})));

  // exact determinant oracle for the affine form: det = 0 by cofactor expansion
  const Matrix& b = aff->bilinear_form();
  Scalar det = b.at(0, 0) * (b.at(1, 1) * b.at(2, 2) - b.at(1, 2) * b.at(2, 1)) -
               b.at(0, 1) * (b.at(1, 0) * b.at(2, 2) - b.at(1, 2) * b.at(2, 0)) +
               b.at(0, 2) * (b.at(1, 0) * b.at(2, 1) - b.at(1, 1) * b.at(2, 0));
  CHECK(det.is_zero());
}

TEST_CASE("is_finite_parabolic agrees with exhaustive enumeration, rank <= 3") {
  for (const char* json : {kA3, kB3, kAffineA2, kDinf, kHFragment}) {
    auto ctx = make_ctx(json);
    for (std::uint64_t bits = 0; bits < (1ULL << ctx->rank()); ++bits) {
      NodeSet I(bits);
      // enumerate the subgroup generated by I with a 10^4 cutoff
      bool closed = true;
      std::vector<GroupElement> elements{ctx->identity_element()};
      std::unordered_set<GroupElement> seen{ctx->identity_element()};
      for (std::size_t at = 0; at < elements.size(); ++at) {
        for (unsigned i : I) {
          GroupElement next = elements[at] * ctx->simple_reflection(i);
          if (seen.insert(next).second) elements.push_back(next);
          if (elements.size() > 10000) {
            closed = false;
            break;
          }
        }
        if (!closed) break;
      }
      CHECK(ctx->is_finite_parabolic(I) == closed);
    }
  }
}

TEST_CASE("longest_element and iota") {
  auto ctx = make_ctx(kA2);
  CHECK(ctx->longest_element(NodeSet::of({0})) == ctx->simple_reflection(0));
  GroupElement w0 = ctx->longest_element(NodeSet::of({0, 1}));
  CHECK(w0.length() == 3);
  CHECK(w0 == ctx->from_word({0, 1, 0}));
  CHECK(ctx->longest_element(NodeSet()).is_identity());

  // involution and setwise negation of simples
  CHECK((w0 * w0).is_identity());
  CHECK(ctx->iota(NodeSet::of({0, 1}), 0) == 1);
  CHECK(ctx->iota(NodeSet::of({0, 1}), 1) == 0);
  CHECK(ctx->iota(NodeSet::of({0}), 0) == 0);

  auto b2 = make_ctx(kB2);
  CHECK(b2->iota(NodeSet::of({0, 1}), 0) == 0);  // w0 central in B2
  CHECK(b2->iota(NodeSet::of({0, 1}), 1) == 1);
  // brute force: the longest element has maximal Cayley depth
  oracle::CayleyOracle cayley(oracle::b_type_generators(2));
  CHECK(cayley.order() == 8);
  GroupElement bw0 = b2->longest_element(NodeSet::of({0, 1}));
  CHECK(bw0.length() == 4);

  auto b3 = make_ctx(kB3);
  GroupElement w0b3 = b3->longest_element(b3->diagram().all_nodes());
  CHECK(w0b3.length() == 9);
  for (unsigned i = 0; i < 3; ++i) {
    Root img = act(w0b3, b3->simple_root(i));
    CHECK(img.is_negative());
  }
  CHECK_THROWS_AS(make_ctx(kDinf)->longest_element(NodeSet::of({0, 1})), NotFiniteTypeError);
}

TEST_CASE("component of induced subdiagram") {
  auto ctx = make_ctx(kA3);
  CHECK(ctx->component(NodeSet::of({0}), 2) == NodeSet::of({2}));
  CHECK(ctx->component(NodeSet::of({0}), 1) == NodeSet::of({0, 1}));
  CHECK(ctx->component(NodeSet::of({0, 2}), 1) == NodeSet::of({0, 1, 2}));
  // infinite bonds are edges of the diagram
  auto dinf = make_ctx(kDinf);
  CHECK(dinf->component(NodeSet::of({0}), 1) == NodeSet::of({0, 1}));
}

TEST_CASE("root orbit positivity dichotomy") {
  for (const char* json : {kA3, kDinf, kAffineA2}) {
    auto ctx = make_ctx(json);
    std::mt19937 rng(11);
    std::uniform_int_distribution<unsigned> node(0, ctx->rank() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<unsigned> word;
      for (int k = 0; k < 8; ++k) word.push_back(node(rng));
      GroupElement g = ctx->from_word(word);
      for (unsigned i = 0; i < ctx->rank(); ++i) {
        int s = act(g, ctx->simple_root(i)).sign();  // throws on mixed signs
        CHECK(s != 0);
      }
    }
  }
}

TEST_CASE("group enumeration sizes") {
  CHECK(enumerate_group(*make_ctx(kA2), 100).size() == 6);
  CHECK(enumerate_group(*make_ctx(kA3), 100).size() == 24);
  CHECK(enumerate_group(*make_ctx(kB2), 100).size() == 8);
  CHECK(enumerate_group(*make_ctx(kB3), 100).size() == 48);
  CHECK_THROWS_AS(enumerate_group(*make_ctx(kDinf), 50), NotFiniteTypeError);
}

TEST_CASE("positive root counts") {
  CHECK(positive_roots(*make_ctx(kA3), NodeSet::of({0, 1, 2}), 100).size() == 6);
  CHECK(positive_roots(*make_ctx(kB3), NodeSet::of({0, 1, 2}), 100).size() == 9);
  CHECK(positive_roots(*make_ctx(kB3), NodeSet::of({1, 2}), 100).size() == 3);
  CHECK_THROWS_AS(positive_roots(*make_ctx(kDinf), NodeSet::of({0, 1}), 100), NotFiniteTypeError);
}

TEST_CASE("weak order join and meet against brute force") {
  auto ctx = make_ctx(kA3);
  auto elements = enumerate_group(*ctx, 100);
  // brute force joins via prefix_leq on all pairs of a sample
  std::mt19937 rng(21);
  std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    GroupElement x = elements[pick(rng)];
    GroupElement y = elements[pick(rng)];
    GroupElement j = weak_join(x, y);
    CHECK(prefix_leq(x, j));
    CHECK(prefix_leq(y, j));
    for (const GroupElement& z : elements) {
      if (prefix_leq(x, z) && prefix_leq(y, z)) CHECK(prefix_leq(j, z));
    }
    GroupElement m = weak_meet(x, y);
    CHECK(prefix_leq(m, x));
    CHECK(prefix_leq(m, y));
    for (const GroupElement& z : elements) {
      if (prefix_leq(z, x) && prefix_leq(z, y)) CHECK(prefix_leq(z, m));
    }
  }
}
