#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "order3/group.hpp"

using namespace order3;

namespace {
// 7:3 inside GL(3,2): multiplication by a generator of F8* and the cube map,
// both F2-linear on F8 with basis {1, t, t^2}, t^3 = t + 1.
BitMatrix f8_mult() { return BitMatrix::from_strings({"010", "001", "110"}); }
BitMatrix f8_frobenius() { return BitMatrix::from_strings({"100", "001", "011"}); }

BitMatrix block_d(uint32_t n) {
  BitMatrix d = BitMatrix::identity(n);
  d.set(0, 0, false);
  d.set(0, 1, true);
  d.set(1, 0, true);
  return d;  // [[0,1],[1,1]] + identity padding
}
}  // namespace

TEST_CASE("closure of the identity", "[group]") {
  auto g = closure({BitMatrix::identity(4)});
  CHECK(g.order() == 1);
}

TEST_CASE("closure of 7:3 has order 21", "[group]") {
  auto g = closure({f8_mult(), f8_frobenius()});
  CHECK(g.order() == 21);
  CHECK(g.contains(BitMatrix::identity(3)));
  CHECK(g.contains(f8_mult() * f8_frobenius()));
}

TEST_CASE("closure is generator-order independent", "[group]") {
  auto a = closure({f8_mult(), f8_frobenius()});
  auto b = closure({f8_frobenius(), f8_mult()});
  REQUIRE(a.order() == b.order());
  for (uint64_t i = 0; i < a.order(); ++i) CHECK(a.element(i) == b.element(i));
}

TEST_CASE("closure cap reports and throws", "[group]") {
  CHECK_THROWS_AS(closure({f8_mult(), f8_frobenius()}, 10), cap_error);
}

TEST_CASE("closure rejects bad generators", "[group]") {
  CHECK_THROWS_AS(closure({BitMatrix(3, 3)}), error);
  CHECK_THROWS_AS(closure({BitMatrix::identity(3), BitMatrix::identity(4)}), error);
}

TEST_CASE("generic closure path beyond 8 dimensions", "[group]") {
  CHECK(closure({block_d(10)}).order() == 3);
  BitMatrix two_blocks = BitMatrix::identity(10);
  for (uint32_t base : {0u, 2u}) {
    two_blocks.set(base, base, false);
    two_blocks.set(base, base + 1, true);
    two_blocks.set(base + 1, base, true);
  }
  CHECK(closure({block_d(10), two_blocks}).order() == 9);
}

TEST_CASE("commutator and fixed space of the block element", "[group]") {
  uint32_t n = 5;
  BitMatrix d = block_d(n);
  Subspace comm = commutator_space(d);
  Subspace fix = fixed_space(d);
  CHECK(comm == Subspace::span(n, {BitVector::unit(n, 0), BitVector::unit(n, 1)}));
  CHECK(fix == Subspace::span(n, {BitVector::unit(n, 2), BitVector::unit(n, 3),
                                  BitVector::unit(n, 4)}));
  // identity: zero commutator, full fixed space
  CHECK(commutator_space(BitMatrix::identity(n)).dim() == 0);
  CHECK(fixed_space(BitMatrix::identity(n)) == Subspace::full(n));
}

TEST_CASE("commutator decomposition V = [V,d] (+) C_V(d)", "[group]") {
  for (uint32_t n : {3u, 4u, 6u, 9u}) {
    BitMatrix d = block_d(n);
    Subspace comm = commutator_space(d);
    Subspace fix = fixed_space(d);
    CHECK(comm.meet(fix).dim() == 0);
    CHECK(comm.sum(fix) == Subspace::full(n));
  }
}

TEST_CASE("build_class on 7:3: orbit of size 7, two candidate classes", "[group]") {
  std::vector<BitMatrix> gens{f8_mult(), f8_frobenius()};
  auto grp = closure(gens);
  ClassD cls = build_class(gens, f8_frobenius(), grp);
  CHECK(cls.elements.size() == 7);
  CHECK(cls.lines.size() == 7);
  CHECK(cls.single_class == SingleClassStatus::No);  // splits into two order-3 classes
  CHECK_FALSE(cls.inverse_closed);
}

TEST_CASE("build_class rejects invalid seeds", "[group]") {
  std::vector<BitMatrix> gens{f8_mult(), f8_frobenius()};
  CHECK_THROWS_AS(build_class(gens, f8_mult()), error);            // order 7
  CHECK_THROWS_AS(build_class(gens, BitMatrix::identity(3)), error);
}

TEST_CASE("class closure under conjugation by generators", "[group]") {
  std::vector<BitMatrix> gens{f8_mult(), f8_frobenius()};
  ClassD cls = build_class(gens, f8_frobenius());
  for (const auto& d : cls.elements) {
    CHECK(element_order(d) == 3);
    CHECK(commutator_space(d).dim() == 2);
    for (const auto& g : gens) {
      BitMatrix conj = inverse(g) * d * g;
      CHECK(std::binary_search(cls.elements.begin(), cls.elements.end(), conj));
    }
  }
}

TEST_CASE("each class element cycles its line's three vectors", "[group]") {
  std::vector<BitMatrix> gens{f8_mult(), f8_frobenius()};
  ClassD cls = build_class(gens, f8_frobenius());
  for (uint32_t i = 0; i < cls.elements.size(); ++i) {
    const auto& d = cls.elements[i];
    auto vecs = cls.line(i).vectors();
    REQUIRE(vecs.size() == 3);
    // d fixes no nonzero vector of its line and is transitive on the three
    for (const auto& v : vecs) {
      BitVector img = d.apply(v);
      CHECK(img != v);
      CHECK(cls.line(i).contains(img));
    }
    BitVector v = vecs[0];
    BitVector v1 = d.apply(v);
    BitVector v2 = d.apply(v1);
    CHECK(v2 != v);
    CHECK(d.apply(v2) == v);
  }
}

TEST_CASE("check_hypotheses flags a centralized block", "[group]") {
  // d acting on F2^4 fixing the second block pointwise
  BitMatrix d = block_d(4);
  ClassD cls = build_class({d}, d);
  auto rep = check_hypotheses({d}, cls);
  CHECK(rep.dim_fixed == 2);
  CHECK_FALSE(rep.fixed_trivial);
  CHECK_FALSE(rep.commutator_full);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("check_hypotheses passes on 7:3", "[group]") {
  std::vector<BitMatrix> gens{f8_mult(), f8_frobenius()};
  ClassD cls = build_class(gens, f8_frobenius());
  auto rep = check_hypotheses(gens, cls);
  CHECK(rep.commutator_full);
  CHECK(rep.fixed_trivial);
  CHECK(rep.transitive);
  CHECK(rep.line_orbits == 1);
  CHECK(rep.all_pass());
}

TEST_CASE("invariant_subspace_check trichotomy", "[group]") {
  uint32_t n = 4;
  BitMatrix d = block_d(n);
  Subspace line = commutator_space(d);
  CHECK(invariant_subspace_check(d, line) == InvariantKind::ContainsLine);
  Subspace fixed_part = Subspace::span(n, {BitVector::unit(n, 2)});
  CHECK(invariant_subspace_check(d, fixed_part) == InvariantKind::Centralized);
  Subspace e1 = Subspace::span(n, {BitVector::unit(n, 0)});
  CHECK(invariant_subspace_check(d, e1) == InvariantKind::NotInvariant);
}

TEST_CASE("invariant_subspace_check on random subspaces never breaks the trichotomy",
          "[group]") {
  std::mt19937_64 rng(41);
  uint32_t n = 6;
  BitMatrix d = block_d(n);
  for (int t = 0; t < 1000; ++t) {
    std::vector<BitVector> vs;
    uint32_t k = 1 + rng() % 4;
    for (uint32_t i = 0; i < k; ++i) {
      BitVector v(n);
      for (uint32_t j = 0; j < n; ++j)
        if (rng() & 1) v.set(j, true);
      vs.push_back(v);
    }
    Subspace w = Subspace::span(n, vs);
    CHECK_NOTHROW(invariant_subspace_check(d, w));
  }
}

TEST_CASE("order3 candidate counts", "[group]") {
  CHECK(order3_candidate_count(3) == 56);
  CHECK(order3_candidate_count(4) == 1120);
  CHECK(order3_candidate_count(5) == 19840);
  CHECK(order3_candidate_count(6) == 333312);
}
