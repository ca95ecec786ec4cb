#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "order3/subspace.hpp"

using namespace order3;

namespace {
BitVector rv(std::mt19937_64& rng, uint32_t n) {
  BitVector v(n);
  for (uint32_t i = 0; i < n; ++i)
    if (rng() & 1) v.set(i, true);
  return v;
}

Subspace random_subspace(std::mt19937_64& rng, uint32_t n, uint32_t gens) {
  std::vector<BitVector> vs;
  for (uint32_t i = 0; i < gens; ++i) vs.push_back(rv(rng, n));
  return Subspace::span(n, vs);
}

std::set<uint64_t> vector_set(const Subspace& s) {
  std::set<uint64_t> out{0};
  for (const auto& v : s.vectors()) out.insert(v.mask());
  return out;
}
}  // namespace

TEST_CASE("sum and meet on named examples", "[subspace]") {
  uint32_t n = 4;
  auto e = [&](uint32_t i) { return BitVector::unit(n, i); };
  Subspace a = Subspace::span(n, {e(0), e(1)});
  Subspace b = Subspace::span(n, {e(1), e(2)});
  CHECK(a.sum(b).dim() == 3);
  Subspace m = a.meet(b);
  CHECK(m.dim() == 1);
  CHECK(m.contains(e(1)));

  CHECK(a.sum(a) == a);
  CHECK(a.meet(a) == a);
}

TEST_CASE("two random 2-spaces of F2^6 with trivial meet give a 4-dim sum", "[subspace]") {
  std::mt19937_64 rng(3);
  int done = 0;
  while (done < 20) {
    Subspace a = random_subspace(rng, 6, 2);
    Subspace b = random_subspace(rng, 6, 2);
    if (a.dim() != 2 || b.dim() != 2) continue;
    if (a.meet(b).dim() != 0) continue;
    ++done;
    CHECK(a.sum(b).dim() == 4);
    // oracle: enumerate all vectors of both spans and count the union span
    std::set<uint64_t> seen;
    for (uint64_t x : vector_set(a))
      for (uint64_t y : vector_set(b)) seen.insert(x ^ y);
    CHECK(seen.size() == 16);
  }
}

TEST_CASE("modular law dim(a+b) + dim(meet) = dim a + dim b", "[subspace]") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    uint32_t n = 3 + rng() % 8;
    Subspace a = random_subspace(rng, n, 1 + rng() % n);
    Subspace b = random_subspace(rng, n, 1 + rng() % n);
    CHECK(a.sum(b).dim() + a.meet(b).dim() == a.dim() + b.dim());
  }
}

TEST_CASE("meet is contained in both, sum is the smallest cover", "[subspace]") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    uint32_t n = 3 + rng() % 6;  // exhaustive checks stay cheap up to dim 8
    Subspace a = random_subspace(rng, n, 1 + rng() % 3);
    Subspace b = random_subspace(rng, n, 1 + rng() % 3);
    Subspace mt = a.meet(b);
    Subspace sm = a.sum(b);
    CHECK(a.contains(mt));
    CHECK(b.contains(mt));
    // exhaustive: meet is exactly the common vectors, sum exactly the pairwise sums
    std::set<uint64_t> va = vector_set(a), vb = vector_set(b);
    std::set<uint64_t> common;
    for (uint64_t x : va)
      if (vb.count(x)) common.insert(x);
    CHECK(vector_set(mt) == common);
    std::set<uint64_t> pair_sums;
    for (uint64_t x : va)
      for (uint64_t y : vb) pair_sums.insert(x ^ y);
    CHECK(vector_set(sm) == pair_sums);
  }
}

TEST_CASE("canonical form: same span from shuffled generators", "[subspace]") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    uint32_t n = 4 + rng() % 5;
    Subspace a = random_subspace(rng, n, 3);
    auto vecs = a.vectors();
    std::shuffle(vecs.begin(), vecs.end(), rng);
    CHECK(Subspace::span(n, vecs) == a);
  }
}

TEST_CASE("subspace text round trip via basis matrix", "[subspace]") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    uint32_t n = 3 + rng() % 6;
    Subspace a = random_subspace(rng, n, 2);
    BitMatrix bm = a.basis_matrix();
    Subspace back = Subspace::row_space(parse_matrix(to_text(bm)));
    CHECK(back == a);
  }
}

TEST_CASE("ambient mismatch raises", "[subspace]") {
  Subspace a = Subspace::full(3), b = Subspace::full(4);
  CHECK_THROWS_AS(a.sum(b), error);
  CHECK_THROWS_AS(a.meet(b), error);
}
