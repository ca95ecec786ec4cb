#pragma once

#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "order3/subspace.hpp"

// Finite matrix group machinery: breadth-first closure of a generated group,
// conjugation orbits (the class D), and the element-level invariants the
// geometry is built from. Square matrices of dimension <= 8 ride a packed
// one-word representation; larger dimensions use a generic path.

namespace order3 {

namespace detail {

// n <= 8: row i of the matrix is byte i of the word.
inline uint64_t pack8(const BitMatrix& m) {
  uint64_t out = 0;
  for (uint32_t i = 0; i < m.rows(); ++i)
    out |= (m.words()[i] & 0xff) << (8 * i);
  return out;
}

inline BitMatrix unpack8(uint64_t key, uint32_t n) {
  BitMatrix m(n, n);
  for (uint32_t i = 0; i < n; ++i) {
    uint64_t row = (key >> (8 * i)) & 0xff;
    for (uint32_t j = 0; j < n; ++j)
      if ((row >> j) & 1) m.set(i, j, true);
  }
  return m;
}

inline uint64_t pmul8(uint64_t a, uint64_t b) {
  uint64_t out = 0;
  for (int i = 0; i < 8; ++i) {
    uint64_t arow = (a >> (8 * i)) & 0xff;
    uint64_t acc = 0;
    while (arow) {
      int j = std::countr_zero(arow);
      arow &= arow - 1;
      acc ^= (b >> (8 * j)) & 0xff;
    }
    out |= acc << (8 * i);
  }
  return out;
}

inline uint64_t pidentity8(uint32_t n) {
  uint64_t out = 0;
  for (uint32_t i = 0; i < n; ++i) out |= uint64_t(1) << (8 * i + i);
  return out;
}

// Flattened row words for the generic path (cols <= 64).
inline std::vector<uint64_t> pack_generic(const BitMatrix& m) {
  return m.words();
}

struct VecU64Hash {
  size_t operator()(const std::vector<uint64_t>& v) const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (uint64_t w : v) h = mix64(h ^ w);
    return static_cast<size_t>(h);
  }
};

}  // namespace detail

// Full element set of <generators>, in a canonical sorted order so that
// downstream reports are byte-stable no matter how the set was produced.
class GroupClosure {
 public:
  GroupClosure() = default;

  uint32_t dim() const { return dim_; }
  uint64_t order() const { return packed_ ? keys_.size() : generic_.size(); }
  bool packed() const { return packed_; }
  const std::vector<BitMatrix>& generators() const { return generators_; }

  BitMatrix element(uint64_t i) const {
    if (packed_) return detail::unpack8(keys_[i], dim_);
    BitMatrix m(dim_, dim_);
    for (uint32_t r = 0; r < dim_; ++r)
      m.set_row(r, BitVector::from_words(dim_, &generic_[i][r], 1));
    return m;
  }

  bool contains(const BitMatrix& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) return false;
    if (packed_) {
      uint64_t k = detail::pack8(m);
      return std::binary_search(keys_.begin(), keys_.end(), k);
    }
    return std::binary_search(generic_.begin(), generic_.end(), detail::pack_generic(m));
  }

  const std::vector<uint64_t>& packed_keys() const { return keys_; }

 private:
  friend GroupClosure closure(const std::vector<BitMatrix>&, uint64_t);

  uint32_t dim_ = 0;
  bool packed_ = true;
  std::vector<BitMatrix> generators_;
  std::vector<uint64_t> keys_;                    // dim <= 8
  std::vector<std::vector<uint64_t>> generic_;    // dim > 8
};

inline GroupClosure closure(const std::vector<BitMatrix>& generators,
                            uint64_t cap = uint64_t(1) << 24) {
  if (generators.empty()) throw error("closure: no generators");
  uint32_t n = generators[0].rows();
  for (const auto& g : generators) {
    if (!g.square() || g.rows() != n) throw error("closure: generator dimension mismatch");
    if (!invertible(g)) throw error("closure: generator not invertible");
  }
  if (n > 64) throw error("closure: dimension exceeds 64");

  GroupClosure out;
  out.dim_ = n;
  out.generators_ = generators;

  if (n <= 8) {
    out.packed_ = true;
    std::vector<uint64_t> gens;
    gens.reserve(generators.size());
    for (const auto& g : generators) gens.push_back(detail::pack8(g));
    std::unordered_set<uint64_t> seen;
    std::deque<uint64_t> todo;
    uint64_t id = detail::pidentity8(n);
    seen.insert(id);
    todo.push_back(id);
    while (!todo.empty()) {
      uint64_t x = todo.front();
      todo.pop_front();
      for (uint64_t g : gens) {
        uint64_t y = detail::pmul8(x, g);
        if (seen.insert(y).second) {
          if (seen.size() > cap)
            throw cap_error("closure: cap exceeded after " + std::to_string(seen.size() - 1) +
                            " elements");
          todo.push_back(y);
        }
      }
    }
    out.keys_.assign(seen.begin(), seen.end());
    std::sort(out.keys_.begin(), out.keys_.end());
  } else {
    out.packed_ = false;
    std::vector<BitMatrix> gens = generators;
    std::unordered_set<std::vector<uint64_t>, detail::VecU64Hash> seen;
    std::deque<BitMatrix> todo;
    BitMatrix id = BitMatrix::identity(n);
    seen.insert(detail::pack_generic(id));
    todo.push_back(id);
    while (!todo.empty()) {
      BitMatrix x = todo.front();
      todo.pop_front();
      for (const auto& g : gens) {
        BitMatrix y = x * g;
        if (seen.insert(detail::pack_generic(y)).second) {
          if (seen.size() > cap)
            throw cap_error("closure: cap exceeded after " + std::to_string(seen.size() - 1) +
                            " elements");
          todo.push_back(y);
        }
      }
    }
    out.generic_.assign(seen.begin(), seen.end());
    std::sort(out.generic_.begin(), out.generic_.end());
  }
  return out;
}

inline Subspace commutator_space(const BitMatrix& d) {
  if (!d.square()) throw error("commutator_space: matrix not square");
  return image(d + BitMatrix::identity(d.rows()));
}

inline Subspace fixed_space(const BitMatrix& d) {
  if (!d.square()) throw error("fixed_space: matrix not square");
  return kernel(d + BitMatrix::identity(d.rows()));
}

// Order 3 with 2-dimensional commutator: the membership predicate for D.
inline bool is_class_element(const BitMatrix& m) {
  if (!m.square() || m.is_identity()) return false;
  BitMatrix sq = m * m;
  if (sq.is_identity() || !(sq * m).is_identity()) return false;
  return rank(m + BitMatrix::identity(m.rows())) == 2;
}

// Number of order-3 elements of GL(n,2) with 2-dimensional commutator:
// one per (line, complement, nontrivial action on the line).
inline uint64_t order3_candidate_count(uint32_t n) {
  if (n < 2) return 0;
  uint64_t lines = (((uint64_t(1) << n) - 1) * ((uint64_t(1) << (n - 1)) - 1)) / 3;
  return lines * (uint64_t(1) << (2 * (n - 2))) * 2;
}

enum class SingleClassStatus { Yes, No, Unknown };

// Conjugation orbit of the seed together with its line map d -> [V,d].
struct ClassD {
  uint32_t dim = 0;
  std::vector<BitMatrix> elements;        // sorted canonically
  std::vector<Subspace> lines;            // distinct, sorted
  std::vector<uint32_t> line_of_element;  // elements[i] has line lines[line_of_element[i]]
  SingleClassStatus single_class = SingleClassStatus::Unknown;
  bool inverse_closed = false;
  uint32_t seed_orbits = 1;  // >1 when built from several seeds (normal-set mode)

  bool is_single_class() const { return single_class == SingleClassStatus::Yes; }

  const Subspace& line(uint32_t element_idx) const { return lines[line_of_element[element_idx]]; }

  std::optional<uint32_t> line_index(const Subspace& l) const {
    auto it = std::lower_bound(lines.begin(), lines.end(), l);
    if (it != lines.end() && *it == l) return static_cast<uint32_t>(it - lines.begin());
    return std::nullopt;
  }

  // Indices of class elements carrying the given line.
  std::vector<uint32_t> elements_on_line(uint32_t line_idx) const {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < elements.size(); ++i)
      if (line_of_element[i] == line_idx) out.push_back(i);
    return out;
  }
};

namespace detail {

inline std::vector<BitMatrix> conjugation_orbit(const std::vector<BitMatrix>& generators,
                                                const std::vector<BitMatrix>& seeds,
                                                uint64_t cap) {
  uint32_t n = generators[0].rows();
  std::vector<BitMatrix> out;
  if (n <= 8) {
    std::vector<std::pair<uint64_t, uint64_t>> gens;  // (g, g^-1)
    for (const auto& g : generators)
      gens.emplace_back(pack8(g), pack8(inverse(g)));
    std::unordered_set<uint64_t> seen;
    std::deque<uint64_t> todo;
    for (const auto& s : seeds) {
      uint64_t k = pack8(s);
      if (seen.insert(k).second) todo.push_back(k);
    }
    while (!todo.empty()) {
      uint64_t x = todo.front();
      todo.pop_front();
      for (const auto& [g, gi] : gens) {
        uint64_t y = pmul8(pmul8(gi, x), g);
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw cap_error("build_class: orbit cap exceeded");
          todo.push_back(y);
        }
      }
    }
    std::vector<uint64_t> keys(seen.begin(), seen.end());
    std::sort(keys.begin(), keys.end());
    out.reserve(keys.size());
    for (uint64_t k : keys) out.push_back(unpack8(k, n));
  } else {
    std::vector<std::pair<BitMatrix, BitMatrix>> gens;
    for (const auto& g : generators) gens.emplace_back(g, inverse(g));
    std::unordered_set<std::vector<uint64_t>, VecU64Hash> seen;
    std::deque<BitMatrix> todo;
    for (const auto& s : seeds)
      if (seen.insert(pack_generic(s)).second) todo.push_back(s);
    std::vector<std::vector<uint64_t>> keys;
    while (!todo.empty()) {
      BitMatrix x = todo.front();
      todo.pop_front();
      for (const auto& [g, gi] : gens) {
        BitMatrix y = gi * x * g;
        if (seen.insert(pack_generic(y)).second) {
          if (seen.size() > cap) throw cap_error("build_class: orbit cap exceeded");
          todo.push_back(y);
        }
      }
    }
    keys.assign(seen.begin(), seen.end());
    std::sort(keys.begin(), keys.end());
    out.reserve(keys.size());
    for (const auto& k : keys) {
      BitMatrix m(n, n);
      uint32_t wpr = detail::words_for(n);
      for (uint32_t r = 0; r < n; ++r)
        m.set_row(r, BitVector::from_words(n, &k[size_t(r) * wpr], wpr));
      out.push_back(m);
    }
  }
  return out;
}

inline ClassD finish_class(uint32_t n, std::vector<BitMatrix> orbit, uint32_t seed_orbits,
                           const std::vector<BitMatrix>& seeds) {
  ClassD cls;
  cls.dim = n;
  cls.elements = std::move(orbit);
  std::sort(cls.elements.begin(), cls.elements.end());
  cls.seed_orbits = seed_orbits;

  std::vector<Subspace> raw;
  raw.reserve(cls.elements.size());
  for (const auto& d : cls.elements) raw.push_back(commutator_space(d));
  cls.lines = raw;
  std::sort(cls.lines.begin(), cls.lines.end());
  cls.lines.erase(std::unique(cls.lines.begin(), cls.lines.end()), cls.lines.end());
  cls.line_of_element.resize(cls.elements.size());
  for (size_t i = 0; i < raw.size(); ++i)
    cls.line_of_element[i] = *cls.line_index(raw[i]);

  // Inversion closure holds iff the seed's square is in the orbit:
  // (d^g)^2 = (d^2)^g, so the whole inverse set is in or out together.
  cls.inverse_closed = true;
  for (const auto& s : seeds) {
    BitMatrix s2 = s * s;
    if (!std::binary_search(cls.elements.begin(), cls.elements.end(), s2)) {
      cls.inverse_closed = false;
      break;
    }
  }

  if (seed_orbits > 1)
    cls.single_class = SingleClassStatus::No;
  else if (cls.elements.size() == order3_candidate_count(n))
    cls.single_class = SingleClassStatus::Yes;
  return cls;
}

}  // namespace detail

inline ClassD build_class(const std::vector<BitMatrix>& generators, const BitMatrix& seed,
                          uint64_t cap = uint64_t(1) << 24) {
  if (generators.empty()) throw error("build_class: no generators");
  uint32_t n = generators[0].rows();
  if (seed.rows() != n || seed.cols() != n) throw error("build_class: seed dimension mismatch");
  if (!is_class_element(seed))
    throw error("build_class: seed must have order 3 and 2-dimensional commutator");
  std::vector<BitMatrix> seeds{seed};
  auto orbit = detail::conjugation_orbit(generators, seeds, cap);
  return detail::finish_class(n, std::move(orbit), 1, seeds);
}

// Normal-set mode: distinct seed orbits are merged; reports flag the result
// as extended scope when more than one orbit contributes.
inline ClassD build_class_multi(const std::vector<BitMatrix>& generators,
                                const std::vector<BitMatrix>& seeds,
                                uint64_t cap = uint64_t(1) << 24) {
  if (seeds.empty()) throw error("build_class: no seeds");
  uint32_t n = generators[0].rows();
  for (const auto& s : seeds)
    if (!is_class_element(s))
      throw error("build_class: seed must have order 3 and 2-dimensional commutator");
  auto orbit = detail::conjugation_orbit(generators, seeds, cap);
  // count distinct orbits among the seeds
  uint32_t orbits = 0;
  std::vector<char> assigned(seeds.size(), 0);
  for (size_t i = 0; i < seeds.size(); ++i) {
    if (assigned[i]) continue;
    ++orbits;
    auto single = detail::conjugation_orbit(generators, {seeds[i]}, cap);
    std::sort(single.begin(), single.end());
    for (size_t j = i; j < seeds.size(); ++j)
      if (!assigned[j] && std::binary_search(single.begin(), single.end(), seeds[j]))
        assigned[j] = 1;
  }
  return detail::finish_class(n, std::move(orbit), orbits, seeds);
}

// Resolve single-class status against a full enumeration of the group: D is
// the unique class iff no other element of G passes the order-3 / rank-2
// filter.
inline void resolve_single_class(ClassD& cls, const GroupClosure& group) {
  if (cls.single_class == SingleClassStatus::Yes) return;
  uint64_t count = 0;
  if (group.packed()) {
    uint64_t id = detail::pidentity8(group.dim());
    for (uint64_t k : group.packed_keys()) {
      uint64_t sq = detail::pmul8(k, k);
      if (k == id || sq == k || sq == id) continue;
      if (detail::pmul8(sq, k) != id) continue;
      BitMatrix m = detail::unpack8(k, group.dim());
      if (rank(m + BitMatrix::identity(group.dim())) == 2) ++count;
    }
  } else {
    for (uint64_t i = 0; i < group.order(); ++i) {
      BitMatrix m = group.element(i);
      if (is_class_element(m)) ++count;
    }
  }
  cls.single_class =
      (count == cls.elements.size()) ? SingleClassStatus::Yes : SingleClassStatus::No;
}

inline ClassD build_class(const std::vector<BitMatrix>& generators, const BitMatrix& seed,
                          const GroupClosure& group, uint64_t cap = uint64_t(1) << 24) {
  ClassD cls = build_class(generators, seed, cap);
  resolve_single_class(cls, group);
  return cls;
}

// ---- hypotheses ---------------------------------------------------------

struct HypothesisReport {
  uint32_t dim_commutator = 0;  // dim [V, <D>]
  uint32_t dim_fixed = 0;       // dim C_V(<D>)
  uint32_t dim_commutator_gens = 0;
  uint32_t dim_fixed_gens = 0;
  uint32_t line_orbits = 0;
  bool commutator_full = false;
  bool fixed_trivial = false;
  bool transitive = false;
  bool class_generates = true;  // class-level spaces agree with generator-level ones

  bool all_pass() const { return commutator_full && fixed_trivial && transitive; }
};

inline HypothesisReport check_hypotheses(const std::vector<BitMatrix>& generators,
                                         const ClassD& cls) {
  uint32_t n = cls.dim;
  HypothesisReport rep;

  Subspace comm(n);
  Subspace fix = Subspace::full(n);
  for (const auto& d : cls.elements) {
    if (comm.dim() < n) comm = comm.sum(commutator_space(d));
    if (fix.dim() > 0) fix = fix.meet(fixed_space(d));
    if (comm.dim() == n && fix.dim() == 0) break;
  }
  rep.dim_commutator = comm.dim();
  rep.dim_fixed = fix.dim();

  Subspace gcomm(n);
  Subspace gfix = Subspace::full(n);
  for (const auto& g : generators) {
    gcomm = gcomm.sum(commutator_space(g));
    gfix = gfix.meet(fixed_space(g));
  }
  rep.dim_commutator_gens = gcomm.dim();
  rep.dim_fixed_gens = gfix.dim();
  rep.class_generates =
      (rep.dim_commutator == rep.dim_commutator_gens) && (rep.dim_fixed == rep.dim_fixed_gens);

  // Orbits of the line set under the generator action.
  std::vector<uint32_t> comp(cls.lines.size());
  for (uint32_t i = 0; i < comp.size(); ++i) comp[i] = i;
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (uint32_t i = 0; i < cls.lines.size(); ++i) {
    for (const auto& g : generators) {
      Subspace img = cls.lines[i].apply(g);
      auto j = cls.line_index(img);
      if (!j) throw corruption_error("check_hypotheses: line set not generator-invariant");
      uint32_t a = find(i), b = find(*j);
      if (a != b) comp[a] = b;
    }
  }
  std::unordered_set<uint32_t> roots;
  for (uint32_t i = 0; i < cls.lines.size(); ++i) roots.insert(find(i));
  rep.line_orbits = static_cast<uint32_t>(roots.size());

  rep.commutator_full = rep.dim_commutator == n;
  rep.fixed_trivial = rep.dim_fixed == 0;
  rep.transitive = rep.line_orbits == 1;
  return rep;
}

// ---- Lemma-level predicates ---------------------------------------------

enum class InvariantKind { Centralized, ContainsLine, NotInvariant };

// Trichotomy for subspaces under an order-3 element with 2-dimensional
// commutator: invariant subspaces are centralized or contain the line.
inline InvariantKind invariant_subspace_check(const BitMatrix& d, const Subspace& w) {
  for (const auto& b : w.basis())
    if (!w.contains(d.apply(b))) return InvariantKind::NotInvariant;
  bool centralized = true;
  for (const auto& b : w.basis())
    if (d.apply(b) != b) {
      centralized = false;
      break;
    }
  if (centralized) return InvariantKind::Centralized;
  if (w.contains(commutator_space(d))) return InvariantKind::ContainsLine;
  throw corruption_error("invariant_subspace_check: invariant subspace matches neither case");
}

}  // namespace order3
