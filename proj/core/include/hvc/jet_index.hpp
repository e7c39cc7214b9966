#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hvc {

// Symmetric multi-index over the independent directions {1,2}.  Stored by
// multiplicities, which is the same thing as the sorted entry sequence.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(unsigned ones, unsigned twos);
  // Entries need not be sorted; each must be 1 or 2.
  static MultiIndex from_entries(const std::vector<int>& entries);

  unsigned order() const { return ones_ + twos_; }
  unsigned count(int i) const { return i == 1 ? ones_ : twos_; }
  std::vector<int> entries() const;
  bool empty() const { return order() == 0; }

  // Canonical order: by length, then lexicographic on the sorted entries.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    return a.twos_ <=> b.twos_;
  }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string digits() const;

 private:
  std::uint8_t ones_ = 0;
  std::uint8_t twos_ = 0;
};

// Number of distinct ordered rearrangements of I.
std::uint64_t multiplicity(const MultiIndex& I);
// Product over index values of count_v(I)!.  |I|! / multiplicity(I).
std::uint64_t factorial_weight(const MultiIndex& I);

MultiIndex insert(const MultiIndex& I, int i);
std::optional<MultiIndex> remove(const MultiIndex& I, int i);
MultiIndex join(const MultiIndex& I, const MultiIndex& J);
// Multiset difference I \ J, absent unless J is contained in I.
std::optional<MultiIndex> difference(const MultiIndex& I, const MultiIndex& J);
std::vector<MultiIndex> enumerate(unsigned max_order);
// All multi-indices of exactly the given length.
std::vector<MultiIndex> enumerate_exact(unsigned order);

// Jet coordinate u^alpha_I.
class JetCoord {
 public:
  JetCoord() = default;
  JetCoord(unsigned field, MultiIndex index);

  unsigned field() const { return field_; }
  const MultiIndex& index() const { return index_; }
  unsigned order() const { return index_.order(); }

  // Monotone packing of the (field, order, entries) lexicographic order.
  std::uint32_t key() const {
    return (std::uint32_t{field_} << 16) | (index_.order() << 8) | index_.count(2);
  }
  static JetCoord from_key(std::uint32_t key);

  friend std::strong_ordering operator<=>(const JetCoord& a, const JetCoord& b) {
    return a.key() <=> b.key();
  }
  friend bool operator==(const JetCoord& a, const JetCoord& b) { return a.key() == b.key(); }

  std::string str() const;    // u3_112
  std::string latex() const;  // u^{3}_{112}

 private:
  std::uint8_t field_ = 1;
  MultiIndex index_;
};

// u<alpha> or u<alpha>_<digits>; digits may be unsorted.  Throws ParseError.
JetCoord parse_jet_coord(std::string_view text);

inline JetCoord u(unsigned field, std::initializer_list<int> entries = {}) {
  return JetCoord(field, MultiIndex::from_entries(std::vector<int>(entries)));
}

}  // namespace hvc
