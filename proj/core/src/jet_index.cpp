#include "hvc/jet_index.hpp"

#include <cctype>
#include <stdexcept>

#include "hvc/errors.hpp"

namespace hvc {

namespace {

std::uint64_t factorial(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

void check_index_value(int i) {
  if (i != 1 && i != 2) throw std::invalid_argument("index value must be 1 or 2, got " + std::to_string(i));
}

}  // namespace

MultiIndex::MultiIndex(unsigned ones, unsigned twos) {
  if (ones + twos > 255) throw std::invalid_argument("jet order exceeds 255");
  ones_ = static_cast<std::uint8_t>(ones);
  twos_ = static_cast<std::uint8_t>(twos);
}

MultiIndex MultiIndex::from_entries(const std::vector<int>& entries) {
  unsigned ones = 0, twos = 0;
  for (int e : entries) {
    check_index_value(e);
    (e == 1 ? ones : twos)++;
  }
  return MultiIndex(ones, twos);
}

std::vector<int> MultiIndex::entries() const {
  std::vector<int> out(ones_, 1);
  out.insert(out.end(), twos_, 2);
  return out;
}

std::string MultiIndex::digits() const { return std::string(ones_, '1') + std::string(twos_, '2'); }

std::uint64_t multiplicity(const MultiIndex& I) {
  // Binomial(|I|, count_1) without overflowing for moderate orders.
  std::uint64_t r = 1;
  unsigned n = I.order(), k = std::min(I.count(1), I.count(2));
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

std::uint64_t factorial_weight(const MultiIndex& I) { return factorial(I.count(1)) * factorial(I.count(2)); }

MultiIndex insert(const MultiIndex& I, int i) {
  check_index_value(i);
  return i == 1 ? MultiIndex(I.count(1) + 1, I.count(2)) : MultiIndex(I.count(1), I.count(2) + 1);
}

std::optional<MultiIndex> remove(const MultiIndex& I, int i) {
  check_index_value(i);
  if (I.count(i) == 0) return std::nullopt;
  return i == 1 ? MultiIndex(I.count(1) - 1, I.count(2)) : MultiIndex(I.count(1), I.count(2) - 1);
}

MultiIndex join(const MultiIndex& I, const MultiIndex& J) {
  return MultiIndex(I.count(1) + J.count(1), I.count(2) + J.count(2));
}

std::optional<MultiIndex> difference(const MultiIndex& I, const MultiIndex& J) {
  if (J.count(1) > I.count(1) || J.count(2) > I.count(2)) return std::nullopt;
  return MultiIndex(I.count(1) - J.count(1), I.count(2) - J.count(2));
}

std::vector<MultiIndex> enumerate_exact(unsigned order) {
  std::vector<MultiIndex> out;
  out.reserve(order + 1);
  for (unsigned twos = 0; twos <= order; ++twos) out.emplace_back(order - twos, twos);
  return out;
}

std::vector<MultiIndex> enumerate(unsigned max_order) {
  std::vector<MultiIndex> out;
  out.reserve((max_order + 1) * (max_order + 2) / 2);
  for (unsigned s = 0; s <= max_order; ++s)
    for (auto& I : enumerate_exact(s)) out.push_back(I);
  return out;
}

JetCoord::JetCoord(unsigned field, MultiIndex index) : index_(index) {
  if (field < 1 || field > 255) throw std::invalid_argument("field index must lie in 1..255");
  field_ = static_cast<std::uint8_t>(field);
}

JetCoord JetCoord::from_key(std::uint32_t key) {
  unsigned field = key >> 16, order = (key >> 8) & 0xff, twos = key & 0xff;
  return JetCoord(field, MultiIndex(order - twos, twos));
}

std::string JetCoord::str() const {
  std::string s = "u" + std::to_string(field_);
  if (!index_.empty()) s += "_" + index_.digits();
  return s;
}

std::string JetCoord::latex() const {
  std::string s = "u^{" + std::to_string(field_) + "}";
  if (!index_.empty()) s += "_{" + index_.digits() + "}";
  return s;
}

JetCoord parse_jet_coord(std::string_view text) {
  std::size_t pos = 0;
  if (text.empty() || text[0] != 'u') throw ParseError("expected 'u'", 0);
  ++pos;
  std::size_t start = pos;
  unsigned field = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    field = field * 10 + static_cast<unsigned>(text[pos] - '0');
    if (field > 255) throw ParseError("field index too large", start);
    ++pos;
  }
  if (pos == start) throw ParseError("expected field index after 'u'", pos);
  if (field == 0) throw ParseError("field index must be at least 1", start);
  std::vector<int> entries;
  if (pos < text.size()) {
    if (text[pos] != '_') throw ParseError("unexpected character in jet coordinate", pos);
    ++pos;
    if (pos == text.size()) throw ParseError("expected index digits after '_'", pos);
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c == '1' || c == '2') {
        entries.push_back(c - '0');
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("index digit out of range: '") + c + "'", pos);
      } else {
        throw ParseError("unexpected character in jet coordinate", pos);
      }
    }
  }
  return JetCoord(field, MultiIndex::from_entries(entries));
}

}  // namespace hvc
