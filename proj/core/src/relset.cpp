#include "joinopt/relset.hpp"

#include <sstream>

namespace joinopt {

namespace {

struct BinomialTable {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  BinomialTable() {
    for (std::size_t n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (std::size_t k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
  }
};

const BinomialTable& table() {
  static const BinomialTable t;
  return t;
}

template <class Set>
std::string format_set(const Set& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (auto i : s) {
    if (!first) out << ',';
    out << i;
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace

std::string RelSet::to_string() const { return format_set(*this); }
std::string to_string(SmallRelSet s) { return format_set(s); }

std::uint64_t binomial(std::size_t n, std::size_t k) {
  require(n <= 64, "binomial: n > 64");
  return k > n ? 0 : table().c[n][k];
}

SmallRelSet unrank_combination(std::uint64_t rank, std::size_t k, std::size_t n) {
  require(n <= 64, "unrank_combination: n > 64");
  require(k <= n, "unrank_combination: k > n");
  require(rank < binomial(n, k), "unrank_combination: rank " + std::to_string(rank) + " out of range for C(" +
                                     std::to_string(n) + "," + std::to_string(k) + ")");
  const auto& c = table().c;
  std::uint64_t bits = 0;
  std::size_t top = n;
  // Colex combinadic: the i-th largest element is the largest c with C(c, i) <= rank.
  for (std::size_t i = k; i >= 1; --i) {
    std::size_t element = top - 1;
    while (c[element][i] > rank) --element;
    bits |= std::uint64_t{1} << element;
    rank -= c[element][i];
    top = element;
  }
  return SmallRelSet(bits);
}

std::uint64_t combination_rank(SmallRelSet s) {
  std::uint64_t rank = 0;
  std::size_t i = 1;
  for (auto element : s) rank += binomial(element, i++);
  return rank;
}

SmallRelSet deposit_subset(std::uint64_t mask, SmallRelSet superset) {
  require(!superset.empty(), "deposit_subset: empty superset");
  const std::size_t m = superset.count();
  require(mask != 0, "deposit_subset: mask must be nonzero");
  require(m == 64 || mask < (std::uint64_t{1} << m), "deposit_subset: mask exceeds 2^|superset| - 1");
  return SmallRelSet(deposit_bits(mask, superset.bits()));
}

}  // namespace joinopt
