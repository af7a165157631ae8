#include "radial_jet/multi_index.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

namespace radial_jet {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
    weight_ += e;
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

Integer MultiIndex::factorial() const {
  Integer out = 1;
  for (int e : entries_) out *= radial_jet::factorial(static_cast<unsigned>(e));
  return out;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < entries_.size(); ++j) os << (j ? "," : "") << entries_[j];
  os << ')';
  return os.str();
}

namespace {

void fill_degree(int n, int remaining, std::vector<int>& current, std::size_t pos, std::vector<MultiIndex>& out) {
  if (pos + 1 == static_cast<std::size_t>(n)) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[pos] = e;
    fill_degree(n, remaining - e, current, pos + 1, out);
  }
}

}  // namespace

std::vector<MultiIndex> monomials_of_degree(int n, int d) {
  if (n < 1) throw std::invalid_argument("need at least one variable");
  if (d < 0) return {};
  std::vector<MultiIndex> out;
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  fill_degree(n, d, current, 0, out);
  return out;
}

std::size_t MonomialBasis::count(int n, int max_degree) {
  // C(n + D, n)
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n + max_degree), static_cast<unsigned long>(n));
  return c.get_ui();
}

MonomialBasis::MonomialBasis(int n, int max_degree) : n_(n), max_degree_(max_degree) {
  if (n < 1) throw std::invalid_argument("jets need n >= 1 variables");
  if (max_degree < 0) throw std::invalid_argument("jets need a degree cap D >= 0");
  offsets_.reserve(static_cast<std::size_t>(max_degree) + 2);
  for (int d = 0; d <= max_degree; ++d) {
    offsets_.push_back(monomials_.size());
    for (auto& alpha : monomials_of_degree(n, d)) {
      monomials_.push_back(std::move(alpha));
      degrees_.push_back(d);
    }
  }
  offsets_.push_back(monomials_.size());

  const std::size_t size = monomials_.size();
  std::map<MultiIndex, std::size_t> lookup;
  for (std::size_t i = 0; i < size; ++i) lookup.emplace(monomials_[i], i);

  product_.assign(size * size, static_cast<std::uint32_t>(size));
  std::vector<int> sum(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t limit = offset(max_degree - degrees_[i] + 1);
    for (std::size_t j = 0; j < limit; ++j) {
      for (std::size_t v = 0; v < sum.size(); ++v) sum[v] = monomials_[i][v] + monomials_[j][v];
      product_[i * size + j] = static_cast<std::uint32_t>(lookup.at(MultiIndex(sum)));
    }
  }
}

std::size_t MonomialBasis::index_of(const MultiIndex& alpha) const {
  if (alpha.size() != static_cast<std::size_t>(n_))
    throw ShapeError("multi-index " + alpha.to_string() + " does not have " + std::to_string(n_) + " entries");
  if (alpha.weight() > max_degree_) return size();
  // Rank inside the degree block: lexicographically descending order.
  std::size_t rank = 0;
  int remaining = alpha.weight();
  for (std::size_t pos = 0; pos + 1 < alpha.size(); ++pos) {
    const int tail_vars = static_cast<int>(alpha.size() - pos - 1);
    for (int e = remaining; e > alpha[pos]; --e) rank += count(tail_vars - 1, remaining - e);
    remaining -= alpha[pos];
  }
  return offset(alpha.weight()) + rank;
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int n, int max_degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, max_degree}];
  if (!slot) slot = std::make_shared<const MonomialBasis>(n, max_degree);
  return slot;
}

}  // namespace radial_jet
