#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "radial_jet/multi_index.hpp"
#include "radial_jet/scalar.hpp"

namespace radial_jet {

/// C(m, nu) = m! / (nu! (m - nu)!). Throws DomainError unless 0 <= nu <= m.
Integer binomial(int m, int nu);

/// k! / (k - i)! for 0 <= i <= k, and 0 for i > k.
Integer falling_factorial(int k, int i);

/// Square m x m table with 1-based (row, column) access.
template <class T>
class SquareTable {
 public:
  SquareTable() = default;
  explicit SquareTable(int order) : order_(order), entries_(static_cast<std::size_t>(order * order)) {}

  int order() const { return order_; }
  const T& operator()(int row, int col) const { return entries_[index(row, col)]; }
  T& operator()(int row, int col) { return entries_[index(row, col)]; }

  friend bool operator==(const SquareTable&, const SquareTable&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>((row - 1) * order_ + (col - 1));
  }
  int order_ = 0;
  std::vector<T> entries_;
};

/// beta_{i,k} = k!/(k-i)! for i <= k, else 0. Upper triangular, diagonal k!.
using BetaMatrix = SquareTable<Integer>;

/// The inverse of the beta matrix, c_{k,r}.
struct CTable {
  SquareTable<Rational> c;
  /// Set once the back-substitution and closed-form tables matched.
  bool paths_agreed = false;

  int order() const { return c.order(); }
  const Rational& operator()(int k, int r) const { return c(k, r); }
};

BetaMatrix beta_matrix(int m);

/// Solves sum_k beta_{i,k} c_{k,r} = delta_{i,r} by back-substitution.
SquareTable<Rational> c_table_by_solve(int m);

/// c_{k,r} = (-1)^{r-k} / (k! (r-k)!) for r >= k, else 0.
SquareTable<Rational> c_table_closed_form(int m);

/// Both of the above; throws InternalError if they differ.
CTable c_table(int m);

/// Coefficients of the power identity for f^t. Vectors are indexed 0..m;
/// u[0] = 1 and rho[0] = 1 - rho_1 - ... - rho_m.
struct PowerCoefficients {
  int order = 0;
  Rational t;
  std::vector<Rational> u;
  std::vector<Rational> rho;

  const Rational& rho0() const { return rho[0]; }
};

/// rho_k = sum_r u(r) c_{k,r} with u(r) = t (t-1) ... (t-r+1), checked
/// against rho_k = (-1)^k / (k!(m-k)!) * prod_{i in {0..m}, i != k} (i - t).
PowerCoefficients rho_coefficients(int m, const Rational& t);

/// The product closed form alone, rho_1..rho_m at index 1..m (index 0 unset).
std::vector<Rational> rho_closed_form(int m, const Rational& t);

/// The intermediate single-sum form
/// rho_k = (-1)^k / k! * sum_{j=0}^{m-k} prod_{i=0}^{j+k-1} (i - t) / j!.
std::vector<Rational> rho_partial_sum_form(int m, const Rational& t);

/// The closed form evaluated in double precision for non-rational t.
/// Index 0 holds rho_0.
std::vector<double> rho_coefficients_float(int m, double t);

/// Coefficients of the logarithm identity. Vectors are indexed 0..m;
/// v[0] is unused (0) and a[0] = -a_1 - ... - a_m.
struct LogCoefficients {
  int order = 0;
  std::vector<Rational> v;
  std::vector<Rational> a;

  const Rational& a0() const { return a[0]; }
};

/// a_k = sum_r v(r) c_{k,r} with v(r) = (r-1)! (-1)^{r-1}, checked against
/// a_k = (-1)^{k+1} / k * C(m, k).
LogCoefficients a_coefficients(int m);

/// sum_{j=0}^{q} (j+p)!/j! and its closed form (q+p+1)!/(q!(p+1)).
Integer hockey_stick_sum(int p, int q);
Rational hockey_stick_closed_form(int p, int q);

/// Index set A_nu = {alpha in Z_+^nu : sum_j j*alpha_j = nu} with the chain
/// rule coefficients b_alpha of
///   d^nu/dx^nu F(G(x)) = sum_alpha b_alpha F^{(|alpha|)}(G) prod_j (G^{(j)})^{alpha_j}.
/// Entries are sorted by |alpha| descending, then lexicographically descending.
class FdbTable {
 public:
  struct Entry {
    MultiIndex alpha;
    Integer b;
  };

  FdbTable(int order, std::vector<Entry> entries);

  int order() const { return order_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// A_{nu,i}: the entries with |alpha| = i.
  std::vector<Entry> stratum(int i) const;

  /// b_alpha, or nullopt if alpha is not in A_nu.
  std::optional<Integer> coefficient(const MultiIndex& alpha) const;

 private:
  int order_;
  std::vector<Entry> entries_;
};

/// All of A_nu by direct enumeration of partitions of nu.
std::vector<MultiIndex> fdb_index_set(int nu);

/// b_alpha by induction on nu starting from {(1) -> 1}: one more derivative
/// sends b_alpha F^{(|alpha|)}(G) prod (G^{(j)})^{alpha_j} to the chain-rule
/// term (alpha_1 + 1) and, for each alpha_j > 0, alpha_j * b_alpha into the
/// index with alpha_j - 1 and alpha_{j+1} + 1. The key set is checked against
/// fdb_index_set.
FdbTable fdb_table(int nu);

}  // namespace radial_jet
