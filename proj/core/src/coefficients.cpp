#include "radial_jet/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace radial_jet {

namespace {

void require_order(int m, const char* what) {
  if (m < 1) throw DomainError(std::string(what) + " needs m >= 1, got " + std::to_string(m));
}

Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

int sign_of_power(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

Integer binomial(int m, int nu) {
  if (m < 0 || nu < 0 || nu > m)
    throw DomainError("binomial(" + std::to_string(m) + ", " + std::to_string(nu) + ") out of range");
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(nu));
  return out;
}

Integer falling_factorial(int k, int i) {
  if (k < 0 || i < 0) throw DomainError("falling_factorial needs non-negative arguments");
  if (i > k) return 0;
  Integer out = 1;
  for (int j = 0; j < i; ++j) out *= k - j;
  return out;
}

BetaMatrix beta_matrix(int m) {
  require_order(m, "beta_matrix");
  BetaMatrix beta(m);
  for (int i = 1; i <= m; ++i)
    for (int k = 1; k <= m; ++k) beta(i, k) = falling_factorial(k, i);
  return beta;
}

SquareTable<Rational> c_table_by_solve(int m) {
  const BetaMatrix beta = beta_matrix(m);
  SquareTable<Rational> c(m);
  // Column r of c solves beta * x = e_r; beta is upper triangular.
  for (int r = 1; r <= m; ++r) {
    for (int k = m; k >= 1; --k) {
      Rational rhs = k == r ? 1 : 0;
      for (int j = k + 1; j <= m; ++j) rhs -= Rational(beta(k, j)) * c(j, r);
      c(k, r) = rhs / Rational(beta(k, k));
    }
  }
  return c;
}

SquareTable<Rational> c_table_closed_form(int m) {
  require_order(m, "c_table");
  SquareTable<Rational> c(m);
  for (int k = 1; k <= m; ++k) {
    for (int r = 1; r <= m; ++r) {
      if (r < k) continue;
      c(k, r) = ratio(sign_of_power(r - k), factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(r - k)));
    }
  }
  return c;
}

CTable c_table(int m) {
  auto solved = c_table_by_solve(m);
  if (solved != c_table_closed_form(m))
    throw InternalError("c-table: triangular solve and closed form disagree at m = " + std::to_string(m));
  return CTable{std::move(solved), true};
}

std::vector<Rational> rho_closed_form(int m, const Rational& t) {
  require_order(m, "rho_coefficients");
  std::vector<Rational> rho(static_cast<std::size_t>(m) + 1);
  for (int k = 1; k <= m; ++k) {
    Rational product = ratio(sign_of_power(k), factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(m - k)));
    for (int i = 0; i <= m; ++i)
      if (i != k) product *= Rational(i) - t;
    rho[static_cast<std::size_t>(k)] = product;
  }
  return rho;
}

std::vector<Rational> rho_partial_sum_form(int m, const Rational& t) {
  require_order(m, "rho_coefficients");
  std::vector<Rational> rho(static_cast<std::size_t>(m) + 1);
  for (int k = 1; k <= m; ++k) {
    Rational sum = 0;
    for (int j = 0; j <= m - k; ++j) {
      Rational product = 1;
      for (int i = 0; i <= j + k - 1; ++i) product *= Rational(i) - t;
      sum += product / Rational(factorial(static_cast<unsigned>(j)));
    }
    rho[static_cast<std::size_t>(k)] = Rational(sign_of_power(k)) / Rational(factorial(static_cast<unsigned>(k))) * sum;
  }
  return rho;
}

PowerCoefficients rho_coefficients(int m, const Rational& t) {
  const CTable c = c_table(m);
  PowerCoefficients out;
  out.order = m;
  out.t = t;
  out.u.assign(static_cast<std::size_t>(m) + 1, Rational(1));
  for (int r = 1; r <= m; ++r) out.u[static_cast<std::size_t>(r)] = out.u[static_cast<std::size_t>(r) - 1] * (t - (r - 1));

  out.rho.assign(static_cast<std::size_t>(m) + 1, Rational(0));
  for (int k = 1; k <= m; ++k)
    for (int r = 1; r <= m; ++r) out.rho[static_cast<std::size_t>(k)] += out.u[static_cast<std::size_t>(r)] * c(k, r);

  const auto closed = rho_closed_form(m, t);
  for (int k = 1; k <= m; ++k) {
    if (out.rho[static_cast<std::size_t>(k)] != closed[static_cast<std::size_t>(k)])
      throw InternalError("rho: linear-solve and closed-form paths disagree at m = " + std::to_string(m) +
                          ", k = " + std::to_string(k) + ", t = " + format_rational(t));
  }
  Rational rest = 1;
  for (int k = 1; k <= m; ++k) rest -= out.rho[static_cast<std::size_t>(k)];
  out.rho[0] = rest;
  return out;
}

std::vector<double> rho_coefficients_float(int m, double t) {
  require_order(m, "rho_coefficients");
  std::vector<double> rho(static_cast<std::size_t>(m) + 1, 0.0);
  double rest = 1.0;
  for (int k = 1; k <= m; ++k) {
    double product = sign_of_power(k) / (std::tgamma(k + 1.0) * std::tgamma(m - k + 1.0));
    for (int i = 0; i <= m; ++i)
      if (i != k) product *= i - t;
    rho[static_cast<std::size_t>(k)] = product;
    rest -= product;
  }
  rho[0] = rest;
  return rho;
}

LogCoefficients a_coefficients(int m) {
  const CTable c = c_table(m);
  LogCoefficients out;
  out.order = m;
  out.v.assign(static_cast<std::size_t>(m) + 1, Rational(0));
  for (int r = 1; r <= m; ++r)
    out.v[static_cast<std::size_t>(r)] = Rational(factorial(static_cast<unsigned>(r - 1)) * sign_of_power(r - 1));

  out.a.assign(static_cast<std::size_t>(m) + 1, Rational(0));
  Rational rest = 0;
  for (int k = 1; k <= m; ++k) {
    Rational& a = out.a[static_cast<std::size_t>(k)];
    for (int r = 1; r <= m; ++r) a += out.v[static_cast<std::size_t>(r)] * c(k, r);
    const Rational closed = ratio(sign_of_power(k + 1) * binomial(m, k), Integer(k));
    if (a != closed)
      throw InternalError("a: linear-solve and closed-form paths disagree at m = " + std::to_string(m) +
                          ", k = " + std::to_string(k));
    rest -= a;
  }
  out.a[0] = rest;
  return out;
}

Integer hockey_stick_sum(int p, int q) {
  if (p < 0 || q < 0) throw DomainError("hockey_stick_sum needs p, q >= 0");
  Integer sum = 0;
  for (int j = 0; j <= q; ++j) sum += falling_factorial(j + p, p);
  return sum;
}

Rational hockey_stick_closed_form(int p, int q) {
  if (p < 0 || q < 0) throw DomainError("hockey_stick_closed_form needs p, q >= 0");
  return ratio(factorial(static_cast<unsigned>(q + p + 1)), factorial(static_cast<unsigned>(q)) * (p + 1));
}

namespace {

bool fdb_order(const MultiIndex& a, const MultiIndex& b) {
  if (a.weight() != b.weight()) return a.weight() > b.weight();
  return a > b;
}

void enumerate_parts(int remaining, int largest, std::vector<int>& counts, std::vector<MultiIndex>& out) {
  if (remaining == 0) {
    out.emplace_back(counts);
    return;
  }
  for (int part = std::min(remaining, largest); part >= 1; --part) {
    ++counts[static_cast<std::size_t>(part) - 1];
    enumerate_parts(remaining - part, part, counts, out);
    --counts[static_cast<std::size_t>(part) - 1];
  }
}

}  // namespace

std::vector<MultiIndex> fdb_index_set(int nu) {
  require_order(nu, "fdb_index_set");
  std::vector<int> counts(static_cast<std::size_t>(nu), 0);
  std::vector<MultiIndex> out;
  enumerate_parts(nu, nu, counts, out);
  std::sort(out.begin(), out.end(), fdb_order);
  return out;
}

FdbTable::FdbTable(int order, std::vector<Entry> entries) : order_(order), entries_(std::move(entries)) {}

std::vector<FdbTable::Entry> FdbTable::stratum(int i) const {
  std::vector<Entry> out;
  for (const auto& e : entries_)
    if (e.alpha.weight() == i) out.push_back(e);
  return out;
}

std::optional<Integer> FdbTable::coefficient(const MultiIndex& alpha) const {
  for (const auto& e : entries_)
    if (e.alpha == alpha) return e.b;
  return std::nullopt;
}

FdbTable fdb_table(int nu) {
  require_order(nu, "fdb_table");
  std::map<std::vector<int>, Integer> current{{{1}, Integer(1)}};
  for (int order = 1; order < nu; ++order) {
    std::map<std::vector<int>, Integer> next;
    for (const auto& [alpha, b] : current) {
      std::vector<int> padded = alpha;
      padded.push_back(0);
      // d/dx F^{(|alpha|)}(G) = F^{(|alpha|+1)}(G) G'
      auto chain = padded;
      ++chain[0];
      next[chain] += b;
      // d/dx (G^{(j)})^{alpha_j} = alpha_j (G^{(j)})^{alpha_j - 1} G^{(j+1)}
      for (std::size_t j = 0; j + 1 < padded.size(); ++j) {
        if (padded[j] == 0) continue;
        auto moved = padded;
        --moved[j];
        ++moved[j + 1];
        next[moved] += b * padded[j];
      }
    }
    current = std::move(next);
  }

  std::vector<FdbTable::Entry> entries;
  entries.reserve(current.size());
  for (auto& [alpha, b] : current) entries.push_back({MultiIndex(alpha), b});
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return fdb_order(a.alpha, b.alpha); });

  const auto expected = fdb_index_set(nu);
  if (expected.size() != entries.size() ||
      !std::equal(expected.begin(), expected.end(), entries.begin(), [](const auto& a, const auto& e) { return a == e.alpha; }))
    throw InternalError("fdb_table: induction did not produce exactly A_nu for nu = " + std::to_string(nu));
  return FdbTable(nu, std::move(entries));
}

}  // namespace radial_jet
