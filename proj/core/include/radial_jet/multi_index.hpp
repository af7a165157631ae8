#pragma once

#include <compare>
#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "radial_jet/scalar.hpp"

namespace radial_jet {

/// A tuple of non-negative integers. Used both for monomial exponents z^alpha
/// and for Faa di Bruno indices (alpha_1, ..., alpha_nu).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  std::span<const int> entries() const { return entries_; }

  /// |alpha|, the entry sum.
  int weight() const { return weight_; }

  /// alpha! = prod alpha_j!
  Integer factorial() const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<int> entries_;
  int weight_ = 0;
};

/// All alpha in Z_+^n with |alpha| = d, lexicographically descending
/// (z_1^d first).
std::vector<MultiIndex> monomials_of_degree(int n, int d);

/// Dense graded index of the monomials of n variables up to total degree D,
/// ordered by degree, then lexicographically descending. Owns the truncated
/// multiplication table; instances are interned and shared between jets.
class MonomialBasis {
 public:
  static std::shared_ptr<const MonomialBasis> get(int n, int max_degree);

  int variables() const { return n_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return monomials_.size(); }

  const MultiIndex& monomial(std::size_t i) const { return monomials_[i]; }
  int degree(std::size_t i) const { return degrees_[i]; }

  /// Index of the first monomial of degree d; offset(D+1) == size().
  std::size_t offset(int d) const { return offsets_[static_cast<std::size_t>(d)]; }

  /// Position of alpha, or size() when |alpha| > D. Throws on arity mismatch.
  std::size_t index_of(const MultiIndex& alpha) const;

  /// Index of monomial(i) * monomial(j). Requires degree(i) + degree(j) <= D.
  std::size_t product(std::size_t i, std::size_t j) const { return product_[i * monomials_.size() + j]; }

  /// Number of monomials in n variables of degree at most D.
  static std::size_t count(int n, int max_degree);

  MonomialBasis(int n, int max_degree);

 private:
  int n_;
  int max_degree_;
  std::vector<MultiIndex> monomials_;
  std::vector<int> degrees_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> product_;
};

}  // namespace radial_jet
