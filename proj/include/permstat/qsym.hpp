#pragma once

#include <map>
#include <vector>

#include "permstat/compat.hpp"
#include "permstat/permutation.hpp"

namespace permstat {

/// A composition: a sequence of positive parts. The empty composition has
/// weight 0.
using Composition = std::vector<int>;

int weight(const Composition& alpha);

/// Composition encoding the descent set of p as consecutive gaps inside
/// [0, |p|].
Composition comp_of(const Permutation& p);

/// All compositions refining alpha (each part split into ordered positive
/// summands, concatenated).
std::vector<Composition> refinements(const Composition& alpha);

/// All compositions obtained from alpha by merging adjacent parts,
/// including alpha itself.
std::vector<Composition> coarsenings(const Composition& alpha);

/// Polynomial in a fixed number of variables with integer coefficients,
/// stored as exponent-vector -> coefficient with no zero entries.
class TruncatedPolynomial {
 public:
  explicit TruncatedPolynomial(int variable_count = 0) : variable_count_(variable_count) {}

  int variable_count() const { return variable_count_; }
  const std::map<std::vector<int>, long long>& terms() const { return terms_; }

  void add_term(const std::vector<int>& exponents, long long coeff);

  TruncatedPolynomial operator*(const TruncatedPolynomial& other) const;
  TruncatedPolynomial operator+(const TruncatedPolynomial& other) const;
  bool operator==(const TruncatedPolynomial&) const = default;

 private:
  int variable_count_;
  std::map<std::vector<int>, long long> terms_;
};

/// Monomial quasisymmetric polynomial M_beta in `vars` variables.
TruncatedPolynomial monomial_poly(const Composition& beta, int vars);

/// Fundamental quasisymmetric polynomial F_alpha = sum of M_beta over
/// refinements beta of alpha. Requires vars >= weight(alpha), the bound
/// under which these polynomials stay linearly independent.
TruncatedPolynomial fundamental_poly(const Composition& alpha, int vars);

/// Coordinates of a quasisymmetric polynomial in the monomial basis;
/// throws NotQuasisymmetric when coefficients are not constant across the
/// strictly increasing variable tuples of an exponent pattern.
std::map<Composition, long long> to_monomial_basis(const TruncatedPolynomial& f);

/// Triangular change of basis from monomial to fundamental coordinates.
std::map<Composition, long long> monomial_to_fundamental(const std::map<Composition, long long>& m);

/// Verifies, for all levels up to `upto`, that the map sending a descent
/// class to the fundamental polynomial of its composition matches products
/// (via polynomial multiplication) and coproducts (via alphabet doubling)
/// of the descent-set algebra.
CompatVerdict verify_des_isomorphism(int upto);

}  // namespace permstat
