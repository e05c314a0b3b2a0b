#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace permstat {

/// A finite sequence of distinct positive integers. The empty permutation is
/// a valid value. A permutation is "standard" when its letters are exactly
/// {1, ..., n}; standard permutations of length n form S_n.
class Permutation {
 public:
  Permutation() = default;

  /// Validates that all letters are positive and pairwise distinct.
  explicit Permutation(std::vector<int> letters);

  /// Constructs without validation; the caller guarantees the invariant.
  static Permutation from_distinct(std::vector<int> letters);

  /// Parses either a comma-separated list ("2,9,5,4,6") or, when the text
  /// contains no comma, a compact digit string ("29546", letters 1..9 only).
  static Permutation parse(std::string_view text);

  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }

  bool is_standard() const;

  /// Comma-separated textual form; the empty permutation prints as "".
  std::string str() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> letters_;
};

/// Replaces the i-th smallest letter with i; idempotent.
Permutation standardize(const Permutation& p);

/// True when p and q share no letter.
bool disjoint(const Permutation& p, const Permutation& q);

/// All interleavings of two letter-disjoint permutations, in lexicographic
/// order. Throws DisjointnessViolation when a letter is shared.
std::vector<Permutation> shuffles(const Permutation& p, const Permutation& q);

/// Contiguous substring at 1-based positions i..j. The empty window i == j+1
/// is allowed; anything else outside 1 <= i <= j <= |p| throws
/// IndexOutOfRange.
Permutation window(const Permutation& p, int i, int j);

/// Exchanges the i-th smallest letter with the i-th largest; an involution.
Permutation complement(const Permutation& p);

/// Concatenation of disjoint permutations; throws DisjointnessViolation.
Permutation concat(const Permutation& p, const Permutation& q);

/// Adds m to every letter (written sigma[m]); preserves relative order.
Permutation shifted(const Permutation& q, int m);

long long factorial(int n);

/// Lexicographic rank of a standard permutation within S_n (0-based).
/// Throws NotStandard for non-standard input.
int lex_rank(const Permutation& p);
int lex_rank(const std::vector<int>& standard_letters);

/// Inverse of lex_rank.
Permutation nth_permutation(int n, long long rank);

/// S_n in lexicographic order.
std::vector<Permutation> standard_permutations(int n);

// Raw statistic evaluators; each accepts an arbitrary permutation and
// depends only on relative order except where noted (they are all still
// statistics in the usual sense).
std::vector<int> descent_set(const Permutation& p);   // positions i with p_i > p_{i+1}
int major_index(const Permutation& p);                // sum of descents
std::vector<int> peak_set(const Permutation& p);      // p_{i-1} < p_i > p_{i+1}
std::vector<int> valley_set(const Permutation& p);    // p_{i-1} > p_i < p_{i+1}
long long inversion_count(const Permutation& p);      // pairs i<j with p_i > p_j

}  // namespace permstat
