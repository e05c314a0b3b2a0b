#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "permstat/compat.hpp"
#include "permstat/statistic.hpp"

namespace permstat {

/// Finitely supported integer linear combination of (level, class) basis
/// elements. Zero coefficients are never stored.
class GradedVector {
 public:
  using Terms = std::map<ClassId, long long>;

  GradedVector() = default;
  static GradedVector basis(ClassId c) {
    GradedVector v;
    v.add(c, 1);
    return v;
  }

  void add(ClassId c, long long coeff);
  void add(const GradedVector& other, long long scale = 1);

  const Terms& terms() const { return terms_; }
  Terms::const_iterator begin() const { return terms_.begin(); }
  Terms::const_iterator end() const { return terms_.end(); }
  bool is_zero() const { return terms_.empty(); }
  long long coeff(ClassId c) const;

  GradedVector operator-() const;
  bool operator==(const GradedVector&) const = default;

 private:
  Terms terms_;
};

using TensorTerms = std::map<std::pair<ClassId, ClassId>, long long>;

/// The graded algebra/coalgebra attached to a statistic table. Products use
/// the shifted-representative convention (the second factor's letters sit
/// above the first's), which is the weak-mode convention and agrees with any
/// disjoint choice of representatives in strong mode. Compatibility
/// preconditions are verified lazily and cached; a failed check raises
/// IncompatibleStatistic.
class StatisticAlgebra {
 public:
  explicit StatisticAlgebra(StatisticTable table, ShuffleMode mode = ShuffleMode::Weak);

  const StatisticTable& table() const { return table_; }
  ShuffleMode mode() const { return mode_; }

  /// Structure constants of the shuffle product.
  GradedVector product(ClassId a, ClassId b) const;
  GradedVector product(const GradedVector& x, const GradedVector& y) const;

  /// Prefix/suffix coproduct of the substring coalgebra.
  TensorTerms coproduct(ClassId a) const;

  /// Antipode, computed by the recursion S(x) = -x - sum S(x') x'' over the
  /// reduced coproduct; agrees with the direct alternating sum below.
  GradedVector antipode(ClassId a) const;
  GradedVector antipode(const GradedVector& x) const;

  /// Direct alternating sum over iterated reduced coproducts.
  GradedVector antipode_takeuchi(ClassId a) const;

  /// Verifies that the coproduct is an algebra map on all basis pairs with
  /// total level <= upto, plus counit and coassociativity per basis element.
  CompatVerdict check_bialgebra(int upto) const;

 private:
  void require_shuffle(int upto) const;
  void require_substring() const;

  StatisticTable table_;
  ShuffleMode mode_;
  mutable std::recursive_mutex mutex_;
  mutable int shuffle_verified_upto_ = 1;
  mutable bool substring_verified_ = false;
  mutable std::map<std::pair<ClassId, ClassId>, GradedVector> product_memo_;
  mutable std::map<ClassId, TensorTerms> coproduct_memo_;
  mutable std::map<ClassId, GradedVector> antipode_memo_;
};

/// Verifies that collapsing fine classes onto coarse ones commutes with
/// product, coproduct, and antipode on all basis elements up to total level
/// `upto`. Throws NotARefinement when fine does not refine coarse.
CompatVerdict quotient_check(const StatisticTable& fine, const StatisticTable& coarse, int upto);

}  // namespace permstat
