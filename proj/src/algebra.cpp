#include "permstat/algebra.hpp"

#include <algorithm>

#include "permstat/errors.hpp"

namespace permstat {

void GradedVector::add(ClassId c, long long coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(c);
  if (it == terms_.end()) {
    terms_.emplace(c, coeff);
  } else if ((it->second += coeff) == 0) {
    terms_.erase(it);
  }
}

void GradedVector::add(const GradedVector& other, long long scale) {
  for (const auto& [c, v] : other.terms_) add(c, v * scale);
}

long long GradedVector::coeff(ClassId c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? 0 : it->second;
}

GradedVector GradedVector::operator-() const {
  GradedVector out;
  for (const auto& [c, v] : terms_) out.terms_.emplace(c, -v);
  return out;
}

StatisticAlgebra::StatisticAlgebra(StatisticTable table, ShuffleMode mode)
    : table_(std::move(table)), mode_(mode) {}

void StatisticAlgebra::require_shuffle(int upto) const {
  if (upto <= shuffle_verified_upto_) return;
  const auto verdict = check_shuffle_compatible(table_, mode_, upto);
  if (!verdict.holds)
    throw IncompatibleStatistic("statistic '" + table_.name() + "' fails the " + to_string(mode_) +
                                " shuffle compatibility check up to length " + std::to_string(upto));
  shuffle_verified_upto_ = upto;
}

void StatisticAlgebra::require_substring() const {
  if (substring_verified_) return;
  const auto verdict = check_substring_compatible(table_);
  if (!verdict.holds)
    throw IncompatibleStatistic("statistic '" + table_.name() + "' fails the substring compatibility check");
  substring_verified_ = true;
}

GradedVector StatisticAlgebra::product(ClassId a, ClassId b) const {
  std::lock_guard lock(mutex_);
  const int total = a.level + b.level;
  if (total > table_.max_length())
    throw LengthOutOfRange("product lands in level " + std::to_string(total) + " beyond table max length " +
                           std::to_string(table_.max_length()));
  require_shuffle(total);
  const auto key = std::make_pair(a, b);
  if (auto it = product_memo_.find(key); it != product_memo_.end()) return it->second;
  const Permutation p = table_.representative(a);
  const Permutation q = shifted(table_.representative(b), a.level);
  GradedVector out;
  for (const Permutation& s : shuffles(p, q))
    out.add(ClassId{total, table_.level(total)[static_cast<size_t>(lex_rank(s.letters()))]}, 1);
  product_memo_.emplace(key, out);
  return out;
}

GradedVector StatisticAlgebra::product(const GradedVector& x, const GradedVector& y) const {
  GradedVector out;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) out.add(product(a, b), ca * cb);
  return out;
}

TensorTerms StatisticAlgebra::coproduct(ClassId a) const {
  std::lock_guard lock(mutex_);
  require_substring();
  if (auto it = coproduct_memo_.find(a); it != coproduct_memo_.end()) return it->second;
  const Permutation p = table_.representative(a);
  TensorTerms out;
  for (int i = 0; i <= a.level; ++i) {
    const ClassId left = table_.class_of(window(p, 1, i));
    const ClassId right = table_.class_of(window(p, i + 1, a.level));
    out[{left, right}] += 1;
  }
  coproduct_memo_.emplace(a, out);
  return out;
}

GradedVector StatisticAlgebra::antipode(ClassId a) const {
  std::lock_guard lock(mutex_);
  if (auto it = antipode_memo_.find(a); it != antipode_memo_.end()) return it->second;
  GradedVector out;
  if (a.level == 0) {
    out.add(a, 1);
  } else {
    require_shuffle(a.level);
    out.add(a, -1);
    for (const auto& [pair, coeff] : coproduct(a)) {
      if (pair.first.level == 0 || pair.second.level == 0) continue;  // reduced coproduct
      out.add(product(antipode(pair.first), GradedVector::basis(pair.second)), -coeff);
    }
  }
  antipode_memo_.emplace(a, out);
  return out;
}

GradedVector StatisticAlgebra::antipode(const GradedVector& x) const {
  GradedVector out;
  for (const auto& [c, v] : x.terms()) out.add(antipode(c), v);
  return out;
}

GradedVector StatisticAlgebra::antipode_takeuchi(ClassId a) const {
  if (a.level == 0) return GradedVector::basis(a);
  require_substring();
  // tensors[k] maps a k-tuple of positive-level classes to its coefficient in
  // the iterated reduced coproduct.
  std::map<std::vector<ClassId>, long long> tensors;
  tensors[{a}] = 1;
  GradedVector out;
  for (int k = 1; k <= a.level; ++k) {
    const long long sign = (k % 2 == 0) ? 1 : -1;
    for (const auto& [tuple, coeff] : tensors) {
      GradedVector prod = GradedVector::basis(tuple.front());
      for (size_t i = 1; i < tuple.size(); ++i) prod = product(prod, GradedVector::basis(tuple[i]));
      out.add(prod, sign * coeff);
    }
    if (k == a.level) break;
    // Expand the first component by one more reduced coproduct.
    std::map<std::vector<ClassId>, long long> next;
    for (const auto& [tuple, coeff] : tensors) {
      for (const auto& [pair, c2] : coproduct(tuple.front())) {
        if (pair.first.level == 0 || pair.second.level == 0) continue;
        std::vector<ClassId> expanded;
        expanded.reserve(tuple.size() + 1);
        expanded.push_back(pair.first);
        expanded.push_back(pair.second);
        expanded.insert(expanded.end(), tuple.begin() + 1, tuple.end());
        next[expanded] += coeff * c2;
      }
    }
    tensors = std::move(next);
  }
  return out;
}

namespace {

using TripleTerms = std::map<std::tuple<ClassId, ClassId, ClassId>, long long>;

}  // namespace

CompatVerdict StatisticAlgebra::check_bialgebra(int upto) const {
  if (upto > table_.max_length())
    throw LengthOutOfRange("bialgebra check up to " + std::to_string(upto) + " exceeds table max length");
  require_substring();
  require_shuffle(upto);
  // Counit and coassociativity per basis element.
  for (int n = 0; n <= upto; ++n) {
    for (int c = 0; c < table_.num_classes(n); ++c) {
      const ClassId x{n, c};
      GradedVector left_counit, right_counit;
      TripleTerms lhs3, rhs3;
      for (const auto& [pair, coeff] : coproduct(x)) {
        if (pair.first.level == 0) left_counit.add(pair.second, coeff);
        if (pair.second.level == 0) right_counit.add(pair.first, coeff);
        for (const auto& [pair2, coeff2] : coproduct(pair.first))
          lhs3[{pair2.first, pair2.second, pair.second}] += coeff * coeff2;
        for (const auto& [pair2, coeff2] : coproduct(pair.second))
          rhs3[{pair.first, pair2.first, pair2.second}] += coeff * coeff2;
      }
      if (left_counit != GradedVector::basis(x) || right_counit != GradedVector::basis(x))
        return CompatVerdict{false, Witness{"counit", {table_.representative(x)}, {}, {}}};
      if (lhs3 != rhs3)
        return CompatVerdict{false, Witness{"coassociativity", {table_.representative(x)}, {}, {}}};
    }
  }
  // Delta(x . y) = Delta(x) . Delta(y) on basis pairs.
  for (int la = 0; la <= upto; ++la) {
    for (int lb = 0; la + lb <= upto; ++lb) {
      for (int ca = 0; ca < table_.num_classes(la); ++ca) {
        for (int cb = 0; cb < table_.num_classes(lb); ++cb) {
          const ClassId a{la, ca}, b{lb, cb};
          TensorTerms lhs;
          for (const auto& [c, coeff] : product(a, b))
            for (const auto& [pair, c2] : coproduct(c)) lhs[pair] += coeff * c2;
          TensorTerms rhs;
          for (const auto& [pa, c1] : coproduct(a)) {
            for (const auto& [pb, c2] : coproduct(b)) {
              const GradedVector left = product(pa.first, pb.first);
              const GradedVector right = product(pa.second, pb.second);
              for (const auto& [lc, lv] : left.terms())
                for (const auto& [rc, rv] : right.terms()) rhs[{lc, rc}] += c1 * c2 * lv * rv;
            }
          }
          if (lhs != rhs)
            return CompatVerdict{
                false, Witness{"bialgebra", {table_.representative(a), table_.representative(b)}, {}, {}}};
        }
      }
    }
  }
  return CompatVerdict{};
}

CompatVerdict quotient_check(const StatisticTable& fine, const StatisticTable& coarse, int upto) {
  const auto ref = refines(fine, coarse, upto);
  if (!ref.refines)
    throw NotARefinement("'" + fine.name() + "' does not refine '" + coarse.name() + "' up to length " +
                         std::to_string(upto));
  StatisticAlgebra af(fine, ShuffleMode::Weak);
  StatisticAlgebra ac(coarse, ShuffleMode::Weak);
  // Class-collapsing map per level.
  std::vector<std::vector<int>> phi(static_cast<size_t>(upto) + 1);
  for (int n = 0; n <= upto; ++n) {
    phi[static_cast<size_t>(n)].assign(static_cast<size_t>(fine.num_classes(n)), -1);
    const auto& fl = fine.level(n);
    const auto& cl = coarse.level(n);
    for (size_t r = 0; r < fl.size(); ++r) phi[static_cast<size_t>(n)][static_cast<size_t>(fl[r])] = cl[r];
  }
  const auto map_class = [&](ClassId c) {
    return ClassId{c.level, phi[static_cast<size_t>(c.level)][static_cast<size_t>(c.index)]};
  };
  const auto map_vector = [&](const GradedVector& v) {
    GradedVector out;
    for (const auto& [c, coeff] : v.terms()) out.add(map_class(c), coeff);
    return out;
  };
  for (int n = 0; n <= upto; ++n) {
    for (int c = 0; c < fine.num_classes(n); ++c) {
      const ClassId x{n, c};
      // Coproduct square.
      TensorTerms mapped;
      for (const auto& [pair, coeff] : af.coproduct(x))
        mapped[{map_class(pair.first), map_class(pair.second)}] += coeff;
      if (mapped != ac.coproduct(map_class(x)))
        return CompatVerdict{false, Witness{"quotient-coproduct", {fine.representative(x)}, {}, {}}};
      // Antipode square.
      if (map_vector(af.antipode(x)) != ac.antipode(map_class(x)))
        return CompatVerdict{false, Witness{"quotient-antipode", {fine.representative(x)}, {}, {}}};
    }
  }
  for (int la = 0; la <= upto; ++la) {
    for (int lb = 0; la + lb <= upto; ++lb) {
      for (int ca = 0; ca < fine.num_classes(la); ++ca) {
        for (int cb = 0; cb < fine.num_classes(lb); ++cb) {
          const ClassId a{la, ca}, b{lb, cb};
          if (map_vector(af.product(a, b)) != ac.product(map_class(a), map_class(b)))
            return CompatVerdict{
                false, Witness{"quotient-product", {fine.representative(a), fine.representative(b)}, {}, {}}};
        }
      }
    }
  }
  return CompatVerdict{};
}

}  // namespace permstat
