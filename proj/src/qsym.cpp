#include "permstat/qsym.hpp"

#include <algorithm>
#include <numeric>

#include "permstat/algebra.hpp"
#include "permstat/errors.hpp"

namespace permstat {

int weight(const Composition& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

Composition comp_of(const Permutation& p) {
  const int n = p.length();
  if (n == 0) return {};
  Composition out;
  int prev = 0;
  for (int d : descent_set(p)) {
    out.push_back(d - prev);
    prev = d;
  }
  out.push_back(n - prev);
  return out;
}

namespace {

// Compositions of a single positive integer.
std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  Composition cur;
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = 1; part <= rest; ++part) {
      cur.push_back(part);
      self(self, rest - part);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

}  // namespace

std::vector<Composition> refinements(const Composition& alpha) {
  std::vector<Composition> out{{}};
  for (int part : alpha) {
    std::vector<Composition> next;
    for (const Composition& prefix : out) {
      for (const Composition& split : compositions_of(part)) {
        Composition joined = prefix;
        joined.insert(joined.end(), split.begin(), split.end());
        next.push_back(std::move(joined));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Composition> coarsenings(const Composition& alpha) {
  std::vector<Composition> out;
  const size_t cuts = alpha.empty() ? 0 : alpha.size() - 1;
  for (size_t mask = 0; mask < (size_t{1} << cuts); ++mask) {
    Composition merged;
    int acc = alpha.empty() ? 0 : alpha[0];
    for (size_t i = 0; i < cuts; ++i) {
      if (mask & (size_t{1} << i)) {
        acc += alpha[i + 1];  // merge across this boundary
      } else {
        merged.push_back(acc);
        acc = alpha[i + 1];
      }
    }
    if (!alpha.empty()) merged.push_back(acc);
    out.push_back(std::move(merged));
  }
  return out;
}

void TruncatedPolynomial::add_term(const std::vector<int>& exponents, long long coeff) {
  if (coeff == 0) return;
  if (static_cast<int>(exponents.size()) != variable_count_)
    throw IndexOutOfRange("exponent vector has wrong length");
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    terms_.emplace(exponents, coeff);
  } else if ((it->second += coeff) == 0) {
    terms_.erase(it);
  }
}

TruncatedPolynomial TruncatedPolynomial::operator*(const TruncatedPolynomial& other) const {
  TruncatedPolynomial out(variable_count_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      std::vector<int> e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

TruncatedPolynomial TruncatedPolynomial::operator+(const TruncatedPolynomial& other) const {
  TruncatedPolynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

TruncatedPolynomial monomial_poly(const Composition& beta, int vars) {
  TruncatedPolynomial out(vars);
  const int k = static_cast<int>(beta.size());
  if (k > vars) return out;  // no strictly increasing tuple fits
  std::vector<int> idx(static_cast<size_t>(k));
  auto rec = [&](auto&& self, int depth, int start) -> void {
    if (depth == k) {
      std::vector<int> e(static_cast<size_t>(vars), 0);
      for (int i = 0; i < k; ++i) e[static_cast<size_t>(idx[static_cast<size_t>(i)])] = beta[static_cast<size_t>(i)];
      out.add_term(e, 1);
      return;
    }
    for (int v = start; v <= vars - (k - depth); ++v) {
      idx[static_cast<size_t>(depth)] = v;
      self(self, depth + 1, v + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

TruncatedPolynomial fundamental_poly(const Composition& alpha, int vars) {
  if (vars < weight(alpha))
    throw TooFewVariables("fundamental polynomial of weight " + std::to_string(weight(alpha)) + " needs at least " +
                          std::to_string(weight(alpha)) + " variables");
  TruncatedPolynomial out(vars);
  for (const Composition& beta : refinements(alpha)) out = out + monomial_poly(beta, vars);
  return out;
}

std::map<Composition, long long> to_monomial_basis(const TruncatedPolynomial& f) {
  const int vars = f.variable_count();
  struct PatternInfo {
    long long coeff = 0;
    long long count = 0;
  };
  std::map<Composition, PatternInfo> patterns;
  for (const auto& [e, c] : f.terms()) {
    Composition beta;
    for (int x : e)
      if (x != 0) beta.push_back(x);
    // Exponents of a quasisymmetric monomial sit on increasing variable
    // indices by construction of the pattern extraction.
    auto [it, fresh] = patterns.try_emplace(beta);
    if (fresh) {
      it->second.coeff = c;
    } else if (it->second.coeff != c) {
      throw NotQuasisymmetric("coefficient varies across the variable tuples of an exponent pattern");
    }
    it->second.count += 1;
  }
  std::map<Composition, long long> out;
  for (const auto& [beta, info] : patterns) {
    // Every strictly increasing tuple of the right length must be present.
    long long expected = 1;
    for (int i = 0; i < static_cast<int>(beta.size()); ++i)
      expected = expected * (vars - i) / (i + 1);  // binomial(vars, |beta|)
    if (info.count != expected) throw NotQuasisymmetric("pattern misses some variable tuples");
    out.emplace(beta, info.coeff);
  }
  return out;
}

std::map<Composition, long long> monomial_to_fundamental(const std::map<Composition, long long>& m) {
  std::vector<Composition> order;
  order.reserve(m.size());
  for (const auto& [beta, c] : m) order.push_back(beta);
  std::sort(order.begin(), order.end(),
            [](const Composition& a, const Composition& b) { return a.size() < b.size(); });
  std::map<Composition, long long> out;
  for (const Composition& beta : order) {
    long long c = m.at(beta);
    for (const Composition& alpha : coarsenings(beta)) {
      if (alpha == beta) continue;
      auto it = out.find(alpha);
      if (it != out.end()) c -= it->second;
    }
    if (c != 0) out.emplace(beta, c);
  }
  return out;
}

namespace {

// Tensor-square analog of to_monomial_basis for a polynomial over a doubled
// alphabet (first n variables, then n more).
std::map<std::pair<Composition, Composition>, long long> split_to_monomial_pairs(const TruncatedPolynomial& f,
                                                                                 int n) {
  struct PatternInfo {
    long long coeff = 0;
    long long count = 0;
  };
  std::map<std::pair<Composition, Composition>, PatternInfo> patterns;
  for (const auto& [e, c] : f.terms()) {
    Composition bx, by;
    for (int i = 0; i < n; ++i)
      if (e[static_cast<size_t>(i)] != 0) bx.push_back(e[static_cast<size_t>(i)]);
    for (int i = n; i < 2 * n; ++i)
      if (e[static_cast<size_t>(i)] != 0) by.push_back(e[static_cast<size_t>(i)]);
    auto [it, fresh] = patterns.try_emplace({bx, by});
    if (fresh) {
      it->second.coeff = c;
    } else if (it->second.coeff != c) {
      throw NotQuasisymmetric("doubled-alphabet coefficients vary across tuples");
    }
    it->second.count += 1;
  }
  std::map<std::pair<Composition, Composition>, long long> out;
  for (const auto& [key, info] : patterns) {
    long long expected = 1;
    for (int i = 0; i < static_cast<int>(key.first.size()); ++i) expected = expected * (n - i) / (i + 1);
    for (int i = 0; i < static_cast<int>(key.second.size()); ++i) expected = expected * (n - i) / (i + 1);
    if (info.count != expected) throw NotQuasisymmetric("doubled-alphabet pattern misses variable tuples");
    out.emplace(key, info.coeff);
  }
  return out;
}

std::map<std::pair<Composition, Composition>, long long> monomial_pairs_to_fundamental(
    const std::map<std::pair<Composition, Composition>, long long>& m) {
  using Key = std::pair<Composition, Composition>;
  std::vector<Key> order;
  order.reserve(m.size());
  for (const auto& [k, c] : m) order.push_back(k);
  std::sort(order.begin(), order.end(), [](const Key& a, const Key& b) {
    return a.first.size() + a.second.size() < b.first.size() + b.second.size();
  });
  std::map<Key, long long> out;
  for (const Key& key : order) {
    long long c = m.at(key);
    for (const Composition& ca : coarsenings(key.first)) {
      for (const Composition& cb : coarsenings(key.second)) {
        if (ca == key.first && cb == key.second) continue;
        auto it = out.find({ca, cb});
        if (it != out.end()) c -= it->second;
      }
    }
    if (c != 0) out.emplace(key, c);
  }
  return out;
}

}  // namespace

CompatVerdict verify_des_isomorphism(int upto) {
  const StatisticTable des = StatisticTable::builtin("Des", upto);
  StatisticAlgebra algebra(des, ShuffleMode::Weak);
  // Compositions attached to classes, per level.
  std::vector<std::vector<Composition>> comps(static_cast<size_t>(upto) + 1);
  for (int n = 0; n <= upto; ++n)
    for (int c = 0; c < des.num_classes(n); ++c)
      comps[static_cast<size_t>(n)].push_back(comp_of(des.representative(ClassId{n, c})));

  // Product side: polynomial products match A_Des structure constants.
  for (int la = 0; la <= upto; ++la) {
    for (int lb = 0; la + lb <= upto; ++lb) {
      const int total = la + lb;
      const int vars = std::max(total, 1);
      for (int ca = 0; ca < des.num_classes(la); ++ca) {
        for (int cb = 0; cb < des.num_classes(lb); ++cb) {
          const auto& alpha = comps[static_cast<size_t>(la)][static_cast<size_t>(ca)];
          const auto& beta = comps[static_cast<size_t>(lb)][static_cast<size_t>(cb)];
          const TruncatedPolynomial prod = fundamental_poly(alpha, vars) * fundamental_poly(beta, vars);
          const auto via_qsym = monomial_to_fundamental(to_monomial_basis(prod));
          std::map<Composition, long long> via_algebra;
          for (const auto& [c, coeff] : algebra.product(ClassId{la, ca}, ClassId{lb, cb}))
            via_algebra[comps[static_cast<size_t>(c.level)][static_cast<size_t>(c.index)]] += coeff;
          if (via_qsym != via_algebra) {
            return CompatVerdict{false,
                                 Witness{"des-isomorphism-product",
                                         {des.representative(ClassId{la, ca}), des.representative(ClassId{lb, cb})},
                                         {},
                                         {}}};
          }
        }
      }
    }
  }

  // Coproduct side: expanding F_alpha over a doubled alphabet matches C_Des.
  for (int n = 1; n <= upto; ++n) {
    for (int c = 0; c < des.num_classes(n); ++c) {
      const auto& alpha = comps[static_cast<size_t>(n)][static_cast<size_t>(c)];
      const TruncatedPolynomial doubled = fundamental_poly(alpha, 2 * n);
      const auto via_qsym = monomial_pairs_to_fundamental(split_to_monomial_pairs(doubled, n));
      std::map<std::pair<Composition, Composition>, long long> via_algebra;
      for (const auto& [pair, coeff] : algebra.coproduct(ClassId{n, c})) {
        via_algebra[{comps[static_cast<size_t>(pair.first.level)][static_cast<size_t>(pair.first.index)],
                     comps[static_cast<size_t>(pair.second.level)][static_cast<size_t>(pair.second.index)]}] += coeff;
      }
      if (via_qsym != via_algebra)
        return CompatVerdict{false, Witness{"des-isomorphism-coproduct", {des.representative(ClassId{n, c})}, {}, {}}};
    }
  }
  return CompatVerdict{};
}

}  // namespace permstat
