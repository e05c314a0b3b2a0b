#include "permstat/permutation.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <unordered_set>

#include "permstat/errors.hpp"

namespace permstat {

namespace {

constexpr std::array<long long, 13> kFactorial = {
    1,      1,       2,        6,         24,         120,       720,
    5040,   40320,   362880,   3628800,   39916800,   479001600};

void validate_letters(const std::vector<int>& letters) {
  std::unordered_set<int> seen;
  for (int x : letters) {
    if (x <= 0) throw ParseError("permutation letters must be positive, got " + std::to_string(x));
    if (!seen.insert(x).second)
      throw ParseError("permutation letters must be distinct, repeated " + std::to_string(x));
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> letters) {
  validate_letters(letters);
  letters_ = std::move(letters);
}

Permutation Permutation::from_distinct(std::vector<int> letters) {
  Permutation p;
  p.letters_ = std::move(letters);
  return p;
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> letters;
  if (text.empty()) return Permutation{};
  if (text.find(',') == std::string_view::npos) {
    // Compact form: one digit per letter, valid only for letters 1..9.
    letters.reserve(text.size());
    for (char c : text) {
      if (c < '1' || c > '9')
        throw ParseError("compact permutation form accepts digits 1-9 only: '" + std::string(text) + "'");
      letters.push_back(c - '0');
    }
    return Permutation(std::move(letters));
  }
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError("bad permutation letter '" + std::string(tok) + "'");
    letters.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Permutation(std::move(letters));
}

bool Permutation::is_standard() const {
  const int n = length();
  std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
  for (int x : letters_) {
    if (x > n || seen[static_cast<size_t>(x)]) return false;
    seen[static_cast<size_t>(x)] = true;
  }
  return true;
}

std::string Permutation::str() const {
  std::string out;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(letters_[i]);
  }
  return out;
}

Permutation standardize(const Permutation& p) {
  std::vector<int> sorted = p.letters();
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out(p.letters().size());
  for (size_t i = 0; i < out.size(); ++i) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p.letters()[i]);
    out[i] = static_cast<int>(it - sorted.begin()) + 1;
  }
  return Permutation::from_distinct(std::move(out));
}

bool disjoint(const Permutation& p, const Permutation& q) {
  std::unordered_set<int> seen(p.letters().begin(), p.letters().end());
  for (int x : q.letters())
    if (seen.count(x)) return false;
  return true;
}

namespace {

void shuffle_rec(const std::vector<int>& a, const std::vector<int>& b, size_t i, size_t j,
                 std::vector<int>& cur, std::vector<Permutation>& out) {
  if (i == a.size() && j == b.size()) {
    out.push_back(Permutation::from_distinct(cur));
    return;
  }
  // Taking the smaller available head first yields lexicographic output.
  const bool a_avail = i < a.size();
  const bool b_avail = j < b.size();
  const bool a_first = a_avail && (!b_avail || a[i] < b[j]);
  if (a_first) {
    cur.push_back(a[i]);
    shuffle_rec(a, b, i + 1, j, cur, out);
    cur.pop_back();
    if (b_avail) {
      cur.push_back(b[j]);
      shuffle_rec(a, b, i, j + 1, cur, out);
      cur.pop_back();
    }
  } else {
    if (b_avail) {
      cur.push_back(b[j]);
      shuffle_rec(a, b, i, j + 1, cur, out);
      cur.pop_back();
    }
    if (a_avail) {
      cur.push_back(a[i]);
      shuffle_rec(a, b, i + 1, j, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

std::vector<Permutation> shuffles(const Permutation& p, const Permutation& q) {
  if (!disjoint(p, q))
    throw DisjointnessViolation("cannot shuffle permutations sharing a letter: " + p.str() + " vs " + q.str());
  std::vector<Permutation> out;
  std::vector<int> cur;
  cur.reserve(p.letters().size() + q.letters().size());
  shuffle_rec(p.letters(), q.letters(), 0, 0, cur, out);
  return out;
}

Permutation window(const Permutation& p, int i, int j) {
  if (i == j + 1 && i >= 1 && j <= p.length()) return Permutation{};  // empty window
  if (i < 1 || j < i || j > p.length())
    throw IndexOutOfRange("window [" + std::to_string(i) + "," + std::to_string(j) + "] out of range for length " +
                          std::to_string(p.length()));
  std::vector<int> out(p.letters().begin() + (i - 1), p.letters().begin() + j);
  return Permutation::from_distinct(std::move(out));
}

Permutation complement(const Permutation& p) {
  std::vector<int> sorted = p.letters();
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  std::vector<int> out(n);
  for (size_t i = 0; i < n; ++i) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), p.letters()[i]);
    out[i] = sorted[n - 1 - static_cast<size_t>(it - sorted.begin())];
  }
  return Permutation::from_distinct(std::move(out));
}

Permutation concat(const Permutation& p, const Permutation& q) {
  if (!disjoint(p, q))
    throw DisjointnessViolation("cannot concatenate permutations sharing a letter: " + p.str() + " vs " + q.str());
  std::vector<int> out = p.letters();
  out.insert(out.end(), q.letters().begin(), q.letters().end());
  return Permutation::from_distinct(std::move(out));
}

Permutation shifted(const Permutation& q, int m) {
  std::vector<int> out = q.letters();
  for (int& x : out) x += m;
  return Permutation::from_distinct(std::move(out));
}

long long factorial(int n) {
  if (n < 0 || n >= static_cast<int>(kFactorial.size()))
    throw IndexOutOfRange("factorial argument out of range: " + std::to_string(n));
  return kFactorial[static_cast<size_t>(n)];
}

int lex_rank(const std::vector<int>& standard_letters) {
  const int n = static_cast<int>(standard_letters.size());
  long long rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_right = 0;
    for (int j = i + 1; j < n; ++j)
      if (standard_letters[j] < standard_letters[i]) ++smaller_right;
    rank += smaller_right * kFactorial[static_cast<size_t>(n - 1 - i)];
  }
  return static_cast<int>(rank);
}

int lex_rank(const Permutation& p) {
  if (!p.is_standard()) throw NotStandard("lex_rank requires a standard permutation, got " + p.str());
  return lex_rank(p.letters());
}

Permutation nth_permutation(int n, long long rank) {
  if (n < 0 || rank < 0 || rank >= factorial(n))
    throw IndexOutOfRange("permutation rank " + std::to_string(rank) + " out of range for S_" + std::to_string(n));
  std::vector<int> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const long long f = kFactorial[static_cast<size_t>(i)];
    const auto idx = static_cast<size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation::from_distinct(std::move(out));
}

std::vector<Permutation> standard_permutations(int n) {
  std::vector<int> letters(static_cast<size_t>(n));
  std::iota(letters.begin(), letters.end(), 1);
  std::vector<Permutation> out;
  out.reserve(static_cast<size_t>(factorial(n)));
  do {
    out.push_back(Permutation::from_distinct(letters));
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

std::vector<int> descent_set(const Permutation& p) {
  std::vector<int> out;
  const auto& v = p.letters();
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] > v[i + 1]) out.push_back(static_cast<int>(i) + 1);
  return out;
}

int major_index(const Permutation& p) {
  int sum = 0;
  for (int d : descent_set(p)) sum += d;
  return sum;
}

std::vector<int> peak_set(const Permutation& p) {
  std::vector<int> out;
  const auto& v = p.letters();
  for (size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i - 1] < v[i] && v[i] > v[i + 1]) out.push_back(static_cast<int>(i) + 1);
  return out;
}

std::vector<int> valley_set(const Permutation& p) {
  std::vector<int> out;
  const auto& v = p.letters();
  for (size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i - 1] > v[i] && v[i] < v[i + 1]) out.push_back(static_cast<int>(i) + 1);
  return out;
}

long long inversion_count(const Permutation& p) {
  long long count = 0;
  const auto& v = p.letters();
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++count;
  return count;
}

}  // namespace permstat
