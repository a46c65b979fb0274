#ifndef MUMCL_FIELD_HPP
#define MUMCL_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mumcl {

using i64 = std::int64_t;

// Thrown on malformed user input (bad files, violated preconditions on data).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant breaks; never caused by user data alone.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Arithmetic in Z/p for an odd prime p, 3 <= p < 2^31.
// Elements are canonical representatives in [0, p).
// A fixed multiplicative generator (the smallest primitive root) is chosen at
// construction so that discrete logarithms are well defined and reproducible.
class PrimeField {
public:
  explicit PrimeField(i64 p) : p_(p) {
    if (p < 3 || p >= (i64(1) << 31))
      throw input_error("PrimeField: p must satisfy 3 <= p < 2^31, got " +
                        std::to_string(p));
    if (!is_prime(p))
      throw input_error("PrimeField: " + std::to_string(p) + " is not prime");
    g_ = smallest_generator();
    if (p_ <= (1 << 16)) {
      // Small fields get a full logarithm table; keeps dlog O(1) in the hot
      // enumeration loops and the object remains immutable after this.
      log_table_.assign(static_cast<size_t>(p_), -1);
      i64 x = 1;
      for (i64 k = 0; k < p_ - 1; ++k) {
        log_table_[static_cast<size_t>(x)] = k;
        x = mul(x, g_);
      }
    }
  }

  i64 p() const { return p_; }
  i64 generator() const { return g_; }

  // Reduce an arbitrary integer into [0, p).
  i64 normalize(i64 a) const {
    a %= p_;
    return a < 0 ? a + p_ : a;
  }

  i64 add(i64 a, i64 b) const {
    i64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  i64 sub(i64 a, i64 b) const {
    i64 s = a - b;
    return s < 0 ? s + p_ : s;
  }

  i64 neg(i64 a) const { return a == 0 ? 0 : p_ - a; }

  i64 mul(i64 a, i64 b) const { return (a * b) % p_; }

  i64 pow(i64 a, i64 e) const {
    if (e < 0) throw internal_error("PrimeField::pow: negative exponent");
    i64 r = 1;
    a = normalize(a);
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  i64 inv(i64 a) const {
    a = normalize(a);
    if (a == 0) throw input_error("PrimeField::inv: division by zero");
    // extended Euclid; p prime so gcd is 1
    i64 t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      i64 q = r / nr;
      i64 tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return t < 0 ? t + p_ : t;
  }

  i64 div(i64 a, i64 b) const { return mul(normalize(a), inv(b)); }

  // k in [0, p-1) with generator()^k == x.  Baby-step giant-step for large p,
  // table lookup for small p.
  i64 discrete_log(i64 x) const {
    x = normalize(x);
    if (x == 0) throw input_error("discrete_log: argument must be nonzero");
    if (!log_table_.empty()) return log_table_[static_cast<size_t>(x)];
    i64 n = p_ - 1;
    i64 m = 1;
    while (m * m < n) ++m;
    std::unordered_map<i64, i64> baby;
    baby.reserve(static_cast<size_t>(m));
    i64 cur = 1;
    for (i64 j = 0; j < m; ++j) {
      baby.emplace(cur, j);
      cur = mul(cur, g_);
    }
    i64 giant = inv(cur == 0 ? 1 : pow(g_, m));  // g^(-m)
    i64 y = x;
    for (i64 i = 0; i <= m; ++i) {
      auto it = baby.find(y);
      if (it != baby.end()) {
        i64 k = i * m + it->second;
        return k % n;
      }
      y = mul(y, giant);
    }
    throw internal_error("discrete_log: search exhausted");
  }

  // Multiplicative order of x in F_p*.
  i64 order(i64 x) const {
    x = normalize(x);
    if (x == 0) throw input_error("order: argument must be nonzero");
    i64 n = p_ - 1;
    i64 ord = n;
    for (i64 q : prime_factors(n)) {
      while (ord % q == 0 && pow(x, ord / q) == 1) ord /= q;
    }
    return ord;
  }

  static bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 d = 3; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }

  // Distinct prime divisors of n by trial division.
  static std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        out.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) out.push_back(n);
    return out;
  }

private:
  i64 smallest_generator() const {
    auto qs = prime_factors(p_ - 1);
    for (i64 g = 2; g < p_; ++g) {
      bool ok = true;
      for (i64 q : qs) {
        if (pow(g, (p_ - 1) / q) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    throw internal_error("PrimeField: no generator found");
  }

  i64 p_;
  i64 g_;
  std::vector<i64> log_table_;
};

}  // namespace mumcl

#endif  // MUMCL_FIELD_HPP
