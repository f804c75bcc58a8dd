#pragma once
// ?(x), F(x), the box function, continued-fraction codecs and the
// Stern-Brocot (Farey) partition of d?.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "common.hpp"

namespace minkowski {

using boost::multiprecision::cpp_int;

struct HolderConstants {
  // log 2 / (2 log golden_ratio)
  static double alpha() { return std::numbers::ln2 / (2.0 * std::log(std::numbers::phi)); }
};

// ---------------------------------------------------------------------------
// exact helpers
// ---------------------------------------------------------------------------

namespace detail {

inline unsigned msb_index(const cpp_int& n) { return boost::multiprecision::msb(n); }

// round n * 2^shift to the nearest double, one rounding
inline double scaled_to_double(const cpp_int& n, long shift) {
  if (n == 0) return 0.0;
  const long b = static_cast<long>(msb_index(n));
  if (b < 64) return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(n)), static_cast<int>(shift));
  cpp_int top = n >> (b - 63);
  std::uint64_t t = static_cast<std::uint64_t>(top);
  if (boost::multiprecision::lsb(n) < static_cast<unsigned>(b - 63)) t |= 1u;  // sticky
  const long e = shift + b - 63;
  if (e < -2000) return 0.0;
  return std::ldexp(static_cast<double>(t), static_cast<int>(e));
}

// p/q rounded once to double, p >= 0, q > 0
inline double rational_to_double(const cpp_int& p, const cpp_int& q) {
  if (p == 0) return 0.0;
  const long k = std::max<long>(0, static_cast<long>(msb_index(q)) - static_cast<long>(msb_index(p)) + 66);
  cpp_int num = p << k;
  cpp_int quo, rem;
  boost::multiprecision::divide_qr(num, q, quo, rem);
  if (rem != 0) quo = (quo << 1) | 1;  // sticky below the 66 significant bits
  else quo <<= 1;
  return scaled_to_double(quo, -k - 1);
}

// exact rational value of a finite double x >= 0
inline void double_to_rational(double x, cpp_int& p, cpp_int& q) {
  int ex;
  const double f = std::frexp(x, &ex);
  std::uint64_t m = static_cast<std::uint64_t>(std::ldexp(f, 53));
  long e = ex - 53;
  if (m == 0) {
    p = 0;
    q = 1;
    return;
  }
  while ((m & 1u) == 0) {
    m >>= 1;
    ++e;
  }
  p = m;
  q = 1;
  if (e >= 0) p <<= e;
  else q <<= -e;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ContinuedFraction and DyadicValue
// ---------------------------------------------------------------------------

// x = [0; a1, a2, ..., ak]
struct ContinuedFraction {
  std::vector<std::uint64_t> terms;
  bool canonical = true;
  bool truncated = false;  // the source value was irrational-like and got cut

  ContinuedFraction() = default;
  explicit ContinuedFraction(std::vector<std::uint64_t> a, bool trunc = false)
      : terms(std::move(a)), truncated(trunc) {
    if (terms.empty()) throw std::invalid_argument("ContinuedFraction: needs at least one term");
    for (auto t : terms)
      if (t == 0) throw std::invalid_argument("ContinuedFraction: partial quotients must be >= 1");
    canonical = !(terms.size() >= 2 && terms.back() == 1);
  }

  // [.., a, 1] -> [.., a+1]
  ContinuedFraction canonicalized() const {
    if (canonical) return *this;
    auto a = terms;
    a.pop_back();
    a.back() += 1;
    return ContinuedFraction(std::move(a), truncated);
  }
};

struct Rational {
  cpp_int p;
  cpp_int q;
  double to_double() const { return detail::rational_to_double(p, q); }
};

inline Rational cf_value(const ContinuedFraction& cf) {
  // convergents h/k, evaluated forward
  cpp_int h_prev = 1, h = 0, k_prev = 0, k = 1;
  for (auto a : cf.terms) {
    cpp_int hn = cpp_int(a) * h + h_prev;
    cpp_int kn = cpp_int(a) * k + k_prev;
    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(hn);
    k = std::move(kn);
  }
  return {h, k};
}

inline double cf_to_double(const ContinuedFraction& cf) { return cf_value(cf).to_double(); }

// numerator / 2^exponent, reduced
struct DyadicValue {
  cpp_int numerator = 0;
  std::uint64_t exponent = 0;

  DyadicValue() = default;
  DyadicValue(cpp_int n, std::uint64_t e) : numerator(std::move(n)), exponent(e) { reduce(); }

  void reduce() {
    if (numerator == 0) {
      exponent = 0;
      return;
    }
    const unsigned z = boost::multiprecision::lsb(numerator);
    const std::uint64_t s = std::min<std::uint64_t>(z, exponent);
    numerator >>= s;
    exponent -= s;
  }
  double to_double() const {
    return detail::scaled_to_double(numerator, -static_cast<long>(exponent));
  }
  friend bool operator==(const DyadicValue& a, const DyadicValue& b) {
    return a.exponent == b.exponent && a.numerator == b.numerator;
  }
};

// ?([0; a1..ak]) = 2 sum (-1)^(i+1) 2^-(a1+..+ai), exactly
inline DyadicValue question_mark_cf(const ContinuedFraction& cf) {
  std::uint64_t total = 0;
  for (auto a : cf.terms) total += a;
  // common denominator 2^(total-1)
  cpp_int num = 0;
  std::uint64_t s = 0;
  bool plus = true;
  for (auto a : cf.terms) {
    s += a;
    cpp_int term = cpp_int(1) << (total - s);
    if (plus) num += term;
    else num -= term;
    plus = !plus;
  }
  return DyadicValue(num, total - 1);
}

// terms whose ?-mass falls this far below the leading one are dropped
inline constexpr std::uint64_t cf_tail_bits = 72;

namespace detail {

// Euclid on p/q in (0,1]. Stops when the CF terminates, or once the remaining
// ?-mass is below 2^-cf_tail_bits relative to the leading term and the
// convergent is within tol of x, or after max_terms.
inline ContinuedFraction cf_of_rational(cpp_int p, cpp_int q, double x, std::size_t max_terms,
                                        double tol) {
  std::vector<std::uint64_t> a;
  std::uint64_t s = 0;
  cpp_int h_prev = 1, h = 0, k_prev = 0, k = 1;
  bool truncated = false;
  const cpp_int huge = cpp_int(1) << 62;
  while (p != 0) {
    cpp_int quo, rem;
    boost::multiprecision::divide_qr(q, p, quo, rem);
    if (!a.empty()) {
      // a quotient >= 2^20 leaves a tail of relative mass 2^-(2^20)
      const bool tail_small = s - a.front() >= cf_tail_bits || quo >= (cpp_int(1) << 20);
      if (tail_small && (std::isinf(tol) || std::abs(x - rational_to_double(h, k)) <= tol)) {
        truncated = true;
        break;
      }
      if (a.size() >= max_terms || quo >= huge) {
        truncated = true;
        break;
      }
    } else if (quo >= huge) {
      throw std::domain_error("cf_from_real: first partial quotient exceeds 62 bits");
    }
    const auto ai = static_cast<std::uint64_t>(quo);
    a.push_back(ai);
    s += ai;
    cpp_int hn = quo * h + h_prev, kn = quo * k + k_prev;
    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(hn);
    k = std::move(kn);
    q = std::move(p);
    p = std::move(rem);
  }
  return ContinuedFraction(std::move(a), truncated);
}

}  // namespace detail

inline ContinuedFraction cf_from_real(double x, std::size_t max_terms = 64, double tol = 1e-15) {
  require_finite(x, "cf_from_real");
  if (!(x > 0) || x > 1) throw std::domain_error("cf_from_real: need 0 < x <= 1");
  cpp_int p, q;
  detail::double_to_rational(x, p, q);
  return detail::cf_of_rational(std::move(p), std::move(q), x, max_terms, tol);
}

// CF of the fraction p/q, 0 < p <= q
inline ContinuedFraction cf_from_fraction(std::uint64_t p, std::uint64_t q) {
  if (p == 0 || p > q) throw std::domain_error("cf_from_fraction: need 0 < p <= q");
  std::vector<std::uint64_t> a;
  while (p != 0) {
    a.push_back(q / p);
    const std::uint64_t r = q % p;
    q = p;
    p = r;
  }
  return ContinuedFraction(std::move(a));
}

// ---------------------------------------------------------------------------
// ?(x), F(x), box function
// ---------------------------------------------------------------------------

namespace detail {
// ?(p/q) for an exact rational in [0,1], rounded once
inline double question_mark_rational(cpp_int p, cpp_int q) {
  if (p == 0) return 0.0;
  if (p >= q) return 1.0;
  // ?(x) < 2^(1 - floor(q/p)) underflows to zero below this
  if (q / p > 1078) return 0.0;
  const double x = rational_to_double(p, q);
  return question_mark_cf(cf_of_rational(std::move(p), std::move(q), x, 1u << 12,
                                         std::numeric_limits<double>::infinity()))
      .to_double();
}
}  // namespace detail

inline double question_mark(double x) {
  require_finite(x, "question_mark");
  if (x < 0 || x > 1) throw std::domain_error("question_mark: x outside [0,1]");
  cpp_int p, q;
  detail::double_to_rational(x, p, q);
  return detail::question_mark_rational(std::move(p), std::move(q));
}

// ?(p/q) for machine integers 0 <= p <= q. The alternating sum is kept in a
// 128-bit fixed point relative to the leading term 2^(1-a1), so the result
// is exact to ~2^-127 relative before the final rounding. Used where
// millions of grid values are needed.
inline double question_mark_fraction_fast(std::uint64_t p, std::uint64_t q) {
  if (p == 0) return 0.0;
  if (p >= q) return 1.0;
  const std::uint64_t a1 = q / p;
  if (a1 > 1078) return 0.0;
  std::uint64_t r = q - a1 * p;
  q = p;
  p = r;
  using u128 = unsigned __int128;
  u128 acc = u128(1) << 127;
  std::uint64_t rel = 0;  // s_i - a1
  bool plus = false;
  while (p != 0) {
    const std::uint64_t a = q / p;
    r = q - a * p;
    rel += a;
    if (rel > 127) break;
    const u128 term = u128(1) << (127 - rel);
    acc = plus ? acc + term : acc - term;
    plus = !plus;
    q = p;
    p = r;
  }
  return std::ldexp(static_cast<double>(acc), static_cast<int>(1 - static_cast<long>(a1) - 127));
}

// F(x) = ?(x/(x+1)) on [0, inf); for x = p/q the argument is p/(p+q) exactly
inline double extended_F(double x) {
  require_finite(x, "extended_F");
  if (x < 0) throw std::domain_error("extended_F: negative argument");
  cpp_int p, q;
  detail::double_to_rational(x, p, q);
  cpp_int d = p + q;
  return detail::question_mark_rational(std::move(p), std::move(d));
}

// ?^{-1}(u): binary runs of u become partial quotients. The terminating
// binary expansion is used for dyadic u, so the result is an exact rational
// rounded once.
inline Rational box_inverse_exact(double u) {
  require_finite(u, "box_inverse");
  if (u < 0 || u > 1) throw std::domain_error("box_inverse: u outside [0,1]");
  if (u == 0) return {0, 1};
  if (u == 1) return {1, 1};
  cpp_int p, q;
  detail::double_to_rational(u, p, q);  // q = 2^E, p odd
  const unsigned E = boost::multiprecision::msb(q);
  // bits of u after the binary point, position 1..E
  std::vector<std::uint64_t> runs;
  int cur = 0;  // current run is of zeros first
  std::uint64_t len = 0;
  for (unsigned pos = 1; pos <= E; ++pos) {
    const int bit = boost::multiprecision::bit_test(p, E - pos) ? 1 : 0;
    if (bit == cur) {
      ++len;
    } else {
      runs.push_back(len);
      cur = bit;
      len = 1;
    }
  }
  runs.push_back(len);  // final run of ones
  std::vector<std::uint64_t> a(runs.begin(), runs.end());
  a[0] += 1;
  return cf_value(ContinuedFraction(std::move(a)).canonicalized());
}

inline double box_inverse(double u) { return box_inverse_exact(u).to_double(); }

// ?^{-1}(k / 2^d) for d <= 62 using machine integers only. The run lengths
// of the d-bit expansion give the partial quotients; convergents stay below
// Fibonacci(64), so p/q is exact before the final division.
inline double box_inverse_dyadic(std::uint64_t k, int d) {
  if (d < 0 || d > 62) throw std::domain_error("box_inverse_dyadic: need 0 <= d <= 62");
  if (k == 0) return 0.0;
  if (k >= (std::uint64_t(1) << d)) return 1.0;
  while ((k & 1u) == 0) {
    k >>= 1;
    --d;
  }
  std::uint64_t runs[64];
  int nr = 0;
  int cur = 0;
  std::uint64_t len = 0;
  for (int pos = d - 1; pos >= 0; --pos) {
    const int bit = static_cast<int>((k >> pos) & 1u);
    if (bit == cur) {
      ++len;
    } else {
      runs[nr++] = len;
      cur = bit;
      len = 1;
    }
  }
  runs[nr++] = len;
  runs[0] += 1;
  if (nr >= 2 && runs[nr - 1] == 1) {
    --nr;
    runs[nr - 1] += 1;
  }
  std::uint64_t h_prev = 1, h = 0, q_prev = 0, q = 1;
  for (int i = 0; i < nr; ++i) {
    const std::uint64_t hn = runs[i] * h + h_prev, qn = runs[i] * q + q_prev;
    h_prev = h;
    q_prev = q;
    h = hn;
    q = qn;
  }
  return double(h) / double(q);
}

// ---------------------------------------------------------------------------
// Farey atoms
// ---------------------------------------------------------------------------

// [p0/q0, p1/q1] with p1 q0 - p0 q1 = 1, carrying ?-mass 2^-depth
struct FareyAtom {
  std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 1;
  std::uint32_t depth = 0;

  double left() const { return double(p0) / double(q0); }
  double right() const { return double(p1) / double(q1); }
  double width() const { return 1.0 / (double(q0) * double(q1)); }
  double mass() const { return std::ldexp(1.0, -static_cast<int>(depth)); }
  // balance of the Mobius map onto the atom
  double ratio() const { return double(q1) / double(q0); }
  bool unimodular() const {
    return static_cast<unsigned __int128>(p1) * q0 - static_cast<unsigned __int128>(p0) * q1 == 1;
  }
};

inline FareyAtom root_atom() { return {}; }

inline std::pair<FareyAtom, FareyAtom> refine_atom(const FareyAtom& a) {
  std::uint64_t pm, qm;
  if (__builtin_add_overflow(a.p0, a.p1, &pm) || __builtin_add_overflow(a.q0, a.q1, &qm))
    throw std::overflow_error("refine_atom: mediant exceeds 64-bit integers");
  FareyAtom l{a.p0, a.q0, pm, qm, a.depth + 1};
  FareyAtom r{pm, qm, a.p1, a.q1, a.depth + 1};
  return {l, r};
}

inline constexpr int farey_max_depth = 24;

// all 2^depth atoms of the given depth in left-to-right order; the i-th atom
// has ?(left) = i / 2^depth
inline std::vector<FareyAtom> farey_partition(int depth) {
  if (depth < 0 || depth > farey_max_depth)
    throw std::invalid_argument("farey_partition: depth must be in [0, 24]");
  std::vector<FareyAtom> out;
  out.reserve(std::size_t(1) << depth);
  // explicit-stack in-order walk
  std::vector<FareyAtom> stack{root_atom()};
  while (!stack.empty()) {
    FareyAtom a = stack.back();
    stack.pop_back();
    if (static_cast<int>(a.depth) == depth) {
      out.push_back(a);
      continue;
    }
    auto [l, r] = refine_atom(a);
    stack.push_back(r);
    stack.push_back(l);
  }
  return out;
}

// sup over atoms of |?(right)-?(left)| / |right-left|^alpha = 2^-d (q0 q1)^alpha
inline double holder_sup(int depth) {
  const double alpha = HolderConstants::alpha();
  double best = 0;
  for (const auto& a : farey_partition(depth)) {
    const double lr = -double(a.depth) * std::numbers::ln2 + alpha * std::log(double(a.q0) * double(a.q1));
    best = std::max(best, std::exp(lr));
  }
  return best;
}

}  // namespace minkowski
