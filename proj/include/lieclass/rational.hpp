#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieclass {

using Q = mpq_class;
using Vec = std::vector<Q>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A case outside what the exact machinery handles (reported, never guessed).
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Accepts "p", "-p", "+p" and "p/q" with decimal digits only.
inline Q parse_rational(const std::string& s) {
  auto bad = [&] { return ParseError("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') pos = 1;
  std::size_t slash = s.find('/');
  auto digits = [&](std::size_t a, std::size_t b) {
    if (a >= b) return false;
    for (std::size_t i = a; i < b; ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits(pos, s.size())) throw bad();
  } else if (!digits(pos, slash) || !digits(slash + 1, s.size())) {
    throw bad();
  }
  std::string t = s[0] == '+' ? s.substr(1) : s;
  Q q;
  if (q.set_str(t, 10) != 0) throw bad();
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Q& q) { return q.get_str(); }

inline int sign(const Q& q) { return sgn(q); }

inline bool is_zero(const Q& q) { return sgn(q) == 0; }

inline Q abs_q(const Q& q) { return sgn(q) < 0 ? Q(-q) : q; }

inline Q floor_q(const Q& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Q(f);
}

/// Exact k-th root of a rational if it exists (sign handled for odd k).
inline bool exact_root(const Q& q, unsigned k, Q& out) {
  if (sgn(q) == 0) {
    out = 0;
    return true;
  }
  bool neg = sgn(q) < 0;
  if (neg && k % 2 == 0) return false;
  mpz_class n = abs(q.get_num()), d = q.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return false;
  if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return false;
  out = Q(rn, rd);
  out.canonicalize();
  if (neg) out = -out;
  return true;
}

}  // namespace lieclass
