#pragma once

#include <lieclass/catalog.hpp>
#include <lieclass/classifier.hpp>

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

using namespace lieclass;

struct OracleInvariants {
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::size_t> central, derived;
  std::size_t center;
  Inertia killing;
  bool unimodular;
};

struct OracleBehr {
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::vector<std::string>> n;
  std::vector<std::string> a;
};

struct OracleKilling {
  std::string id;
  std::vector<std::vector<std::string>> k;
};

struct OracleBracket {
  int i, j, k;
  std::string c;
};

struct OracleBlock {
  double re, im;
  std::size_t size;
};

struct OracleJordan {
  std::string name;
  std::vector<std::vector<std::string>> m;
  std::vector<OracleBlock> blocks;
};

#include "oracle_values.inc"

inline Params params_of(const std::vector<std::pair<std::string, std::string>>& p) {
  Params r;
  for (const auto& [k, v] : p) r[k] = parse_rational(v);
  return r;
}

inline QMatrix qmatrix(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Q>> q;
  for (const auto& r : rows) {
    q.emplace_back();
    for (const auto& s : r) q.back().push_back(parse_rational(s));
  }
  return QMatrix::from_rows(q);
}

inline StructureConstants tensor_of(std::size_t n, const std::vector<OracleBracket>& bs) {
  std::vector<BracketEntry> es;
  for (const auto& b : bs) es.push_back({b.i, b.j, b.k, parse_rational(b.c)});
  return from_brackets(n, es);
}

/// Random invertible matrix with small integer entries.
inline QMatrix random_gl(std::mt19937& rng, std::size_t n, int range = 3) {
  std::uniform_int_distribution<int> d(-range, range);
  for (;;) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    if (sgn(determinant(m)) != 0) return m;
  }
}

/// Every (class, sample) pair in the bundled catalog.
inline std::vector<std::pair<std::string, Params>> all_samples() {
  std::vector<std::pair<std::string, Params>> out;
  for (const auto& c : Catalog::bundled().classes())
    for (const auto& p : c.samples) out.emplace_back(c.id, p);
  return out;
}

}  // namespace testing_support
