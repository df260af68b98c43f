// SPDX-License-Identifier: Apache-2.0
#include "bclab/exact.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "bclab/error.hpp"

namespace bclab {

namespace {

void require_nonconstant(const IntPoly& p) {
  if (p.degree() < 1) {
    throw DomainError("defining polynomial must be nonconstant, got " + p.to_string());
  }
}

// x * r mod p for a reduced residue r (length d).
Residue times_x(const Residue& r, const IntPoly& p) {
  const auto d = static_cast<std::size_t>(p.degree());
  const mpq_class top = r[d - 1];
  Residue out(d);
  for (std::size_t i = d - 1; i > 0; --i) out[i] = r[i - 1];
  out[0] = 0;
  if (top != 0) {
    const mpq_class lead(static_cast<long>(p.leading()));
    for (std::size_t j = 0; j < d; ++j) {
      out[j] -= top * mpq_class(static_cast<long>(p.coeff(static_cast<int>(j)))) / lead;
    }
  }
  for (auto& q : out) q.canonicalize();
  return out;
}

// Lexicographic three-way comparison of two numerator rows.
template <class T>
int compare_rows(const T* a, const T* b, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

// Merges the sorted residue list (rows, mult) with its translate by shift,
// combining equal rows. Translation preserves lexicographic order, so both
// inputs to the merge are sorted.
template <class T>
void translate_merge(std::vector<T>& rows, std::vector<std::uint64_t>& mult,
                     const std::vector<T>& shift, std::size_t dim) {
  const std::size_t m = mult.size();
  std::vector<T> moved(rows);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < dim; ++i) moved[k * dim + i] += shift[i];
  }
  std::vector<T> out_rows;
  std::vector<std::uint64_t> out_mult;
  out_rows.reserve(2 * m * dim);
  out_mult.reserve(2 * m);
  auto push = [&](const T* row, std::uint64_t mu) {
    const std::size_t n = out_mult.size();
    if (n > 0 && compare_rows(out_rows.data() + (n - 1) * dim, row, dim) == 0) {
      out_mult.back() += mu;
      return;
    }
    out_rows.insert(out_rows.end(), row, row + dim);
    out_mult.push_back(mu);
  };
  std::size_t i = 0, j = 0;
  while (i < m && j < m) {
    const T* a = rows.data() + i * dim;
    const T* b = moved.data() + j * dim;
    if (compare_rows(a, b, dim) <= 0) {
      push(a, mult[i++]);
    } else {
      push(b, mult[j++]);
    }
  }
  for (; i < m; ++i) push(rows.data() + i * dim, mult[i]);
  for (; j < m; ++j) push(moved.data() + j * dim, mult[j]);
  rows = std::move(out_rows);
  mult = std::move(out_mult);
}

template <class T>
void tally(std::vector<T>& rows, std::vector<std::uint64_t>& mult,
           const std::vector<std::vector<T>>& shifts, std::size_t dim) {
  rows.assign(dim, T(0));
  mult.assign(1, 1);
  for (const auto& shift : shifts) translate_merge(rows, mult, shift, dim);
}

}  // namespace

Residue reduce_mod_minpoly(std::vector<mpq_class> poly, const IntPoly& p) {
  require_nonconstant(p);
  const auto d = static_cast<std::size_t>(p.degree());
  const mpq_class lead(static_cast<long>(p.leading()));
  for (std::size_t k = poly.size(); k-- > d;) {
    if (poly[k] == 0) continue;
    const mpq_class c = poly[k] / lead;
    for (std::size_t j = 0; j <= d; ++j) {
      poly[k - d + j] -= c * mpq_class(static_cast<long>(p.coeff(static_cast<int>(j))));
    }
  }
  poly.resize(d);
  for (auto& q : poly) q.canonicalize();
  return poly;
}

Residue reduce_mod_minpoly(std::span<const std::uint8_t> digits, const IntPoly& p) {
  std::vector<mpq_class> poly(digits.size());
  for (std::size_t n = 0; n < digits.size(); ++n) {
    if (digits[n] > 1) throw DomainError("digits must be 0 or 1");
    poly[n] = digits[n];
  }
  return reduce_mod_minpoly(std::move(poly), p);
}

ExactPointSet generate_exact(const IntPoly& minpoly, unsigned levels) {
  require_nonconstant(minpoly);
  if (levels < 1 || levels > kMaxExactLevels) {
    throw ResourceError("exact N must lie in [1, " + std::to_string(kMaxExactLevels) + "], got " +
                        std::to_string(levels));
  }
  const auto dim = static_cast<std::size_t>(minpoly.degree());

  // Powers x^n mod p for n < N.
  std::vector<Residue> powers;
  powers.reserve(levels);
  powers.push_back(reduce_mod_minpoly(std::vector<mpq_class>{1}, minpoly));
  for (unsigned n = 1; n < levels; ++n) powers.push_back(times_x(powers.back(), minpoly));

  mpz_class denom = 1;
  for (const auto& r : powers) {
    for (const auto& q : r) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<std::vector<mpz_class>> numerators(levels, std::vector<mpz_class>(dim));
  mpz_class bound = 0;
  for (unsigned n = 0; n < levels; ++n) {
    mpz_class row_max = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      mpq_class scaled = powers[n][i] * denom;
      scaled.canonicalize();
      numerators[n][i] = scaled.get_num();
      row_max = std::max<mpz_class>(row_max, abs(numerators[n][i]));
    }
    bound += row_max;
  }

  ExactPointSet eps;
  eps.minpoly_ = minpoly;
  eps.levels_ = levels;
  eps.dim_ = dim;
  eps.denominator_ = denom;

  const mpz_class limit = mpz_class(1) << 62;
  if (bound < limit) {
    std::vector<std::vector<std::int64_t>> shifts(levels, std::vector<std::int64_t>(dim));
    for (unsigned n = 0; n < levels; ++n) {
      for (std::size_t i = 0; i < dim; ++i) shifts[n][i] = numerators[n][i].get_si();
    }
    tally(eps.small_, eps.multiplicities_, shifts, dim);
  } else {
    tally(eps.big_, eps.multiplicities_, numerators, dim);
  }
  return eps;
}

Residue ExactPointSet::residue(std::size_t i) const {
  Residue out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    const mpz_class num = small_.empty() ? big_[i * dim_ + k]
                                         : mpz_class(static_cast<long>(small_[i * dim_ + k]));
    out[k] = mpq_class(num, denominator_);
    out[k].canonicalize();
  }
  return out;
}

std::uint64_t ExactPointSet::total_multiplicity() const noexcept {
  return std::accumulate(multiplicities_.begin(), multiplicities_.end(), std::uint64_t{0});
}

}  // namespace bclab
