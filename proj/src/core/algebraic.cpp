// SPDX-License-Identifier: Apache-2.0
#include "bclab/algebraic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include <Eigen/Dense>

#include "bclab/error.hpp"

namespace bclab {

// ---------------------------------------------------------------------------
// SignedPoly

SignedPoly::SignedPoly(std::vector<std::int8_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_[0] != 1) {
    throw DomainError("signed polynomial must have constant term +1");
  }
  for (auto c : coeffs_) {
    if (c < -1 || c > 1) throw DomainError("signed polynomial coefficients must lie in {-1,0,1}");
  }
}

double SignedPoly::eval(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly SignedPoly::to_int_poly() const {
  return IntPoly(std::vector<std::int64_t>(coeffs_.begin(), coeffs_.end()));
}

// ---------------------------------------------------------------------------
// Greedy expansions and nearby zeros

GreedyExpansion greedy_expansion(double lambda, unsigned k) {
  if (!(lambda > 0.5 && lambda < 1.0)) {
    throw DomainError("greedy expansion needs lambda in (1/2, 1) so that 1 - lambda < lambda");
  }
  if (k < 1) throw DomainError("greedy expansion needs k >= 1");
  GreedyExpansion g;
  g.lambda = lambda;
  g.k = k;
  g.digits.assign(k, 0);
  g.digits[0] = 1;
  double power = lambda;
  double rem = 1.0 - lambda;
  for (unsigned n = 2; n <= k; ++n) {
    power *= lambda;
    if (rem >= power) {
      g.digits[n - 1] = 1;
      rem -= power;
    }
  }
  g.remainder = rem;
  return g;
}

NearbyZero nearest_zero_above(double lambda, unsigned k) {
  const GreedyExpansion g = greedy_expansion(lambda, k);
  std::vector<std::int8_t> coeffs(k + 1, 0);
  coeffs[0] = 1;
  for (unsigned n = 1; n <= k; ++n) coeffs[n] = g.digits[n - 1] ? -1 : 0;
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  SignedPoly p(std::move(coeffs));

  // p(lambda) = remainder >= 0 and p' <= -1, so p changes sign exactly once
  // on [lambda, lambda + lambda^k].
  double lo = lambda;
  double hi = lambda + std::pow(lambda, static_cast<double>(k));
  if (p.eval(lo) <= 0.0) return {std::move(p), lo};
  constexpr double kWidth = 0x1p-50;
  for (int it = 0; it < 200 && hi - lo > kWidth; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (p.eval(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {std::move(p), 0.5 * (lo + hi)};
}

// ---------------------------------------------------------------------------
// Roots

namespace {

using cld = std::complex<long double>;

cld polish(const IntPoly& p, const IntPoly& dp, cld z) {
  cld fz = p.eval(z);
  for (int it = 0; it < 30; ++it) {
    const cld d = dp.eval(z);
    if (std::abs(d) == 0.0L) break;
    const cld next = z - fz / d;
    const cld fnext = p.eval(next);
    if (!(std::abs(fnext) < std::abs(fz))) break;
    z = next;
    fz = fnext;
    if (fz == cld(0.0L, 0.0L)) break;
  }
  return z;
}

IntPoly derivative(const IntPoly& p) {
  std::vector<std::int64_t> c;
  for (int n = 1; n <= p.degree(); ++n) c.push_back(n * p.coeff(n));
  return IntPoly(std::move(c));
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const IntPoly& p) {
  if (p.is_zero()) throw DomainError("the zero polynomial has no roots to report");
  if (p.degree() < 1) throw DomainError("constant polynomial has no roots");

  // Zero roots, then the companion matrix of the deflated polynomial.
  int zeros = 0;
  while (p.coeff(zeros) == 0) ++zeros;
  const int d = p.degree() - zeros;
  std::vector<std::complex<double>> raw;
  if (d > 0) {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    const auto lead = static_cast<double>(p.leading());
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -static_cast<double>(p.coeff(zeros + i)) / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto ev = solver.eigenvalues();
    for (int i = 0; i < d; ++i) raw.push_back(ev(i));
  }

  const IntPoly dp = derivative(p);
  std::vector<double> reals(static_cast<std::size_t>(zeros), 0.0);
  std::vector<std::complex<double>> uppers;
  for (const auto& z : raw) {
    const double tol = 1e-10 * (1.0 + std::abs(z));
    if (std::abs(z.imag()) <= tol) {
      const cld r = polish(p, dp, cld(z.real(), 0.0L));
      reals.push_back(static_cast<double>(r.real()));
    } else if (z.imag() > 0.0) {
      const cld r = polish(p, dp, cld(z.real(), z.imag()));
      uppers.emplace_back(static_cast<double>(r.real()), std::abs(static_cast<double>(r.imag())));
    }
  }
  if (reals.size() + 2 * uppers.size() != static_cast<std::size_t>(p.degree())) {
    // Near-real pairs split unevenly by the tolerance; keep raw eigenvalues.
    std::vector<std::complex<double>> out(static_cast<std::size_t>(zeros), 0.0);
    out.insert(out.end(), raw.begin(), raw.end());
    return out;
  }
  std::sort(reals.begin(), reals.end(), std::greater<>());
  std::sort(uppers.begin(), uppers.end(),
            [](const auto& a, const auto& b) { return a.real() > b.real(); });
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(p.degree()));
  for (double r : reals) out.emplace_back(r, 0.0);
  for (const auto& z : uppers) {
    out.push_back(z);
    out.push_back(std::conj(z));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pisot:
      return "Pisot";
    case Verdict::Garsia:
      return "Garsia";
    case Verdict::Neither:
      break;
  }
  return "Neither";
}

AlgebraicClass classify(const IntPoly& input) {
  if (input.degree() < 1) throw DomainError("classification needs a nonconstant polynomial");
  IntPoly p = input;
  if (p.leading() < 0) {
    std::vector<std::int64_t> c = p.coeffs();
    for (auto& v : c) v = -v;
    p = IntPoly(std::move(c));
  }

  AlgebraicClass out;
  out.poly = p;
  out.roots = poly_roots(p);
  out.margin = std::numeric_limits<double>::infinity();
  const double norm = p.norm();
  for (const auto& z : out.roots) {
    out.margin = std::min(out.margin, std::abs(std::abs(z) - 1.0));
    const long double res = std::abs(p.eval(cld(z.real(), z.imag())));
    out.max_residual = std::max(out.max_residual, static_cast<double>(res) / norm);
    if (z.imag() == 0.0 && z.real() > 1.0 && (!out.dominant_root || z.real() > *out.dominant_root)) {
      out.dominant_root = z.real();
    }
  }
  if (out.dominant_root) out.reciprocal = 1.0 / *out.dominant_root;

  if (p.leading() != 1) {
    out.explanation = "leading coefficient " + std::to_string(p.leading()) +
                      " is not 1: not an algebraic-integer polynomial, so neither Pisot nor Garsia";
    return out;
  }
  if (out.max_residual >= 1e-10) {
    out.borderline = true;
    out.explanation = "numerical roots failed the residual check; no certificate issued";
    return out;
  }

  constexpr double m = kClassifyMargin;
  // Pisot: one real root outside the unit circle, every conjugate inside.
  std::size_t outside = 0;
  double max_other = 0.0;
  for (const auto& z : out.roots) {
    if (std::abs(z) > 1.0 + m) ++outside;
  }
  if (outside == 1 && out.dominant_root && *out.dominant_root > 1.0 + m) {
    bool skipped = false;
    for (const auto& z : out.roots) {
      if (!skipped && z.imag() == 0.0 && z.real() == *out.dominant_root) {
        skipped = true;
        continue;
      }
      max_other = std::max(max_other, std::abs(z));
    }
    if (max_other < 1.0 - m) {
      out.verdict = Verdict::Pisot;
      out.explanation = "one real root > 1, conjugates of modulus at most " + std::to_string(max_other);
      return out;
    }
    if (max_other <= 1.0 + m) {
      out.borderline = true;
      out.explanation = "Pisot candidate with a conjugate within 1e-9 of the unit circle";
      return out;
    }
  }

  // Garsia: constant term +-2, every root outside the unit circle.
  if (std::llabs(p.constant()) == 2) {
    double min_mod = std::numeric_limits<double>::infinity();
    for (const auto& z : out.roots) min_mod = std::min(min_mod, std::abs(z));
    if (min_mod > 1.0 + m) {
      out.verdict = Verdict::Garsia;
      out.explanation = "monic, constant term +-2, all roots of modulus at least " + std::to_string(min_mod);
      return out;
    }
    if (min_mod >= 1.0 - m) {
      out.borderline = true;
      out.explanation = "Garsia candidate with a root within 1e-9 of the unit circle";
      return out;
    }
  }
  out.explanation = "root moduli match neither the Pisot nor the Garsia pattern";
  return out;
}

// ---------------------------------------------------------------------------
// Forbidden blocks and subshift growth

namespace {

void check_relation(std::span<const int> c) {
  for (int v : c) {
    if (v < -1 || v > 1) throw DomainError("relation coefficients must lie in {-1,0,1}");
  }
}

}  // namespace

std::string forbidden_block(std::span<const int> c) {
  check_relation(c);
  std::string block = "1";
  for (int v : c) block.push_back(v == 1 ? '1' : '0');
  return block;
}

std::string replacement_block(std::span<const int> c) {
  check_relation(c);
  std::string block = "0";
  for (int v : c) block.push_back(v == -1 ? '1' : '0');
  return block;
}

std::optional<std::vector<int>> signed_relation(const IntPoly& p) {
  if (p.degree() < 1) return std::nullopt;
  const auto c0 = p.constant();
  if (c0 != 1 && c0 != -1) return std::nullopt;
  std::vector<int> c;
  for (int n = 1; n <= p.degree(); ++n) {
    const auto v = p.coeff(n) * c0;
    if (v < -1 || v > 1) return std::nullopt;
    c.push_back(static_cast<int>(v));
  }
  return c;
}

namespace {

// Failure-function automaton over {0,1}; state m (full match) is the dead state.
std::vector<std::array<std::size_t, 2>> build_automaton(const std::string& block) {
  const std::size_t m = block.size();
  std::vector<std::size_t> fail(m, 0);
  for (std::size_t i = 1, k = 0; i < m; ++i) {
    while (k > 0 && block[i] != block[k]) k = fail[k - 1];
    if (block[i] == block[k]) ++k;
    fail[i] = k;
  }
  std::vector<std::array<std::size_t, 2>> delta(m);
  for (std::size_t q = 0; q < m; ++q) {
    for (int a = 0; a < 2; ++a) {
      const char ch = static_cast<char>('0' + a);
      std::size_t k = q;
      while (k > 0 && block[k] != ch) k = fail[k - 1];
      if (block[k] == ch) ++k;
      delta[q][static_cast<std::size_t>(a)] = k;
    }
  }
  return delta;
}

}  // namespace

GrowthReport sft_growth_rate(const std::string& block, unsigned count_cap) {
  if (block.empty() || block[0] != '1') throw DomainError("forbidden block must start with '1'");
  for (char ch : block) {
    if (ch != '0' && ch != '1') throw DomainError("forbidden block must be a 0/1 string");
  }
  const std::size_t m = block.size();
  const auto delta = build_automaton(block);

  GrowthReport rep;
  rep.forbidden_block = block;
  rep.automaton_size = m;

  Eigen::MatrixXd transfer = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t next : delta[q]) {
      if (next < m) transfer(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(next)) += 1.0;
    }
  }

  // Word counts by dynamic programming over automaton states.
  std::vector<std::uint64_t> at(m, 0), nxt(m, 0);
  at[0] = 1;
  for (unsigned len = 1; len <= count_cap; ++len) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (std::size_t q = 0; q < m; ++q) {
      if (at[q] == 0) continue;
      for (std::size_t s : delta[q]) {
        if (s < m) nxt[s] += at[q];
      }
    }
    std::swap(at, nxt);
    std::uint64_t total = 0;
    for (auto v : at) total += v;
    rep.word_counts.push_back(total);
  }

  // Power iteration on transfer + I; the shift makes the matrix aperiodic
  // without moving the Perron root relative to the others.
  const Eigen::MatrixXd shifted = transfer + Eigen::MatrixXd::Identity(transfer.rows(), transfer.cols());
  Eigen::VectorXd v = Eigen::VectorXd::Constant(transfer.rows(), 1.0 / static_cast<double>(m));
  double mu = 0.0;
  bool converged = false;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXd w = shifted * v;
    const double next_mu = w.sum();
    w /= next_mu;
    const bool settled = std::abs(next_mu - mu) < 1e-13 && (w - v).cwiseAbs().maxCoeff() < 1e-11;
    mu = next_mu;
    v = std::move(w);
    if (settled) {
      converged = true;
      break;
    }
  }
  if (converged) {
    rep.rho = mu - 1.0;
    rep.rho_method = "power-iteration";
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(transfer, false);
    double best = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      best = std::max(best, std::abs(solver.eigenvalues()(i)));
    }
    rep.rho = best;
    rep.rho_method = "eigen-solver";
  }
  rep.degenerate = rep.rho <= 1.0 + 1e-9;
  if (rep.word_counts.size() >= 2) {
    const auto n = rep.word_counts.size();
    const double ratio = static_cast<double>(rep.word_counts[n - 1]) / static_cast<double>(rep.word_counts[n - 2]);
    rep.ratio_consistent = std::abs(ratio - rep.rho) < 1e-6;
  }
  return rep;
}

}  // namespace bclab
