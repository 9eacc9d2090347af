#pragma once

#include <utility>
#include <vector>

#include "cabred/errors.hpp"
#include "cabred/rational.hpp"
#include "cabred/unipoly.hpp"

namespace cabred {

// A 1-form on the affine line minus finitely many punctures, written as
//   (polynomial part + sum over punctures of principal parts) dx,
// where principal[i][m-1] multiplies (x - alpha_i)^-m.
struct PuncturedLineForm {
  std::vector<Int> punctures;
  UniPoly<Rat> poly;
  std::vector<std::vector<Rat>> principal;
};

// A function of the same shape, used as an antiderivative witness.
struct PuncturedFunction {
  std::vector<Int> punctures;
  UniPoly<Rat> poly;
  std::vector<std::vector<Rat>> principal;
};

inline void validate_punctures(const std::vector<Int>& punctures) {
  for (std::size_t i = 0; i < punctures.size(); ++i)
    for (std::size_t k = i + 1; k < punctures.size(); ++k)
      require(punctures[i] != punctures[k], "punctured line: coincident punctures");
}

inline void validate_form(const PuncturedLineForm& f) {
  validate_punctures(f.punctures);
  require(f.principal.size() == f.punctures.size(),
          "punctured line: principal parts must match the punctures");
}

inline PuncturedLineForm derivative(const PuncturedFunction& g) {
  PuncturedLineForm d;
  d.punctures = g.punctures;
  d.poly = g.poly.derivative();
  d.principal.resize(g.principal.size());
  for (std::size_t i = 0; i < g.principal.size(); ++i) {
    const auto& parts = g.principal[i];
    auto& out = d.principal[i];
    out.assign(parts.size() + 1, Rat(0));
    for (std::size_t m1 = 1; m1 <= parts.size(); ++m1) {
      // d/dx (x - a)^-m = -m (x - a)^-(m+1)
      out[m1] = out[m1] - parts[m1 - 1] * Rat(static_cast<long>(m1));
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
  }
  return d;
}

// Solves A x = rhs by Gaussian elimination over Q; A must be square and
// nonsingular.
inline std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> rhs) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    ensure(piv < n, "solve_linear: singular matrix");
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    Rat inv = A[col][col].inverse();
    for (std::size_t j = col; j < n; ++j) A[col][j] *= inv;
    rhs[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || A[row][col].is_zero()) continue;
      Rat factor = A[row][col];
      for (std::size_t j = col; j < n; ++j) A[row][j] -= factor * A[col][j];
      rhs[row] -= factor * rhs[col];
    }
  }
  return rhs;
}

// Exact partial fractions: decomposes num / prod (x - alpha_i)^mult_i dx into
// the punctured-line shape.  The punctures are given, so no factorization is
// involved; the coefficients come from one exact linear solve.
inline PuncturedLineForm punctured_form_from_rational(const UniPoly<Rat>& num,
                                                      std::vector<Int> punctures,
                                                      const std::vector<int>& mults) {
  validate_punctures(punctures);
  require(punctures.size() == mults.size(), "punctured line: one multiplicity per puncture");
  for (int m : mults) require(m >= 1, "punctured line: multiplicities must be positive");

  UniPoly<Rat> q = UniPoly<Rat>::constant(Rat(1));
  std::vector<UniPoly<Rat>> linear;
  for (const auto& alpha : punctures) {
    linear.push_back(UniPoly<Rat>(std::vector<Rat>{Rat(Int(-alpha)), Rat(1)}));
  }
  for (std::size_t i = 0; i < punctures.size(); ++i)
    for (int m = 0; m < mults[i]; ++m) q = q * linear[i];

  auto [T, R] = UniPoly<Rat>::divrem(num, q);

  // Unknowns c_(i,m) with R = sum c_(i,m) * q / (x-alpha_i)^m.
  std::vector<std::pair<std::size_t, int>> unknowns;
  std::vector<UniPoly<Rat>> basis;
  for (std::size_t i = 0; i < punctures.size(); ++i) {
    UniPoly<Rat> reduced = q;
    for (int m = 1; m <= mults[i]; ++m) {
      reduced = UniPoly<Rat>::divexact(reduced, linear[i]);
      unknowns.emplace_back(i, m);
      basis.push_back(reduced);
    }
  }
  const std::size_t n = unknowns.size();
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> rhs(n, Rat(0));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col)
      A[row][col] = basis[col].coeff_or(static_cast<int>(row), Rat(0));
    rhs[row] = R.coeff_or(static_cast<int>(row), Rat(0));
  }
  std::vector<Rat> sol = solve_linear(std::move(A), std::move(rhs));

  PuncturedLineForm out;
  out.punctures = std::move(punctures);
  out.poly = T;
  out.principal.resize(out.punctures.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto [i, m] = unknowns[k];
    auto& parts = out.principal[i];
    if (static_cast<int>(parts.size()) < m) parts.resize(static_cast<std::size_t>(m), Rat(0));
    parts[static_cast<std::size_t>(m - 1)] = sol[k];
  }
  for (auto& parts : out.principal)
    while (!parts.empty() && parts.back().is_zero()) parts.pop_back();
  return out;
}

// Reduces the class of the form to residue coordinates: everything except the
// simple poles integrates away, and the antiderivative witnesses it.
inline std::pair<std::vector<Rat>, PuncturedFunction> residue_reduce_with_antiderivative(
    const PuncturedLineForm& f) {
  validate_form(f);
  std::vector<Rat> residues;
  PuncturedFunction g;
  g.punctures = f.punctures;
  g.principal.resize(f.punctures.size());

  std::vector<Rat> ig;
  for (int k = 0; k <= f.poly.degree(); ++k)
    ig.push_back(f.poly.coeff_or(k, Rat(0)) * Rat(1, k + 1));
  if (!ig.empty()) ig.insert(ig.begin(), Rat(0));
  g.poly = UniPoly<Rat>(std::move(ig));

  for (std::size_t i = 0; i < f.punctures.size(); ++i) {
    const auto& parts = f.principal[i];
    residues.push_back(parts.empty() ? Rat(0) : parts[0]);
    auto& gp = g.principal[i];
    for (std::size_t m = 2; m <= parts.size(); ++m) {
      // (x-a)^-m dx integrates to (x-a)^(1-m)/(1-m)
      const Rat& c = parts[m - 1];
      if (c.is_zero()) continue;
      if (gp.size() < m - 1) gp.resize(m - 1, Rat(0));
      gp[m - 2] = c * Rat(1, 1 - static_cast<long>(m));
    }
  }
  return {std::move(residues), std::move(g)};
}

inline std::vector<Rat> residue_reduce(const PuncturedLineForm& f) {
  return residue_reduce_with_antiderivative(f).first;
}

}  // namespace cabred
