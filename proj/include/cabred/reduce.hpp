#pragma once

#include <optional>
#include <utility>

#include "cabred/curve.hpp"
#include "cabred/forms.hpp"

namespace cabred {

struct ReduceOptions {
  bool want_certificate = false;
  long max_steps = 1'000'000;             // order-lowering rewrites
  std::size_t max_coeff_terms = 2'000'000;  // symbolic blowup guard
};

struct ReduceStats {
  long steps = 0;
  std::size_t max_coeff_terms = 1;
};

template <class R>
struct ReduceResult {
  CohomologyVector<R> vector;
  std::optional<ExactnessCertificate<R>> certificate;
  ReduceStats stats;
};

inline CurveRing<Rat> curve_ring(const CabParams& c) {
  std::map<std::pair<int, int>, Rat> coeff;
  for (const auto& [k, v] : c.coeffs) coeff.emplace(k, Rat(v));
  Rat cb0 = coeff.at({c.b, 0});
  return CurveRing<Rat>::build(c.a, c.b, std::move(coeff), cb0.inverse());
}

namespace detail {

// Data of a single order-lowering rewrite of the unit form x^(l+b-1) y^j dx.
// `rest` is the identity form with the target monomial removed and all
// y-exponents pushed below a; g_loc and u_loc are the exactness bookkeeping
// accumulated while massaging x^l y^j df into that shape.
template <class R>
struct StepParts {
  DifferentialForm<R> rest;
  Bivar<R> g_loc, u_loc;
  int l = 0;
  R divisor_inv;  // 1 / ((b + l a/(a+j)) c_b0)
};

// Replaces x^i y^j dx (coefficient one) using the relation x^l y^j df = 0 in
// cohomology.  The coefficient of the target monomial is checked against the
// closed form (a l + j b + a b)/(a + j) * c_b0 before dividing by it.
template <class R>
StepParts<R> build_step(const CurveRing<R>& C, int i, int j) {
  const int a = C.a, b = C.b;
  require(i >= b - 1 && j >= 1 && j <= a - 1, "reduce_step: monomial not reducible");
  const int l = i - b + 1;
  const R one = C.cb0.one_like();

  StepParts<R> parts;
  parts.l = l;
  DifferentialForm<R>& E = parts.rest;
  for (const auto& [k, cst] : C.coeff) {
    const auto [s, t] = k;
    if (s > 0) E.add_term({l + s - 1, j + t, FormKind::dx}, scale_int(cst, s));
    if (t > 0) E.add_term({l + s, j + t - 1, FormKind::dy}, scale_int(cst, t));
  }
  E.add_term({l, a + j - 1, FormKind::dy}, scale_int(one, a));

  // Trade every dy monomial for an exact differential plus a dx monomial.
  for (;;) {
    std::optional<std::pair<Monomial, R>> pick;
    for (const auto& [m, c] : E.terms()) {
      if (m.kind == FormKind::dy) {
        pick = {m, c};
        break;
      }
    }
    if (!pick) break;
    const auto& [m, c] = *pick;
    E.remove_term(m);
    if (m.i > 0) E.add_term({m.i - 1, m.j + 1, FormKind::dx}, -ring_scale(c, Rat(m.i, m.j + 1)));
    parts.g_loc.add_term(m.i, m.j + 1, ring_scale(c, Rat(1, m.j + 1)));
  }

  // Push y-exponents below a with the defining equation.
  for (;;) {
    std::optional<std::pair<Monomial, R>> pick;
    for (const auto& [m, c] : E.terms()) {
      if (m.j >= a) {
        pick = {m, c};
        break;
      }
    }
    if (!pick) break;
    const auto& [m, c] = *pick;
    E.remove_term(m);
    for (const auto& [k, cst] : C.coeff) E.add_term({m.i + k.first, m.j - a + k.second, FormKind::dx}, -(c * cst));
    parts.u_loc.add_term(m.i, m.j - a, c);
  }

  const Rat lambda(static_cast<long>(a) * l + static_cast<long>(j) * b + static_cast<long>(a) * b,
                   static_cast<long>(a) + j);
  const Monomial target{i, j, FormKind::dx};
  const R* lead = E.coeff(target);
  ensure(lead != nullptr && *lead == ring_scale(C.cb0, lambda),
         "reduce_step: leading coefficient does not match the closed form");
  E.remove_term(target);
  parts.divisor_inv = ring_scale(C.cb0_inv, lambda.inverse());

  // Strict order progress: everything left has higher order at infinity.
  const long ord_in = ord_infinity(a, b, i, j);
  for (const auto& [m, c] : E.terms())
    ensure(ord_infinity(a, b, m.i, m.j) > ord_in, "reduce_step: order did not increase");
  return parts;
}

template <class R>
class Reducer {
 public:
  Reducer(const CurveRing<R>& C, const ReduceOptions& opt) : C_(C), opt_(opt) {
    if (opt_.want_certificate) cert_.emplace();
  }

  ReduceResult<R> run(DifferentialForm<R> form) {
    cur_ = std::move(form);
    normalize_pass();
    dy_pass();
    normalize_pass();
    step_loop();

    ReduceResult<R> res;
    res.vector = CohomologyVector<R>(C_.a, C_.b, C_.cb0.zero_like());
    for (const auto& [m, c] : cur_.terms()) {
      ensure(m.kind == FormKind::dx && m.i <= C_.b - 2 && m.j >= 1 && m.j <= C_.a - 1,
             "reduce: residue outside the basis");
      res.vector.set(m.i, m.j, c);
    }
    if (cert_) res.certificate = std::move(*cert_);
    res.stats = stats_;
    return res;
  }

  // Single-phase entry points for the staged operations.
  DifferentialForm<R> normalized(DifferentialForm<R> form) {
    cur_ = std::move(form);
    normalize_pass();
    return cur_;
  }

  DifferentialForm<R> dy_eliminated(DifferentialForm<R> form) {
    for (const auto& [m, c] : form.terms())
      require(m.kind == FormKind::dx || m.j <= C_.a - 1, "eliminate_dy: dy monomial with j >= a");
    cur_ = std::move(form);
    dy_pass();
    return cur_;
  }

  ExactnessCertificate<R>* certificate() { return cert_ ? &*cert_ : nullptr; }

 private:
  // y^(j>=a) -> defining equation substitution, on both dx and dy monomials.
  void normalize_pass() {
    const int a = C_.a;
    for (;;) {
      std::optional<std::pair<Monomial, R>> pick;
      for (const auto& [m, c] : cur_.terms()) {
        if (m.j >= a) {
          pick = {m, c};
          break;
        }
      }
      if (!pick) break;
      const auto& [m, c] = *pick;
      cur_.remove_term(m);
      for (const auto& [k, cst] : C_.coeff)
        cur_.add_term({m.i + k.first, m.j - a + k.second, m.kind}, -(c * cst));
      if (cert_) {
        Bivar<R>& slot = (m.kind == FormKind::dx) ? cert_->u : cert_->v;
        slot.add_term(m.i, m.j - a, c);
      }
    }
  }

  // x^i y^m dy -> -(i/(m+1)) x^(i-1) y^(m+1) dx, via d(x^i y^(m+1)/(m+1)).
  void dy_pass() {
    for (;;) {
      std::optional<std::pair<Monomial, R>> pick;
      for (const auto& [m, c] : cur_.terms()) {
        if (m.kind == FormKind::dy) {
          pick = {m, c};
          break;
        }
      }
      if (!pick) break;
      const auto& [m, c] = *pick;
      cur_.remove_term(m);
      if (m.i > 0) cur_.add_term({m.i - 1, m.j + 1, FormKind::dx}, -ring_scale(c, Rat(m.i, m.j + 1)));
      if (cert_) cert_->g.add_term(m.i, m.j + 1, ring_scale(c, Rat(1, m.j + 1)));
    }
  }

  // x^i dx = d(x^(i+1)/(i+1)) is dropped as exact.
  void drop_pass() {
    for (;;) {
      std::optional<std::pair<Monomial, R>> pick;
      for (const auto& [m, c] : cur_.terms()) {
        if (m.j == 0) {
          ensure(m.kind == FormKind::dx, "reduce: dy monomial after elimination");
          pick = {m, c};
          break;
        }
      }
      if (!pick) break;
      const auto& [m, c] = *pick;
      cur_.remove_term(m);
      if (cert_) cert_->g.add_term(m.i + 1, 0, ring_scale(c, Rat(1, m.i + 1)));
    }
  }

  void step_loop() {
    const int a = C_.a, b = C_.b;
    for (;;) {
      drop_pass();
      std::optional<Monomial> best;
      long best_ord = 0;
      for (const auto& [m, c] : cur_.terms()) {
        ensure(m.kind == FormKind::dx && m.j <= a - 1, "reduce: unnormalized monomial in step loop");
        if (m.i < b - 1) continue;
        long o = ord_infinity(a, b, m.i, m.j);
        if (!best || o < best_ord) {
          best = m;
          best_ord = o;
        }
      }
      if (!best) break;
      if (++stats_.steps > opt_.max_steps) throw cap_exceeded("reduce: step limit exceeded");
      apply_step(*best);
      watch_growth();
    }
  }

  void apply_step(const Monomial& m) {
    const R c = *cur_.coeff(m);
    StepParts<R> parts = build_step(C_, m.i, m.j);
    const R s = c * parts.divisor_inv;  // c / D
    cur_.remove_term(m);
    for (const auto& [m2, c2] : parts.rest.terms()) cur_.add_term(m2, -(s * c2));
    if (cert_) {
      cert_->g = cert_->g - parts.g_loc.scaled(s);
      cert_->h.add_term(parts.l, m.j, s);
      cert_->u = cert_->u - parts.u_loc.scaled(s);
    }
  }

  void watch_growth() {
    for (const auto& [m, c] : cur_.terms()) {
      std::size_t sz = ring_size(c);
      if (sz > stats_.max_coeff_terms) stats_.max_coeff_terms = sz;
      if (sz > opt_.max_coeff_terms) throw cap_exceeded("reduce: coefficient growth limit exceeded");
    }
  }

  const CurveRing<R>& C_;
  ReduceOptions opt_;
  DifferentialForm<R> cur_;
  std::optional<ExactnessCertificate<R>> cert_;
  ReduceStats stats_;
};

}  // namespace detail

// Substitute the defining equation until every monomial has y-exponent below
// a; the cohomology class is unchanged.
template <class R>
DifferentialForm<R> normalize_y(const DifferentialForm<R>& form, const CurveRing<R>& C,
                                ExactnessCertificate<R>* cert = nullptr) {
  ReduceOptions opt;
  opt.want_certificate = cert != nullptr;
  detail::Reducer<R> red(C, opt);
  DifferentialForm<R> out = red.normalized(form);
  if (cert) *cert = *red.certificate();
  return out;
}

// Rewrite every dy monomial as an exact differential plus a dx monomial.
template <class R>
DifferentialForm<R> eliminate_dy(const DifferentialForm<R>& form, const CurveRing<R>& C,
                                 ExactnessCertificate<R>* cert = nullptr) {
  ReduceOptions opt;
  opt.want_certificate = cert != nullptr;
  detail::Reducer<R> red(C, opt);
  DifferentialForm<R> out = red.dy_eliminated(form);
  if (cert) *cert = *red.certificate();
  return out;
}

// The replacement form for x^i y^j dx, supported on monomials of strictly
// larger order at infinity.
template <class R>
DifferentialForm<R> reduce_step(const CurveRing<R>& C, int i, int j) {
  detail::StepParts<R> parts = detail::build_step(C, i, j);
  return parts.rest.scaled(-parts.divisor_inv);
}

// Full reduction to the cohomology basis.  Pipeline: normalize y-degrees,
// eliminate dy, renormalize, then repeatedly rewrite the monomial of minimal
// order at infinity until only basis monomials remain; j = 0 monomials are
// dropped as exact along the way.
template <class R>
ReduceResult<R> reduce_to_basis(const DifferentialForm<R>& form, const CurveRing<R>& C,
                                const ReduceOptions& opt = {}) {
  detail::Reducer<R> red(C, opt);
  return red.run(form);
}

}  // namespace cabred
