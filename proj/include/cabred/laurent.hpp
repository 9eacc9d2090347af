#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cabred/errors.hpp"
#include "cabred/rational.hpp"

namespace cabred {

// Variable universe of a symbolic coefficient ring.  Exactly one variable is
// marked invertible; all exponents of the others must stay nonnegative.
struct VarSet {
  std::vector<std::string> names;
  int invertible = -1;

  static std::shared_ptr<const VarSet> make(std::vector<std::string> names, int invertible) {
    require(invertible >= 0 && invertible < static_cast<int>(names.size()),
            "VarSet: invertible index out of range");
    auto vs = std::make_shared<VarSet>();
    vs->names = std::move(names);
    vs->invertible = invertible;
    return vs;
  }

  std::size_t size() const { return names.size(); }
};

using VarSetPtr = std::shared_ptr<const VarSet>;

// Sparse multivariate Laurent polynomial over Q.  Keys are exponent vectors
// aligned with the VarSet; only the flagged variable may carry a negative
// exponent.  That restriction is the ring Q[z][z_inv^-1], and it is enforced
// on every insertion rather than assumed.
class MultiLaurent {
 public:
  MultiLaurent() = default;
  explicit MultiLaurent(VarSetPtr vars) : vs_(std::move(vars)) {}

  static MultiLaurent zero(VarSetPtr vars) { return MultiLaurent(std::move(vars)); }

  static MultiLaurent constant(VarSetPtr vars, const Rat& c) {
    MultiLaurent r(std::move(vars));
    r.add_term(std::vector<int>(r.vs_->size(), 0), c);
    return r;
  }

  static MultiLaurent variable(VarSetPtr vars, int index, int exponent = 1) {
    MultiLaurent r(std::move(vars));
    std::vector<int> e(r.vs_->size(), 0);
    require(index >= 0 && index < static_cast<int>(e.size()), "MultiLaurent: bad variable index");
    e[static_cast<std::size_t>(index)] = exponent;
    r.add_term(std::move(e), Rat(1));
    return r;
  }

  static MultiLaurent monomial(VarSetPtr vars, std::vector<int> exps, const Rat& c) {
    MultiLaurent r(std::move(vars));
    r.add_term(std::move(exps), c);
    return r;
  }

  const VarSetPtr& vars() const { return vs_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const std::map<std::vector<int>, Rat>& terms() const { return t_; }

  void add_term(std::vector<int> exps, const Rat& c) {
    if (c.is_zero()) return;
    ensure(vs_ != nullptr, "MultiLaurent: no variable set");
    ensure(exps.size() == vs_->size(), "MultiLaurent: exponent arity mismatch");
    for (std::size_t k = 0; k < exps.size(); ++k)
      ensure(exps[k] >= 0 || static_cast<int>(k) == vs_->invertible,
             "MultiLaurent: negative exponent on a non-invertible variable");
    auto it = t_.find(exps);
    if (it == t_.end()) {
      t_.emplace(std::move(exps), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  MultiLaurent zero_like() const { return MultiLaurent(vs_); }
  MultiLaurent one_like() const { return constant(vs_, Rat(1)); }

  friend bool operator==(const MultiLaurent& a, const MultiLaurent& b) {
    a.match(b);
    return a.t_ == b.t_;
  }
  friend bool operator!=(const MultiLaurent& a, const MultiLaurent& b) { return !(a == b); }

  MultiLaurent operator-() const {
    MultiLaurent r(vs_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }

  friend MultiLaurent operator+(const MultiLaurent& a, const MultiLaurent& b) {
    a.match(b);
    MultiLaurent r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }

  friend MultiLaurent operator-(const MultiLaurent& a, const MultiLaurent& b) {
    a.match(b);
    MultiLaurent r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, -c);
    return r;
  }

  friend MultiLaurent operator*(const MultiLaurent& a, const MultiLaurent& b) {
    a.match(b);
    MultiLaurent r(a.vs_ ? a.vs_ : b.vs_);
    for (const auto& [ea, ca] : a.t_) {
      for (const auto& [eb, cb] : b.t_) {
        std::vector<int> e(ea.size());
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        r.add_term(std::move(e), ca * cb);
      }
    }
    return r;
  }

  MultiLaurent scaled(const Rat& s) const {
    MultiLaurent r(vs_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : t_) r.t_.emplace(e, c * s);
    return r;
  }

  // True when the polynomial is c * (single monomial).
  bool is_monomial() const { return t_.size() == 1; }

  // Minimum p-adic valuation over the stored coefficients; infinite for zero.
  Valuation min_valp(const Int& p) const {
    Valuation best = Valuation::inf();
    for (const auto& [e, c] : t_) {
      Valuation v = valp(c, p);
      if (v < best) best = v;
    }
    return best;
  }

  // Evaluation at a rational point; the invertible variable must not be zero
  // if any term carries a negative exponent there.
  Rat eval(const std::vector<Rat>& point) const {
    ensure(point.size() == vs_->size(), "MultiLaurent: point arity mismatch");
    Rat acc(0);
    for (const auto& [e, c] : t_) {
      Rat term = c;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (e[k] > 0) {
          for (int n = 0; n < e[k]; ++n) term *= point[k];
        } else {
          require(!point[k].is_zero(), "MultiLaurent: specialization at zero for the inverted variable");
          Rat inv = point[k].inverse();
          for (int n = 0; n < -e[k]; ++n) term *= inv;
        }
      }
      acc += term;
    }
    return acc;
  }

  // Image modulo p of a Laurent polynomial all of whose coefficient
  // valuations are >= 0; coefficients land in [0, p).
  std::vector<std::pair<std::vector<int>, Int>> mod_p_image(const Int& p) const {
    std::vector<std::pair<std::vector<int>, Int>> out;
    for (const auto& [e, c] : t_) {
      ensure(!(valp(c, p) < Valuation::of(0)), "MultiLaurent: mod-p image of a non-integral coefficient");
      Int den_inv;
      ensure(mpz_invert(den_inv.get_mpz_t(), c.den().get_mpz_t(), p.get_mpz_t()) != 0,
             "MultiLaurent: denominator not invertible mod p");
      Int v = (c.num() % p) * den_inv % p;
      if (sgn(v) < 0) v += p;
      if (sgn(v) != 0) out.emplace_back(e, v);
    }
    return out;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")";
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        s += "*" + vs_->names[k] + "^" + std::to_string(e[k]);
      }
    }
    return s;
  }

 private:
  void match(const MultiLaurent& o) const {
    if (!vs_ || !o.vs_) return;  // zero with no context is compatible
    ensure(vs_ == o.vs_ || vs_->names == o.vs_->names, "MultiLaurent: variable set mismatch");
  }

  VarSetPtr vs_;
  std::map<std::vector<int>, Rat> t_;
};

inline MultiLaurent scale_int(const MultiLaurent& x, long n) { return x.scaled(Rat(n)); }
inline MultiLaurent ring_scale(const MultiLaurent& x, const Rat& s) { return x.scaled(s); }
inline std::size_t ring_size(const MultiLaurent& x) { return x.term_count(); }

// Exact p-adic floor over all coefficients, as named in the module contract.
inline Valuation laurent_min_valp(const MultiLaurent& g, const Int& p) { return g.min_valp(p); }

}  // namespace cabred
