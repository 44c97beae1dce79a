#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itforms/errors.hpp"
#include "itforms/grading.hpp"
#include "itforms/poly.hpp"
#include "itforms/rational.hpp"

namespace itforms {

// Generator d_L x^mu of the iterated-forms algebra, L a nonempty subset of
// the available slots. Parity |L| mod 2 decides whether it is exterior
// (odd, square zero) or polynomial-like (even, free powers).
struct Generator {
  SubsetMask mask = 0;
  int mu = 1;  // 1-based coordinate index

  bool odd() const { return subset_parity_odd(mask); }
  MultiDegree degree(int slots) const { return MultiDegree::of_mask(mask, slots); }

  auto operator<=>(const Generator&) const = default;
};

struct FactorPow {
  Generator g;
  int e = 1;
  auto operator<=>(const FactorPow&) const = default;
};

// Canonical ordered product of generator powers: factors strictly increasing
// in (mask, mu), odd generators with exponent exactly 1.
using Monomial = std::vector<FactorPow>;

inline MultiDegree monomial_degree(const Monomial& m, int slots) {
  MultiDegree d(slots);
  for (const auto& f : m)
    for (int l = 1; l <= slots; ++l)
      if (mask_has_slot(f.g.mask, l)) d.e[l - 1] += f.e;
  return d;
}

inline int monomial_slot_degree(const Monomial& m, int slot) {
  int d = 0;
  for (const auto& f : m)
    if (mask_has_slot(f.g.mask, slot)) d += f.e;
  return d;
}

// Koszul sign for one generator-power pair passing another; degrees of
// generators are 0/1 indicators, so the dot is |L1 cap L2|.
inline int pass_sign(const Generator& a, int ea, const Generator& b, int eb) {
  long long p = static_cast<long long>(subset_size(a.mask & b.mask)) * ea * eb;
  return (p & 1) ? -1 : +1;
}

// Multiply canonical monomials; returns the Koszul sign and the merged
// canonical factor list, or nullopt when an odd generator repeats.
inline std::optional<std::pair<int, Monomial>> monomial_mul(const Monomial& a,
                                                            const Monomial& b) {
  Monomial r = a;
  int sign = 1;
  for (const auto& fb : b) {
    // Walk fb leftwards past every factor greater than it.
    size_t pos = r.size();
    while (pos > 0 && fb.g < r[pos - 1].g) {
      sign *= pass_sign(r[pos - 1].g, r[pos - 1].e, fb.g, fb.e);
      --pos;
    }
    if (pos > 0 && r[pos - 1].g == fb.g) {
      if (fb.g.odd()) return std::nullopt;  // odd square
      r[pos - 1].e += fb.e;
    } else {
      r.insert(r.begin() + pos, fb);
    }
  }
  return std::make_pair(sign, r);
}

// Element of Lambda_{k+1} over the chart: sparse canonical sum of
// Poly-coefficient monomials.
class IteratedForm {
 public:
  IteratedForm() = default;
  explicit IteratedForm(const ChartSpec& chart) : chart_(chart) {}

  static IteratedForm zero(const ChartSpec& chart) { return IteratedForm(chart); }
  static IteratedForm constant(const ChartSpec& chart, const Rational& c) {
    IteratedForm f(chart);
    f.add_term(Monomial{}, Poly::constant(chart.n, c));
    return f;
  }
  static IteratedForm one(const ChartSpec& chart) { return constant(chart, 1); }
  static IteratedForm coordinate(const ChartSpec& chart, int mu) {
    IteratedForm f(chart);
    f.add_term(Monomial{}, Poly::variable(chart.n, mu));
    return f;
  }
  static IteratedForm from_poly(const ChartSpec& chart, const Poly& p) {
    IteratedForm f(chart);
    f.add_term(Monomial{}, p);
    return f;
  }
  // d_L x^mu with L given as a mask over slots 1..k+1.
  static IteratedForm generator(const ChartSpec& chart, SubsetMask mask, int mu) {
    if (mask == 0) throw UsageError("generator label must be nonempty");
    if (mask >= (1u << chart.slots())) throw UsageError("generator label out of range");
    if (mu < 1 || mu > chart.n) throw UsageError("generator coordinate out of range");
    IteratedForm f(chart);
    f.add_term(Monomial{FactorPow{Generator{mask, mu}, 1}},
               Poly::constant(chart.n, 1));
    return f;
  }
  static IteratedForm from_monomial(const ChartSpec& chart, const Monomial& m,
                                    const Poly& coeff) {
    IteratedForm f(chart);
    f.add_term(m, coeff);
    return f;
  }

  const ChartSpec& chart() const { return chart_; }
  const std::map<Monomial, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Poly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  IteratedForm& operator+=(const IteratedForm& o) {
    require_same_chart(chart_, o.chart_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  IteratedForm& operator-=(const IteratedForm& o) {
    require_same_chart(chart_, o.chart_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend IteratedForm operator+(IteratedForm a, const IteratedForm& b) { return a += b; }
  friend IteratedForm operator-(IteratedForm a, const IteratedForm& b) { return a -= b; }
  friend IteratedForm operator-(const IteratedForm& a) {
    IteratedForm r(a.chart_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend IteratedForm operator*(const Rational& c, const IteratedForm& a) {
    IteratedForm r(a.chart_);
    if (c == 0) return r;
    for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, c * k);
    return r;
  }
  friend IteratedForm operator*(const Poly& p, const IteratedForm& a) {
    IteratedForm r(a.chart_);
    for (const auto& [m, k] : a.terms_) r.add_term(m, p * k);
    return r;
  }

  bool operator==(const IteratedForm& o) const {
    return chart_ == o.chart_ && terms_ == o.terms_;
  }
  bool operator!=(const IteratedForm& o) const { return !(*this == o); }

  // The form is homogeneous iff all monomials share one multidegree.
  std::optional<MultiDegree> homogeneous_degree() const {
    std::optional<MultiDegree> d;
    for (const auto& [m, c] : terms_) {
      MultiDegree md = monomial_degree(m, chart_.slots());
      if (!d)
        d = md;
      else if (!(*d == md))
        return std::nullopt;
    }
    return terms_.empty() ? std::optional<MultiDegree>(MultiDegree(chart_.slots())) : d;
  }

  std::map<MultiDegree, IteratedForm> homogeneous_components() const {
    std::map<MultiDegree, IteratedForm> out;
    for (const auto& [m, c] : terms_) {
      MultiDegree d = monomial_degree(m, chart_.slots());
      auto it = out.find(d);
      if (it == out.end()) it = out.emplace(d, IteratedForm(chart_)).first;
      it->second.add_term(m, c);
    }
    return out;
  }

  // True when every generator avoids the given slot (e.g. membership in
  // Lambda_k inside Lambda_{k+1} with slot = k+1).
  bool avoids_slot(int slot) const {
    for (const auto& [m, c] : terms_)
      if (monomial_slot_degree(m, slot) != 0) return false;
    return true;
  }

  // Extract the polynomial part; errors when generator content is present.
  Poly as_poly() const {
    Poly p(chart_.n);
    for (const auto& [m, c] : terms_) {
      if (!m.empty()) throw UsageError("form has generator content, not a polynomial");
      p += c;
    }
    return p;
  }
  Rational as_rational() const { return as_poly().constant_value(); }

 private:
  ChartSpec chart_;
  std::map<Monomial, Poly> terms_;
};

inline IteratedForm mul(const IteratedForm& a, const IteratedForm& b) {
  require_same_chart(a.chart(), b.chart());
  IteratedForm r(a.chart());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = monomial_mul(ma, mb);
      if (!prod) continue;
      Rational s(prod->first);
      r.add_term(prod->second, s * (ca * cb));
    }
  return r;
}

inline IteratedForm operator*(const IteratedForm& a, const IteratedForm& b) {
  return mul(a, b);
}

inline IteratedForm pow(const IteratedForm& a, unsigned m) {
  IteratedForm r = IteratedForm::one(a.chart());
  for (unsigned i = 0; i < m; ++i) r = mul(r, a);
  return r;
}

// The de Rham differential d_l. On coordinates d_l(x^mu) = d_{l}x^mu, on
// generators d_l(d_L x^mu) = d_{L+l} x^mu (zero if l already in L), extended
// by the graded Leibniz rule with the slot-l sign.
inline IteratedForm d(int slot, const IteratedForm& a) {
  const ChartSpec& chart = a.chart();
  if (slot < 1 || slot > chart.slots())
    throw UsageError("differential slot " + std::to_string(slot) + " out of range");
  IteratedForm out(chart);
  for (const auto& [m, c] : a.terms()) {
    // Coefficient part: d(p) = sum_mu dp/dx^mu * d_l x^mu, then times m.
    for (int mu = 1; mu <= chart.n; ++mu) {
      Poly dp = c.derivative(mu);
      if (dp.is_zero()) continue;
      Monomial dl{FactorPow{Generator{slot_bit(slot), mu}, 1}};
      auto prod = monomial_mul(dl, m);
      if (!prod) continue;
      Rational s(prod->first);
      out.add_term(prod->second, s * dp);
    }
    // Generator part: walk factors applying d to each power in turn.
    int prefix_sign = 1;
    for (size_t i = 0; i < m.size(); ++i) {
      const auto& f = m[i];
      if (!mask_has_slot(f.g.mask, slot)) {
        // d(g^e) = e * g^{e-1} * g' (the within-power passes cost no sign
        // because g has slot-l degree zero here).
        Generator gp{mask_with_slot(f.g.mask, slot), f.g.mu};
        Monomial term;
        term.reserve(m.size() + 1);
        term.insert(term.end(), m.begin(), m.begin() + i);
        if (f.e > 1) term.push_back(FactorPow{f.g, f.e - 1});
        auto withg = monomial_mul(term, Monomial{FactorPow{gp, 1}});
        if (withg) {
          Monomial suffix(m.begin() + i + 1, m.end());
          auto full = monomial_mul(withg->second, suffix);
          if (full) {
            Rational s(prefix_sign * withg->first * full->first *
                       static_cast<int>(f.e));
            out.add_term(full->second, s * c);
          }
        }
      }
      if (mask_has_slot(f.g.mask, slot) && (f.e & 1)) prefix_sign = -prefix_sign;
    }
  }
  return out;
}

// Algebra endomorphism induced by a slot permutation; kappa is the swap of
// slots 1 and 2.
inline IteratedForm relabel(const std::vector<int>& sigma, const IteratedForm& a) {
  const ChartSpec& chart = a.chart();
  validate_slot_perm(sigma, chart.slots());
  IteratedForm out(chart);
  for (const auto& [m, c] : a.terms()) {
    Monomial img = Monomial{};
    int sign = 1;
    bool dead = false;
    for (const auto& f : m) {
      Generator g{permute_mask(sigma, f.g.mask), f.g.mu};
      auto prod = monomial_mul(img, Monomial{FactorPow{g, f.e}});
      if (!prod) {
        dead = true;
        break;
      }
      sign *= prod->first;
      img = prod->second;
    }
    if (!dead) out.add_term(img, Rational(sign) * c);
  }
  return out;
}

inline std::vector<int> swap_slots_perm(int slots, int a, int b) {
  auto p = identity_slot_perm(slots);
  std::swap(p[a - 1], p[b - 1]);
  return p;
}

// Homogeneous component of the given degree with respect to one slot.
inline IteratedForm project(const IteratedForm& a, int degree, int slot) {
  IteratedForm out(a.chart());
  for (const auto& [m, c] : a.terms())
    if (monomial_slot_degree(m, slot) == degree) out.add_term(m, c);
  return out;
}

inline int slot_degree_max(const IteratedForm& a, int slot) {
  int d = 0;
  for (const auto& [m, c] : a.terms())
    d = std::max(d, monomial_slot_degree(m, slot));
  return d;
}

// Slot-(k+1) degree when uniform across terms; errors otherwise.
inline int form_degree_in_slot(const IteratedForm& a, int slot) {
  std::optional<int> s;
  for (const auto& [m, c] : a.terms()) {
    int cur = monomial_slot_degree(m, slot);
    if (!s)
      s = cur;
    else if (*s != cur)
      throw DegreeError("form is not homogeneous in slot " + std::to_string(slot));
  }
  return s.value_or(0);
}

inline std::string generator_to_string(const ChartSpec& chart, const Generator& g) {
  return "d" + mask_to_string(g.mask) + chart.coord_name(g.mu);
}

inline std::string monomial_to_string(const ChartSpec& chart, const Monomial& m) {
  std::string s;
  for (const auto& f : m) {
    if (!s.empty()) s += "*";
    s += generator_to_string(chart, f.g);
    if (f.e > 1) s += "^" + std::to_string(f.e);
  }
  return s;
}

inline std::string to_string(const IteratedForm& a) {
  if (a.is_zero()) return "0";
  const ChartSpec& chart = a.chart();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    std::string cs = c.to_string(chart);
    std::string ms = monomial_to_string(chart, m);
    std::string piece;
    bool negated = false;
    if (ms.empty()) {
      piece = cs;
    } else if (cs == "1") {
      piece = ms;
    } else if (cs == "-1") {
      piece = ms;
      negated = true;
    } else if (c.terms().size() > 1) {
      piece = "(" + cs + ")*" + ms;
    } else {
      if (!cs.empty() && cs[0] == '-') {
        negated = true;
        cs = cs.substr(1);
      }
      piece = cs + "*" + ms;
    }
    if (first) {
      out += negated ? "-" + piece : piece;
      first = false;
    } else {
      out += negated ? " - " + piece : " + " + piece;
    }
  }
  return out;
}

}  // namespace itforms
