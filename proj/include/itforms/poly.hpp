#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "itforms/errors.hpp"
#include "itforms/grading.hpp"
#include "itforms/rational.hpp"

namespace itforms {

// Exponent vector of a power product x1^a1...xn^an.
using ExpVec = std::vector<unsigned>;

inline unsigned expvec_total(const ExpVec& a) {
  return std::accumulate(a.begin(), a.end(), 0u);
}

// Graded lexicographic term order (total degree first, then lex).
struct GradedLexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    unsigned ta = expvec_total(a), tb = expvec_total(b);
    if (ta != tb) return ta < tb;
    return a < b;
  }
};

// Sparse multivariate polynomial over Q in x^1..x^n. Terms are kept in
// canonical graded-lex order with no zero coefficients.
class Poly {
 public:
  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[ExpVec(nvars, 0)] = c;
    return p;
  }
  static Poly variable(int nvars, int mu) {  // mu 1-based
    if (mu < 1 || mu > nvars) throw UsageError("polynomial variable out of range");
    Poly p(nvars);
    ExpVec e(nvars, 0);
    e[mu - 1] = 1;
    p.terms_[e] = 1;
    return p;
  }
  static Poly monomial(int nvars, const ExpVec& e, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && expvec_total(terms_.begin()->first) == 0);
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw UsageError("polynomial is not constant");
    return terms_.begin()->second;
  }

  const std::map<ExpVec, Rational, GradedLexLess>& terms() const { return terms_; }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, expvec_total(e));
    return d;
  }
  unsigned degree_in(int mu) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[mu - 1]);
    return d;
  }

  void add_term(const ExpVec& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        ExpVec e = ea;
        for (int i = 0; i < a.nvars_; ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend Poly operator*(const Rational& c, const Poly& a) {
    Poly r(a.nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : a.terms_) r.terms_[e] = c * k;
    return r;
  }
  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [](const auto& a, const auto& b) {
          if (a.first != b.first) return GradedLexLess{}(a.first, b.first);
          return a.second < b.second;
        });
  }

  Poly pow(unsigned m) const {
    Poly r = constant(nvars_, 1);
    for (unsigned i = 0; i < m; ++i) r = r * (*this);
    return r;
  }

  // Partial derivative with respect to x^mu.
  Poly derivative(int mu) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      unsigned a = e[mu - 1];
      if (a == 0) continue;
      ExpVec e2 = e;
      e2[mu - 1] = a - 1;
      r.add_term(e2, Rational(static_cast<long>(a)) * c);
    }
    return r;
  }

  std::string to_string(const ChartSpec& chart) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Leading (highest) term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational a = c;
      if (first) {
        if (a < 0) {
          out += "-";
          a = -a;
        }
      } else {
        out += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      }
      first = false;
      std::string vars;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += chart.coord_name(i + 1);
        if (e[i] > 1) vars += "^" + std::to_string(e[i]);
      }
      if (vars.empty()) {
        out += itforms::to_string(a);
      } else if (a == 1) {
        out += vars;
      } else {
        out += itforms::to_string(a) + "*" + vars;
      }
    }
    return out;
  }

 private:
  void check(const Poly& o) const {
    if (nvars_ != o.nvars_) throw UsageError("polynomial variable count mismatch");
  }

  int nvars_;
  std::map<ExpVec, Rational, GradedLexLess> terms_;
};

}  // namespace itforms
