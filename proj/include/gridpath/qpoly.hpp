#pragma once

// Sparse exact polynomial arithmetic in one variable (q) and two variables
// (q, t), plus Gaussian binomial coefficients. Coefficients are
// arbitrary-precision signed integers; exponents are non-negative and zero
// coefficients are never stored. Polynomials are immutable in practice:
// every operation returns a fresh value, so they can be shared freely
// between threads.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace gridpath {

using Coeff = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// UniPoly: polynomial in q
// ---------------------------------------------------------------------------

class UniPoly {
 public:
  UniPoly() = default;

  static UniPoly one() { return monomial(0); }

  static UniPoly monomial(int exponent, Coeff c = Coeff(1)) {
    UniPoly p;
    p.add_term(exponent, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  /// Degree of the zero polynomial is reported as -1.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  int low_degree() const { return terms_.empty() ? -1 : terms_.begin()->first; }

  const std::map<int, Coeff>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Coeff coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(int exponent, const Coeff& c) {
    if (exponent < 0) {
      throw std::invalid_argument("UniPoly: exponents must be non-negative");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  UniPoly& operator+=(const UniPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }

  UniPoly& operator-=(const UniPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        out.add_term(ea + eb, ca * cb);
      }
    }
    return out;
  }

  /// Multiply by q^dq.
  UniPoly shifted(int dq) const {
    if (dq < 0) throw std::invalid_argument("UniPoly: negative shift");
    UniPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + dq, c);
    return out;
  }

  /// Value at q = 1 (the plain integer count behind the gradation).
  Coeff eval_at_one() const {
    Coeff sum = 0;
    for (const auto& [e, c] : terms_) sum += c;
    return sum;
  }

  bool operator==(const UniPoly& rhs) const = default;

  std::string str(std::string_view var = "q") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      append_term(out, c, var, e, /*leading=*/out.empty());
    }
    return out;
  }

  std::string latex(std::string_view var = "\\lambda") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      append_term_latex(out, c, var, e, out.empty());
    }
    return out;
  }

 private:
  static void append_term(std::string& out, const Coeff& c,
                          std::string_view var, int e, bool leading) {
    Coeff mag = c < 0 ? Coeff(-c) : c;
    if (c < 0) {
      out += '-';
    } else if (!leading) {
      out += '+';
    }
    if (e == 0) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str();
      out += var;
      if (e != 1) {
        out += '^';
        out += std::to_string(e);
      }
    }
  }

  static void append_term_latex(std::string& out, const Coeff& c,
                                std::string_view var, int e, bool leading) {
    Coeff mag = c < 0 ? Coeff(-c) : c;
    if (c < 0) {
      out += '-';
    } else if (!leading) {
      out += '+';
    }
    if (e == 0) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str();
      out += var;
      if (e != 1) {
        out += "^{";
        out += std::to_string(e);
        out += '}';
      }
    }
  }

  std::map<int, Coeff> terms_;
};

// ---------------------------------------------------------------------------
// BiPoly: polynomial in q and t
// ---------------------------------------------------------------------------

/// Exponent pair of one monomial q^q t^t.
struct QtExp {
  int q = 0;
  int t = 0;
  friend bool operator==(const QtExp&, const QtExp&) = default;
};

/// Canonical term order: ascending t-exponent, then ascending q-exponent.
struct QtExpLess {
  bool operator()(const QtExp& a, const QtExp& b) const noexcept {
    if (a.t != b.t) return a.t < b.t;
    return a.q < b.q;
  }
};

class BiPoly {
 public:
  BiPoly() = default;

  static BiPoly one() { return monomial(0, 0); }

  static BiPoly monomial(int q_exp, int t_exp, Coeff c = Coeff(1)) {
    BiPoly p;
    p.add_term(q_exp, t_exp, c);
    return p;
  }

  static BiPoly from_uni(const UniPoly& u, int t_exp = 0) {
    BiPoly p;
    for (const auto& [e, c] : u.terms()) p.add_term(e, t_exp, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  const std::map<QtExp, Coeff, QtExpLess>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Coeff coeff(int q_exp, int t_exp) const {
    auto it = terms_.find(QtExp{q_exp, t_exp});
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  int t_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.t; }

  void add_term(int q_exp, int t_exp, const Coeff& c) {
    if (q_exp < 0 || t_exp < 0) {
      throw std::invalid_argument("BiPoly: exponents must be non-negative");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(QtExp{q_exp, t_exp}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BiPoly& operator+=(const BiPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e.q, e.t, c);
    return *this;
  }

  BiPoly& operator-=(const BiPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e.q, e.t, -c);
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        out.add_term(ea.q + eb.q, ea.t + eb.t, ca * cb);
      }
    }
    return out;
  }

  /// Multiply by q^dq t^dt.
  BiPoly shifted(int dq, int dt) const {
    if (dq < 0 || dt < 0) throw std::invalid_argument("BiPoly: negative shift");
    BiPoly out;
    for (const auto& [e, c] : terms_) {
      out.terms_.emplace(QtExp{e.q + dq, e.t + dt}, c);
    }
    return out;
  }

  /// Substitute 1 for the flagged variable(s). At least one flag must be set.
  BiPoly specialized(bool q_to_one, bool t_to_one) const {
    if (!q_to_one && !t_to_one) {
      throw std::invalid_argument("BiPoly::specialized: no variable selected");
    }
    BiPoly out;
    for (const auto& [e, c] : terms_) {
      out.add_term(q_to_one ? 0 : e.q, t_to_one ? 0 : e.t, c);
    }
    return out;
  }

  /// Coefficient of t^t_exp, as a polynomial in q.
  UniPoly t_slice(int t_exp) const {
    UniPoly out;
    auto it = terms_.lower_bound(QtExp{0, t_exp});
    for (; it != terms_.end() && it->first.t == t_exp; ++it) {
      out.add_term(it->first.q, it->second);
    }
    return out;
  }

  Coeff eval_at_ones() const {
    Coeff sum = 0;
    for (const auto& [e, c] : terms_) sum += c;
    return sum;
  }

  bool operator==(const BiPoly& rhs) const { return terms_ == rhs.terms_; }

  /// Rendering grouped by ascending power of t, e.g.
  /// "1+(q+2q^2)t+(q^4+q^5)t^2".
  std::string str(std::string_view qvar = "q", std::string_view tvar = "t") const {
    return render(qvar, tvar, /*latex=*/false);
  }

  std::string latex(std::string_view qvar = "\\lambda",
                    std::string_view tvar = "\\mu") const {
    return render(qvar, tvar, /*latex=*/true);
  }

 private:
  std::string render(std::string_view qvar, std::string_view tvar,
                     bool latex) const {
    if (terms_.empty()) return "0";
    std::string out;
    auto it = terms_.begin();
    while (it != terms_.end()) {
      int t_exp = it->first.t;
      UniPoly group;
      for (; it != terms_.end() && it->first.t == t_exp; ++it) {
        group.add_term(it->first.q, it->second);
      }
      std::string gstr = latex ? group.latex(qvar) : group.str(qvar);
      std::string piece;
      if (t_exp == 0) {
        piece = gstr;
      } else {
        if (group.term_count() == 1 && gstr[0] != '-') {
          piece = (gstr == "1") ? "" : gstr;
        } else {
          piece = "(" + gstr + ")";
        }
        piece += tvar;
        if (t_exp != 1) {
          if (latex) {
            piece += "^{" + std::to_string(t_exp) + "}";
          } else {
            piece += "^" + std::to_string(t_exp);
          }
        }
      }
      if (!out.empty() && piece[0] != '-') out += '+';
      out += piece;
    }
    return out;
  }

  std::map<QtExp, Coeff, QtExpLess> terms_;
};

// ---------------------------------------------------------------------------
// Gaussian binomial coefficients
// ---------------------------------------------------------------------------

namespace detail {

inline const UniPoly& qbinom_memoized(int n, int k) {
  // Memo table is thread_local, so concurrent callers never contend and
  // always agree on values.
  thread_local std::map<std::pair<int, int>, UniPoly> memo;
  auto key = std::make_pair(n, k);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  UniPoly value;
  if (k == 0 || k == n) {
    value = UniPoly::one();
  } else {
    // Pascal recurrence [n k] = [n-1 k-1] + q^k [n-1 k].
    value = qbinom_memoized(n - 1, k - 1) + qbinom_memoized(n - 1, k).shifted(k);
  }
  return memo.emplace(key, std::move(value)).first->second;
}

}  // namespace detail

/// Gaussian polynomial [n choose k]_q. Out-of-range k yields the zero
/// polynomial, which makes convolution sums safe to run with implicit bounds.
inline UniPoly qbinom(int n, int k) {
  if (n < 0) throw std::invalid_argument("qbinom: n must be non-negative");
  if (k < 0 || k > n) return UniPoly{};
  if (k > n - k) k = n - k;  // symmetry keeps the memo small
  return detail::qbinom_memoized(n, k);
}

}  // namespace gridpath
