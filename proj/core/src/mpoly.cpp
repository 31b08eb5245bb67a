#include "subzeta/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "subzeta/error.hpp"

namespace subzeta {

MPoly MPoly::constant(unsigned nvars, const mpz_class& c) {
  MPoly f(nvars);
  f.add_term(Exponent(nvars, 0), c);
  return f;
}

MPoly MPoly::variable(unsigned nvars, unsigned index) {
  if (index >= nvars) throw Error(ErrorKind::VariableOutOfRange, "variable index out of range");
  MPoly f(nvars);
  Exponent e(nvars, 0);
  e[index] = 1;
  f.add_term(e, 1);
  return f;
}

unsigned MPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

unsigned MPoly::degree_in(unsigned index) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[index]);
  return d;
}

mpz_class MPoly::constant_term() const {
  auto it = terms_.find(Exponent(n_, 0));
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void MPoly::add_term(const Exponent& e, const mpz_class& c) {
  if (e.size() != n_) throw Error(ErrorKind::DimensionMismatch, "exponent length != nvars");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "adding polynomials in different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "subtracting polynomials in different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly r(n_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::DimensionMismatch, "multiplying polynomials in different rings");
  MPoly r(a.n_);
  Exponent e(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (unsigned i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MPoly operator*(const mpz_class& c, const MPoly& a) {
  MPoly r(a.n_);
  if (c == 0) return r;
  for (const auto& [e, v] : a.terms_) r.terms_.emplace(e, c * v);
  return r;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly result = constant(n_, 1);
  MPoly base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

MPoly MPoly::derivative(unsigned index) const {
  if (index >= n_) throw Error(ErrorKind::VariableOutOfRange, "derivative index out of range");
  MPoly r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponent d = e;
    d[index] -= 1;
    r.add_term(d, c * e[index]);
  }
  return r;
}

MPoly MPoly::divexact(const mpz_class& c) const {
  MPoly r(n_);
  for (const auto& [e, v] : terms_) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    r.terms_.emplace(e, q);
  }
  return r;
}

mpz_class MPoly::eval(std::span<const mpz_class> point) const {
  if (point.size() != n_) throw Error(ErrorKind::DimensionMismatch, "point length != nvars");
  mpz_class total = 0;
  mpz_class term, pw;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (unsigned i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(pw.get_mpz_t(), point[i].get_mpz_t(), e[i]);
      term *= pw;
    }
    total += term;
  }
  return total;
}

MPoly MPoly::substitute_affine(std::span<const mpz_class> shift, const mpz_class& scale) const {
  if (shift.size() != n_) throw Error(ErrorKind::DimensionMismatch, "shift length != nvars");
  // powers[i][k] = (shift_i + scale*y_i)^k, built lazily
  std::vector<std::vector<MPoly>> powers(n_);
  for (unsigned i = 0; i < n_; ++i) {
    MPoly lin = constant(n_, shift[i]) + scale * variable(n_, i);
    powers[i].push_back(constant(n_, 1));
    for (unsigned k = 1; k <= degree_in(i); ++k) powers[i].push_back(powers[i].back() * lin);
  }
  MPoly r(n_);
  for (const auto& [e, c] : terms_) {
    MPoly t = constant(n_, c);
    for (unsigned i = 0; i < n_; ++i) {
      if (e[i]) t *= powers[i][e[i]];
    }
    r += t;
  }
  return r;
}

unsigned MPoly::content_valuation(u64 p) const {
  if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "content valuation of the zero polynomial");
  unsigned best = ~0u;
  for (const auto& [e, c] : terms_) best = std::min(best, valuation_mpz(c, p));
  return best;
}

std::string MPoly::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    unsigned da = std::accumulate(a->first.begin(), a->first.end(), 0u);
    unsigned db = std::accumulate(b->first.begin(), b->first.end(), 0u);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : order) {
    const Exponent& e = t->first;
    mpz_class c = t->second;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool is_const = std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    bool wrote = false;
    if (c != 1 || is_const) {
      out << c.get_str();
      wrote = true;
    }
    for (unsigned i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << '*';
      out << var << (i + 1);
      if (e[i] > 1) out << '^' << e[i];
      wrote = true;
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, unsigned nvars) : s_(text), n_(nvars) {}

  MPoly parse() {
    MPoly f = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(ErrorKind::SyntaxError, "unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(ErrorKind k, const std::string& msg) const { throw ParseError(k, pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  MPoly term() {
    MPoly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  MPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MPoly power() {
    MPoly base = primary();
    if (accept('^')) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '-') fail(ErrorKind::NegativeExponent, "negative exponent");
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        fail(ErrorKind::SyntaxError, "expected a nonnegative integer exponent");
      }
      mpz_class k = integer();
      if (k > 1000) fail(ErrorKind::SyntaxError, "exponent too large");
      return base.pow(static_cast<unsigned>(k.get_ui()));
    }
    return base;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  MPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail(ErrorKind::SyntaxError, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      if (!accept(')')) fail(ErrorKind::SyntaxError, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return MPoly::constant(n_, integer());
    if (c == 'x') {
      std::size_t start = pos_;
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        fail(ErrorKind::SyntaxError, "expected variable index after 'x'");
      }
      mpz_class idx = integer();
      if (idx < 1 || idx > n_) {
        throw ParseError(ErrorKind::VariableOutOfRange, start,
                         "variable x" + idx.get_str() + " outside x1..x" + std::to_string(n_));
      }
      return MPoly::variable(n_, static_cast<unsigned>(idx.get_ui()) - 1);
    }
    fail(ErrorKind::SyntaxError, "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  unsigned n_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_polynomial(std::string_view text, unsigned nvars) {
  if (nvars == 0) throw Error(ErrorKind::InvalidArgument, "polynomial ring needs at least one variable");
  return Parser(text, nvars).parse();
}

PAdicApprox evaluate_mod(const MPoly& f, std::span<const mpz_class> point, u64 p,
                         unsigned precision) {
  if (point.size() != f.nvars()) throw Error(ErrorKind::DimensionMismatch, "point length != nvars");
  return PAdicApprox(p, f.eval(point), precision);
}

ShiftRescale shift_rescale(const MPoly& f, std::span<const mpz_class> x0, unsigned L, u64 p) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "shift_rescale of the zero polynomial");
  if (L == 0) throw Error(ErrorKind::InvalidArgument, "shift_rescale needs L >= 1");
  MPoly g = f.substitute_affine(x0, pow_mpz(p, L));
  ShiftRescale out;
  out.e = g.content_valuation(p);
  out.rescaled = g.divexact(pow_mpz(p, out.e));
  return out;
}

CompiledPoly::CompiledPoly(const MPoly& f, u64 modulus) : n_(f.nvars()), modulus_(modulus) {
  if (n_ > kMaxVars) throw Error(ErrorKind::InvalidArgument, "too many variables for fast evaluation");
  if (modulus == 0 || modulus >= kMaxModulus) throw Error(ErrorKind::ModulusTooLarge, "modulus out of range");
  for (const auto& [e, c] : f.terms()) {
    Term t{};
    t.coeff = mod_u64(c, modulus);
    if (t.coeff == 0) continue;
    for (unsigned i = 0; i < n_; ++i) {
      if (e[i] > kMaxDegree) throw Error(ErrorKind::InvalidArgument, "degree too large for fast evaluation");
      t.exps[i] = static_cast<std::uint8_t>(e[i]);
      max_deg_[i] = std::max(max_deg_[i], t.exps[i]);
    }
    terms_.push_back(t);
  }
}

u64 CompiledPoly::eval(std::span<const u64> point) const {
  const u64 m = modulus_;
  u64 pw[kMaxVars][kMaxDegree + 1];
  for (unsigned i = 0; i < n_; ++i) {
    pw[i][0] = 1 % m;
    u64 xi = point[i] % m;
    for (unsigned k = 1; k <= max_deg_[i]; ++k) pw[i][k] = mulmod(pw[i][k - 1], xi, m);
  }
  u64 total = 0;
  for (const Term& t : terms_) {
    u64 v = t.coeff;
    for (unsigned i = 0; i < n_; ++i) {
      if (t.exps[i]) v = mulmod(v, pw[i][t.exps[i]], m);
    }
    total = addmod(total, v, m);
  }
  return total;
}

}  // namespace subzeta
