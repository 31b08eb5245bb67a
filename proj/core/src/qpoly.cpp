#include "subzeta/qpoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "subzeta/error.hpp"

namespace subzeta {

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const mpq_class& c, unsigned k) {
  std::vector<mpq_class> v(k + 1, 0);
  v[k] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(r));
}

QPoly operator*(const mpq_class& c, const QPoly& a) {
  std::vector<mpq_class> r = a.c_;
  for (auto& x : r) x *= c;
  return QPoly(std::move(r));
}

QPoly QPoly::pow(unsigned k) const {
  QPoly r = constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  std::vector<mpq_class> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
  std::vector<mpq_class> rem = c_;
  if (rem.size() < d.c_.size()) return {QPoly(), *this};
  std::vector<mpq_class> quot(rem.size() - d.c_.size() + 1, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    mpq_class q = rem[k + d.c_.size() - 1] / d.c_.back();
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= q * d.c_[j];
  }
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return mpq_class(1 / c_.back()) * *this;
}

mpq_class QPoly::eval(const mpq_class& t) const {
  mpq_class r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
  return r;
}

std::complex<double> QPoly::eval(std::complex<double> t) const {
  std::complex<double> r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * t + c_[i].get_d();
  return r;
}

std::string QPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class c = c_[i];
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) out << (neg ? "-" : "");
    else out << (neg ? " - " : " + ");
    first = false;
    if (i == 0 || c != 1) {
      out << c.get_str();
      if (i > 0) out << '*';
    }
    if (i >= 1) out << var;
    if (i >= 2) out << '^' << i;
  }
  return out.str();
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RationalFn::RationalFn(QPoly num, QPoly den) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (num.is_zero()) {
    num_ = QPoly();
    den_ = QPoly::constant(1);
    return;
  }
  QPoly g = gcd(num, den);
  num = num.divmod(g).first;
  den = den.divmod(g).first;
  if (den.coeff(0) == 0) throw Error(ErrorKind::InvalidArgument, "rational function has a pole at t = 0");
  mpq_class c0 = den.coeff(0);
  num_ = mpq_class(1 / c0) * num;
  den_ = mpq_class(1 / c0) * den;
}

std::vector<mpq_class> RationalFn::series(unsigned count) const {
  std::vector<mpq_class> a(count, 0);
  const auto& d = den_.coeffs();
  for (unsigned k = 0; k < count; ++k) {
    mpq_class v = num_.coeff(k);
    for (std::size_t i = 1; i < d.size() && i <= k; ++i) v -= d[i] * a[k - i];
    a[k] = v;
  }
  return a;
}

mpq_class RationalFn::eval(const mpq_class& t) const {
  mpq_class d = den_.eval(t);
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "evaluation at a pole");
  return num_.eval(t) / d;
}

std::complex<double> RationalFn::eval(std::complex<double> t) const {
  return num_.eval(t) / den_.eval(t);
}

RationalFn reconstruct_rational(const std::vector<mpq_class>& coeffs, unsigned validation_count) {
  if (validation_count < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 validation terms");
  if (coeffs.size() <= validation_count) {
    throw Error(ErrorKind::NoRecurrenceFound, "not enough coefficients beyond the validation terms");
  }
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const mpq_class& c) { return c == 0; })) {
    return RationalFn();
  }
  const std::size_t n_train = coeffs.size() - validation_count;
  std::vector<mpq_class> C{1}, B{1};
  std::size_t L = 0, m = 1;
  mpq_class b = 1;
  for (std::size_t n = 0; n < n_train; ++n) {
    mpq_class d = coeffs[n];
    for (std::size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * coeffs[n - i];
    if (d == 0) {
      ++m;
      continue;
    }
    std::vector<mpq_class> T = C;
    mpq_class coef = d / b;
    if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
    for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
    if (2 * L <= n) {
      L = n + 1 - L;
      B = std::move(T);
      b = d;
      m = 1;
    } else {
      ++m;
    }
  }
  if (2 * L > n_train) {
    throw Error(ErrorKind::NoRecurrenceFound,
                "linear complexity " + std::to_string(L) + " needs more than " +
                    std::to_string(n_train) + " training coefficients");
  }
  QPoly den(C);
  std::vector<mpq_class> num(L, 0);
  for (std::size_t k = 0; k < L; ++k) {
    for (std::size_t i = 0; i <= k && i < C.size(); ++i) num[k] += C[i] * coeffs[k - i];
  }
  RationalFn f(QPoly(std::move(num)), den);
  auto check = f.series(static_cast<unsigned>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (check[i] != coeffs[i]) {
      throw Error(ErrorKind::ValidationFailed,
                  "reconstructed series disagrees at coefficient " + std::to_string(i) + ": " +
                      check[i].get_str() + " vs " + coeffs[i].get_str());
    }
  }
  return f;
}

QPoly candidate_factor(u64 p, const ResolutionDatum& d) {
  return QPoly::constant(1) - QPoly::monomial(pow_mpq(p, -static_cast<int>(d.v)), d.N);
}

namespace {

std::vector<std::complex<double>> durand_kerner(const QPoly& f) {
  int deg = f.degree();
  std::vector<std::complex<double>> roots;
  if (deg < 1) return roots;
  std::vector<std::complex<double>> c(deg + 1);
  for (int i = 0; i <= deg; ++i) c[i] = f.coeff(i).get_d() / f.leading().get_d();
  auto eval = [&](std::complex<double> z) {
    std::complex<double> r = 0;
    for (int i = deg; i >= 0; --i) r = r * z + c[i];
    return r;
  };
  double radius = 0;
  for (int i = 0; i < deg; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1 + radius;
  const std::complex<double> seed(0.4, 0.9);
  roots.resize(deg);
  for (int i = 0; i < deg; ++i) roots[i] = std::pow(seed, i) * (radius / 2);
  for (int iter = 0; iter < 2000; ++iter) {
    double delta = 0;
    for (int i = 0; i < deg; ++i) {
      std::complex<double> denom = 1;
      for (int j = 0; j < deg; ++j) {
        if (j != i) denom *= roots[i] - roots[j];
      }
      std::complex<double> step = eval(roots[i]) / denom;
      roots[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-15) break;
  }
  return roots;
}

// Yun's square-free decomposition: returns (factor, multiplicity) pairs.
std::vector<std::pair<QPoly, unsigned>> squarefree(const QPoly& f) {
  std::vector<std::pair<QPoly, unsigned>> out;
  QPoly df = f.derivative();
  QPoly a = gcd(f, df);
  QPoly b = f.divmod(a).first;
  QPoly c = df.divmod(a).first;
  QPoly d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    QPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
  }
  return out;
}

void add_root(std::vector<Root>& roots, std::complex<double> z, unsigned mult) {
  for (auto& r : roots) {
    if (std::abs(r.value - z) <= 1e-8 * std::max(1.0, std::abs(z))) {
      r.multiplicity += mult;
      return;
    }
  }
  roots.push_back({z, mult});
}

// Exact factorisation of den into factors 1 - p^{-v} t^N, by bounded search.
bool match_factors(const QPoly& den, u64 p, std::vector<ResolutionDatum>& used) {
  if (den.degree() == 0) return den.coeff(0) == 1;
  mpq_class lead = abs(den.leading());
  // lead must be p^{-V}
  if (lead.get_num() != 1) return false;
  mpz_class dd = lead.get_den();
  unsigned V = 0;
  while (dd % p == 0) {
    dd /= p;
    ++V;
  }
  if (dd != 1) return false;
  long budget = 20000;
  std::function<bool(const QPoly&, unsigned)> rec = [&](const QPoly& rest, unsigned maxN) -> bool {
    if (rest.degree() == 0) return rest.coeff(0) == 1;
    if (--budget < 0) return false;
    for (unsigned N = std::min<unsigned>(maxN, rest.degree()); N >= 1; --N) {
      for (unsigned v = 0; v <= V; ++v) {
        QPoly f = candidate_factor(p, {N, v});
        auto [q, r] = rest.divmod(f);
        if (!r.is_zero()) continue;
        used.push_back({N, v});
        if (rec(q, N)) return true;
        used.pop_back();
      }
    }
    return false;
  };
  return rec(den, static_cast<unsigned>(den.degree()));
}

void finish_rho(PoleData& out, u64 p) {
  double min_mod = INFINITY;
  for (const auto& r : out.roots) min_mod = std::min(min_mod, std::abs(r.value));
  out.rho = std::log(min_mod) / std::log(static_cast<double>(p));
  out.m_rho = 0;
  for (const auto& r : out.roots) {
    if (std::abs(std::abs(r.value) - min_mod) <= 1e-8 * min_mod) out.m_rho = std::max(out.m_rho, r.multiplicity);
  }
}

}  // namespace

PoleData pole_analysis(const RationalFn& f, u64 p) {
  const QPoly& den = f.denominator();
  if (den.degree() < 1) throw Error(ErrorKind::ConstantDenominator, "rational function has no poles");
  PoleData out;
  std::vector<ResolutionDatum> used;
  if (match_factors(den, p, used)) {
    out.matched_factors = used;
    for (const auto& d : used) {
      double mod = std::pow(static_cast<double>(p), static_cast<double>(d.v) / d.N);
      for (unsigned k = 0; k < d.N; ++k) {
        add_root(out.roots, std::polar(mod, 2 * M_PI * k / d.N), 1);
      }
      mpq_class ratio(d.v, d.N);
      ratio.canonicalize();
      if (!out.rho_exact || ratio < *out.rho_exact) out.rho_exact = ratio;
    }
    finish_rho(out, p);
    out.rho = out.rho_exact->get_d();
    return out;
  }
  for (const auto& [g, mult] : squarefree(den)) {
    for (auto z : durand_kerner(g)) add_root(out.roots, z, mult);
  }
  finish_rho(out, p);
  return out;
}

PoleData pole_data_from_resolution(const std::vector<ResolutionDatum>& data, u64 p) {
  if (data.empty()) throw Error(ErrorKind::InvalidArgument, "empty resolution data");
  PoleData out;
  for (const auto& d : data) {
    mpq_class ratio(d.v, d.N);
    ratio.canonicalize();
    if (!out.rho_exact || ratio < *out.rho_exact) out.rho_exact = ratio;
  }
  for (const auto& d : data) {
    mpq_class ratio(d.v, d.N);
    ratio.canonicalize();
    if (ratio == *out.rho_exact) ++out.m_rho;
  }
  out.rho = out.rho_exact->get_d();
  out.matched_factors = data;
  (void)p;
  return out;
}

CandidateCheck candidate_pole_check(const RationalFn& f, const std::vector<ResolutionDatum>& data,
                                    u64 p, unsigned cap) {
  CandidateCheck out;
  const QPoly& den = f.denominator();
  std::vector<QPoly> factors;
  for (const auto& d : data) factors.push_back(candidate_factor(p, d));
  auto product = [&](const std::vector<unsigned>& mu) {
    QPoly r = QPoly::constant(1);
    for (std::size_t i = 0; i < factors.size(); ++i) r = r * factors[i].pow(mu[i]);
    return r;
  };
  std::vector<unsigned> mu(data.size(), cap);
  QPoly rem = product(mu).divmod(den).second;
  if (!rem.is_zero()) {
    out.residual = rem;
    out.multiplicities = mu;
    return out;
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    while (mu[i] > 0) {
      --mu[i];
      if (!product(mu).divmod(den).second.is_zero()) {
        ++mu[i];
        break;
      }
    }
  }
  out.pass = true;
  out.multiplicities = mu;
  return out;
}

}  // namespace subzeta
