#include "ssequiv/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ssequiv {

Poly::Poly(Rational constant) {
  if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(Rational c, std::size_t degree) {
  if (c.is_zero()) return {};
  std::vector<Rational> coeffs(degree + 1);
  coeffs[degree] = std::move(c);
  return Poly(std::move(coeffs));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  const Rational inv = coeffs_.back().inverse();
  Poly out = *this;
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

std::string Poly::str(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = c.abs();
    if (i == 0) {
      os << mag;
      continue;
    }
    if (!mag.is_one()) {
      if (mag.is_integer()) {
        os << mag;
      } else {
        os << "(" << mag << ")";
      }
    }
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Poly operator-(const Poly& p) {
  Poly out = p;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Poly pow(const Poly& base, unsigned exponent) {
  Poly result(1);
  Poly b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

PolyDivRem divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> rem = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  const std::size_t dq = rem.size() - 1 - db;
  std::vector<Rational> quot(dq + 1);
  const Rational inv_lead = b.leading().inverse();
  const auto& bc = b.coeffs();
  for (std::size_t k = dq + 1; k-- > 0;) {
    const Rational q = rem[k + db] * inv_lead;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * bc[j];
    quot[k] = q;
  }
  rem.resize(db);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = divrem(x, y).remainder;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Poly differentiate(const Poly& a, unsigned k) {
  std::vector<Rational> c = a.coeffs();
  for (unsigned step = 0; step < k && !c.empty(); ++step) {
    for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * Rational(static_cast<long>(i));
    c.pop_back();
  }
  return Poly(std::move(c));
}

Rational evaluate(const Poly& a, const Rational& x) {
  Rational acc;
  const auto& c = a.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

unsigned LinearFactorization::degree() const {
  unsigned d = 0;
  for (const auto& f : factors) d += f.multiplicity;
  return d;
}

Poly LinearFactorization::expand() const {
  Poly out(leading);
  for (const auto& f : factors) out *= pow(Poly(std::vector<Rational>{-f.root, Rational(1)}), f.multiplicity);
  return out;
}

namespace {

void collect_prime_factors(mpz_class n, std::vector<mpz_class>& primes);

mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::mt19937_64 rng(0x5eed);
  for (;;) {
    mpz_class y = rng() % n;
    const mpz_class c = 1 + rng() % (n - 1);
    mpz_class g = 1;
    mpz_class q = 1;
    mpz_class x;
    mpz_class ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = ::gcd(q, n);
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = ::gcd(mpz_class(abs(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_prime_factors(mpz_class n, std::vector<mpz_class>& primes) {
  for (unsigned long p = 2; p < 1000 && n > 1; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    primes.push_back(n);
    return;
  }
  const mpz_class f = pollard_brent(n);
  collect_prime_factors(f, primes);
  collect_prime_factors(n / f, primes);
}

}  // namespace

std::vector<mpz_class> positive_divisors(const mpz_class& value) {
  if (value == 0) throw std::invalid_argument("divisors of zero");
  std::vector<mpz_class> primes;
  collect_prime_factors(abs(value), primes);
  std::sort(primes.begin(), primes.end());
  std::vector<mpz_class> divisors{1};
  std::size_t i = 0;
  while (i < primes.size()) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    const std::size_t base = divisors.size();
    mpz_class power = 1;
    for (std::size_t e = i; e < j; ++e) {
      power *= primes[i];
      for (std::size_t t = 0; t < base; ++t) divisors.push_back(divisors[t] * power);
    }
    i = j;
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

std::optional<LinearFactorization> rational_linear_factorization(const Poly& a) {
  if (a.is_zero()) throw std::invalid_argument("factorization of the zero polynomial");
  LinearFactorization out;
  out.leading = a.leading();

  // Strip the root at zero first so the trailing coefficient is nonzero.
  std::size_t zero_mult = 0;
  while (a.coeffs()[zero_mult].is_zero()) ++zero_mult;
  Poly rest(std::vector<Rational>(a.coeffs().begin() + static_cast<std::ptrdiff_t>(zero_mult), a.coeffs().end()));
  rest = rest.monic();

  std::vector<LinearFactor> found;
  if (zero_mult > 0) found.push_back({Rational(), static_cast<unsigned>(zero_mult)});

  if (rest.degree() > 0) {
    // Candidates come from the square-free part, cleared of denominators.
    const Poly sqfree = divrem(rest, gcd(rest, differentiate(rest))).quotient;
    mpz_class den_lcm = 1;
    for (const auto& c : sqfree.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : sqfree.coeffs()) ints.push_back(c.numerator() * (den_lcm / c.denominator()));

    const auto nums = positive_divisors(ints.front());
    const auto dens = positive_divisors(ints.back());
    std::vector<Rational> candidates;
    for (const auto& p : nums) {
      for (const auto& q : dens) {
        candidates.emplace_back(p, q);
        candidates.emplace_back(mpz_class(-p), q);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    unsigned roots_left = static_cast<unsigned>(sqfree.degree());
    for (const auto& r : candidates) {
      if (roots_left == 0) break;
      if (!evaluate(sqfree, r).is_zero()) continue;
      const Poly linear(std::vector<Rational>{-r, Rational(1)});
      unsigned mult = 0;
      for (;;) {
        auto [q, rem] = divrem(rest, linear);
        if (!rem.is_zero()) break;
        rest = std::move(q);
        ++mult;
      }
      found.push_back({r, mult});
      --roots_left;
    }
    if (rest.degree() > 0) return std::nullopt;
  }

  std::sort(found.begin(), found.end(), [](const LinearFactor& x, const LinearFactor& y) { return x.root < y.root; });
  out.factors = std::move(found);
  return out;
}

}  // namespace ssequiv
