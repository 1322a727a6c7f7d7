#include "qid/gf.hpp"

#include <stdexcept>

namespace qid {

namespace {

// Reduction polynomials for the prime-power orders up to 64, stored with
// the coefficient of x^m implicit: entry value encodes the lower-degree
// coefficients base p. (E.g. order 8 over GF(2): x^3 + x + 1 -> 0b011.)
std::uint32_t reduction_for(std::uint32_t p, std::uint32_t m) {
  if (p == 2) {
    switch (m) {
      case 2: return 0b11;        // x^2 + x + 1
      case 3: return 0b011;       // x^3 + x + 1
      case 4: return 0b0011;      // x^4 + x + 1
      case 5: return 0b00101;     // x^5 + x^2 + 1
      case 6: return 0b000011;    // x^6 + x + 1
    }
  }
  if (p == 3) {
    if (m == 2) return 1;          // x^2 + 1
    if (m == 3) return 2 * 3 + 1;  // x^3 + 2x + 1
  }
  if (p == 5 && m == 2) return 1 * 5 + 1;  // x^2 + x + 1
  if (p == 7 && m == 2) return 1 * 7 + 3;  // x^2 + x + 3
  throw std::invalid_argument("galois field: unsupported prime power");
}

}  // namespace

GaloisField::GaloisField(std::uint32_t order) : q_(order) {
  if (order < 2 || order > 64)
    throw std::invalid_argument("galois field: order must lie in [2, 64]");
  // Factor as p^m.
  std::uint32_t p = 2;
  while (order % p != 0) ++p;
  std::uint32_t m = 0;
  std::uint32_t v = order;
  while (v % p == 0) {
    v /= p;
    ++m;
  }
  if (v != 1)
    throw std::invalid_argument("galois field: order must be a prime power");
  p_ = p;
  m_ = m;

  const std::uint32_t reduction = (m_ > 1) ? reduction_for(p_, m_) : 0;

  // Find a primitive element and fill the log/antilog tables.
  log_.assign(q_, 0);
  exp_.assign(q_ - 1, 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t steps = 0;
    bool primitive = true;
    std::vector<std::uint32_t> seen;
    seen.reserve(q_ - 1);
    do {
      seen.push_back(x);
      x = poly_mul(x, g, reduction);
      ++steps;
      if (x == 1) break;
      if (steps > q_) {
        primitive = false;
        break;
      }
    } while (true);
    if (primitive && steps == q_ - 1) {
      for (std::uint32_t e = 0; e < q_ - 1; ++e) {
        exp_[e] = seen[e];
        log_[seen[e]] = e;
      }
      return;
    }
  }
  throw std::invalid_argument("galois field: no primitive element found");
}

std::uint32_t GaloisField::poly_mul(std::uint32_t a, std::uint32_t b,
                                    std::uint32_t reduction) const {
  if (m_ == 1) return (a * b) % p_;
  // Coefficients of a, b base p.
  std::uint32_t da[8] = {0}, db[8] = {0}, prod[16] = {0};
  std::uint32_t t = a;
  for (std::uint32_t i = 0; i < m_; ++i) {
    da[i] = t % p_;
    t /= p_;
  }
  t = b;
  for (std::uint32_t i = 0; i < m_; ++i) {
    db[i] = t % p_;
    t /= p_;
  }
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j)
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  // Reduce modulo x^m + r(x), i.e. x^m == -r(x).
  std::uint32_t red[8] = {0};
  t = reduction;
  for (std::uint32_t i = 0; i < m_; ++i) {
    red[i] = t % p_;
    t /= p_;
  }
  for (std::uint32_t deg = 2 * m_ - 2; deg + 1 > m_; --deg) {
    const std::uint32_t c = prod[deg];
    if (c == 0) continue;
    prod[deg] = 0;
    for (std::uint32_t i = 0; i < m_; ++i)
      prod[deg - m_ + i] =
          (prod[deg - m_ + i] + c * (p_ - red[i]) % p_ + p_) % p_;
  }
  std::uint32_t out = 0;
  for (std::uint32_t i = m_; i-- > 0;) out = out * p_ + prod[i];
  return out;
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const {
  if (m_ == 1) return (a + b) % p_;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t GaloisField::neg(std::uint32_t a) const {
  if (m_ == 1) return (p_ - a % p_) % p_;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t GaloisField::sub(std::uint32_t a, std::uint32_t b) const {
  return add(a, neg(b));
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

std::uint32_t GaloisField::log(std::uint32_t a) const {
  if (a == 0) throw std::invalid_argument("galois field: log of zero");
  return log_[a];
}

std::uint32_t GaloisField::antilog(std::uint32_t e) const {
  return exp_[e % (q_ - 1)];
}

}  // namespace qid
