#pragma once

#include <cstdint>
#include <vector>

namespace qid {

// Finite field of prime-power order q <= 64. Elements are integers in
// [0, q); for q = p^m the base-p digits are the polynomial coefficients.
// Multiplication runs through precomputed log/antilog tables over a
// primitive element.
class GaloisField {
 public:
  explicit GaloisField(std::uint32_t order);

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t log(std::uint32_t a) const;     // a != 0
  std::uint32_t antilog(std::uint32_t e) const; // e in [0, q-1)

 private:
  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t m_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;

  std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b,
                         std::uint32_t reduction) const;
};

}  // namespace qid
