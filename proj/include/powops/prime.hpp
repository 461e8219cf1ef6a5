#pragma once

#include <stdexcept>
#include <string>

#include "powops/integers.hpp"

namespace powops {

/// The prime p fixed for a computation session. Every object carries one,
/// and objects may only be combined when their primes agree.
class PrimeContext {
  public:
    explicit PrimeContext(long long p) : p_(p) {
        if (!is_prime(p)) {
            throw std::invalid_argument("PrimeContext: " + std::to_string(p) + " is not prime");
        }
    }

    long long p() const noexcept { return p_; }

    bool operator==(const PrimeContext& other) const noexcept = default;

  private:
    long long p_;
};

inline void require_same_prime(const PrimeContext& a, const PrimeContext& b) {
    if (!(a == b)) {
        throw std::invalid_argument("operands carry different primes: " + std::to_string(a.p()) +
                                    " vs " + std::to_string(b.p()));
    }
}

}  // namespace powops
