#include "hhm/prime_field.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace hhm {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p), lazy_budget_(0) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p)) {
        throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                    " is not a prime below 2^31");
    }
    const std::uint64_t top = static_cast<std::uint64_t>(p - 1);
    lazy_budget_ = (std::numeric_limits<std::uint64_t>::max() - top) / (top * top);
}

Elem PrimeField::from_int(std::int64_t v) const noexcept {
    const auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<Elem>(r);
}

Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
    Elem result = 1 % p_;
    Elem base = a;
    while (e != 0) {
        if (e & 1u) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Elem PrimeField::inv(Elem a) const {
    if (a % p_ == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
    return pow(a, p_ - 2);
}

std::int64_t PrimeField::to_signed(Elem a) const noexcept {
    const auto v = static_cast<std::int64_t>(a);
    return v > static_cast<std::int64_t>(p_ / 2) ? v - static_cast<std::int64_t>(p_) : v;
}

} // namespace hhm
