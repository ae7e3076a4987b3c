#pragma once

#include <cstdint>

namespace hhm {

/// Field element: canonical representative in 0..p-1.
using Elem = std::uint32_t;

bool is_prime(std::uint64_t n) noexcept;

/// The prime field F_p for 2 <= p < 2^31.
///
/// All products are formed in 64 bits. `lazy_budget()` tells kernels how many products of
/// reduced elements can be accumulated in a uint64 before a reduction is required.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p = 2);

    std::uint32_t p() const noexcept { return p_; }

    Elem add(Elem a, Elem b) const noexcept {
        const Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept {
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Elem reduce(std::uint64_t v) const noexcept { return static_cast<Elem>(v % p_); }
    Elem from_int(std::int64_t v) const noexcept;

    /// Multiplicative inverse; throws std::domain_error for 0.
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// Representative in (-p/2, p/2], handy for printing.
    std::int64_t to_signed(Elem a) const noexcept;

    std::uint64_t lazy_budget() const noexcept { return lazy_budget_; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
    std::uint64_t lazy_budget_;
};

} // namespace hhm
