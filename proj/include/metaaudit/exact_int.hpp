#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace metaaudit {

// Exact unsigned 128-bit integer for search-space sizes and adjustment
// factors. Arithmetic never wraps: overflow throws OverflowError.
class ExactInt {
public:
    ExactInt() : v_(0) {}
    explicit ExactInt(std::uint64_t v) : v_(v) {}

    // 2^exp; exp >= 128 exceeds the representation limit.
    static ExactInt pow2(std::uint32_t exp);

    // Decimal-digit string, e.g. "117440512".
    static std::optional<ExactInt> parse(std::string_view digits);

    ExactInt mul(const ExactInt& other) const; // throws OverflowError

    std::string str() const;

    bool fits_u64() const { return v_ <= UINT64_MAX; }
    std::uint64_t as_u64() const; // throws OverflowError if it does not fit
    long double as_long_double() const { return static_cast<long double>(v_); }

    friend bool operator==(const ExactInt& a, const ExactInt& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const ExactInt& a, const ExactInt& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    unsigned __int128 v_;
};

} // namespace metaaudit
