#include "metaaudit/exact_int.hpp"

#include <algorithm>

#include "metaaudit/errors.hpp"

namespace metaaudit {

ExactInt ExactInt::pow2(std::uint32_t exp) {
    if (exp >= 128)
        throw OverflowError("2^" + std::to_string(exp) + " exceeds the 128-bit limit");
    ExactInt r;
    r.v_ = static_cast<unsigned __int128>(1) << exp;
    return r;
}

ExactInt ExactInt::mul(const ExactInt& other) const {
    ExactInt r;
    if (__builtin_mul_overflow(v_, other.v_, &r.v_))
        throw OverflowError("product " + str() + " * " + other.str() +
                            " exceeds the 128-bit limit");
    return r;
}

std::string ExactInt::str() const {
    if (v_ == 0) return "0";
    std::string out;
    unsigned __int128 x = v_;
    while (x != 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(x % 10)));
        x /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<ExactInt> ExactInt::parse(std::string_view digits) {
    if (digits.empty()) return std::nullopt;
    unsigned __int128 x = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
        unsigned __int128 next;
        if (__builtin_mul_overflow(x, static_cast<unsigned __int128>(10), &next))
            return std::nullopt;
        if (__builtin_add_overflow(next, static_cast<unsigned __int128>(c - '0'), &next))
            return std::nullopt;
        x = next;
    }
    ExactInt r;
    r.v_ = x;
    return r;
}

std::uint64_t ExactInt::as_u64() const {
    if (!fits_u64()) throw OverflowError("value " + str() + " does not fit in 64 bits");
    return static_cast<std::uint64_t>(v_);
}

} // namespace metaaudit
