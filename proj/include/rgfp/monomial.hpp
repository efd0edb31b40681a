#pragma once

// Variable namespace and packed exponent vectors.
//
// The namespace is fixed: the strip coordinates x, y, z, s followed by the
// twelve free coefficients of the restricted model.  A monomial stores one
// 8-bit exponent per variable in two 64-bit words; variable 0 occupies the
// most significant byte of `hi`, so integer comparison of (hi, lo) is lex
// order by variable index.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rgfp {

enum class Var : std::uint8_t {
    x, y, z, s,
    a, b, f5, f6, g5, h3, h4, n3, a24, a05, a15, a06,
};

inline constexpr std::size_t kNumVars = 16;
inline constexpr unsigned kMaxExponent = 127;

inline constexpr std::array<std::string_view, kNumVars> kVarNames = {
    "x", "y", "z", "s", "a", "b", "f5", "f6", "g5", "h3", "h4", "n3", "a24", "a05", "a15", "a06",
};

/// The twelve model parameters, in the order they appear in the model polynomial.
inline constexpr std::array<Var, 12> kParamVars = {
    Var::a, Var::b, Var::f5, Var::f6, Var::g5, Var::h3,
    Var::h4, Var::n3, Var::a24, Var::a05, Var::a15, Var::a06,
};

inline constexpr std::size_t index(Var v) noexcept { return static_cast<std::size_t>(v); }
inline constexpr std::string_view name(Var v) noexcept { return kVarNames[index(v)]; }
inline constexpr bool is_param(Var v) noexcept { return index(v) >= index(Var::a); }

inline std::optional<Var> var_from_name(std::string_view n) {
    for (std::size_t i = 0; i < kNumVars; ++i)
        if (kVarNames[i] == n) return static_cast<Var>(i);
    return std::nullopt;
}

class Monomial {
public:
    constexpr Monomial() = default;

    static Monomial of(Var v, unsigned e = 1) {
        Monomial m;
        m.set(v, e);
        return m;
    }

    constexpr unsigned exp(Var v) const noexcept {
        const std::size_t i = index(v);
        const std::uint64_t w = i < 8 ? hi_ : lo_;
        const unsigned shift = 8U * (7U - static_cast<unsigned>(i % 8));
        return static_cast<unsigned>((w >> shift) & 0xFFU);
    }

    void set(Var v, unsigned e) {
        if (e > kMaxExponent) throw std::overflow_error("Monomial: exponent exceeds 127");
        const std::size_t i = index(v);
        std::uint64_t& w = i < 8 ? hi_ : lo_;
        const unsigned shift = 8U * (7U - static_cast<unsigned>(i % 8));
        w = (w & ~(std::uint64_t{0xFF} << shift)) | (std::uint64_t{e} << shift);
    }

    bool is_one() const noexcept { return hi_ == 0 && lo_ == 0; }

    unsigned total_degree() const noexcept {
        unsigned d = 0;
        for (std::size_t i = 0; i < kNumVars; ++i) d += exp(static_cast<Var>(i));
        return d;
    }

    /// Total degree in the twelve parameter variables.
    unsigned param_degree() const noexcept {
        unsigned d = 0;
        for (Var v : kParamVars) d += exp(v);
        return d;
    }

    bool divides(const Monomial& o) const noexcept {
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (exp(static_cast<Var>(i)) > o.exp(static_cast<Var>(i))) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        constexpr std::uint64_t kHighBits = 0x8080808080808080ULL;
        Monomial m;
        m.hi_ = a.hi_ + b.hi_;
        m.lo_ = a.lo_ + b.lo_;
        if (((m.hi_ | m.lo_) & kHighBits) != 0) throw std::overflow_error("Monomial: exponent exceeds 127");
        return m;
    }

    /// Caller guarantees `d` divides `n`.
    friend Monomial operator/(const Monomial& n, const Monomial& d) {
        Monomial m;
        m.hi_ = n.hi_ - d.hi_;
        m.lo_ = n.lo_ - d.lo_;
        return m;
    }

    /// Componentwise minimum (gcd of two monomials).
    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (std::size_t i = 0; i < kNumVars; ++i) {
            const Var v = static_cast<Var>(i);
            m.set(v, std::min(a.exp(v), b.exp(v)));
        }
        return m;
    }

    Monomial without(Var v) const {
        Monomial m = *this;
        m.set(v, 0);
        return m;
    }

    /// Part of the monomial in the parameter variables only.
    Monomial params_only() const {
        Monomial m;
        m.lo_ = lo_;
        m.hi_ = hi_ & 0x00000000FFFFFFFFULL;
        return m;
    }

    /// Part of the monomial in the coordinates x, y, z, s only.
    Monomial coords_only() const {
        Monomial m;
        m.hi_ = hi_ & 0xFFFFFFFF00000000ULL;
        return m;
    }

    friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
    friend constexpr auto operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }

    std::size_t hash() const noexcept {
        return std::hash<std::uint64_t>{}(hi_ * 0x9E3779B97F4A7C15ULL ^ lo_);
    }

    /// "x^2*z*a^3"; "1" for the empty monomial.
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < kNumVars; ++i) {
            const unsigned e = exp(static_cast<Var>(i));
            if (e == 0) continue;
            if (!out.empty()) out += '*';
            out += kVarNames[i];
            if (e > 1) out += '^' + std::to_string(e);
        }
        return out.empty() ? "1" : out;
    }

private:
    std::uint64_t hi_ = 0;
    std::uint64_t lo_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

}  // namespace rgfp
