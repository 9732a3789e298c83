#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace arrcover {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class FieldKind { Rationals, Prime, QuadExt };

namespace detail {

inline bool is_prime_u32(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

inline bool is_square_free_u32(std::uint32_t d) {
    for (std::uint64_t q = 2; q * q <= d; ++q) {
        if (d % q == 0) {
            d /= static_cast<std::uint32_t>(q);
            if (d % q == 0) return false;
        }
    }
    return true;
}

// cpp_rational's string ctor is unusable for untrusted input (it aborts on a
// zero denominator), so rationals are validated and split by hand.
inline bool scan_int(const std::string& s, std::size_t& pos, BigInt& out) {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == digits) { pos = start; return false; }
    out = BigInt(s.substr(start, pos - start));
    return true;
}

inline bool scan_rational(const std::string& s, std::size_t& pos, BigRat& out) {
    BigInt num;
    if (!scan_int(s, pos, num)) return false;
    if (pos < s.size() && s[pos] == '/') {
        std::size_t mark = pos++;
        BigInt den;
        std::size_t digits = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == digits) { pos = mark; out = BigRat(num); return true; }
        den = BigInt(s.substr(digits, pos - digits));
        if (den == 0) throw Error("zero denominator in rational '" + s + "'");
        out = BigRat(num, den);
        return true;
    }
    out = BigRat(num);
    return true;
}

inline BigRat parse_rational(const std::string& s) {
    std::size_t pos = 0;
    BigRat r;
    if (!scan_rational(s, pos, r) || pos != s.size())
        throw Error("malformed rational '" + s + "'");
    return r;
}

inline std::string rational_str(const BigRat& r) {
    return r.str();
}

}  // namespace detail

struct FieldContext {
    FieldKind kind = FieldKind::Rationals;
    std::uint32_t p = 0;  // Prime
    std::uint32_t d = 0;  // QuadExt

    static FieldContext rationals() { return {FieldKind::Rationals, 0, 0}; }

    static FieldContext prime(std::uint32_t p) {
        if (p >= (1u << 31) || !detail::is_prime_u32(p))
            throw Error("field characteristic must be a prime below 2^31, got " + std::to_string(p));
        return {FieldKind::Prime, p, 0};
    }

    static FieldContext quad(std::uint32_t d) {
        if (d <= 1 || !detail::is_square_free_u32(d))
            throw Error("quadratic extension needs a square-free integer > 1, got " + std::to_string(d));
        return {FieldKind::QuadExt, 0, d};
    }

    bool operator==(const FieldContext&) const = default;

    std::string name() const {
        switch (kind) {
            case FieldKind::Rationals: return "Q";
            case FieldKind::Prime: return "F" + std::to_string(p);
            case FieldKind::QuadExt: return "Q(sqrt" + std::to_string(d) + ")";
        }
        return "?";
    }
};

// One representation for all three kinds; which members are live is decided
// by the owning Field. Scalars are plain data, all arithmetic goes through Field.
struct Scalar {
    BigRat a;                // rational value / rational part of a + b*sqrt(d)
    BigRat b;                // sqrt(d) coefficient
    std::uint64_t res = 0;   // residue mod p
};

class Field {
public:
    Field() : ctx_(FieldContext::rationals()) {}
    explicit Field(FieldContext ctx) : ctx_(ctx) {}

    const FieldContext& context() const { return ctx_; }
    FieldKind kind() const { return ctx_.kind; }
    std::uint32_t characteristic() const { return ctx_.kind == FieldKind::Prime ? ctx_.p : 0; }

    Scalar zero() const { return Scalar{}; }

    Scalar one() const {
        Scalar s;
        if (ctx_.kind == FieldKind::Prime) s.res = 1 % ctx_.p;
        else s.a = 1;
        return s;
    }

    Scalar from_int(long long v) const {
        if (ctx_.kind == FieldKind::Prime) {
            long long m = v % static_cast<long long>(ctx_.p);
            if (m < 0) m += ctx_.p;
            Scalar s;
            s.res = static_cast<std::uint64_t>(m);
            return s;
        }
        Scalar s;
        s.a = v;
        return s;
    }

    Scalar from_rational(const BigRat& r) const {
        if (ctx_.kind == FieldKind::Prime) {
            std::uint64_t den = mod_of(denominator(r));
            if (den == 0)
                throw Error("rational " + detail::rational_str(r) + " has no image in F" + std::to_string(ctx_.p));
            Scalar s;
            s.res = mulmod(mod_of(numerator(r)), invmod(den));
            return s;
        }
        Scalar s;
        s.a = r;
        return s;
    }

    // the generator sqrt(d) of a quadratic extension
    Scalar radical() const {
        if (ctx_.kind != FieldKind::QuadExt) throw Error("radical() outside a quadratic extension");
        Scalar s;
        s.b = 1;
        return s;
    }

    bool is_zero(const Scalar& x) const {
        if (ctx_.kind == FieldKind::Prime) return x.res == 0;
        if (ctx_.kind == FieldKind::QuadExt) return x.a == 0 && x.b == 0;
        return x.a == 0;
    }

    bool equal(const Scalar& x, const Scalar& y) const {
        if (ctx_.kind == FieldKind::Prime) return x.res == y.res;
        if (ctx_.kind == FieldKind::QuadExt) return x.a == y.a && x.b == y.b;
        return x.a == y.a;
    }

    Scalar add(const Scalar& x, const Scalar& y) const {
        Scalar s;
        switch (ctx_.kind) {
            case FieldKind::Prime: s.res = addmod(x.res, y.res); break;
            case FieldKind::QuadExt: s.a = x.a + y.a; s.b = x.b + y.b; break;
            case FieldKind::Rationals: s.a = x.a + y.a; break;
        }
        return s;
    }

    Scalar sub(const Scalar& x, const Scalar& y) const {
        Scalar s;
        switch (ctx_.kind) {
            case FieldKind::Prime: s.res = addmod(x.res, y.res == 0 ? 0 : ctx_.p - y.res); break;
            case FieldKind::QuadExt: s.a = x.a - y.a; s.b = x.b - y.b; break;
            case FieldKind::Rationals: s.a = x.a - y.a; break;
        }
        return s;
    }

    Scalar neg(const Scalar& x) const {
        Scalar s;
        switch (ctx_.kind) {
            case FieldKind::Prime: s.res = x.res == 0 ? 0 : ctx_.p - x.res; break;
            case FieldKind::QuadExt: s.a = -x.a; s.b = -x.b; break;
            case FieldKind::Rationals: s.a = -x.a; break;
        }
        return s;
    }

    Scalar mul(const Scalar& x, const Scalar& y) const {
        Scalar s;
        switch (ctx_.kind) {
            case FieldKind::Prime: s.res = mulmod(x.res, y.res); break;
            case FieldKind::QuadExt:
                s.a = x.a * y.a + BigRat(ctx_.d) * x.b * y.b;
                s.b = x.a * y.b + x.b * y.a;
                break;
            case FieldKind::Rationals: s.a = x.a * y.a; break;
        }
        return s;
    }

    Scalar inv(const Scalar& x) const {
        if (is_zero(x)) throw Error("division by zero in " + ctx_.name());
        Scalar s;
        switch (ctx_.kind) {
            case FieldKind::Prime: s.res = invmod(x.res); break;
            case FieldKind::QuadExt: {
                // (a + b r)^-1 = (a - b r) / (a^2 - d b^2); the norm is nonzero
                // because d is not a perfect square
                BigRat norm = x.a * x.a - BigRat(ctx_.d) * x.b * x.b;
                s.a = x.a / norm;
                s.b = -x.b / norm;
                break;
            }
            case FieldKind::Rationals: s.a = 1 / x.a; break;
        }
        return s;
    }

    Scalar div(const Scalar& x, const Scalar& y) const { return mul(x, inv(y)); }

    std::string str(const Scalar& x) const {
        switch (ctx_.kind) {
            case FieldKind::Prime: return std::to_string(x.res);
            case FieldKind::Rationals: return detail::rational_str(x.a);
            case FieldKind::QuadExt: {
                if (x.b == 0) return detail::rational_str(x.a);
                std::string out = detail::rational_str(x.a);
                out += (x.b > 0) ? '+' : '-';
                out += detail::rational_str(abs(x.b));
                out += "*r";
                return out;
            }
        }
        return "?";
    }

    // Text syntax: rationals "p/q" | "p"; quadratic "a", "a+b*r", "a-b*r";
    // prime fields accept any integer and store the canonical residue.
    Scalar parse(const std::string& text) const {
        switch (ctx_.kind) {
            case FieldKind::Prime: {
                std::size_t pos = 0;
                BigInt v;
                if (!detail::scan_int(text, pos, v) || pos != text.size())
                    throw Error("malformed F" + std::to_string(ctx_.p) + " element '" + text + "'");
                Scalar s;
                s.res = mod_of(v);
                return s;
            }
            case FieldKind::Rationals: {
                Scalar s;
                s.a = detail::parse_rational(text);
                return s;
            }
            case FieldKind::QuadExt: {
                std::size_t pos = 0;
                Scalar s;
                if (!detail::scan_rational(text, pos, s.a))
                    throw Error("malformed " + ctx_.name() + " element '" + text + "'");
                if (pos == text.size()) return s;
                char sign = text[pos];
                if (sign != '+' && sign != '-')
                    throw Error("malformed " + ctx_.name() + " element '" + text + "'");
                ++pos;
                BigRat mag;
                if (!detail::scan_rational(text, pos, mag) || mag < 0 ||
                    pos + 2 != text.size() || text[pos] != '*' || text[pos + 1] != 'r')
                    throw Error("malformed " + ctx_.name() + " element '" + text + "'");
                s.b = (sign == '-') ? -mag : mag;
                return s;
            }
        }
        throw Error("unreachable");
    }

private:
    FieldContext ctx_;

    std::uint64_t addmod(std::uint64_t x, std::uint64_t y) const {
        std::uint64_t s = x + y;
        return s >= ctx_.p ? s - ctx_.p : s;
    }

    std::uint64_t mulmod(std::uint64_t x, std::uint64_t y) const {
        return (x * y) % ctx_.p;  // p < 2^31 keeps the product inside 64 bits
    }

    std::uint64_t mod_of(const BigInt& v) const {
        BigInt m = v % ctx_.p;
        if (m < 0) m += ctx_.p;
        return m.convert_to<std::uint64_t>();
    }

    std::uint64_t invmod(std::uint64_t x) const {
        std::int64_t t = 0, nt = 1;
        std::int64_t r = ctx_.p, nr = static_cast<std::int64_t>(x);
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (r != 1) throw Error("not invertible mod " + std::to_string(ctx_.p));
        if (t < 0) t += ctx_.p;
        return static_cast<std::uint64_t>(t);
    }
};

}  // namespace arrcover
