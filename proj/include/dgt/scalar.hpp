#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace dgt {

struct FieldMismatch : std::runtime_error {
    FieldMismatch() : std::runtime_error("operands belong to different fields") {}
};

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class FieldKind { Rationals, PrimeField };

/// The coefficient field: Q, or F_p for a word-sized prime p.
struct FieldSpec {
    FieldKind kind = FieldKind::Rationals;
    long p = 0;

    static FieldSpec rationals() { return {FieldKind::Rationals, 0}; }
    static FieldSpec prime(long p) {
        if (p < 2)
            throw std::invalid_argument("field characteristic must be >= 2");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw std::invalid_argument("field characteristic must be prime");
        return {FieldKind::PrimeField, p};
    }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string str() const {
        return kind == FieldKind::Rationals ? std::string("Q") : "F" + std::to_string(p);
    }
};

/// An exact field element.  Rationals are kept canonical by mpq_class;
/// prime-field elements are residues in [0, p).
class Scalar {
public:
    Scalar() = default;
    Scalar(FieldSpec field, long n) : field_(field) {
        if (field_.kind == FieldKind::Rationals) {
            q_ = n;
        } else {
            r_ = n % field_.p;
            if (r_ < 0) r_ += field_.p;
        }
    }

    static Scalar zero(FieldSpec f) { return Scalar(f, 0); }
    static Scalar one(FieldSpec f) { return Scalar(f, 1); }

    static Scalar rational(const mpq_class& q) {
        Scalar s(FieldSpec::rationals(), 0);
        s.q_ = q;
        s.q_.canonicalize();
        return s;
    }

    const FieldSpec& field() const { return field_; }
    bool is_zero() const {
        return field_.kind == FieldKind::Rationals ? q_ == 0 : r_ == 0;
    }
    bool is_one() const {
        return field_.kind == FieldKind::Rationals ? q_ == 1 : r_ == 1;
    }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar s(field_, 0);
        if (field_.kind == FieldKind::Rationals)
            s.q_ = q_ + o.q_;
        else
            s.r_ = (r_ + o.r_) % field_.p;
        return s;
    }
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar operator-() const {
        Scalar s(field_, 0);
        if (field_.kind == FieldKind::Rationals)
            s.q_ = -q_;
        else
            s.r_ = r_ == 0 ? 0 : field_.p - r_;
        return s;
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar s(field_, 0);
        if (field_.kind == FieldKind::Rationals)
            s.q_ = q_ * o.q_;
        else
            s.r_ = mulmod(r_, o.r_, field_.p);
        return s;
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar inv() const {
        if (is_zero()) throw DivisionByZero();
        Scalar s(field_, 0);
        if (field_.kind == FieldKind::Rationals) {
            s.q_ = 1 / q_;
        } else {
            // extended Euclid
            long t = 0, nt = 1, r = field_.p, nr = r_;
            while (nr != 0) {
                long q = r / nr;
                long tmp = t - q * nt; t = nt; nt = tmp;
                tmp = r - q * nr; r = nr; nr = tmp;
            }
            s.r_ = t < 0 ? t + field_.p : t;
        }
        return s;
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const {
        check(o);
        return field_.kind == FieldKind::Rationals ? q_ == o.q_ : r_ == o.r_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical coefficient text: `[-]digits[/digits]`.
    std::string str() const {
        if (field_.kind == FieldKind::Rationals) return q_.get_str();
        return std::to_string(r_);
    }

    /// Parses the coefficient grammar `[-]digits[/digits]`.  Over F_p the
    /// slash form means multiplication by a modular inverse.
    static Scalar parse(const std::string& text, FieldSpec field) {
        std::size_t pos = 0;
        bool negative = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            negative = text[pos] == '-';
            ++pos;
        }
        std::size_t num_start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == num_start) throw ParseError("bad coefficient '" + text + "'");
        std::string num = text.substr(num_start, pos - num_start);
        std::string den = "1";
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            std::size_t den_start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == den_start) throw ParseError("bad coefficient '" + text + "'");
            den = text.substr(den_start, pos - den_start);
        }
        if (pos != text.size()) throw ParseError("bad coefficient '" + text + "'");

        if (field.kind == FieldKind::Rationals) {
            mpq_class q{mpz_class(num), mpz_class(den)};
            if (q.get_den() == 0) throw DivisionByZero();
            q.canonicalize();
            if (negative) q = -q;
            return rational(q);
        }
        Scalar n(field, mpz_class(mpz_class(num) % field.p).get_si());
        Scalar d(field, mpz_class(mpz_class(den) % field.p).get_si());
        Scalar v = n / d;
        return negative ? -v : v;
    }

private:
    void check(const Scalar& o) const {
        if (field_ != o.field_) throw FieldMismatch();
    }
    static long mulmod(long a, long b, long p) {
        return static_cast<long>(
            static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) % p);
    }

    FieldSpec field_;
    mpq_class q_;
    long r_ = 0;
};

}  // namespace dgt
