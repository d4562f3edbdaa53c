#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hht {

enum class FieldKind { rationals, prime, rational_function, cyclotomic };

/// Description of a coefficient field.
///
/// `p` is the characteristic for prime fields. A cyclotomic field with
/// `p > 0` is F_p[q]/Phi_r, which must be a field. `q` optionally assigns a
/// value to the symbol q for rationals and prime fields.
struct FieldSpec {
    FieldKind kind = FieldKind::rationals;
    std::int64_t p = 0;
    int r = 0;
    std::optional<std::string> q;

    bool operator==(const FieldSpec&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Rational function in q: numerator over Q, denominator a primitive
/// integer polynomial with positive leading coefficient, coprime to the
/// numerator.
struct RatFun {
    std::vector<mpq_class> num;
    std::vector<mpz_class> den;
};

class Scalar {
public:
    Scalar() = default;

    const FieldPtr& field() const { return field_; }
    bool valid() const { return field_ != nullptr; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& b) const;
    Scalar operator-(const Scalar& b) const;
    Scalar operator*(const Scalar& b) const;
    Scalar operator/(const Scalar& b) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    Scalar inverse() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& b) const;

    /// Canonical text form; parses back to the same value.
    std::string str() const;

private:
    friend class Field;
    using Rep = std::variant<mpq_class, std::int64_t, RatFun, std::vector<mpq_class>, std::vector<std::int64_t>>;
    Scalar(FieldPtr f, Rep rep) : field_(std::move(f)), rep_(std::move(rep)) {}

    FieldPtr field_;
    Rep rep_;
};

class Field : public std::enable_shared_from_this<Field> {
public:
    /// Validates the spec and builds the field. Throws std::invalid_argument.
    static FieldPtr make(const FieldSpec& spec);
    static FieldPtr rationals() { return make({}); }
    static FieldPtr prime(std::int64_t p) { return make({FieldKind::prime, p, 0, std::nullopt}); }
    static FieldPtr rational_functions() { return make({FieldKind::rational_function, 0, 0, std::nullopt}); }
    static FieldPtr cyclotomic(int r, std::int64_t p = 0) { return make({FieldKind::cyclotomic, p, r, std::nullopt}); }

    const FieldSpec& spec() const { return spec_; }
    std::int64_t characteristic() const;
    std::string describe() const;
    bool same(const Field& other) const { return this == &other || spec_ == other.spec_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long v) const;
    Scalar from_rational(const mpq_class& v) const;

    bool has_q() const;
    /// The distinguished element q. Throws if the field has none.
    Scalar q() const;

    /// Parses a scalar literal: integers, fractions, and polynomial
    /// expressions in q.
    Scalar parse(const std::string& text) const;

    /// Multiplicative order of a nonzero scalar, or nothing when infinite.
    std::optional<long> order(const Scalar& s) const;

    // Arithmetic on representations; used by Scalar.
    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    bool is_zero(const Scalar& a) const;
    bool equal(const Scalar& a, const Scalar& b) const;
    std::string str(const Scalar& a) const;

private:
    explicit Field(FieldSpec spec) : spec_(std::move(spec)) {}
    Scalar wrap(Scalar::Rep rep) const { return Scalar(shared_from_this(), std::move(rep)); }

    FieldSpec spec_;
    std::vector<mpq_class> qmod_;     // cyclotomic modulus over Q
    std::vector<std::int64_t> pmod_;  // cyclotomic modulus over F_p
    std::optional<Scalar::Rep> qvalue_;
};

/// Least n >= 1 with s^n = 1, or nothing when s has infinite order.
std::optional<long> scalar_order(const Scalar& s);

/// Bicharacter Z^m x Z^n -> k^x given by a matrix of invertible scalars.
class Twist {
public:
    Twist() = default;
    Twist(FieldPtr field, int rows, int cols, std::vector<Scalar> entries);
    static Twist trivial(FieldPtr field, int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }
    const Scalar& entry(int u, int v) const { return entries_[u * cols_ + v]; }

    /// prod_{u,v} t_uv^(a_u b_v)
    Scalar eval(const std::vector<int>& a, const std::vector<int>& b) const;
    bool is_trivial() const;

private:
    FieldPtr field_;
    int rows_ = 0, cols_ = 0;
    std::vector<Scalar> entries_;
    struct Cache {
        std::mutex mu;
        std::map<std::pair<int, long>, Scalar> powers;
    };
    std::shared_ptr<Cache> cache_;
};

inline Scalar twist_eval(const Twist& t, const std::vector<int>& a, const std::vector<int>& b) { return t.eval(a, b); }

}  // namespace hht
