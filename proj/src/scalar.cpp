#include "hhtwist/scalar.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hhtwist/expr.hpp"
#include "hhtwist/poly.hpp"

namespace hht {

using poly::FpOps;
using poly::QOps;
using QPoly = std::vector<mpq_class>;
using FpPoly = std::vector<std::int64_t>;

namespace {

QPoly to_q(const std::vector<mpz_class>& a) { return QPoly(a.begin(), a.end()); }

bool is_monomial(const QPoly& a, std::size_t& k) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0) {
            ++nonzero;
            k = i;
        }
    return nonzero == 1;
}

RatFun normalize(QPoly num, QPoly den) {
    QOps ops;
    poly::trim(ops, num);
    poly::trim(ops, den);
    if (den.empty()) throw std::domain_error("division by zero");
    if (num.empty()) return RatFun{{}, {1}};
    std::size_t k = 0;
    if (is_monomial(den, k)) {
        std::size_t v = 0;
        while (sgn(num[v]) == 0) ++v;
        std::size_t m = std::min(k, v);
        mpq_class c = den[k];
        QPoly n2(num.begin() + static_cast<long>(m), num.end());
        for (auto& x : n2) x /= c;
        std::vector<mpz_class> d2(k - m + 1, 0);
        d2.back() = 1;
        return RatFun{std::move(n2), std::move(d2)};
    }
    auto g = poly::gcd(ops, num, den);
    if (g.size() > 1) {
        num = poly::divmod(ops, num, g).first;
        den = poly::divmod(ops, den, g).first;
    }
    mpz_class lcm = 1;
    for (auto& c : den) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_class content = 0;
    for (auto& c : den) {
        mpz_class n = c.get_num() * (lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
    }
    mpq_class factor(lcm, content);
    factor.canonicalize();
    if (sgn(den.back()) < 0) factor = -factor;
    std::vector<mpz_class> d2;
    for (auto& c : den) {
        mpq_class s = c * factor;
        d2.push_back(s.get_num());
    }
    for (auto& c : num) c *= factor;
    return RatFun{std::move(num), std::move(d2)};
}

template <class C>
std::string coeff_str(const C& c) {
    if constexpr (std::is_same_v<C, mpq_class>)
        return c.get_str();
    else if constexpr (std::is_same_v<C, mpz_class>)
        return c.get_str();
    else
        return std::to_string(c);
}

template <class C>
bool is_unit_coeff(const C& c, int sign) {
    if constexpr (std::is_same_v<C, std::int64_t>)
        return sign > 0 && c == 1;
    else
        return c == sign;
}

template <class C>
std::size_t count_terms(const std::vector<C>& a) {
    std::size_t n = 0;
    for (auto& c : a)
        if (c != 0) ++n;
    return n;
}

/// Descending-degree rendering such as "q^2-1/2*q+3".
template <class C>
std::string poly_str(const std::vector<C>& a) {
    std::string out;
    for (std::size_t i = a.size(); i-- > 0;) {
        const C& c = a[i];
        if (c == 0) continue;
        std::string term;
        std::string mono = i == 0 ? "" : (i == 1 ? "q" : "q^" + std::to_string(i));
        if (i == 0)
            term = coeff_str(c);
        else if (is_unit_coeff(c, 1))
            term = mono;
        else if (is_unit_coeff(c, -1))
            term = "-" + mono;
        else
            term = coeff_str(c) + "*" + mono;
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace

// ---------------------------------------------------------------- Field

FieldPtr Field::make(const FieldSpec& spec) {
    std::shared_ptr<Field> f(new Field(spec));
    switch (spec.kind) {
    case FieldKind::rationals:
        break;
    case FieldKind::prime:
        if (!poly::is_prime(spec.p) || spec.p >= (std::int64_t{1} << 31))
            throw std::invalid_argument("prime field needs a prime p < 2^31, got " + std::to_string(spec.p));
        break;
    case FieldKind::rational_function:
        if (spec.q) throw std::invalid_argument("rational-function field fixes q as its generator");
        break;
    case FieldKind::cyclotomic: {
        if (spec.r < 1) throw std::invalid_argument("cyclotomic order r must be >= 1");
        if (spec.q) throw std::invalid_argument("cyclotomic field fixes q as its generator");
        auto phi = poly::cyclotomic(spec.r);
        if (spec.p == 0) {
            f->qmod_ = to_q(phi);
        } else {
            if (!poly::is_prime(spec.p) || spec.p >= (std::int64_t{1} << 31))
                throw std::invalid_argument("cyclotomic field over F_p needs a prime p < 2^31");
            if (spec.r % spec.p == 0) throw std::invalid_argument("cyclotomic field over F_p needs p not dividing r");
            long ord = 1;
            std::int64_t x = spec.p % spec.r;
            while (x % spec.r != 1 % spec.r) {
                x = (x * spec.p) % spec.r;
                ++ord;
            }
            if (ord != poly::euler_phi(spec.r))
                throw std::invalid_argument("Phi_" + std::to_string(spec.r) + " is reducible mod " + std::to_string(spec.p));
            FpOps ops{spec.p};
            for (auto& c : phi) f->pmod_.push_back(ops.from_int(c.get_si()));
        }
        break;
    }
    }
    if (spec.q) {
        if (spec.kind != FieldKind::rationals && spec.kind != FieldKind::prime)
            throw std::invalid_argument("a q value applies only to rationals or prime fields");
        Scalar v = f->parse(*spec.q);
        if (v.is_zero()) throw std::invalid_argument("q must be nonzero");
        f->qvalue_ = v.rep_;
    }
    return f;
}

std::int64_t Field::characteristic() const {
    if (spec_.kind == FieldKind::prime || spec_.kind == FieldKind::cyclotomic) return spec_.p;
    return 0;
}

std::string Field::describe() const {
    std::string out;
    switch (spec_.kind) {
    case FieldKind::rationals: out = "Q"; break;
    case FieldKind::prime: out = "F_" + std::to_string(spec_.p); break;
    case FieldKind::rational_function: out = "Q(q)"; break;
    case FieldKind::cyclotomic:
        out = (spec_.p ? "F_" + std::to_string(spec_.p) : std::string("Q")) + "[q]/Phi_" + std::to_string(spec_.r);
        break;
    }
    if (spec_.q) out += " with q=" + *spec_.q;
    return out;
}

Scalar Field::from_int(long v) const {
    switch (spec_.kind) {
    case FieldKind::rationals: return wrap(mpq_class(v));
    case FieldKind::prime: return wrap(FpOps{spec_.p}.from_int(v));
    case FieldKind::rational_function:
        return wrap(v == 0 ? RatFun{{}, {1}} : RatFun{{mpq_class(v)}, {1}});
    case FieldKind::cyclotomic:
        if (spec_.p) {
            auto c = FpOps{spec_.p}.from_int(v);
            return wrap(c ? FpPoly{c} : FpPoly{});
        }
        return wrap(v ? QPoly{mpq_class(v)} : QPoly{});
    }
    throw std::logic_error("unreachable");
}

Scalar Field::from_rational(const mpq_class& v) const {
    switch (spec_.kind) {
    case FieldKind::rationals: return wrap(v);
    case FieldKind::rational_function: return wrap(sgn(v) == 0 ? RatFun{{}, {1}} : RatFun{{v}, {1}});
    case FieldKind::cyclotomic:
        if (!spec_.p) return wrap(sgn(v) == 0 ? QPoly{} : QPoly{v});
        [[fallthrough]];
    case FieldKind::prime: {
        Scalar n = from_int(0), d = from_int(0);
        mpz_class p = spec_.p;
        mpz_class nr = v.get_num() % p, dr = v.get_den() % p;
        n = from_int(nr.get_si());
        d = from_int(dr.get_si());
        return n / d;
    }
    }
    throw std::logic_error("unreachable");
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

bool Field::has_q() const {
    return spec_.kind == FieldKind::rational_function || spec_.kind == FieldKind::cyclotomic || qvalue_.has_value();
}

Scalar Field::q() const {
    switch (spec_.kind) {
    case FieldKind::rational_function: return wrap(RatFun{{0, 1}, {1}});
    case FieldKind::cyclotomic:
        if (spec_.p) {
            FpPoly a{0, 1 % spec_.p};
            return wrap(poly::divmod(FpOps{spec_.p}, a, pmod_).second);
        }
        return wrap(poly::divmod(QOps{}, QPoly{0, 1}, qmod_).second);
    default:
        if (!qvalue_) throw std::invalid_argument("field " + describe() + " has no value for q");
        return wrap(*qvalue_);
    }
}

Scalar Field::parse(const std::string& text) const { return parse_scalar(*this, text); }

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    switch (spec_.kind) {
    case FieldKind::rationals: return wrap(mpq_class(std::get<0>(a.rep_) + std::get<0>(b.rep_)));
    case FieldKind::prime: return wrap(FpOps{spec_.p}.add(std::get<1>(a.rep_), std::get<1>(b.rep_)));
    case FieldKind::rational_function: {
        const auto& x = std::get<2>(a.rep_);
        const auto& y = std::get<2>(b.rep_);
        QOps ops;
        if (x.num.empty()) return b;
        if (y.num.empty()) return a;
        if (x.den == y.den) return wrap(normalize(poly::add(ops, x.num, y.num), to_q(x.den)));
        auto dx = to_q(x.den), dy = to_q(y.den);
        return wrap(normalize(poly::add(ops, poly::mul(ops, x.num, dy), poly::mul(ops, y.num, dx)), poly::mul(ops, dx, dy)));
    }
    case FieldKind::cyclotomic:
        if (spec_.p) return wrap(poly::add(FpOps{spec_.p}, std::get<4>(a.rep_), std::get<4>(b.rep_)));
        return wrap(poly::add(QOps{}, std::get<3>(a.rep_), std::get<3>(b.rep_)));
    }
    throw std::logic_error("unreachable");
}

Scalar Field::neg(const Scalar& a) const {
    switch (spec_.kind) {
    case FieldKind::rationals: return wrap(mpq_class(-std::get<0>(a.rep_)));
    case FieldKind::prime: return wrap(FpOps{spec_.p}.neg(std::get<1>(a.rep_)));
    case FieldKind::rational_function: {
        auto x = std::get<2>(a.rep_);
        for (auto& c : x.num) c = -c;
        return wrap(std::move(x));
    }
    case FieldKind::cyclotomic:
        if (spec_.p) return wrap(poly::neg(FpOps{spec_.p}, std::get<4>(a.rep_)));
        return wrap(poly::neg(QOps{}, std::get<3>(a.rep_)));
    }
    throw std::logic_error("unreachable");
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    switch (spec_.kind) {
    case FieldKind::rationals: return wrap(mpq_class(std::get<0>(a.rep_) * std::get<0>(b.rep_)));
    case FieldKind::prime: return wrap(FpOps{spec_.p}.mul(std::get<1>(a.rep_), std::get<1>(b.rep_)));
    case FieldKind::rational_function: {
        const auto& x = std::get<2>(a.rep_);
        const auto& y = std::get<2>(b.rep_);
        QOps ops;
        return wrap(normalize(poly::mul(ops, x.num, y.num), poly::mul(ops, to_q(x.den), to_q(y.den))));
    }
    case FieldKind::cyclotomic:
        if (spec_.p) {
            FpOps ops{spec_.p};
            return wrap(poly::divmod(ops, poly::mul(ops, std::get<4>(a.rep_), std::get<4>(b.rep_)), pmod_).second);
        }
        return wrap(poly::divmod(QOps{}, poly::mul(QOps{}, std::get<3>(a.rep_), std::get<3>(b.rep_)), qmod_).second);
    }
    throw std::logic_error("unreachable");
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero");
    switch (spec_.kind) {
    case FieldKind::rationals: return wrap(mpq_class(1 / std::get<0>(a.rep_)));
    case FieldKind::prime: return wrap(FpOps{spec_.p}.inv(std::get<1>(a.rep_)));
    case FieldKind::rational_function: {
        const auto& x = std::get<2>(a.rep_);
        return wrap(normalize(to_q(x.den), x.num));
    }
    case FieldKind::cyclotomic:
        if (spec_.p) return wrap(*poly::inverse_mod(FpOps{spec_.p}, std::get<4>(a.rep_), pmod_));
        return wrap(*poly::inverse_mod(QOps{}, std::get<3>(a.rep_), qmod_));
    }
    throw std::logic_error("unreachable");
}

bool Field::is_zero(const Scalar& a) const {
    switch (spec_.kind) {
    case FieldKind::rationals: return sgn(std::get<0>(a.rep_)) == 0;
    case FieldKind::prime: return std::get<1>(a.rep_) == 0;
    case FieldKind::rational_function: return std::get<2>(a.rep_).num.empty();
    case FieldKind::cyclotomic: return spec_.p ? std::get<4>(a.rep_).empty() : std::get<3>(a.rep_).empty();
    }
    return false;
}

bool Field::equal(const Scalar& a, const Scalar& b) const {
    switch (spec_.kind) {
    case FieldKind::rationals: return std::get<0>(a.rep_) == std::get<0>(b.rep_);
    case FieldKind::prime: return std::get<1>(a.rep_) == std::get<1>(b.rep_);
    case FieldKind::rational_function: {
        const auto& x = std::get<2>(a.rep_);
        const auto& y = std::get<2>(b.rep_);
        return x.num == y.num && x.den == y.den;
    }
    case FieldKind::cyclotomic: return spec_.p ? std::get<4>(a.rep_) == std::get<4>(b.rep_) : std::get<3>(a.rep_) == std::get<3>(b.rep_);
    }
    return false;
}

std::string Field::str(const Scalar& a) const {
    switch (spec_.kind) {
    case FieldKind::rationals: return std::get<0>(a.rep_).get_str();
    case FieldKind::prime: return std::to_string(std::get<1>(a.rep_));
    case FieldKind::rational_function: {
        const auto& x = std::get<2>(a.rep_);
        std::string n = poly_str(x.num);
        if (x.den.size() == 1) return n;
        if (count_terms(x.num) > 1) n = "(" + n + ")";
        std::string d = poly_str(x.den);
        bool bare_power = count_terms(x.den) == 1 && x.den.back() == 1;
        if (!bare_power) d = "(" + d + ")";
        return n + "/" + d;
    }
    case FieldKind::cyclotomic: return spec_.p ? poly_str(std::get<4>(a.rep_)) : poly_str(std::get<3>(a.rep_));
    }
    return "";
}

std::optional<long> Field::order(const Scalar& s) const {
    if (s.is_zero()) throw std::domain_error("order of zero");
    Scalar one_ = one();
    auto scan = [&](std::int64_t bound) -> std::optional<long> {
        for (auto d : poly::divisors(bound))
            if (s.pow(d) == one_) return d;
        return std::nullopt;
    };
    switch (spec_.kind) {
    case FieldKind::rationals:
    case FieldKind::rational_function:
        if (s == one_) return 1;
        if (s == -one_) return 2;
        return std::nullopt;
    case FieldKind::prime: return scan(spec_.p - 1);
    case FieldKind::cyclotomic: {
        if (!spec_.p) return scan(2 * static_cast<std::int64_t>(spec_.r));
        std::int64_t size = 1;
        for (int i = 0; i < poly::euler_phi(spec_.r); ++i) {
            if (size > (std::int64_t{1} << 40) / spec_.p) throw std::overflow_error("field too large for order scan");
            size *= spec_.p;
        }
        return scan(size - 1);
    }
    }
    return std::nullopt;
}

std::optional<long> scalar_order(const Scalar& s) {
    if (!s.valid()) throw std::invalid_argument("uninitialized scalar");
    return s.field()->order(s);
}

// ---------------------------------------------------------------- Scalar

namespace {
const Field& common(const Scalar& a, const Scalar& b) {
    if (!a.valid() || !b.valid()) throw std::invalid_argument("uninitialized scalar");
    if (!a.field()->same(*b.field())) throw std::invalid_argument("scalars from different fields");
    return *a.field();
}
const Field& own(const Scalar& a) {
    if (!a.valid()) throw std::invalid_argument("uninitialized scalar");
    return *a.field();
}
}  // namespace

bool Scalar::is_zero() const { return own(*this).is_zero(*this); }
bool Scalar::is_one() const { return *this == own(*this).one(); }
Scalar Scalar::operator+(const Scalar& b) const { return common(*this, b).add(*this, b); }
Scalar Scalar::operator-(const Scalar& b) const { return common(*this, b).sub(*this, b); }
Scalar Scalar::operator*(const Scalar& b) const { return common(*this, b).mul(*this, b); }
Scalar Scalar::operator/(const Scalar& b) const {
    const Field& f = common(*this, b);
    return f.mul(*this, f.inv(b));
}
Scalar Scalar::operator-() const { return own(*this).neg(*this); }
Scalar Scalar::inverse() const { return own(*this).inv(*this); }
bool Scalar::operator==(const Scalar& b) const { return common(*this, b).equal(*this, b); }
std::string Scalar::str() const { return own(*this).str(*this); }

Scalar Scalar::pow(long e) const {
    const Field& f = own(*this);
    Scalar base = e < 0 ? f.inv(*this) : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Scalar acc = f.one();
    while (n) {
        if (n & 1) acc = f.mul(acc, base);
        n >>= 1;
        if (n) base = f.mul(base, base);
    }
    return acc;
}

// ---------------------------------------------------------------- Twist

Twist::Twist(FieldPtr field, int rows, int cols, std::vector<Scalar> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)), cache_(std::make_shared<Cache>()) {
    if (rows < 0 || cols < 0 || static_cast<int>(entries_.size()) != rows * cols)
        throw std::invalid_argument("twist entry count does not match its shape");
    for (auto& e : entries_)
        if (e.is_zero()) throw std::invalid_argument("twist entries must be invertible");
}

Twist Twist::trivial(FieldPtr field, int rows, int cols) {
    std::vector<Scalar> e(static_cast<std::size_t>(rows * cols), field->one());
    return Twist(field, rows, cols, std::move(e));
}

bool Twist::is_trivial() const {
    for (auto& e : entries_)
        if (!e.is_one()) return false;
    return true;
}

Scalar Twist::eval(const std::vector<int>& a, const std::vector<int>& b) const {
    if (static_cast<int>(a.size()) != rows_ || static_cast<int>(b.size()) != cols_)
        throw std::invalid_argument("twist_eval: exponent dimensions do not match the twist");
    Scalar out = field_->one();
    for (int u = 0; u < rows_; ++u)
        for (int v = 0; v < cols_; ++v) {
            long e = static_cast<long>(a[u]) * b[v];
            if (e == 0) continue;
            int idx = u * cols_ + v;
            Scalar p;
            {
                std::lock_guard<std::mutex> lock(cache_->mu);
                auto it = cache_->powers.find({idx, e});
                if (it != cache_->powers.end()) p = it->second;
            }
            if (!p.valid()) {
                p = entries_[idx].pow(e);
                std::lock_guard<std::mutex> lock(cache_->mu);
                cache_->powers.emplace(std::make_pair(idx, e), p);
            }
            out = out * p;
        }
    return out;
}

}  // namespace hht
