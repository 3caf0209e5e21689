#include "posetbraid/scalar.hpp"

#include <charconv>

namespace pb {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (a * b) % p;   // a, b < p < 2^31, so the product fits in 64 bits
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e > 0) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

// Extended Euclid; a must be a unit mod p.
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt; nt = tmp;
        tmp = r - q * nr;
        r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("Scalar: residue is not a unit");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace

Field Field::prime(std::uint32_t p) {
    if (p >= (1u << 31)) throw std::invalid_argument("Field: modulus too large");
    if (!is_prime_u32(p)) throw std::invalid_argument("Field: modulus is not prime");
    return Field(p);
}

std::uint32_t Field::modulus() const {
    if (p_ == 0) throw std::logic_error("Field: rationals have no modulus");
    return p_;
}

std::string Field::name() const {
    return p_ == 0 ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

Field Field::parse(std::string_view text) {
    if (text == "Q") return rationals();
    if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
        std::uint32_t p = 0;
        auto body = text.substr(3, text.size() - 4);
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
        if (ec == std::errc() && ptr == body.data() + body.size()) return prime(p);
    }
    throw std::invalid_argument("Field: cannot parse '" + std::string(text) + "'");
}

Scalar Scalar::from_int(const Field& f, long v) {
    if (f.is_rational()) return Scalar(f, mpq_class(v), 0);
    std::uint64_t p = f.modulus();
    std::int64_t r = static_cast<std::int64_t>(v) % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return Scalar(f, mpq_class(), static_cast<std::uint64_t>(r));
}

Scalar Scalar::rational(long n, long d) {
    if (d == 0) throw std::invalid_argument("Scalar: zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(Field::rationals(), std::move(q), 0);
}

Scalar Scalar::residue(const Field& f, std::uint64_t v) {
    if (!f.is_prime()) throw std::invalid_argument("Scalar: residue needs a prime field");
    return Scalar(f, mpq_class(), v % f.modulus());
}

void Scalar::require_same_field(const Scalar& o) const {
    if (f_ != o.f_) throw std::invalid_argument("Scalar: mixed fields");
}

bool Scalar::is_zero() const {
    return f_.is_rational() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
    return f_.is_rational() ? q_ == 1 : r_ == 1 % f_.modulus();
}

bool Scalar::operator==(const Scalar& o) const {
    if (f_ != o.f_) return false;
    return f_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(o);
    if (f_.is_rational()) return Scalar(f_, q_ + o.q_, 0);
    std::uint64_t p = f_.modulus();
    std::uint64_t s = r_ + o.r_;
    if (s >= p) s -= p;
    return Scalar(f_, mpq_class(), s);
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_field(o);
    if (f_.is_rational()) return Scalar(f_, q_ - o.q_, 0);
    std::uint64_t p = f_.modulus();
    std::uint64_t s = r_ >= o.r_ ? r_ - o.r_ : r_ + p - o.r_;
    return Scalar(f_, mpq_class(), s);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(o);
    if (f_.is_rational()) return Scalar(f_, q_ * o.q_, 0);
    return Scalar(f_, mpq_class(), mod_mul(r_, o.r_, f_.modulus()));
}

Scalar Scalar::operator/(const Scalar& o) const {
    return *this * o.inverse();
}

Scalar Scalar::operator-() const {
    if (f_.is_rational()) return Scalar(f_, -q_, 0);
    return Scalar(f_, mpq_class(), r_ == 0 ? 0 : f_.modulus() - r_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
    if (f_.is_rational()) return Scalar(f_, 1 / q_, 0);
    return Scalar(f_, mpq_class(), mod_inv(r_, f_.modulus()));
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r = one(f_), b = *this;
    unsigned long exp = static_cast<unsigned long>(e);
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

std::string Scalar::str() const {
    if (f_.is_rational()) {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }
    return std::to_string(r_) + " mod " + std::to_string(f_.modulus());
}

Scalar Scalar::parse(const Field& f, std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("Scalar: empty text");
    if (f.is_rational()) {
        try {
            mpq_class q{std::string(text)};
            if (q.get_den() == 0) throw std::invalid_argument("");
            q.canonicalize();
            return Scalar(f, std::move(q), 0);
        } catch (const std::exception&) {
            throw std::invalid_argument("Scalar: cannot parse rational '" + std::string(text) + "'");
        }
    }
    // "k" or "k mod p"; when present, p must match the field.
    std::string s(text);
    auto pos = s.find(" mod ");
    if (pos != std::string::npos) {
        std::string mod = std::string(trim(std::string_view(s).substr(pos + 5)));
        if (mod != std::to_string(f.modulus()))
            throw std::invalid_argument("Scalar: modulus mismatch in '" + s + "'");
        s = std::string(trim(std::string_view(s).substr(0, pos)));
    }
    try {
        mpz_class k(s);
        mpz_class p(f.modulus());
        mpz_class r = ((k % p) + p) % p;
        return Scalar(f, mpq_class(), r.get_ui());
    } catch (const std::exception&) {
        throw std::invalid_argument("Scalar: cannot parse residue '" + std::string(text) + "'");
    }
}

const mpq_class& Scalar::rational_value() const {
    if (!f_.is_rational()) throw std::logic_error("Scalar: not a rational value");
    return q_;
}

std::uint64_t Scalar::residue_value() const {
    if (!f_.is_prime()) throw std::logic_error("Scalar: not a residue value");
    return r_;
}

bool Scalar::sort_before(const Scalar& o) const {
    if (f_.is_rational() != o.f_.is_rational())
        return f_.is_rational();
    if (f_.is_rational()) return q_ < o.q_;
    if (f_.modulus() != o.f_.modulus()) return f_.modulus() < o.f_.modulus();
    return r_ < o.r_;
}

std::optional<Scalar> nth_root(const Scalar& a, unsigned n) {
    if (n == 0) throw std::invalid_argument("nth_root: n must be positive");
    const Field& f = a.field();
    if (n == 1) return a;
    if (f.is_rational()) {
        const mpq_class& q = a.rational_value();
        mpz_class num = q.get_num(), den = q.get_den();
        bool neg = num < 0;
        if (neg) {
            if (n % 2 == 0) return std::nullopt;
            num = -num;
        }
        mpz_class rn, rd;
        if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return std::nullopt;
        if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
        if (neg) rn = -rn;
        mpq_class res(rn, rd);
        res.canonicalize();
        return Scalar::parse(f, res.get_str());
    }
    for (std::uint64_t x = 0; x < f.modulus(); ++x) {
        Scalar c = Scalar::residue(f, x);
        if (c.pow(static_cast<long>(n)) == a) return c;
    }
    return std::nullopt;
}

std::optional<Scalar> primitive_root_of_unity(const Field& f, unsigned n) {
    if (n == 0) throw std::invalid_argument("primitive_root_of_unity: n must be positive");
    if (n == 1) return Scalar::one(f);
    if (f.is_rational()) {
        if (n == 2) return Scalar::from_int(f, -1);
        return std::nullopt;
    }
    std::uint64_t p = f.modulus();
    if ((p - 1) % n != 0) return std::nullopt;
    // Find a generator of GF(p)^x, then take the (p-1)/n power.
    auto fs = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool generates = true;
        for (auto q : fs) {
            if (mod_pow(g, (p - 1) / q, p) == 1) { generates = false; break; }
        }
        if (generates) {
            return Scalar::residue(f, mod_pow(g, (p - 1) / n, p));
        }
    }
    return std::nullopt;   // p == 2 falls through only when n > 1, handled above
}

Scalar ScalarRng::uniform(const Field& f) {
    if (f.is_rational()) {
        std::uniform_int_distribution<long> num(-100, 100);
        std::uniform_int_distribution<long> den(1, 100);
        return Scalar::rational(num(eng_), den(eng_));
    }
    std::uniform_int_distribution<std::uint64_t> d(0, f.modulus() - 1);
    return Scalar::residue(f, d(eng_));
}

Scalar ScalarRng::nonzero(const Field& f) {
    for (;;) {
        Scalar s = uniform(f);
        if (!s.is_zero()) return s;
    }
}

Scalar ScalarRng::sign(const Field& f) {
    std::uniform_int_distribution<int> d(0, 1);
    return Scalar::from_int(f, d(eng_) == 0 ? 1 : -1);
}

std::uint64_t ScalarRng::below(std::uint64_t bound) {
    std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
    return d(eng_);
}

} // namespace pb
