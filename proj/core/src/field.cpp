#include "twistk/field.hpp"

namespace twistk {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod_u64(uint64_t a, uint64_t p) {
    // extended Euclid; p prime, a != 0 mod p
    a %= p;
    if (a == 0) throw StructuralError("division by zero in prime field");
    int64_t t = 0, newt = 1;
    uint64_t r = p, newr = a;
    while (newr != 0) {
        uint64_t q = r / newr;
        int64_t tmp_t = t - static_cast<int64_t>(q) * newt;
        t = newt;
        newt = tmp_t;
        uint64_t tmp_r = r - q * newr;
        r = newr;
        newr = tmp_r;
    }
    if (r != 1) throw StructuralError("modulus not prime in invmod");
    return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(p)) : static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

FieldSpec FieldSpec::Fp(uint64_t p) {
    if (p >= (1ull << 62)) throw StructuralError("prime field modulus too large (word-sized p required)");
    if (!is_prime_u64(p)) throw StructuralError("prime field modulus is not prime: " + std::to_string(p));
    return FieldSpec{Kind::prime, p};
}

std::string FieldSpec::str() const {
    return is_rational() ? "Q" : "Fp:" + std::to_string(p);
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "Q") return Q();
    if (s.rfind("Fp:", 0) == 0) {
        uint64_t p = 0;
        try {
            p = std::stoull(s.substr(3));
        } catch (const std::exception&) {
            throw StructuralError("bad field spec: " + s);
        }
        return Fp(p);
    }
    throw StructuralError("bad field spec: " + s + " (expected Q or Fp:<p>)");
}

Scalar Scalar::from_int(const FieldSpec& f, long long n) {
    if (f.is_rational()) return Scalar(mpq_class(static_cast<long>(n)));
    long long r = n % static_cast<long long>(f.p);
    if (r < 0) r += static_cast<long long>(f.p);
    return Scalar(Fp{static_cast<uint64_t>(r), f.p});
}

Scalar Scalar::from_mpq(mpq_class q) {
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::residue(uint64_t v, uint64_t p) { return Scalar(Fp{v % p, p}); }

std::optional<Scalar> Scalar::parse(const FieldSpec& f, const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::string num = s, den = "1";
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    auto ok_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (!ok_int(num) || !ok_int(den)) return std::nullopt;
    mpq_class q;
    try {
        q = mpq_class(num + "/" + den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    if (f.is_rational()) return Scalar(std::move(q));
    // reduce a rational into Fp: n * d^{-1} mod p
    mpz_class n = q.get_num(), d = q.get_den();
    mpz_class pz(std::to_string(f.p));
    mpz_class nr = n % pz, dr = d % pz;
    if (nr < 0) nr += pz;
    if (dr == 0) return std::nullopt;
    uint64_t nv = mpz_get_ui(nr.get_mpz_t());
    uint64_t dv = mpz_get_ui(dr.get_mpz_t());
    return Scalar(Fp{mulmod_u64(nv, invmod_u64(dv, f.p), f.p), f.p});
}

FieldSpec Scalar::field() const {
    if (std::holds_alternative<mpq_class>(v_)) return FieldSpec::Q();
    return FieldSpec{FieldSpec::Kind::prime, std::get<Fp>(v_).p};
}

bool Scalar::is_zero() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q) == 0;
    return std::get<Fp>(v_).v == 0;
}

bool Scalar::is_one() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q == 1;
    return std::get<Fp>(v_).v == 1 % std::get<Fp>(v_).p;
}

namespace {
void check_same(const Scalar& a, const Scalar& b) {
    if (a.field() != b.field())
        throw StructuralError("scalar field mismatch: " + a.field().str() + " vs " + b.field().str());
}
}  // namespace

Scalar Scalar::operator-() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(-*q));
    auto f = std::get<Fp>(v_);
    return Scalar(Fp{f.v == 0 ? 0 : f.p - f.v, f.p});
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r = *this;
    r += o;
    return r;
}
Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r = *this;
    r -= o;
    return r;
}
Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r = *this;
    r *= o;
    return r;
}
Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(*this, o);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        *q += std::get<mpq_class>(o.v_);
    } else {
        auto& f = std::get<Fp>(v_);
        uint64_t s = f.v + std::get<Fp>(o.v_).v;
        f.v = s >= f.p ? s - f.p : s;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(*this, o);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        *q -= std::get<mpq_class>(o.v_);
    } else {
        auto& f = std::get<Fp>(v_);
        uint64_t ov = std::get<Fp>(o.v_).v;
        f.v = f.v >= ov ? f.v - ov : f.v + f.p - ov;
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(*this, o);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        *q *= std::get<mpq_class>(o.v_);
    } else {
        auto& f = std::get<Fp>(v_);
        f.v = mulmod_u64(f.v, std::get<Fp>(o.v_).v, f.p);
    }
    return *this;
}

Scalar Scalar::inv() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        if (sgn(*q) == 0) throw StructuralError("division by zero");
        return Scalar(mpq_class(1 / *q));
    }
    auto f = std::get<Fp>(v_);
    return Scalar(Fp{invmod_u64(f.v, f.p), f.p});
}

bool Scalar::operator==(const Scalar& o) const {
    if (field() != o.field()) return false;
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q == std::get<mpq_class>(o.v_);
    return std::get<Fp>(v_).v == std::get<Fp>(o.v_).v;
}

std::string Scalar::str() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
    return std::to_string(std::get<Fp>(v_).v);
}

const mpq_class& Scalar::rat() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q;
    throw StructuralError("not a rational scalar");
}

uint64_t Scalar::res() const {
    if (auto* f = std::get_if<Fp>(&v_)) return f->v;
    throw StructuralError("not a prime-field scalar");
}

std::optional<Scalar> field_sqrt(const Scalar& a) {
    if (a.field().is_rational()) {
        const mpq_class& q = a.rat();
        if (sgn(q) < 0) return std::nullopt;
        if (sgn(q) == 0) return Scalar::from_int(FieldSpec::Q(), 0);
        mpz_class n = q.get_num(), d = q.get_den();
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return Scalar::from_mpq(mpq_class(rn) / mpq_class(rd));
    }
    uint64_t p = a.field().p;
    uint64_t n = a.res();
    if (p == 2 || n == 0) return Scalar::residue(n, p);
    if (powmod_u64(n, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return Scalar::residue(powmod_u64(n, (p + 1) / 4, p), p);
    // Tonelli-Shanks
    uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    uint64_t z = 2;
    while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
    uint64_t m = s, c = powmod_u64(z, q, p), t = powmod_u64(n, q, p), r = powmod_u64(n, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod_u64(tt, tt, p);
            ++i;
        }
        uint64_t b = powmod_u64(c, 1ull << (m - i - 1), p);
        m = i;
        c = mulmod_u64(b, b, p);
        t = mulmod_u64(t, c, p);
        r = mulmod_u64(r, b, p);
    }
    return Scalar::residue(r, p);
}

}  // namespace twistk
