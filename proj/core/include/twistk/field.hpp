#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace twistk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Malformed input data: bad dimensions, inhomogeneous relations, mismatched fields.
struct StructuralError : Error {
    using Error::Error;
};
// Degree bound exceeded.
struct BoundError : Error {
    using Error::Error;
};
// Documented operation precondition violated.
struct PreconditionError : Error {
    using Error::Error;
};
// A consistency assertion that should hold by theorem failed; indicates a bug
// or corrupted input rather than a user error.
struct InternalCheckError : Error {
    using Error::Error;
};

bool is_prime_u64(uint64_t n);

// Coefficient field: exact rationals or a prime field with word-sized modulus.
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    uint64_t p = 0;

    static FieldSpec Q() { return FieldSpec{Kind::rationals, 0}; }
    static FieldSpec Fp(uint64_t p);

    bool is_rational() const { return kind == Kind::rationals; }
    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string str() const;                       // "Q" or "Fp:101"
    static FieldSpec parse(const std::string& s);  // inverse of str()
};

// An exact field element. Rationals are arbitrary-precision and always kept in
// lowest terms with positive denominator; prime-field elements are residues in
// [0, p).
class Scalar {
  public:
    Scalar() : v_(mpq_class(0)) {}

    static Scalar zero(const FieldSpec& f) { return from_int(f, 0); }
    static Scalar one(const FieldSpec& f) { return from_int(f, 1); }
    static Scalar from_int(const FieldSpec& f, long long n);
    static Scalar from_mpq(mpq_class q);
    static Scalar residue(uint64_t v, uint64_t p);
    // Parses "7", "-3/4"; over Fp the integer is reduced mod p.
    static std::optional<Scalar> parse(const FieldSpec& f, const std::string& s);

    FieldSpec field() const;
    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar inv() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

    const mpq_class& rat() const;
    uint64_t res() const;

  private:
    struct Fp {
        uint64_t v;
        uint64_t p;
    };
    std::variant<mpq_class, Fp> v_;

    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(Fp f) : v_(f) {}
};

// Square root in the field if one exists (rational: exact; Fp: Tonelli-Shanks).
std::optional<Scalar> field_sqrt(const Scalar& a);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod_u64(uint64_t a, uint64_t p);

}  // namespace twistk
