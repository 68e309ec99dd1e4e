#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace h3cert {

// Thrown when an operation is evaluated outside its mathematical domain
// (log of an interval reaching 0, division by an interval containing 0, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Verdict of a rigorous comparison.  Proven is only ever returned when the
// statement holds for every point of the operand enclosures; anything short
// of that is Undecided.  There is deliberately no "disproven" value: a false
// statement about enclosures is simply one we failed to prove.
enum class CertifiedBool { Proven, Undecided };

inline bool is_proven(CertifiedBool c) { return c == CertifiedBool::Proven; }

// Working precision (bits of significand) used for the endpoints of newly
// created intervals.  53 matches IEEE double; raise it for tighter
// enclosures.  Thread-local, so parallel evaluations do not interfere.
int working_precision();
void set_working_precision(int bits);

// RAII restore of the working precision, for scoped high-precision passes.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    int saved_;
};

// Thin RAII wrapper around mpfr_t.  Interval owns two of these; the rest of
// the library never touches mpfr directly.
class BigFloat {
public:
    BigFloat();                       // working precision, value NaN
    explicit BigFloat(int precision); // explicit precision, value NaN
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    static BigFloat from_double(double v, int precision);

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // decimal rendering with explicit rounding direction, for serialization
    std::string to_string(mpfr_rnd_t rnd, int significant_digits = 0) const;

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

// A closed interval [lo, hi] of extended reals with outward-rounded
// endpoints.  Every operation returns an enclosure of the exact image set:
// op(X) ⊇ { op(x) : x ∈ X }.  All rigor in this library reduces to that
// containment contract plus endpoint comparisons in certify().
class Interval {
public:
    Interval(); // [0, 0]

    // a double is an exact real, so this is the degenerate interval [v, v]
    static Interval point(double v);
    static Interval make(double lo, double hi);
    static Interval from_int(long v);

    // Outward-rounded enclosure of a decimal literal such as "0.91" or
    // "1.22e0".  This is the only correct way to bring a decimal constant
    // into binary arithmetic: Interval::point(0.91) would silently certify
    // statements about a nearby binary number instead.
    static Interval from_decimal(std::string_view text);

    // Endpoints must satisfy lo <= hi and not be NaN; throws otherwise.
    static Interval from_endpoints(BigFloat lo, BigFloat hi);

    const BigFloat& lower() const { return lo_; }
    const BigFloat& upper() const { return hi_; }
    double lower_double() const { return lo_.to_double(MPFR_RNDD); }
    double upper_double() const { return hi_.to_double(MPFR_RNDU); }
    double midpoint() const;
    double width() const; // rounded up

    bool is_finite() const { return lo_.is_finite() && hi_.is_finite(); }
    bool is_point() const { return lo_ == hi_; }
    bool contains(double v) const;
    bool contains(const Interval& other) const; // other ⊆ *this
    bool contains_zero() const;
    bool certainly_positive() const; // every point > 0
    bool certainly_negative() const;
    bool intersects(const Interval& other) const;

    std::string to_string() const; // "[lo, hi]" with outward decimal rendering

private:
    BigFloat lo_, hi_;
};

// --- arithmetic -----------------------------------------------------------

enum class ArithKind { Add, Sub, Mul, Div };

Interval arith(const Interval& a, const Interval& b, ArithKind kind);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b); // throws if 0 ∈ b
Interval operator-(const Interval& a);

Interval hull(const Interval& a, const Interval& b);
// intersection, with a domain_error when empty
Interval intersect(const Interval& a, const Interval& b);

// --- elementary functions -------------------------------------------------

enum class ElemKind { Exp, Log, Sqrt, Sinh, Cosh, Tanh, Coth, Arcsin, Arcsinh, Square };

Interval elem(const Interval& x, ElemKind kind);

Interval exp(const Interval& x);
Interval log(const Interval& x);    // requires x > 0
Interval sqrt(const Interval& x);   // requires x >= 0
Interval sinh(const Interval& x);
Interval cosh(const Interval& x);
Interval tanh(const Interval& x);
Interval coth(const Interval& x);   // requires 0 ∉ x
Interval asin(const Interval& x);   // requires x ⊆ [-1, 1]
Interval asinh(const Interval& x);
Interval acosh(const Interval& x);  // requires x >= 1
Interval square(const Interval& x);
Interval abs(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);

// --- constants --------------------------------------------------------------

Interval pi_enclosure();

// --- certified comparison ---------------------------------------------------

enum class Relation { StrictlyBelow, StrictlyAbove };

// Proven only when the enclosures are disjoint in the asserted order
// (x.hi < threshold.lo resp. x.lo > threshold.hi).  Never Proven for a
// false statement about the underlying reals.
CertifiedBool certify(const Interval& x, Relation relation, const Interval& threshold);

// predicate helpers used by generic (float-or-interval) geometry code
inline bool certainly_positive(double x) { return x > 0; }
inline bool certainly_positive(const Interval& x) { return x.certainly_positive(); }
inline bool certainly_negative(double x) { return x < 0; }
inline bool certainly_negative(const Interval& x) { return x.certainly_negative(); }
inline bool possibly_zero(double x) { return x == 0; }
inline bool possibly_zero(const Interval& x) { return x.contains_zero(); }

} // namespace h3cert
