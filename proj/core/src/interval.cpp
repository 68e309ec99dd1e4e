#include "h3cert/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>
#include <vector>

namespace h3cert {

namespace {

constexpr int kMinPrecision = 24;
constexpr int kMaxPrecision = 8192;

thread_local int g_working_precision = 53;

int clamp_precision(int bits) {
    return std::max(kMinPrecision, std::min(kMaxPrecision, bits));
}

} // namespace

int working_precision() { return g_working_precision; }

void set_working_precision(int bits) { g_working_precision = clamp_precision(bits); }

PrecisionGuard::PrecisionGuard(int bits) : saved_(g_working_precision) {
    set_working_precision(bits);
}

PrecisionGuard::~PrecisionGuard() { g_working_precision = saved_; }

// --- BigFloat ---------------------------------------------------------------

BigFloat::BigFloat() { mpfr_init2(v_, g_working_precision); }

BigFloat::BigFloat(int precision) { mpfr_init2(v_, clamp_precision(precision)); }

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN); // same precision: exact
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_double(double v, int precision) {
    BigFloat r(std::max(precision, 53)); // a double always fits exactly
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

double BigFloat::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

std::string BigFloat::to_string(mpfr_rnd_t rnd, int significant_digits) const {
    if (significant_digits <= 0) {
        // default: enough decimal digits to round-trip the current precision
        significant_digits = static_cast<int>(precision() * 0.30103) + 3;
    }
    int n = mpfr_snprintf(nullptr, 0, "%.*R*e", significant_digits - 1, rnd, v_);
    std::string buf(static_cast<size_t>(n) + 1, '\0');
    mpfr_snprintf(buf.data(), buf.size(), "%.*R*e", significant_digits - 1, rnd, v_);
    buf.resize(static_cast<size_t>(n));
    return buf;
}

// --- Interval ---------------------------------------------------------------

Interval::Interval() {
    mpfr_set_zero(lo_.raw(), 1);
    mpfr_set_zero(hi_.raw(), 1);
}

Interval Interval::point(double v) { return make(v, v); }

Interval Interval::make(double lo, double hi) {
    BigFloat l(std::max(g_working_precision, 53)), h(std::max(g_working_precision, 53));
    mpfr_set_d(l.raw(), lo, MPFR_RNDD);
    mpfr_set_d(h.raw(), hi, MPFR_RNDU);
    return from_endpoints(std::move(l), std::move(h));
}

Interval Interval::from_int(long v) {
    BigFloat l, h;
    mpfr_set_si(l.raw(), v, MPFR_RNDD);
    mpfr_set_si(h.raw(), v, MPFR_RNDU);
    return from_endpoints(std::move(l), std::move(h));
}

Interval Interval::from_decimal(std::string_view text) {
    std::string s(text);
    BigFloat l, h;
    if (s.empty() || mpfr_set_str(l.raw(), s.c_str(), 10, MPFR_RNDD) != 0) {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
    mpfr_set_str(h.raw(), s.c_str(), 10, MPFR_RNDU);
    return from_endpoints(std::move(l), std::move(h));
}

Interval Interval::from_endpoints(BigFloat lo, BigFloat hi) {
    if (lo.is_nan() || hi.is_nan()) {
        throw std::invalid_argument("interval endpoint is NaN");
    }
    if (mpfr_cmp(lo.raw(), hi.raw()) > 0) {
        throw std::invalid_argument("interval endpoints out of order: [" +
                                    lo.to_string(MPFR_RNDD, 17) + ", " +
                                    hi.to_string(MPFR_RNDU, 17) + "]");
    }
    Interval r;
    r.lo_ = std::move(lo);
    r.hi_ = std::move(hi);
    return r;
}

double Interval::midpoint() const {
    BigFloat m;
    mpfr_add(m.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
    mpfr_div_ui(m.raw(), m.raw(), 2, MPFR_RNDN);
    return m.to_double(MPFR_RNDN);
}

double Interval::width() const {
    BigFloat w;
    mpfr_sub(w.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
    return w.to_double(MPFR_RNDU);
}

bool Interval::contains(double v) const {
    return mpfr_cmp_d(lo_.raw(), v) <= 0 && mpfr_cmp_d(hi_.raw(), v) >= 0;
}

bool Interval::contains(const Interval& other) const {
    return mpfr_cmp(lo_.raw(), other.lo_.raw()) <= 0 &&
           mpfr_cmp(hi_.raw(), other.hi_.raw()) >= 0;
}

bool Interval::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

bool Interval::certainly_positive() const { return lo_.sign() > 0; }

bool Interval::certainly_negative() const { return hi_.sign() < 0; }

bool Interval::intersects(const Interval& other) const {
    return mpfr_cmp(lo_.raw(), other.hi_.raw()) <= 0 &&
           mpfr_cmp(other.lo_.raw(), hi_.raw()) <= 0;
}

std::string Interval::to_string() const {
    return "[" + lo_.to_string(MPFR_RNDD) + ", " + hi_.to_string(MPFR_RNDU) + "]";
}

// --- arithmetic -------------------------------------------------------------

namespace {

using UnaryMpfr = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// image enclosure of a function that is monotone increasing on x
Interval monotone_increasing(const Interval& x, UnaryMpfr fn) {
    BigFloat lo, hi;
    fn(lo.raw(), x.lower().raw(), MPFR_RNDD);
    fn(hi.raw(), x.upper().raw(), MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

// image enclosure of a function that is monotone decreasing on x
Interval monotone_decreasing(const Interval& x, UnaryMpfr fn) {
    BigFloat lo, hi;
    fn(lo.raw(), x.upper().raw(), MPFR_RNDD);
    fn(hi.raw(), x.lower().raw(), MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

void corner_mul(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr b, mpfr_rnd_t rnd) {
    mpfr_mul(out, a, b, rnd);
    if (mpfr_nan_p(out)) {
        // only 0 * inf lands here; the finite factor is exactly 0, and the
        // extreme of x*y over the set is approached through 0
        mpfr_set_zero(out, 1);
    }
}

} // namespace

Interval operator+(const Interval& a, const Interval& b) {
    BigFloat lo, hi;
    mpfr_add(lo.raw(), a.lower().raw(), b.lower().raw(), MPFR_RNDD);
    mpfr_add(hi.raw(), a.upper().raw(), b.upper().raw(), MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval operator-(const Interval& a, const Interval& b) {
    BigFloat lo, hi;
    mpfr_sub(lo.raw(), a.lower().raw(), b.upper().raw(), MPFR_RNDD);
    mpfr_sub(hi.raw(), a.upper().raw(), b.lower().raw(), MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval operator-(const Interval& a) {
    BigFloat lo, hi;
    mpfr_neg(lo.raw(), a.upper().raw(), MPFR_RNDD);
    mpfr_neg(hi.raw(), a.lower().raw(), MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval operator*(const Interval& a, const Interval& b) {
    mpfr_srcptr as[2] = {a.lower().raw(), a.upper().raw()};
    mpfr_srcptr bs[2] = {b.lower().raw(), b.upper().raw()};
    BigFloat lo, hi, t;
    bool first = true;
    for (auto* av : as) {
        for (auto* bv : bs) {
            corner_mul(t.raw(), av, bv, MPFR_RNDD);
            if (first || mpfr_cmp(t.raw(), lo.raw()) < 0) mpfr_set(lo.raw(), t.raw(), MPFR_RNDD);
            corner_mul(t.raw(), av, bv, MPFR_RNDU);
            if (first || mpfr_cmp(t.raw(), hi.raw()) > 0) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
            first = false;
        }
    }
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) {
        throw domain_error("division by an interval containing zero: " + b.to_string());
    }
    mpfr_srcptr as[2] = {a.lower().raw(), a.upper().raw()};
    mpfr_srcptr bs[2] = {b.lower().raw(), b.upper().raw()};
    BigFloat lo, hi, t;
    bool first = true;
    for (auto* av : as) {
        for (auto* bv : bs) {
            mpfr_div(t.raw(), av, bv, MPFR_RNDD);
            if (mpfr_nan_p(t.raw())) mpfr_set_inf(t.raw(), -1); // inf/inf corner
            if (first || mpfr_cmp(t.raw(), lo.raw()) < 0) mpfr_set(lo.raw(), t.raw(), MPFR_RNDD);
            mpfr_div(t.raw(), av, bv, MPFR_RNDU);
            if (mpfr_nan_p(t.raw())) mpfr_set_inf(t.raw(), 1);
            if (first || mpfr_cmp(t.raw(), hi.raw()) > 0) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
            first = false;
        }
    }
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval arith(const Interval& a, const Interval& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::Add: return a + b;
        case ArithKind::Sub: return a - b;
        case ArithKind::Mul: return a * b;
        case ArithKind::Div: return a / b;
    }
    throw std::invalid_argument("unknown arithmetic kind");
}

Interval hull(const Interval& a, const Interval& b) {
    BigFloat lo = (a.lower() <= b.lower()) ? a.lower() : b.lower();
    BigFloat hi = (a.upper() >= b.upper()) ? a.upper() : b.upper();
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval intersect(const Interval& a, const Interval& b) {
    if (!a.intersects(b)) {
        throw domain_error("empty intersection of " + a.to_string() + " and " + b.to_string());
    }
    BigFloat lo = (a.lower() >= b.lower()) ? a.lower() : b.lower();
    BigFloat hi = (a.upper() <= b.upper()) ? a.upper() : b.upper();
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

// --- elementary functions ---------------------------------------------------

namespace {

[[noreturn]] void domain_violation(const char* fn, const Interval& x, const char* requirement) {
    throw domain_error(std::string(fn) + " requires " + requirement + ", got " + x.to_string());
}

} // namespace

Interval exp(const Interval& x) { return monotone_increasing(x, mpfr_exp); }

Interval log(const Interval& x) {
    if (x.lower().sign() <= 0) domain_violation("log", x, "a strictly positive interval");
    return monotone_increasing(x, mpfr_log);
}

Interval sqrt(const Interval& x) {
    if (x.lower().sign() < 0) domain_violation("sqrt", x, "a nonnegative interval");
    return monotone_increasing(x, mpfr_sqrt);
}

Interval sinh(const Interval& x) { return monotone_increasing(x, mpfr_sinh); }

Interval cosh(const Interval& x) {
    if (x.lower().sign() >= 0) return monotone_increasing(x, mpfr_cosh);
    if (x.upper().sign() <= 0) return monotone_decreasing(x, mpfr_cosh);
    // interval straddles the minimum at 0, where cosh = 1 exactly
    BigFloat lo, hi, t;
    mpfr_set_ui(lo.raw(), 1, MPFR_RNDD);
    mpfr_cosh(hi.raw(), x.lower().raw(), MPFR_RNDU);
    mpfr_cosh(t.raw(), x.upper().raw(), MPFR_RNDU);
    if (mpfr_cmp(t.raw(), hi.raw()) > 0) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval tanh(const Interval& x) { return monotone_increasing(x, mpfr_tanh); }

Interval coth(const Interval& x) {
    if (x.contains_zero()) domain_violation("coth", x, "an interval not containing 0");
    // coth' = -csch^2 < 0 on both components of the domain
    return monotone_decreasing(x, mpfr_coth);
}

Interval asin(const Interval& x) {
    if (mpfr_cmp_si(x.lower().raw(), -1) < 0 || mpfr_cmp_si(x.upper().raw(), 1) > 0) {
        domain_violation("arcsin", x, "an interval inside [-1, 1]");
    }
    return monotone_increasing(x, mpfr_asin);
}

Interval asinh(const Interval& x) { return monotone_increasing(x, mpfr_asinh); }

Interval acosh(const Interval& x) {
    if (mpfr_cmp_si(x.lower().raw(), 1) < 0) domain_violation("arccosh", x, "an interval >= 1");
    return monotone_increasing(x, mpfr_acosh);
}

Interval square(const Interval& x) {
    BigFloat lo, hi;
    if (x.lower().sign() >= 0) {
        mpfr_sqr(lo.raw(), x.lower().raw(), MPFR_RNDD);
        mpfr_sqr(hi.raw(), x.upper().raw(), MPFR_RNDU);
    } else if (x.upper().sign() <= 0) {
        mpfr_sqr(lo.raw(), x.upper().raw(), MPFR_RNDD);
        mpfr_sqr(hi.raw(), x.lower().raw(), MPFR_RNDU);
    } else {
        mpfr_set_zero(lo.raw(), 1);
        BigFloat t;
        mpfr_sqr(hi.raw(), x.lower().raw(), MPFR_RNDU);
        mpfr_sqr(t.raw(), x.upper().raw(), MPFR_RNDU);
        if (mpfr_cmp(t.raw(), hi.raw()) > 0) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
    }
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

Interval abs(const Interval& x) {
    if (x.lower().sign() >= 0) return x;
    if (x.upper().sign() <= 0) return -x;
    BigFloat lo, hi;
    mpfr_set_zero(lo.raw(), 1);
    mpfr_neg(hi.raw(), x.lower().raw(), MPFR_RNDU);
    if (mpfr_cmp(hi.raw(), x.upper().raw()) < 0) mpfr_set(hi.raw(), x.upper().raw(), MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

namespace {

// Shared range-aware enclosure for sin and cos.  Critical points of cos are
// the integer multiples of pi, of sin the half-integer multiples; `offset`
// shifts the critical-point lattice accordingly.  Conservative: when in
// doubt whether a critical point lies inside, its extreme value is included.
Interval trig_enclosure(const Interval& x, UnaryMpfr fn, double offset) {
    if (!x.is_finite()) return Interval::make(-1.0, 1.0);

    BigFloat lo, hi, t;
    fn(lo.raw(), x.lower().raw(), MPFR_RNDD);
    fn(t.raw(), x.upper().raw(), MPFR_RNDD);
    if (mpfr_cmp(t.raw(), lo.raw()) < 0) mpfr_set(lo.raw(), t.raw(), MPFR_RNDD);
    fn(hi.raw(), x.lower().raw(), MPFR_RNDU);
    fn(t.raw(), x.upper().raw(), MPFR_RNDU);
    if (mpfr_cmp(t.raw(), hi.raw()) > 0) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);

    // q = x/pi - offset; integers k in q mark critical points with value (-1)^k
    Interval q = x / pi_enclosure() - Interval::point(offset);
    BigFloat qlo_floor, qhi_floor;
    mpfr_ceil(qlo_floor.raw(), q.lower().raw());
    mpfr_floor(qhi_floor.raw(), q.upper().raw());
    if (!mpfr_fits_slong_p(qlo_floor.raw(), MPFR_RNDN) ||
        !mpfr_fits_slong_p(qhi_floor.raw(), MPFR_RNDN)) {
        return Interval::make(-1.0, 1.0);
    }
    long k_first = mpfr_get_si(qlo_floor.raw(), MPFR_RNDN);
    long k_last = mpfr_get_si(qhi_floor.raw(), MPFR_RNDN);
    if (k_last - k_first >= 2) return Interval::make(-1.0, 1.0);
    for (long k = k_first; k <= k_last; ++k) {
        if ((k % 2 + 2) % 2 == 0) {
            mpfr_set_ui(hi.raw(), 1, MPFR_RNDU);
        } else {
            mpfr_set_si(lo.raw(), -1, MPFR_RNDD);
        }
    }
    // clamp to [-1, 1] in case directed endpoint rounding stepped outside
    if (mpfr_cmp_si(lo.raw(), -1) < 0) mpfr_set_si(lo.raw(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(hi.raw(), 1) > 0) mpfr_set_si(hi.raw(), 1, MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

} // namespace

Interval sin(const Interval& x) { return trig_enclosure(x, mpfr_sin, 0.5); }

Interval cos(const Interval& x) { return trig_enclosure(x, mpfr_cos, 0.0); }

Interval elem(const Interval& x, ElemKind kind) {
    switch (kind) {
        case ElemKind::Exp: return exp(x);
        case ElemKind::Log: return log(x);
        case ElemKind::Sqrt: return sqrt(x);
        case ElemKind::Sinh: return sinh(x);
        case ElemKind::Cosh: return cosh(x);
        case ElemKind::Tanh: return tanh(x);
        case ElemKind::Coth: return coth(x);
        case ElemKind::Arcsin: return asin(x);
        case ElemKind::Arcsinh: return asinh(x);
        case ElemKind::Square: return square(x);
    }
    throw std::invalid_argument("unknown elementary function kind");
}

// --- constants ----------------------------------------------------------------

Interval pi_enclosure() {
    BigFloat lo, hi;
    mpfr_const_pi(lo.raw(), MPFR_RNDD);
    mpfr_const_pi(hi.raw(), MPFR_RNDU);
    return Interval::from_endpoints(std::move(lo), std::move(hi));
}

// --- certified comparison -----------------------------------------------------

CertifiedBool certify(const Interval& x, Relation relation, const Interval& threshold) {
    switch (relation) {
        case Relation::StrictlyBelow:
            return (x.upper() < threshold.lower()) ? CertifiedBool::Proven
                                                   : CertifiedBool::Undecided;
        case Relation::StrictlyAbove:
            return (x.lower() > threshold.upper()) ? CertifiedBool::Proven
                                                   : CertifiedBool::Undecided;
    }
    return CertifiedBool::Undecided;
}

} // namespace h3cert
