#pragma once

// Upper half-space model of hyperbolic 3-space.  Points are (x, y, t) with
// t > 0; the boundary is C ∪ {∞}; orientation-preserving isometries are
// Moebius transforms acting by Poincaré extension.  Everything is generic
// over the scalar: plain double for fast numerics, Interval for enclosures.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "h3cert/interval.hpp"
#include "h3cert/words.hpp"

namespace h3cert {

class classification_error : public domain_error {
public:
    using domain_error::domain_error;
};

// --- scalar adapters ----------------------------------------------------------

template <class S>
struct Scalar;

template <>
struct Scalar<double> {
    static double from(double v) { return v; }
    static double pi() { return std::numbers::pi; }
    static double clamp_nonneg(double x) { return x < 0 ? 0.0 : x; }
    static double clamp_ge_one(double x) { return x < 1 ? 1.0 : x; }
    // hull of {-v, v}; only meaningful for set-valued scalars
    static double sign_hull(double v) { return v; }
};

template <>
struct Scalar<Interval> {
    static Interval from(double v) { return Interval::point(v); }
    static Interval pi() { return pi_enclosure(); }
    static Interval clamp_nonneg(const Interval& x) {
        if (x.lower().sign() >= 0) return x;
        BigFloat zero;
        mpfr_set_zero(zero.raw(), 1);
        BigFloat hi = x.upper();
        if (hi.sign() < 0) mpfr_set_zero(hi.raw(), 1);
        return Interval::from_endpoints(std::move(zero), std::move(hi));
    }
    static Interval clamp_ge_one(const Interval& x) {
        if (mpfr_cmp_si(x.lower().raw(), 1) >= 0) return x;
        BigFloat one, hi = x.upper();
        mpfr_set_ui(one.raw(), 1, MPFR_RNDD);
        if (mpfr_cmp_si(hi.raw(), 1) < 0) mpfr_set_ui(hi.raw(), 1, MPFR_RNDU);
        return Interval::from_endpoints(std::move(one), std::move(hi));
    }
    static Interval sign_hull(const Interval& v) { return hull(v, -v); }
};

inline bool certified_lt(double a, double b) { return a < b; }
inline bool certified_lt(const Interval& a, const Interval& b) { return a.upper() < b.lower(); }
inline bool certified_le(double a, double b) { return a <= b; }
inline bool certified_le(const Interval& a, const Interval& b) { return a.upper() <= b.lower(); }

inline double sq(double x) { return x * x; }
inline Interval sq(const Interval& x) { return square(x); }

inline bool exactly_zero(double x) { return x == 0; }
inline bool exactly_zero(const Interval& x) {
    return x.is_point() && x.lower().sign() == 0;
}

// --- complex numbers over a generic scalar --------------------------------------

template <class S>
struct Cx {
    S re{}, im{};

    Cx() = default;
    Cx(S r, S i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cx(S r) : re(std::move(r)), im(Scalar<S>::from(0)) {}

    static Cx from(double r, double i = 0) { return {Scalar<S>::from(r), Scalar<S>::from(i)}; }

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator/(const Cx& a, const Cx& b) {
        S den = norm_sq(b);
        Cx num = a * conj(b);
        return {num.re / den, num.im / den};
    }

    friend Cx conj(const Cx& a) { return {a.re, -a.im}; }
    friend S norm_sq(const Cx& a) { return sq(a.re) + sq(a.im); }
};

template <class S>
S abs_cx(const Cx<S>& a) {
    using std::sqrt;
    return sqrt(Scalar<S>::clamp_nonneg(norm_sq(a)));
}

// exp(z) = e^Re(z) (cos Im z + i sin Im z)
template <class S>
Cx<S> exp_cx(const Cx<S>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    S m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// A square root of w, componentwise:
//   u = sqrt((|w| + Re w)/2),  v = ±sqrt((|w| − Re w)/2), sign(v) = sign(Im w).
// For set-valued scalars whose imaginary part straddles 0, v is widened to
// the hull of both signs; the result still encloses a square root of every
// point of w, which is all the callers below need (they are even in v).
template <class S>
Cx<S> sqrt_cx(const Cx<S>& w) {
    using std::sqrt;
    S half = Scalar<S>::from(0.5);
    S m = abs_cx(w);
    S u = sqrt(Scalar<S>::clamp_nonneg((m + w.re) * half));
    S v = sqrt(Scalar<S>::clamp_nonneg((m - w.re) * half));
    if (!possibly_zero(w.im)) {
        if (certainly_negative(w.im)) return {u, -v};
        return {u, v};
    }
    if (exactly_zero(w.im)) return {u, v}; // real axis: v = 0 unless w < 0
    return {u, Scalar<S>::sign_hull(v)};
}

// --- model types -----------------------------------------------------------------

template <class S>
struct Point3 {
    S x, y, t; // boundary coordinate x + iy, height t > 0

    Point3(S px, S py, S pt) : x(std::move(px)), y(std::move(py)), t(std::move(pt)) {
        if (!certainly_positive(t)) {
            throw domain_error("point height must be strictly positive");
        }
    }

    static Point3 from(double px, double py, double pt) {
        return Point3(Scalar<S>::from(px), Scalar<S>::from(py), Scalar<S>::from(pt));
    }

    Cx<S> z() const { return {x, y}; }
};

template <class S>
struct BoundaryPoint {
    Cx<S> z{};
    bool infinite = false;

    static BoundaryPoint at_infinity() { return {{}, true}; }
    static BoundaryPoint finite(Cx<S> w) { return {std::move(w), false}; }
};

template <class S>
struct Geodesic {
    BoundaryPoint<S> p, q;

    Geodesic(BoundaryPoint<S> a, BoundaryPoint<S> b) : p(std::move(a)), q(std::move(b)) {
        if (p.infinite && q.infinite) {
            throw domain_error("geodesic endpoints must be distinct");
        }
    }
};

template <class S>
struct Moebius {
    Cx<S> a, b, c, d;

    static Moebius identity() {
        return {Cx<S>::from(1), Cx<S>::from(0), Cx<S>::from(0), Cx<S>::from(1)};
    }

    Cx<S> det() const { return a * d - b * c; }
    Cx<S> trace() const { return a + d; }

    // det(m) * m^{-1}: the projective inverse, with no division
    Moebius adjugate() const { return {d, -b, -c, a}; }

    friend Moebius operator*(const Moebius& m, const Moebius& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
};

// rescale to determinant 1 (up to sign); float-mode convenience
inline Moebius<double> normalized(const Moebius<double>& m) {
    Cx<double> s = sqrt_cx(m.det());
    if (abs_cx(s) == 0) throw domain_error("degenerate transform has determinant 0");
    return {m.a / s, m.b / s, m.c / s, m.d / s};
}

// a ∝ b with relative tolerance on all four entries
bool projectively_equal(const Moebius<double>& m, const Moebius<double>& n, double tol = 1e-9);

// --- classification -----------------------------------------------------------

enum class IsometryClass { Identity, Parabolic, Elliptic, Loxodromic };

const char* to_string(IsometryClass c);

// tr^2/det; projectively invariant, the only input classification needs
template <class S>
Cx<S> trace_squared_over_det(const Moebius<S>& m) {
    Cx<S> tr = m.trace();
    return (tr * tr) / m.det();
}

IsometryClass classify(const Moebius<double>& m, double tol = 1e-12);

namespace detail {

// loxodromic <=> tr^2/det lies outside the real segment [0, 4]
inline void require_loxodromic(const Moebius<double>& m, const char* op) {
    IsometryClass c = classify(m);
    if (c != IsometryClass::Loxodromic) {
        throw classification_error(std::string(op) + " requires a loxodromic isometry, got " +
                                   to_string(c));
    }
}

inline void require_loxodromic(const Moebius<Interval>& m, const char* op) {
    Cx<Interval> sigma = trace_squared_over_det(m);
    bool maybe_segment = sigma.im.contains_zero() && sigma.re.upper().sign() >= 0 &&
                         mpfr_cmp_si(sigma.re.lower().raw(), 4) <= 0;
    if (maybe_segment) {
        throw classification_error(std::string(op) +
                                   ": cannot certify the isometry as loxodromic (tr^2/det "
                                   "enclosure meets the segment [0,4])");
    }
}

} // namespace detail

// --- isometric action and distance ----------------------------------------------

template <class S>
BoundaryPoint<S> apply_boundary(const Moebius<S>& m, const BoundaryPoint<S>& p) {
    if (p.infinite) {
        if (exactly_zero(m.c.re) && exactly_zero(m.c.im)) return BoundaryPoint<S>::at_infinity();
        if (possibly_zero(norm_sq(m.c))) {
            throw domain_error("boundary image of infinity cannot be certified finite");
        }
        return BoundaryPoint<S>::finite(m.a / m.c);
    }
    Cx<S> den = m.c * p.z + m.d;
    if (exactly_zero(den.re) && exactly_zero(den.im)) return BoundaryPoint<S>::at_infinity();
    if (possibly_zero(norm_sq(den))) {
        throw domain_error("boundary image cannot be certified finite");
    }
    return BoundaryPoint<S>::finite((m.a * p.z + m.b) / den);
}

// Poincaré extension of the boundary action to the interior
template <class S>
Point3<S> apply(const Moebius<S>& m, const Point3<S>& p) {
    Cx<S> z = p.z();
    Cx<S> w = m.c * z + m.d;
    S t2 = sq(p.t);
    S den = norm_sq(w) + norm_sq(m.c) * t2;
    Cx<S> zn = (m.a * z + m.b) * conj(w) + m.a * conj(m.c) * t2;
    S tn = abs_cx(m.det()) * p.t / den;
    return Point3<S>(zn.re / den, zn.im / den, tn);
}

// hyperbolic distance: cosh d = 1 + (|z1-z2|^2 + (t1-t2)^2) / (2 t1 t2)
template <class S>
S dist(const Point3<S>& p, const Point3<S>& q) {
    using std::acosh;
    S num = sq(p.x - q.x) + sq(p.y - q.y) + sq(p.t - q.t);
    S ch = Scalar<S>::from(1) + num / (Scalar<S>::from(2) * p.t * q.t);
    return acosh(Scalar<S>::clamp_ge_one(ch));
}

// Real translation length of a loxodromic isometry.  With s = tr^2/det − 2
// the eigenvalue ratio κ satisfies κ + 1/κ = s, so κ = (s ± sqrt(s^2−4))/2
// and the translation length is |log |κ||, independent of the branch.
template <class S>
S translation_length(const Moebius<S>& m) {
    detail::require_loxodromic(m, "translation_length");
    using std::log;
    using std::abs;
    Cx<S> s = trace_squared_over_det(m) - Cx<S>::from(2);
    Cx<S> root = sqrt_cx(s * s - Cx<S>::from(4));
    Cx<S> kappa = (s + root) * Cx<S>::from(0.5);
    S mag = abs_cx(kappa);
    if (possibly_zero(mag)) {
        // the other branch has modulus > 1; κ = 0 only from rounding
        throw classification_error("translation_length: eigenvalue ratio enclosure touches 0");
    }
    return abs(log(mag));
}

// axis of a loxodromic isometry: the geodesic joining its fixed points
template <class S>
Geodesic<S> axis(const Moebius<S>& m) {
    detail::require_loxodromic(m, "axis");
    if (exactly_zero(m.c.re) && exactly_zero(m.c.im)) {
        // fixes infinity; the finite fixed point solves (a-d) z + b = 0
        Cx<S> diff = m.d - m.a;
        if (possibly_zero(norm_sq(diff))) {
            throw classification_error("axis: fixed points cannot be separated");
        }
        return Geodesic<S>(BoundaryPoint<S>::finite(m.b / diff), BoundaryPoint<S>::at_infinity());
    }
    if (possibly_zero(norm_sq(m.c))) {
        throw classification_error("axis: lower-left entry cannot be certified nonzero");
    }
    Cx<S> diff = m.a - m.d;
    Cx<S> disc = m.trace() * m.trace() - Cx<S>::from(4) * m.det(); // = (a-d)^2 + 4bc
    Cx<S> root = sqrt_cx(disc);
    Cx<S> twoc = Cx<S>::from(2) * m.c;
    return Geodesic<S>(BoundaryPoint<S>::finite((diff + root) / twoc),
                       BoundaryPoint<S>::finite((diff - root) / twoc));
}

namespace detail {

// Moebius transform sending g to the geodesic (0, ∞)
template <class S>
Moebius<S> conjugate_to_vertical(const Geodesic<S>& g) {
    Cx<S> one = Cx<S>::from(1);
    Cx<S> zero = Cx<S>::from(0);
    if (g.p.infinite) return {zero, one, one, -g.q.z};
    if (g.q.infinite) return {one, -g.p.z, zero, one};
    return {one, -g.p.z, one, -g.q.z};
}

template <class S>
bool same_boundary_point(const BoundaryPoint<S>& a, const BoundaryPoint<S>& b) {
    if (a.infinite || b.infinite) return a.infinite && b.infinite;
    return exactly_zero(a.z.re - b.z.re) && exactly_zero(a.z.im - b.z.im);
}

} // namespace detail

// Minimum hyperbolic distance between two geodesics; 0 when they intersect
// or share an endpoint.
//
// Closed form: conjugate g1 to (0, ∞) and let A, B be the images of g2's
// endpoints.  Writing c = (A+B)/2, r = |B-A|/2, the squared sinh of the
// distance from the vertical axis to the semicircle over [A, B] is
//   F(s) = (|c|^2 + 2Ps + r^2 s^2) / (r^2 (1 - s^2)),   P = Re(c conj(B-A))/2,
// minimized at the root s* = -2P / (M + sqrt(M^2 - 4P^2)), M = r^2 + |c|^2,
// of the critical equation; the roots come in reciprocal pairs so s* is the
// one inside (-1, 1).
template <class S>
S geodesic_distance(const Geodesic<S>& g1, const Geodesic<S>& g2) {
    using std::asinh;
    using std::sqrt;
    // identical geodesics and shared endpoints
    if ((detail::same_boundary_point(g1.p, g2.p) && detail::same_boundary_point(g1.q, g2.q)) ||
        (detail::same_boundary_point(g1.p, g2.q) && detail::same_boundary_point(g1.q, g2.p)) ||
        detail::same_boundary_point(g1.p, g2.p) || detail::same_boundary_point(g1.p, g2.q) ||
        detail::same_boundary_point(g1.q, g2.p) || detail::same_boundary_point(g1.q, g2.q)) {
        return Scalar<S>::from(0);
    }
    Moebius<S> conj_map = detail::conjugate_to_vertical(g1);
    BoundaryPoint<S> ia = apply_boundary(conj_map, g2.p);
    BoundaryPoint<S> ib = apply_boundary(conj_map, g2.q);
    if (ia.infinite || ib.infinite) return Scalar<S>::from(0); // endpoint met g1's
    Cx<S> A = ia.z, B = ib.z;
    if ((exactly_zero(A.re) && exactly_zero(A.im)) || (exactly_zero(B.re) && exactly_zero(B.im))) {
        return Scalar<S>::from(0);
    }
    if (possibly_zero(norm_sq(A)) || possibly_zero(norm_sq(B))) {
        throw domain_error("geodesic_distance: endpoint enclosure touches the other axis");
    }
    S half = Scalar<S>::from(0.5);
    Cx<S> c = (A + B) * Cx<S>(half, Scalar<S>::from(0));
    Cx<S> chord = B - A;
    S r2 = norm_sq(chord) * Scalar<S>::from(0.25);
    Cx<S> cu = c * conj(chord);
    S P = cu.re * half;
    S M = r2 + norm_sq(c);
    S disc = Scalar<S>::clamp_nonneg(M * M - Scalar<S>::from(4) * sq(P));
    S sstar = -(Scalar<S>::from(2) * P) / (M + sqrt(disc));
    S fmin = (norm_sq(c) + Scalar<S>::from(2) * P * sstar + r2 * sq(sstar)) /
             (r2 * (Scalar<S>::from(1) - sq(sstar)));
    return asinh(sqrt(Scalar<S>::clamp_nonneg(fmin)));
}

// --- two-generator pair construction ---------------------------------------------

// (f, ω) with f = diag(e^{L/2}, e^{-L/2}) and ω = E_R B E_delta B where
// E_t = diag(e^{t/2}, e^{-t/2}) and B = [[1,1],[1,-1]].  B E_delta B is a
// translation of complex length delta along the geodesic (-1, 1), which
// meets the axis (0, ∞) of f orthogonally, so the minimum distance between
// axis(f) and ω(axis(f)) is exactly Re(delta).
template <class S>
std::pair<Moebius<S>, Moebius<S>> axis_separated_pair(const Cx<S>& L, const Cx<S>& delta,
                                                      const Cx<S>& R) {
    Cx<S> half = Cx<S>::from(0.5);
    Cx<S> one = Cx<S>::from(1);
    auto diag = [&](const Cx<S>& t) -> Moebius<S> {
        return {exp_cx(t * half), Cx<S>::from(0), Cx<S>::from(0), exp_cx(-(t * half))};
    };
    Moebius<S> f = diag(L);
    Moebius<S> mirror{one, one, one, -one};
    Moebius<S> omega = diag(R) * mirror * diag(delta) * mirror;
    return {f, omega};
}

// The (L, D, R) two-generator normal form: f has translation length Re L
// and ω moves the axis of f a distance (Re D)/2 off itself.
template <class S>
std::pair<Moebius<S>, Moebius<S>> gmt_pair(const Cx<S>& L, const Cx<S>& D, const Cx<S>& R) {
    if (!certainly_positive(L.re) || !certainly_positive(D.re)) {
        throw domain_error("gmt_pair requires Re L > 0 and Re D > 0");
    }
    return axis_separated_pair(L, D * Cx<S>::from(0.5), R);
}

// volume of an embedded tube: pi * L * sinh(R)^2
template <class S>
S tube_volume(const S& length, const S& radius) {
    using std::sinh;
    if (!certainly_positive(length)) {
        throw domain_error("tube_volume requires a positive core length");
    }
    if (certainly_negative(radius)) {
        throw domain_error("tube_volume requires a nonnegative radius");
    }
    return Scalar<S>::pi() * length * sq(sinh(radius));
}

// --- word evaluation ---------------------------------------------------------------

// Product of the letter matrices read left to right; X and Y act through the
// adjugates, which equal the inverses up to the (projectively irrelevant)
// determinant factor.
template <class S>
Moebius<S> evaluate_word(const GroupWord& w, const Moebius<S>& mx, const Moebius<S>& my) {
    Moebius<S> acc = Moebius<S>::identity();
    for (char letter : w.letters()) {
        switch (letter) {
            case 'x': acc = acc * mx; break;
            case 'y': acc = acc * my; break;
            case 'X': acc = acc * mx.adjugate(); break;
            case 'Y': acc = acc * my.adjugate(); break;
            default: throw parse_error(std::string("letter '") + letter + "' outside alphabet");
        }
    }
    return acc;
}

// --- displacement bounds -------------------------------------------------------------

template <class S>
S displacement_sum(const std::vector<Moebius<S>>& gens, const Point3<S>& z) {
    using std::exp;
    if (gens.empty()) throw std::invalid_argument("displacement_sum needs at least one generator");
    S one = Scalar<S>::from(1);
    S sum = Scalar<S>::from(0);
    for (const auto& g : gens) {
        sum = sum + one / (one + exp(dist(z, apply(g, z))));
    }
    return sum;
}

// 1/(1+e^{d(ξz,z)}) + 1/(1+e^{d(ηz,z)}) ≤ 2/(1+e^λ) at this particular z
template <class S>
CertifiedBool strong_margulis_check(const Moebius<S>& xi, const Moebius<S>& eta,
                                    const Point3<S>& z, const S& lambda) {
    using std::exp;
    S one = Scalar<S>::from(1);
    S lhs = one / (one + exp(dist(z, apply(xi, z)))) + one / (one + exp(dist(z, apply(eta, z))));
    S rhs = Scalar<S>::from(2) / (one + exp(lambda));
    return certified_le(lhs, rhs) ? CertifiedBool::Proven : CertifiedBool::Undecided;
}

// Ping-pong certificate: if the isometric circles of all generators and
// their inverses are pairwise disjoint, the group they generate is free on
// the generators and discrete (classical Schottky configuration).  Proven
// implies that; anything else is Undecided.
template <class S>
CertifiedBool schottky_certificate(const std::vector<Moebius<S>>& gens) {
    struct Circle {
        Cx<S> center;
        S radius_sq;
    };
    std::vector<Circle> circles;
    circles.reserve(2 * gens.size());
    for (const auto& g : gens) {
        S cnorm = norm_sq(g.c);
        if (possibly_zero(cnorm)) return CertifiedBool::Undecided; // fixes infinity
        S r2 = abs_cx(g.det()) / cnorm;
        circles.push_back({-(g.d / g.c), r2});
        circles.push_back({g.a / g.c, r2});
    }
    using std::sqrt;
    for (size_t i = 0; i < circles.size(); ++i) {
        for (size_t j = i + 1; j < circles.size(); ++j) {
            S gap = sqrt(Scalar<S>::clamp_nonneg(norm_sq(circles[i].center - circles[j].center)));
            S radii = sqrt(Scalar<S>::clamp_nonneg(circles[i].radius_sq)) +
                      sqrt(Scalar<S>::clamp_nonneg(circles[j].radius_sq));
            if (!certified_lt(radii, gap)) return CertifiedBool::Undecided;
        }
    }
    return CertifiedBool::Proven;
}

} // namespace h3cert
