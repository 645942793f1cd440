#pragma once
#include <functional>

namespace hforge {

// value and first two derivatives of a scalar profile at one point
struct ProfileJet {
    double value = 0, d1 = 0, d2 = 0;
};

// quintic smoothstep s(x) = 6x^5 - 15x^4 + 10x^3 on [0,1]:
// s(0)=0, s(1)=1, s'=s''=0 at both ends, 0 <= s <= 1, max s' = 15/8
double smoothstep5(double x);
double smoothstep5_d1(double x);
// antiderivative S(x) = integral_0^x s, S(1) = 1/2
double smoothstep5_int(double x);

// Radial flattening profile on [0,1]:
//   r(t) = 3*delta for t <= 2*delta,  r(t) = t for t >= 4*delta,
// blended so that 0 <= r' <= 1 and 0 <= r'' <= 4/delta everywhere.
class TransitionProfile {
public:
    explicit TransitionProfile(double delta);

    double delta() const { return delta_; }
    ProfileJet eval(double t) const;
    double value(double t) const { return eval(t).value; }

    static constexpr double kDeltaMax = 0.15;

private:
    double delta_;
    void verify_constraints() const;  // dense sampling on [2d, 4d]
};

// Height profile of the flattened catenoid, odd in t:
//   g(t) = t on [0,R],  g(t) = R + 1/2 for t >= R+1,
// blended so that 0 < g' <= 1 on |t| < R+1 and -4 <= g'' <= 0 for t >= 0.
class CatenoidProfile {
public:
    explicit CatenoidProfile(double R);

    double R() const { return R_; }
    ProfileJet eval(double t) const;
    double value(double t) const { return eval(t).value; }

private:
    double R_;
    void verify_constraints() const;
};

// Compactly supported radial bump h(q) = (1-q^2)^3 on q < 1, 0 outside.
// C^2 across the support boundary, h >= 0, h(0) = 1.
struct BumpProfile {
    ProfileJet eval(double q) const;
    double value(double q) const { return eval(q).value; }
};

}  // namespace hforge
