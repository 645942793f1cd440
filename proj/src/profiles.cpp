#include "hforge/profiles.hpp"

#include <cmath>
#include <sstream>

#include "hforge/errors.hpp"

namespace hforge {

double smoothstep5(double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    return x * x * x * (10 + x * (-15 + 6 * x));
}

double smoothstep5_d1(double x) {
    if (x <= 0 || x >= 1) return 0;
    double y = x * (1 - x);
    return 30 * y * y;
}

double smoothstep5_int(double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 0.5 + (x - 1);
    double x4 = x * x * x * x;
    return x4 * (2.5 + x * (-3 + x));
}

// ---------------------------------------------------------------------------

TransitionProfile::TransitionProfile(double delta) : delta_(delta) {
    if (!(delta > 0) || delta > kDeltaMax) {
        std::ostringstream os;
        os << "flattening scale delta=" << delta << " outside (0, " << kDeltaMax << "]";
        throw InfeasibleProfile(os.str());
    }
    verify_constraints();
}

ProfileJet TransitionProfile::eval(double t) const {
    const double d = delta_;
    if (t <= 2 * d) return {3 * d, 0, 0};
    if (t >= 4 * d) return {t, 1, 0};
    // ramp the slope with the smoothstep; integral of s over [0,1] is exactly
    // 1/2, which makes the blend land on r(4d) = 4d with no correction term
    const double x = (t - 2 * d) / (2 * d);
    return {3 * d + 2 * d * smoothstep5_int(x), smoothstep5(x), smoothstep5_d1(x) / (2 * d)};
}

void TransitionProfile::verify_constraints() const {
    const double d = delta_;
    const int n = 1000;
    for (int i = 0; i <= n; ++i) {
        double t = 2 * d + (2 * d) * i / n;
        ProfileJet j = eval(t);
        bool ok = j.d1 >= -1e-12 && j.d1 <= 1 + 1e-12 && j.d2 >= -1e-12 &&
                  j.d2 <= 4 / d + 1e-9;
        if (!ok) {
            std::ostringstream os;
            os << "transition profile constraint failed at t=" << t << ": r'=" << j.d1
               << " r''=" << j.d2;
            throw InfeasibleProfile(os.str());
        }
    }
}

// ---------------------------------------------------------------------------

CatenoidProfile::CatenoidProfile(double R) : R_(R) {
    if (!(R >= 1)) throw InfeasibleProfile("catenoid neck parameter R must be >= 1");
    verify_constraints();
}

ProfileJet CatenoidProfile::eval(double t) const {
    const double a = std::fabs(t);
    const double sg = t < 0 ? -1.0 : 1.0;
    if (a <= R_) return {t, 1, 0};
    if (a >= R_ + 1) return {sg * (R_ + 0.5), 0, 0};
    const double x = a - R_;
    // slope eases from 1 to 0; the half-unit of smoothstep mass gives g = R + 1/2
    return {sg * (R_ + x - smoothstep5_int(x)), 1 - smoothstep5(x), -sg * smoothstep5_d1(x)};
}

void CatenoidProfile::verify_constraints() const {
    const int n = 1000;
    for (int i = 0; i <= n; ++i) {
        double t = R_ + static_cast<double>(i) / n;
        ProfileJet j = eval(t);
        bool interior = t < R_ + 1 - 1e-12;
        bool ok = j.d1 <= 1 + 1e-12 && (!interior || j.d1 > 0) && j.d2 <= 1e-12 &&
                  j.d2 >= -4 - 1e-9;
        // oddness
        ProfileJet jm = eval(-t);
        ok = ok && std::fabs(jm.value + j.value) < 1e-14 && std::fabs(jm.d1 - j.d1) < 1e-14;
        if (!ok) {
            std::ostringstream os;
            os << "catenoid profile constraint failed at t=" << t << ": g'=" << j.d1
               << " g''=" << j.d2;
            throw InfeasibleProfile(os.str());
        }
    }
}

// ---------------------------------------------------------------------------

ProfileJet BumpProfile::eval(double q) const {
    if (q >= 1) return {0, 0, 0};
    const double u = 1 - q * q;
    return {u * u * u, -6 * q * u * u, -6 * u * u + 24 * q * q * u};
}

}  // namespace hforge
