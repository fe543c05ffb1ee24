#include "potapov/catalog.hpp"

#include <cmath>

namespace potapov::catalog {

namespace {

double transmission(double r) { return std::sqrt(1.0 - r * r); }

}  // namespace

DelayNetwork example1() {
    const double r1 = 0.9, r2 = 0.4, r3 = 0.8;
    const double t1 = transmission(r1), t2 = transmission(r2), t3 = transmission(r3);
    CMatrix m1 = CMatrix::Zero(4, 4);
    m1(0, 1) = -r1;
    m1(1, 0) = -r2;
    m1(1, 2) = t2;
    m1(2, 3) = -r3;
    m1(3, 0) = t2;
    m1(3, 2) = r2;
    CMatrix m2 = CMatrix::Zero(4, 2);
    m2(0, 0) = t1;
    m2(2, 1) = t3;
    CMatrix m3 = CMatrix::Zero(2, 4);
    m3(0, 1) = t1;
    m3(1, 3) = t3;
    CMatrix m4 = CMatrix::Zero(2, 2);
    m4(0, 0) = r1;
    m4(1, 1) = r3;
    return DelayNetwork(m1, m2, m3, m4, {0.1, 0.23, 0.1, 0.17});
}

DelayNetwork example2() {
    const double r = 0.9;
    const double t = transmission(r);
    CMatrix m1 = CMatrix::Zero(4, 4);
    m1(0, 2) = -r;
    m1(1, 0) = r;
    m1(2, 1) = r;
    m1(2, 3) = t;
    m1(3, 0) = t;
    CMatrix m2 = CMatrix::Zero(4, 2);
    m2(0, 0) = t;
    m2(1, 1) = t;
    m2(3, 1) = -r;
    CMatrix m3 = CMatrix::Zero(2, 4);
    m3(0, 2) = t;
    m3(1, 1) = t;
    m3(1, 3) = -r;
    CMatrix m4 = CMatrix::Zero(2, 2);
    m4(0, 0) = r;
    return DelayNetwork(m1, m2, m3, m4, {0.1, 0.039, 0.11, 0.08});
}

DelayNetwork fabry_perot(double r, double round_trip) {
    const double t = transmission(r);
    // x0 leaves mirror 0 heading right, x1 leaves mirror 1 heading left.
    CMatrix m1 = CMatrix::Zero(2, 2);
    m1(0, 1) = r;
    m1(1, 0) = r;
    CMatrix m2 = CMatrix::Zero(2, 2);
    m2(0, 0) = t;
    m2(1, 1) = t;
    CMatrix m3 = CMatrix::Zero(2, 2);
    m3(0, 1) = t;
    m3(1, 0) = t;
    CMatrix m4 = CMatrix::Zero(2, 2);
    m4(0, 0) = -r;
    m4(1, 1) = -r;
    return DelayNetwork(m1, m2, m3, m4, {0.5 * round_trip, 0.5 * round_trip});
}

DelayNetwork feedforward_chain(double t0) {
    CMatrix m1 = CMatrix::Zero(4, 4);
    m1(0, 1) = 1.0;
    m1(1, 2) = 1.0;
    m1(2, 3) = 1.0;
    CMatrix m2 = CMatrix::Zero(4, 2);
    m2(3, 0) = 1.0;
    CMatrix m3 = CMatrix::Zero(2, 4);
    m3(0, 0) = 1.0;
    CMatrix m4 = CMatrix::Zero(2, 2);
    m4(1, 1) = 1.0;
    return DelayNetwork(m1, m2, m3, m4, {t0, t0, t0, t0});
}

}  // namespace potapov::catalog
