#pragma once

// Exact sign evaluation for the two geometric predicates everything else
// rests on: orientation and incircle. Fast floating-point filters decide
// the generic case; near-degenerate inputs fall through to multi-term
// expansion arithmetic (nonoverlapping sums of doubles), which is exact.

namespace delk {

// Sign of the signed doubled area of triangle (a,b,c):
// +1 counter-clockwise, -1 clockwise, 0 collinear.
int orient2d(double ax, double ay, double bx, double by, double cx, double cy);

// Sign of the incircle determinant for (a,b,c) counter-clockwise:
// +1 if d is strictly inside the circumcircle of (a,b,c), -1 strictly
// outside, 0 cocyclic. The caller is responsible for the ccw precondition;
// for a cw triple the sign is flipped.
int incircle(double ax, double ay, double bx, double by, double cx, double cy,
             double dx, double dy);

}  // namespace delk
