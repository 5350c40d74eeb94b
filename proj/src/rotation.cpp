//
//  rotation.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/rotation.hpp"

namespace panobin {

Mat3 axis_rotation(Axis axis, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Mat3 r = Mat3::identity();
    switch (axis) {
    case Axis::X:
        r.m[1][1] = c; r.m[1][2] = -s;
        r.m[2][1] = s; r.m[2][2] = c;
        break;
    case Axis::Y:
        r.m[0][0] = c;  r.m[0][2] = s;
        r.m[2][0] = -s; r.m[2][2] = c;
        break;
    case Axis::Z:
        r.m[0][0] = c; r.m[0][1] = -s;
        r.m[1][0] = s; r.m[1][1] = c;
        break;
    }
    return r;
}

Mat3 camera_rotation(const EulerAngles& euler) {
    return axis_rotation(Axis::X, euler.roll)
         * axis_rotation(Axis::Y, -euler.pitch)
         * axis_rotation(Axis::Z, euler.yaw);
}

} // namespace panobin
