#pragma once

// Reference numbers produced by tests/oracle/sphere_oracle.py (sympy) and
// frozen here. Sphere values are at the chart point (1, 0.5, 0.3, 0.7).

#include <array>

namespace frozen {

inline constexpr std::array<double, 4> kSpherePoint{1.0, 0.5, 0.3, 0.7};

// cosh jet at x = 1: value, first and second derivative.
inline constexpr std::array<double, 3> kCoshJetAt1{1.5430806348152437, 1.1752011936438014, 1.5430806348152437};
inline constexpr double kSinhSquaredAt1 = 1.3810978455418157;

inline constexpr std::array<double, 4> kSphereMetricDiag{-1.0, -1.3810978455418157, 2.3810978455418157,
                                                         2.17315135002609};
inline constexpr double kSphereGamma2_12 = 1.3130352854993312;

inline constexpr std::array<double, 4> kSphereTheta1{0.0, 1.7900527223027167, 0.0, 0.0};
inline constexpr std::array<double, 4> kSphereTheta2{-0.20046667855867473, 0.0, -5.551722902814527, 0.0};
inline constexpr std::array<double, 4> kSphereTheta3{0.0, -0.2355886799279628, 0.0, 5.303763466573049};

// sup over components of |P_α| and |F_α|.
inline constexpr std::array<double, 3> kSphereMaxP{0.0, 1.01305966094156, 0.883291640742560};
inline constexpr std::array<double, 3> kSphereMaxF{2.1311453402406304, 5.596538060526852, 4.879648728058578};

// Sphere under u = −ln cosh u1.
inline constexpr double kGaugedMetric11 = -0.4199743416140261;
inline constexpr double kGaugedMaxCurvature = 0.9126678074548391;

}  // namespace frozen
