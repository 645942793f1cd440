#pragma once
#include <stdexcept>
#include <string>

namespace hforge {

struct ForgeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a chart stopped being an immersion (E*G - F^2 <= 0) at an evaluation point
struct DegeneratePoint : ForgeError {
    using ForgeError::ForgeError;
};

// a constructed 1D profile violated one of its sampled constraints
struct InfeasibleProfile : ForgeError {
    using ForgeError::ForgeError;
};

// a surface parameter record violated one of the gluing constraints
struct InfeasibleSpec : ForgeError {
    using ForgeError::ForgeError;
};

// two neck cylinders overlap, or a neck does not fit its cylinder
struct GluingConflict : ForgeError {
    using ForgeError::ForgeError;
};

// bump support leaves the spherical region of the innermost sheet
struct SupportTooLarge : ForgeError {
    using ForgeError::ForgeError;
};

// adaptive quadrature exhausted its budget above the requested tolerance
struct NoConvergence : ForgeError {
    using ForgeError::ForgeError;
};

// total Gauss curvature is not close to an integer multiple of 4*pi
struct NonIntegerGenus : ForgeError {
    using ForgeError::ForgeError;
};

// welding left boundary edges; the mesh does not close up
struct NotWatertight : ForgeError {
    using ForgeError::ForgeError;
};

// an operation requiring support in the closed unit ball got a surface outside it
struct NotInBall : ForgeError {
    using ForgeError::ForgeError;
};

// an internal consistency check failed (would falsify the implementation)
struct ContradictionDetected : ForgeError {
    using ForgeError::ForgeError;
};

struct NonPositiveEnergy : ForgeError {
    using ForgeError::ForgeError;
};

}  // namespace hforge
