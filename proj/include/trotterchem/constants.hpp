#pragma once

namespace trotterchem {

// Numerical tolerances used across the library. All fixed, never tuned per call.
inline constexpr double kNormTol = 1e-12;        // state normalization
inline constexpr double kHermTol = 1e-12;        // hermiticity of dense operators
inline constexpr double kUnitaryTol = 1e-10;     // unitarity of gates / evolutions
inline constexpr double kImagResidueTol = 1e-8;  // allowed imaginary part of expectation values
inline constexpr double kCoeffDropTol = 1e-12;   // Pauli coefficients below this are dropped
inline constexpr double kCoeffImagTol = 1e-10;   // complex residue allowed on collected coefficients
inline constexpr double kClassAgreeRelTol = 1e-10;  // relative agreement inside a coefficient class
inline constexpr double kPhaseEquivTol = 1e-8;   // circuit equivalence up to global phase

}  // namespace trotterchem
