#ifndef VACMIX_CONSTANTS_HPP
#define VACMIX_CONSTANTS_HPP

// Internal unit system: Hartree atomic units (hbar = e = a0 = m_e = 1).
// All I/O is in eV, nm, fs, e*a0; conversions happen at the boundaries.

namespace vacmix {

// CODATA 2018
inline constexpr double kFineStructure = 7.2973525693e-3;
inline constexpr double kHartreeEV     = 27.211386245988;    // E_h in eV
inline constexpr double kHbarEVs       = 6.582119569e-16;    // hbar in eV*s
inline constexpr double kBohrRadiusM   = 5.29177210903e-11;  // a0 in m
inline constexpr double kElemChargeC   = 1.602176634e-19;    // e in C
inline constexpr double kEps0SI        = 8.8541878128e-12;   // F/m
inline constexpr double kSpeedOfLight  = 299792458.0;        // m/s

// One atomic time unit (hbar/E_h) in femtoseconds.
inline constexpr double kAtomicTimeFs = kHbarEVs / kHartreeEV * 1e15;

inline constexpr double ev_to_hartree(double ev) { return ev / kHartreeEV; }
inline constexpr double hartree_to_ev(double ha) { return ha * kHartreeEV; }
inline constexpr double fs_to_atomic(double fs) { return fs / kAtomicTimeFs; }
inline constexpr double atomic_to_fs(double t) { return t * kAtomicTimeFs; }

// Spectral densities J are stored internally in Hartree/(e*a0)^2; files carry
// eV/(e*a0)^2. gamma = 2*pi*J and lambda share the same unit.
inline constexpr double jdensity_ev_to_internal(double j) { return j / kHartreeEV; }
inline constexpr double jdensity_internal_to_ev(double j) { return j * kHartreeEV; }

// J(omega) = omega^2/(hbar*pi*eps0*c^2) * Im G  converted from SI (Im G in 1/m,
// omega in eV) to eV/(e*a0)^2:  J_ev = kImGreenPrefactor * omega_ev^2 * ImG.
inline constexpr double kImGreenPrefactor =
    kElemChargeC * kElemChargeC * kElemChargeC * kBohrRadiusM * kBohrRadiusM /
    (3.14159265358979323846 * kEps0SI * kSpeedOfLight * kSpeedOfLight *
     (kHbarEVs * kElemChargeC) * (kHbarEVs * kElemChargeC));

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vacmix

#endif
