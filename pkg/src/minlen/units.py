"""Physical constants (CGS-Gaussian) and atomic-unit conversions.

Everything downstream works in Hartree atomic units, hbar = M = e = 1,
lengths in Bohr radii, energies in Hartree.  In these units the speed of
light is 1/alpha and the Bohr magneton is alpha/2.  CGS appears only at
the I/O boundary through the helpers below.
"""

from dataclasses import dataclass

from scipy import constants as sc

from .errors import DomainError

# Rounded |e| quoted in older tables; display only, never used in arithmetic.
LEGACY_ELECTRON_CHARGE_CGS = 4.8203e-10


@dataclass(frozen=True)
class Constants:
    """CODATA constants in CGS-Gaussian units."""

    # statC
    electron_charge_cgs: float = sc.e * sc.c * 10.0
    # g
    electron_mass_cgs: float = sc.m_e * 1e3
    # erg s
    hbar_cgs: float = sc.hbar * 1e7
    # cm / s
    speed_of_light_cgs: float = sc.c * 1e2
    # cm
    bohr_radius_cm: float = sc.physical_constants["Bohr radius"][0] * 1e2
    fine_structure: float = sc.fine_structure
    # erg / G
    bohr_magneton_cgs: float = sc.physical_constants["Bohr magneton"][0] * 1e3
    # erg
    hartree_erg: float = sc.physical_constants["Hartree energy"][0] * 1e7

    def __post_init__(self):
        self.check()

    @property
    def bohr_radius_m(self):
        return self.bohr_radius_cm * 1e-2

    @property
    def moment_unit_cgs(self):
        """Atomic unit of magnetic moment in erg/G (e * a0 in Gaussian units)."""
        return self.electron_charge_cgs * self.bohr_radius_cm

    def check(self, rtol=1e-9):
        """Verify the cross-identities between the stored constants."""
        e, M, hbar, c = (
            self.electron_charge_cgs,
            self.electron_mass_cgs,
            self.hbar_cgs,
            self.speed_of_light_cgs,
        )
        identities = {
            "bohr_radius": (self.bohr_radius_cm, hbar**2 / (M * e**2)),
            "fine_structure": (self.fine_structure, e**2 / (hbar * c)),
            "bohr_magneton": (self.bohr_magneton_cgs, e * hbar / (2 * M * c)),
            "hartree": (self.hartree_erg, e**2 / self.bohr_radius_cm),
        }
        for name, (stored, derived) in identities.items():
            if abs(stored - derived) > rtol * abs(derived):
                raise ValueError(
                    f"constant {name} inconsistent: stored {stored!r}, derived {derived!r}"
                )


CONSTANTS = Constants()

#: Fine-structure constant.
ALPHA = CONSTANTS.fine_structure
#: Speed of light in atomic units.
C_AU = 1.0 / ALPHA
#: Bohr magneton e*hbar/(2 M c) in atomic units.
BOHR_MAGNETON_AU = 0.5 * ALPHA


def length_to_atomic(x):
    """Convert a length in meters to Bohr radii."""
    if x < 0:
        raise DomainError(f"length must be non-negative, got {x!r}")
    return x / CONSTANTS.bohr_radius_m


def length_from_atomic(x):
    """Convert a length in Bohr radii to meters."""
    if x < 0:
        raise DomainError(f"length must be non-negative, got {x!r}")
    return x * CONSTANTS.bohr_radius_m


def energy_to_atomic(e_erg):
    """Convert an energy in erg to Hartree."""
    return e_erg / CONSTANTS.hartree_erg


def energy_from_atomic(e_au):
    """Convert an energy in Hartree to erg."""
    return e_au * CONSTANTS.hartree_erg


def moment_to_atomic(mu_cgs):
    """Convert a magnetic moment in erg/G to atomic units."""
    return mu_cgs / CONSTANTS.moment_unit_cgs


def moment_from_atomic(mu_au):
    """Convert a magnetic moment in atomic units to erg/G."""
    return mu_au * CONSTANTS.moment_unit_cgs


def moment_to_bohr_magnetons(mu):
    """Express a magnetic moment given in erg/G in Bohr magnetons."""
    return mu / CONSTANTS.bohr_magneton_cgs
