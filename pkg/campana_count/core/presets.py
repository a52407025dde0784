"""Named problem presets.

Each preset fixes a diagonal form and weights. It can be read either as a
Campana orbifold (k, c, m) or as the diagonal counting problem
sum d_i zeta_i u_i^(m~_i) = 0 with d = c, zeta = 1 and m~_i = k * m_i.

- quadratic7: the 7-variable indefinite quadratic used for the end-to-end
  comparison (k=1, m=2, so m~ = 2)
- ternary: x^2 + y^2 - z^2 in squareful variables, smallest mixed-sign case
- borderline16: k=2 with 16 weights of 2, where theta = 0 exactly
- admissible17: k=2 with 17 weights of 2, the smallest admissible case
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import DomainError
from .orbifold import CampanaOrbifold


@dataclass(frozen=True)
class Preset:
    """A named (k, c, m) configuration."""

    name: str
    k: int
    c: Tuple[int, ...]
    m: Tuple[int, ...]
    description: str = ""

    @property
    def d(self) -> Tuple[int, ...]:
        return self.c

    @property
    def zeta(self) -> Tuple[int, ...]:
        return (1,) * len(self.c)

    @property
    def m_tilde(self) -> Tuple[int, ...]:
        return tuple(self.k * mi for mi in self.m)

    def to_orbifold(self) -> CampanaOrbifold:
        return CampanaOrbifold.from_lists(self.k, self.c, self.m)


PRESETS: Dict[str, Preset] = {
    "quadratic7": Preset(
        "quadratic7",
        k=1,
        c=(1, 1, 1, 1, -1, -1, -1),
        m=(2,) * 7,
        description="u0^2+u1^2+u2^2+u3^2 = u4^2+u5^2+u6^2",
    ),
    "ternary": Preset(
        "ternary",
        k=1,
        c=(1, 1, -1),
        m=(2, 2, 2),
        description="x^2 + y^2 = z^2 with squareful coordinates",
    ),
    "borderline16": Preset(
        "borderline16",
        k=2,
        c=(1,) * 8 + (-1,) * 8,
        m=(2,) * 16,
        description="16 squareful squares: theta = 0, just outside the theorem",
    ),
    "admissible17": Preset(
        "admissible17",
        k=2,
        c=(1,) * 9 + (-1,) * 8,
        m=(2,) * 17,
        description="17 squareful squares: smallest admissible configuration",
    ),
}


def get_preset(name: str) -> Preset:
    """Retrieve a preset by name.

    Raises:
        DomainError: if no preset has that name.
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise DomainError(f"Unknown preset '{name}'. Available: {list_presets()}") from None


def list_presets() -> List[str]:
    return sorted(PRESETS)
