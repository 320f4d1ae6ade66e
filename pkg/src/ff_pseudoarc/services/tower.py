"""
Torre finita: sucesion inversa de antidiagonales con signo, unidas por epimorfismos
antisimetricos, con el flip i -> -i en cada nivel.
"""

import logging
import random
from dataclasses import dataclass
from typing import Optional

from ff_pseudoarc.core.exceptions import NotInFamilyError, ValidationError
from ff_pseudoarc.core.structures import (
    RelStructure,
    StructureMap,
    antidiagonal_structure,
    compose,
    flip,
    is_antisymmetric,
    is_epimorphism,
    linear_graph,
)
from ff_pseudoarc.services.cap_amalgamation import even_antidiagonal_cover, signed_joint_cover
from ff_pseudoarc.services.membership import is_in_family_F, symmetric_members
from ff_pseudoarc.services.verifiers import VerificationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TowerTarget:
    """Estructura cubierta por el nivel `level` mediante `cover`."""

    structure: RelStructure
    level: int
    cover: StructureMap


@dataclass(frozen=True)
class Tower:
    levels: tuple[RelStructure, ...]
    bonds: tuple[StructureMap, ...]  # bonds[n]: nivel n+1 -> nivel n
    flips: tuple[StructureMap, ...]
    targets: tuple[TowerTarget, ...] = ()

    @property
    def top(self) -> RelStructure:
        return self.levels[-1]

    @property
    def height(self) -> int:
        return len(self.levels)

    def __repr__(self) -> str:
        sizes = ", ".join(str(level.graph) for level in self.levels)
        return f"Tower([{sizes}], targets={len(self.targets)})"


def new_tower() -> Tower:
    base = antidiagonal_structure(linear_graph("signed", 1))
    return Tower(levels=(base,), bonds=(), flips=(flip(base.graph),))


def extend_tower(tower: Tower, target: RelStructure) -> Tower:
    """
    Agrega un nivel que cubre al nivel superior (clamp) y a target (cubrimiento par
    por antidiagonal seguido de clamp).
    """
    if target.s is None:
        raise ValidationError("El objetivo necesita relacion s")
    if not is_in_family_F(target):
        raise NotInFamilyError(f"{target.s} no es sobreyectiva y conexa")

    cover, onto = even_antidiagonal_cover(target)
    level, bond, to_cover = signed_joint_cover(tower.top, cover)
    index = tower.height
    logger.debug(f"extend_tower: nivel {index} = {level.graph}, objetivo {target.s}")
    return Tower(
        levels=tower.levels + (level,),
        bonds=tower.bonds + (bond,),
        flips=tower.flips + (flip(level.graph),),
        targets=tower.targets + (TowerTarget(target, index, compose(onto, to_cover)),),
    )


def check_tower(tower: Tower) -> VerificationReport:
    report = VerificationReport("tower")
    if len(tower.bonds) != tower.height - 1 or len(tower.flips) != tower.height:
        report.record(False, f"{tower}: numero de enlaces o flips inconsistente")
        return report

    for n, (level, automorphism) in enumerate(zip(tower.levels, tower.flips)):
        report.record(
            is_epimorphism(automorphism, level, level) and automorphism(1) == -1,
            f"flip del nivel {n}",
        )
    for n, bond in enumerate(tower.bonds):
        upper, lower = tower.levels[n + 1], tower.levels[n]
        try:
            ok = is_epimorphism(bond, upper, lower) and is_antisymmetric(bond)
            coherent = compose(tower.flips[n], bond) == compose(bond, tower.flips[n + 1])
        except ValidationError as exc:
            ok = coherent = False
            logger.debug(f"enlace {n}: {exc}")
        report.record(ok, f"enlace {n}: {bond}")
        report.record(coherent, f"flip incoherente en el enlace {n}")
    for target in tower.targets:
        try:
            ok = is_epimorphism(target.cover, tower.levels[target.level], target.structure)
        except (ValidationError, IndexError):
            ok = False
        report.record(ok, f"objetivo {target.structure.s} en el nivel {target.level}")
    return report


def random_extensions(
    rng: random.Random, count: int, max_size: int = 3, tower: Optional[Tower] = None
) -> Tower:
    """Extiende con miembros simetricos de F elegidos al azar."""
    pool = symmetric_members(max_size)
    result = tower if tower is not None else new_tower()
    for _ in range(count):
        result = extend_tower(result, rng.choice(pool))
    return result
