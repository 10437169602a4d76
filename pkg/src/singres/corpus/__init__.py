"""Resolution files shipped with the package.

``cusp``, ``node``, ``tacnode`` and ``triple_point`` are plane curves
(x^2+y^3, x^2+y^2, x^2+y^4, x^3+y^3) resolved by explicit point blowups;
``a1_surface`` is x^2+y^2+z^2 resolved by one blowup (exceptional P^2 meeting
the strict transform in a conic).  ``e6`` (x^3+y^4) is ``from-poly`` output.
"""
from importlib import resources

from ..model import ResolutionData, parse_resolution


def names() -> list[str]:
    return sorted(
        p.name[:-5] for p in resources.files(__name__).iterdir() if p.name.endswith(".json")
    )


def read_bytes(name: str) -> bytes:
    return resources.files(__name__).joinpath(f"{name}.json").read_bytes()


def load(name: str) -> ResolutionData:
    return parse_resolution(read_bytes(name))


def load_all() -> dict[str, ResolutionData]:
    return {name: load(name) for name in names()}
