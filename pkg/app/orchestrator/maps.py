from app.grid import parse_map
from app.models.grid import GridMap

BUILTIN_MAPS: dict[str, str] = {
    "open5": "\n".join(["....."] * 5),
    "open7": "\n".join(["......."] * 7),
    "open11": "\n".join(["..........."] * 11),
    "pillars7": "\n".join([
        ".......",
        ".#...#.",
        ".......",
        "...#...",
        ".......",
        ".#...#.",
        ".......",
    ]),
    "shelves9x5": "\n".join([
        ".........",
        ".###.###.",
        ".........",
        ".###.###.",
        ".........",
    ]),
}


def builtin_map(name: str) -> GridMap:
    if name not in BUILTIN_MAPS:
        raise KeyError(f"Unknown built-in map {name!r}; choose from {', '.join(BUILTIN_MAPS)}")
    return parse_map(BUILTIN_MAPS[name])
