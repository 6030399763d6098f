import json

from ..core.polytope import HRep, VRep
from ..core.poset import Poset
from ..errors import PosetFileError


def parse_poset(text):
    """
    Parse the text description of a poset.

    The format is line oriented. Blank lines and lines starting with "#" are ignored.
    The first meaningful line declares the size as ``d <n>`` and each following
    ``rel <i> <j>`` line states ``p_i < p_j``. The relation is transitively closed.

    Parameters
    ----------
    text : str
        The content to parse.

    Returns
    -------
    Poset
        The parsed poset on labels ``1, ..., n``.

    Raises
    ------
    PosetFileError
        On any malformed line, out of range label or cyclic relation.

    Examples
    --------
    >>> from twinpoly.io import parse_poset
    >>> parse_poset("# wedge\\nd 3\\nrel 2 1\\nrel 3 1\\n")
    Poset(d=3, relations=[(2, 1), (3, 1)])

    """
    d = None
    relations = []
    linenos = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        match line.split():
            case ["d", value]:
                if d is not None:
                    raise PosetFileError("duplicate size declaration", lineno)
                if relations:
                    raise PosetFileError("the size must be declared first", lineno)
                d = _parse_int(value, lineno)
                if d < 1:
                    raise PosetFileError(f"size must be positive, got {d}", lineno)
            case ["rel", i, j]:
                if d is None:
                    raise PosetFileError("relation given before the size", lineno)
                i, j = _parse_int(i, lineno), _parse_int(j, lineno)
                for label in (i, j):
                    if not 1 <= label <= d:
                        raise PosetFileError(
                            f"label {label} is out of range 1..{d}", lineno
                        )
                if i == j:
                    raise PosetFileError(
                        f"not a partial order: p{i} < p{i} is reflexive", lineno
                    )
                relations.append((i, j))
                linenos.append(lineno)
            case [keyword, *_] if keyword not in ("d", "rel"):
                raise PosetFileError(f"unknown keyword '{keyword}'", lineno)
            case _:
                raise PosetFileError(f"wrong number of fields in '{line}'", lineno)
    if d is None:
        raise PosetFileError("missing size declaration 'd <n>'")
    try:
        return Poset.from_relations(d, relations)
    except ValueError as error:
        lineno = _cycle_line(d, relations, linenos)
        raise PosetFileError(str(error), lineno) from None


def read_poset(fname):
    """
    Read a poset file. See `parse_poset` for the format.

    Errors are reported with the filename prepended.
    """
    with open(fname, "r", encoding="utf-8") as file:
        text = file.read()
    try:
        return parse_poset(text)
    except PosetFileError as error:
        raise PosetFileError(f"{fname}: {error}") from None


def format_poset(poset):
    """
    Format a poset in the text format, listing its cover relations only.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> from twinpoly.io import format_poset
    >>> print(format_poset(synthetics.chain(3)), end="")
    d 3
    rel 1 2
    rel 2 3

    """
    if poset.labels != tuple(range(1, poset.d + 1)):
        raise ValueError("only posets labelled 1, ..., d can be written")
    lines = [f"d {poset.d}"]
    lines.extend(f"rel {i} {j}" for i, j in poset.cover_relations())
    return "\n".join(lines) + "\n"


def write_poset(poset, fname):
    with open(fname, "w", encoding="utf-8") as file:
        file.write(format_poset(poset))


def dumps(obj):
    """
    Serialize a JSON-ready object the way the command line does.

    `VRep` and `HRep` instances are converted with their ``to_dict`` method. Two-space
    indentation is used so that loading and dumping again gives the same text.
    """
    if isinstance(obj, (VRep, HRep)):
        obj = obj.to_dict()
    return json.dumps(obj, indent=2)


def loads(text):
    """
    Load a JSON document, rebuilding `VRep` or `HRep` objects when recognized.
    """
    obj = json.loads(text)
    if isinstance(obj, dict) and "dim" in obj:
        if "vertices" in obj:
            return VRep.from_dict(obj)
        if "facets" in obj:
            return HRep.from_dict(obj)
    return obj


def _cycle_line(d, relations, linenos):
    """Line of the first relation that closes a cycle."""
    for stop in range(1, len(relations) + 1):
        try:
            Poset.from_relations(d, relations[:stop])
        except ValueError:
            return linenos[stop - 1]
    return None


def _parse_int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise PosetFileError(f"expected an integer, got '{token}'", lineno) from None
