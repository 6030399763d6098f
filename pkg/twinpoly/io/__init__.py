from .core import dumps, format_poset, loads, parse_poset, read_poset, write_poset
