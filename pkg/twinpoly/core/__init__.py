from . import linalg, polytope, poset
