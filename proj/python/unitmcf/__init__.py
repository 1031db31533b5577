try:
    from ._unitmcf import *  # noqa: F401,F403
except ImportError:  # plain CMake build: the module sits next to the package
    from _unitmcf import *  # noqa: F401,F403

__all__ = [
    "MultiGraph",
    "Instance",
    "parse_instance",
    "serialize_instance",
    "generate",
    "min_cost_circulation",
    "solve_instance",
    "min_cost_st_flow",
    "exhaustive_circulation_cost",
    "cycle_canceling_circulation_cost",
    "certify",
]
