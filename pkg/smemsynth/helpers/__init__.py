from .arguments import add_boundary_arg, add_explore_args, add_library_args, add_output_args
from .run_config import RunConfig, parse_bounds

__all__ = [
    "RunConfig",
    "add_boundary_arg",
    "add_explore_args",
    "add_library_args",
    "add_output_args",
    "parse_bounds",
]
