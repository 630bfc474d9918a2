from .compare import (
    DEFAULT_WINDOWS,
    PAComparison,
    PAModel,
    WindowPoint,
    bank_config,
    bank_estimate,
    compare_pa_ppa,
    pa_model,
    sweep_windows,
    write_comparison,
    write_sweep,
)
from .generator import generate_pa_sm, generate_pa_tm
from .window import (
    BOUNDARIES,
    Boundary,
    PAWindowSpec,
    PixelLocation,
    WindowPlan,
    map_pixel,
    pack_window,
    random_image,
    read_window,
    reference_window,
    serving_bank,
    store_image,
    unpack_window,
    window_access_plan,
)

__all__ = [
    "BOUNDARIES",
    "Boundary",
    "DEFAULT_WINDOWS",
    "PAComparison",
    "PAModel",
    "PAWindowSpec",
    "PixelLocation",
    "WindowPlan",
    "WindowPoint",
    "bank_config",
    "bank_estimate",
    "compare_pa_ppa",
    "generate_pa_sm",
    "generate_pa_tm",
    "map_pixel",
    "pa_model",
    "pack_window",
    "random_image",
    "read_window",
    "reference_window",
    "serving_bank",
    "store_image",
    "sweep_windows",
    "unpack_window",
    "window_access_plan",
    "write_comparison",
    "write_sweep",
]
