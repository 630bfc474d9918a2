def ba_instance_name(r: int, c: int, k: int) -> str:
    """Name of the BA+ instance k of bank (r, c) in a 1R-1W SRAM."""
    return f"ba_r{r}_c{c}_k{k}"
