from .checker import Violation, check_wellformed
from .ir import CELL_KINDS, HIERARCHY_SEP, SEQUENTIAL_KINDS, Cell, Module, Net, NetlistIR, ParamValue, Port, flatten
from .sram import (
    AddressFields,
    AddressLayout,
    build_sram_module,
    generate_sram,
    join_address,
    split_address,
    sram_config,
)
from .text import format_netlist, parse_netlist, read_netlist, write_netlist
from .verilog import emit_hdl, format_hdl

__all__ = [
    "AddressFields",
    "AddressLayout",
    "CELL_KINDS",
    "HIERARCHY_SEP",
    "Cell",
    "Module",
    "Net",
    "NetlistIR",
    "ParamValue",
    "Port",
    "SEQUENTIAL_KINDS",
    "Violation",
    "build_sram_module",
    "check_wellformed",
    "emit_hdl",
    "flatten",
    "format_hdl",
    "format_netlist",
    "generate_sram",
    "join_address",
    "parse_netlist",
    "read_netlist",
    "split_address",
    "sram_config",
    "write_netlist",
]
