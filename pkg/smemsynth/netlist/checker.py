from dataclasses import dataclass
from typing import Dict, List, Set

from .ir import CELL_KINDS, Module, NetlistIR


@dataclass(frozen=True)
class Violation:
    rule: str
    target: str
    detail: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.target}: {self.detail}"


def _check_module(ir: NetlistIR, module: Module, is_top: bool) -> List[Violation]:
    found: List[Violation] = []
    scope = module.name

    for net in module.nets.values():
        port = module.ports.get(net.name)
        target = f"{scope}.{net.name}"
        if port is None:
            if not net.drivers:
                found.append(Violation("undriven", target, "net has no driver"))
            if not net.sinks:
                found.append(Violation("unloaded", target, "net has no sink"))
        elif port.direction == "in" and net.drivers:
            found.append(Violation("driven-input", target, "input port net driven inside the module"))
        elif port.direction == "out" and not net.drivers and not is_top:
            found.append(Violation("undriven", target, "output port has no driver"))

        if len(net.drivers) > 1:
            kinds = {module.cells[cell].kind for cell, _ in net.drivers}
            if kinds != {"tristate_driver"}:
                drivers = ", ".join(f"{cell}.{pin}" for cell, pin in net.drivers)
                found.append(Violation("multi-driver", target, f"non-tristate drivers {drivers}"))

    for cell in module.cells.values():
        target = f"{scope}.{cell.name}"
        if cell.kind not in CELL_KINDS:
            found.append(Violation("unknown-kind", target, cell.kind))
        for pin, net in cell.pins.items():
            if net not in module.nets:
                found.append(Violation("dangling-pin", target, f"pin {pin} on missing net {net}"))
        if cell.kind != "submodule":
            continue

        child = ir.modules.get(str(cell.params.get("module", "")))
        if child is None:
            found.append(Violation("unknown-module", target, str(cell.params.get("module"))))
            continue
        for pin, net in cell.pins.items():
            port = child.ports.get(pin)
            if port is None:
                found.append(Violation("unknown-pin", target, f"{child.name} has no port {pin}"))
            elif net in module.nets and module.nets[net].width != port.width:
                found.append(
                    Violation(
                        "width-mismatch",
                        target,
                        f"pin {pin} is {port.width} bits, net {net} is {module.nets[net].width}",
                    )
                )
    return found


def _find_cycle(ir: NetlistIR) -> List[Violation]:
    children: Dict[str, Set[str]] = {
        name: {
            str(cell.params.get("module"))
            for cell in module.cells.values()
            if cell.kind == "submodule"
        }
        for name, module in ir.modules.items()
    }
    state: Dict[str, int] = {}
    found: List[Violation] = []

    def visit(name: str) -> None:
        state[name] = 1
        for child in sorted(children.get(name, ())):
            if state.get(child) == 1:
                found.append(Violation("cyclic-hierarchy", name, f"instantiates ancestor {child}"))
            elif child in ir.modules and child not in state:
                visit(child)
        state[name] = 2

    for name in sorted(ir.modules):
        if name not in state:
            visit(name)
    return found


def check_wellformed(ir: NetlistIR) -> List[Violation]:
    """
    Checks the structural invariants of a netlist.

    Every internal net needs a driver and a sink, only tri-state drivers may
    share a net, names must resolve and the module hierarchy must be acyclic.

    Args:
        ir (NetlistIR): The netlist.

    Returns:
        List[Violation]: Empty when the netlist is well formed.
    """
    if not ir.modules:
        return []
    found: List[Violation] = []
    if ir.top not in ir.modules:
        found.append(Violation("unknown-module", ir.top, "top module is missing"))
    for name in sorted(ir.modules):
        found.extend(_check_module(ir, ir.modules[name], name == ir.top))
    found.extend(_find_cycle(ir))
    return found
