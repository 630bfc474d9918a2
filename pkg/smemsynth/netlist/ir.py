from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Literal, Optional, Tuple, Union

from smemsynth.base import NetlistError

ParamValue = Union[int, str]
Endpoint = Tuple[str, str]
Direction = Literal["in", "out"]

CELL_KINDS: Tuple[str, ...] = (
    "baplus_instance",
    "decoder",
    "wordline_gate",
    "tristate_driver",
    "column_mux",
    "output_reg",
    "pa_increment",
    "pa_align",
    "addr_translate",
    "and",
    "or",
    "inv",
    "submodule",
)

# cells holding state across the clock edge
SEQUENTIAL_KINDS: Tuple[str, ...] = ("baplus_instance", "output_reg")

HIERARCHY_SEP = "/"


@dataclass
class Cell:
    name: str
    kind: str
    params: Dict[str, ParamValue] = field(default_factory=dict)
    # pin -> net, filled by Module.connect
    pins: Dict[str, str] = field(default_factory=dict)

    def param(self, key: str, default: Optional[int] = None) -> int:
        value = self.params.get(key, default)
        if value is None:
            raise NetlistError(f"{self.name}: missing parameter '{key}'")
        return int(value)


@dataclass
class Net:
    name: str
    width: int
    drivers: List[Endpoint] = field(default_factory=list)
    sinks: List[Endpoint] = field(default_factory=list)


@dataclass(frozen=True)
class Port:
    name: str
    direction: Direction
    width: int


class Module:
    """
    One level of the netlist hierarchy.

    Port nets share their port's name. Cells of kind ``submodule`` instantiate
    another module of the same NetlistIR by its ``module`` parameter, with pins
    named after the child's ports.

    Methods:
        add_port(name, direction, width) -> Port:
            Declares a port and its net.

        add_net(name, width) -> Net:
            Declares an internal net.

        add_cell(name, kind, **params) -> Cell:
            Declares a cell.

        connect(net, cell, pin, role) -> None:
            Attaches a cell pin to a net as driver or sink.
    """

    def __init__(self, name: str) -> None:
        self.name = name
        self.ports: Dict[str, Port] = {}
        self.nets: Dict[str, Net] = {}
        self.cells: Dict[str, Cell] = {}

    def add_port(self, name: str, direction: Direction, width: int) -> Port:
        if name in self.ports:
            raise NetlistError(f"{self.name}: duplicate port '{name}'")
        port = Port(name, direction, width)
        self.ports[name] = port
        self.add_net(name, width)
        return port

    def add_net(self, name: str, width: int) -> Net:
        if name in self.nets:
            raise NetlistError(f"{self.name}: duplicate net '{name}'")
        if width < 1:
            raise NetlistError(f"{self.name}: net '{name}' has width {width}")
        net = Net(name, width)
        self.nets[name] = net
        return net

    def add_cell(self, name: str, kind: str, **params: ParamValue) -> Cell:
        if name in self.cells:
            raise NetlistError(f"{self.name}: duplicate cell '{name}'")
        if kind not in CELL_KINDS:
            raise NetlistError(f"{self.name}: cell '{name}' has unknown kind '{kind}'")
        cell = Cell(name, kind, dict(params))
        self.cells[name] = cell
        return cell

    def connect(self, net: str, cell: str, pin: str, role: Literal["drive", "sink"]) -> None:
        if net not in self.nets:
            raise NetlistError(f"{self.name}: connection to unknown net '{net}'")
        if cell not in self.cells:
            raise NetlistError(f"{self.name}: connection to unknown cell '{cell}'")
        target = self.cells[cell]
        if pin in target.pins:
            raise NetlistError(f"{self.name}: pin {cell}.{pin} connected twice")
        target.pins[pin] = net
        endpoints = self.nets[net].drivers if role == "drive" else self.nets[net].sinks
        endpoints.append((cell, pin))

    def drive(self, cell: str, pin: str, net: str) -> None:
        self.connect(net, cell, pin, "drive")

    def sink(self, cell: str, pin: str, net: str) -> None:
        self.connect(net, cell, pin, "sink")

    def cells_of(self, kind: str) -> List[Cell]:
        return [cell for cell in self.cells.values() if cell.kind == kind]

    def pin_role(self, cell: str, pin: str) -> str:
        net = self.nets[self.cells[cell].pins[pin]]
        return "drive" if (cell, pin) in net.drivers else "sink"


@dataclass
class NetlistIR:
    """
    A hierarchical netlist: named modules, the top module name and design attributes.

    Attributes:
        top (str): Name of the top module.
        modules (Dict[str, Module]): Every module, top included.
        attrs (Dict[str, str]): Design metadata (design kind, configuration, PPA figures).
    """

    top: str
    modules: Dict[str, Module] = field(default_factory=dict)
    attrs: Dict[str, str] = field(default_factory=dict)

    @property
    def top_module(self) -> Module:
        return self.modules[self.top]

    @property
    def ports(self) -> Dict[str, Port]:
        return self.top_module.ports

    def add_module(self, module: Module) -> Module:
        if module.name in self.modules:
            raise NetlistError(f"duplicate module '{module.name}'")
        self.modules[module.name] = module
        return module

    def attr_int(self, key: str) -> int:
        return int(self.attrs[key])

    def walk(self, module: Optional[str] = None, prefix: str = "") -> Iterator[Tuple[str, Cell]]:
        """Yields (hierarchical name, cell) for every leaf cell below a module."""
        for cell in self.modules[module or self.top].cells.values():
            if cell.kind == "submodule":
                child = str(cell.params["module"])
                yield from self.walk(child, f"{prefix}{cell.name}{HIERARCHY_SEP}")
            else:
                yield f"{prefix}{cell.name}", cell

    def count(self, kind: str) -> int:
        return sum(1 for _, cell in self.walk() if cell.kind == kind)


def flatten(ir: NetlistIR) -> Module:
    """
    Inlines every submodule instance into one flat module.

    Child cells and internal nets are renamed ``<instance>/<name>``; child port
    nets merge into the parent net bound to the instance pin.

    Args:
        ir (NetlistIR): The hierarchical netlist.

    Returns:
        Module: A flat copy named after the top module.

    Raises:
        NetlistError: On unknown modules, unbound child ports or recursive instantiation.
    """
    flat = Module(ir.top)
    top = ir.top_module
    for port in top.ports.values():
        flat.add_port(port.name, port.direction, port.width)
    _inline(ir, top, flat, "", {name: name for name in top.ports}, (ir.top,))
    return flat


def _inline(
    ir: NetlistIR,
    module: Module,
    flat: Module,
    prefix: str,
    bindings: Dict[str, str],
    stack: Tuple[str, ...],
) -> None:
    net_map: Dict[str, str] = dict(bindings)
    for net in module.nets.values():
        # an unbound child port keeps a private net
        if net.name in module.ports and net.name in net_map:
            continue
        flat_name = f"{prefix}{net.name}"
        flat.add_net(flat_name, net.width)
        net_map[net.name] = flat_name

    for cell in module.cells.values():
        if cell.kind != "submodule":
            flat_cell = flat.add_cell(f"{prefix}{cell.name}", cell.kind, **cell.params)
            for pin, net in cell.pins.items():
                flat.connect(net_map[net], flat_cell.name, pin, module.pin_role(cell.name, pin))
            continue

        child_name = str(cell.params.get("module", ""))
        if child_name not in ir.modules:
            raise NetlistError(f"{cell.name}: unknown module '{child_name}'")
        if child_name in stack:
            raise NetlistError(f"{cell.name}: recursive instantiation of '{child_name}'")
        child_bindings = {pin: net_map[net] for pin, net in cell.pins.items()}
        _inline(
            ir,
            ir.modules[child_name],
            flat,
            f"{prefix}{cell.name}{HIERARCHY_SEP}",
            child_bindings,
            stack + (child_name,),
        )
