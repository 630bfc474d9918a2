from pathlib import Path
from typing import Dict, List, Optional, Union

from smemsynth.base import NetlistError, NetlistParseError
from smemsynth.utils import logger

from .ir import Module, NetlistIR, ParamValue

HEADER = "# smemsynth netlist"


def _format_params(params: Dict[str, ParamValue]) -> str:
    return " ".join(f"{key}={value}" for key, value in sorted(params.items()))


def _parse_value(text: str) -> ParamValue:
    try:
        return int(text)
    except ValueError:
        return text


def format_netlist(ir: NetlistIR) -> str:
    lines: List[str] = [HEADER]
    for key, value in sorted(ir.attrs.items()):
        lines.append(f"attr {key}={value}")
    lines.append(f"top {ir.top}")

    for name in sorted(ir.modules):
        module = ir.modules[name]
        lines.append(f"module {name}")
        for port in sorted(module.ports.values(), key=lambda port: port.name):
            lines.append(f"port {port.name} {port.direction} {port.width}")
        for net in sorted(module.nets.values(), key=lambda net: net.name):
            if net.name not in module.ports:
                lines.append(f"net {net.name} {net.width}")
        for cell in sorted(module.cells.values(), key=lambda cell: cell.name):
            params = _format_params(cell.params)
            lines.append(f"cell {cell.name} {cell.kind}" + (f" {params}" if params else ""))
        for net in sorted(module.nets.values(), key=lambda net: net.name):
            for role, endpoints in (("drive", net.drivers), ("sink", net.sinks)):
                for cell, pin in sorted(endpoints):
                    lines.append(f"conn {net.name} {cell}.{pin} {role}")
        lines.append("endmodule")
    return "\n".join(lines) + "\n"


def write_netlist(ir: NetlistIR, path: Union[str, Path]) -> None:
    Path(path).write_text(format_netlist(ir), encoding="utf-8")
    logger.info(f"Netlist: Wrote {ir.top} to {path}")


def parse_netlist(text: str, source: str = "<netlist>") -> NetlistIR:
    """
    Parses the native line-oriented netlist format.

    Args:
        text (str): Netlist text.
        source (str): Name used in error locations.

    Returns:
        NetlistIR: The parsed netlist.

    Raises:
        NetlistParseError: On unknown statements, bad arity or duplicate names.
    """
    top: Optional[str] = None
    attrs: Dict[str, str] = {}
    modules: List[Module] = []
    current: Optional[Module] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        keyword, args = words[0], words[1:]
        where = f"{source}:{lineno}"

        try:
            if keyword == "attr" and current is None:
                for item in args:
                    key, _, value = item.partition("=")
                    attrs[key] = value
            elif keyword == "top" and len(args) == 1:
                top = args[0]
            elif keyword == "module" and len(args) == 1 and current is None:
                current = Module(args[0])
            elif keyword == "endmodule" and not args and current is not None:
                modules.append(current)
                current = None
            elif current is None:
                raise NetlistParseError(f"'{keyword}' outside a module")
            elif keyword == "port" and len(args) == 3 and args[1] in ("in", "out"):
                current.add_port(args[0], args[1], int(args[2]))
            elif keyword == "net" and len(args) == 2:
                current.add_net(args[0], int(args[1]))
            elif keyword == "cell" and len(args) >= 2:
                params = {}
                for item in args[2:]:
                    key, sep, value = item.partition("=")
                    if not sep:
                        raise NetlistParseError(f"parameter '{item}' is not key=value")
                    params[key] = _parse_value(value)
                current.add_cell(args[0], args[1], **params)
            elif keyword == "conn" and len(args) == 3 and args[2] in ("drive", "sink"):
                cell, dot, pin = args[1].rpartition(".")
                if not dot:
                    raise NetlistParseError(f"endpoint '{args[1]}' is not <cell>.<pin>")
                current.connect(args[0], cell, pin, args[2])
            else:
                raise NetlistParseError(f"malformed '{keyword}' statement")
        except NetlistError as exc:
            raise NetlistParseError(f"{where}: {exc.message}")
        except ValueError as exc:
            raise NetlistParseError(f"{where}: {exc}")

    if current is not None:
        raise NetlistParseError(f"{source}: module '{current.name}' is missing endmodule")
    if top is None:
        raise NetlistParseError(f"{source}: missing top statement")

    ir = NetlistIR(top=top, attrs=attrs)
    for module in modules:
        try:
            ir.add_module(module)
        except NetlistError as exc:
            raise NetlistParseError(f"{source}: {exc.message}")
    if top not in ir.modules:
        raise NetlistParseError(f"{source}: top module '{top}' is not defined")
    return ir


def read_netlist(path: Union[str, Path]) -> NetlistIR:
    return parse_netlist(Path(path).read_text(encoding="utf-8"), str(path))
