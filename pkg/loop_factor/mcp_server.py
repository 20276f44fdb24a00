"""
MCP Server for loop factorization

Exposes the loop checks, the factorization, random loop generation and
octonion products to AI assistants as MCP tools.
"""

import asyncio
import json
import logging
from typing import Any, Dict, Optional

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import TextContent, Tool

from . import __version__, commands
from .errors import LoopFactorError
from .run_config import load_run_config

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Initialize MCP server
app = Server("loop-factor")


def _text(payload: Dict[str, Any]) -> list[TextContent]:
    return [TextContent(type="text", text=json.dumps(payload, indent=2))]


def _error(e: LoopFactorError) -> Dict[str, Any]:
    return {"error": str(e), "kind": type(e).__name__, "exit_code": e.exit_code}


# =============================================================================
# MCP Tool Handlers
# =============================================================================

@app.list_tools()
async def list_tools() -> list[Tool]:
    """List all available MCP tools."""
    return [
        Tool(
            name="check_loop",
            description="Check a loop document for group membership, reality, normalization at infinity and twisting. Returns the report with pole orders.",
            inputSchema={
                "type": "object",
                "properties": {
                    "loop": {"type": "object", "description": "Loop document (group, n, twist, entries)"},
                },
                "required": ["loop"],
            },
        ),
        Tool(
            name="factor_loop",
            description="Factor a real, normalized SO, CSp or G2 loop (optionally twisted) into simple elements. Returns the factor document.",
            inputSchema={
                "type": "object",
                "properties": {
                    "loop": {"type": "object", "description": "Loop document"},
                    "trace": {"type": "boolean", "description": "Include the reduction steps"},
                },
                "required": ["loop"],
            },
        ),
        Tool(
            name="random_loop",
            description="Generate a seeded random loop as a product of simple (or twisted) factors. Returns the loop and factor documents.",
            inputSchema={
                "type": "object",
                "properties": {
                    "group": {"type": "string", "enum": ["so", "csp", "g2", "gl"]},
                    "n": {"type": "integer", "minimum": 1, "description": "SO(n), CSp(n) or GL(n); ignored for g2"},
                    "factors": {"type": "integer", "minimum": 0},
                    "seed": {"type": "integer"},
                    "twist": {"type": "string", "enum": ["so-grassmannian", "so-u", "g2-so4", "csp-u"]},
                    "k": {"type": "integer", "minimum": 0},
                },
                "required": ["group"],
            },
        ),
        Tool(
            name="octonion_product",
            description="Product of two imaginary octonion units e_i * e_j (indices 1-7) as a sign and a unit index (0 is the real unit).",
            inputSchema={
                "type": "object",
                "properties": {
                    "i": {"type": "integer", "minimum": 1, "maximum": 7},
                    "j": {"type": "integer", "minimum": 1, "maximum": 7},
                },
                "required": ["i", "j"],
            },
        ),
    ]


@app.call_tool()
async def call_tool(name: str, arguments: Any) -> list[TextContent]:
    """Handle MCP tool calls."""
    arguments = arguments or {}
    try:
        if name == "check_loop":
            loop = arguments.get("loop")
            if not loop:
                raise ValueError("loop parameter is required")
            return await check_loop_handler(loop)
        elif name == "factor_loop":
            loop = arguments.get("loop")
            if not loop:
                raise ValueError("loop parameter is required")
            return await factor_loop_handler(loop, bool(arguments.get("trace", False)))
        elif name == "random_loop":
            group = arguments.get("group")
            if not group:
                raise ValueError("group parameter is required")
            return await random_loop_handler(
                group,
                int(arguments.get("n", 3)),
                arguments.get("factors"),
                arguments.get("seed"),
                arguments.get("twist"),
                int(arguments.get("k", 0)),
            )
        elif name == "octonion_product":
            if "i" not in arguments or "j" not in arguments:
                raise ValueError("i and j parameters are required")
            return await octonion_product_handler(int(arguments["i"]), int(arguments["j"]))
        else:
            raise ValueError(f"Unknown tool: {name}")
    except Exception as e:
        logger.error(f"Error in {name}: {str(e)}", exc_info=True)
        return [TextContent(type="text", text=f"Error: {str(e)}")]


async def check_loop_handler(loop: Dict[str, Any]) -> list[TextContent]:
    try:
        report = await asyncio.to_thread(commands.check, loop)
    except LoopFactorError as e:
        return _text(_error(e))
    return _text(report)


async def factor_loop_handler(loop: Dict[str, Any], trace: bool = False) -> list[TextContent]:
    """Factor a loop; exact arithmetic runs in a worker thread."""
    config = load_run_config()
    try:
        result = await asyncio.to_thread(
            commands.factor, loop, config.budget_multiplier, trace or config.trace
        )
    except LoopFactorError as e:
        logger.error(f"Factorization failed: {e}")
        return _text(_error(e))
    return _text(result)


async def random_loop_handler(
    group: str,
    n: int = 3,
    factors: Optional[int] = None,
    seed: Optional[int] = None,
    twist: Optional[str] = None,
    k: int = 0,
) -> list[TextContent]:
    config = load_run_config()
    try:
        loop_doc, factor_doc = await asyncio.to_thread(
            commands.random_loop,
            group,
            n,
            config.factors if factors is None else int(factors),
            config.seed if seed is None else int(seed),
            twist,
            k,
            config.entry_range,
            config.pole_range,
        )
    except LoopFactorError as e:
        return _text(_error(e))
    return _text({"loop": loop_doc, "factors": factor_doc})


async def octonion_product_handler(i: int, j: int) -> list[TextContent]:
    try:
        return _text(commands.octonion_product(i, j))
    except LoopFactorError as e:
        return _text(_error(e))


# =============================================================================
# Main Entry Point
# =============================================================================

def main() -> None:
    """Main entry point for the MCP server."""
    logger.info(f"Starting loop-factor MCP server v{__version__}")

    async def run_server():
        async with stdio_server() as (read_stream, write_stream):
            await app.run(
                read_stream,
                write_stream,
                app.create_initialization_options()
            )

    asyncio.run(run_server())


if __name__ == "__main__":
    main()
