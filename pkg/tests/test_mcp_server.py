"""
Tests for MCP server functionality.

Note: These are basic structural tests. Full integration testing requires
an MCP client and is best done manually or with the MCP testing framework.
"""

import json

import pytest

from loop_factor.documents import identity_document
from loop_factor.loops import GroupContext
from loop_factor.mcp_server import (
    call_tool,
    check_loop_handler,
    factor_loop_handler,
    list_tools,
    octonion_product_handler,
    random_loop_handler,
)


def _payload(result):
    assert len(result) == 1
    return json.loads(result[0].text)


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Handlers read .loop-factor.yaml from the working directory."""
    monkeypatch.chdir(tmp_path)


class TestTools:
    """Tool listing."""

    @pytest.mark.asyncio
    async def test_list_tools(self):
        tools = await list_tools()
        assert [t.name for t in tools] == [
            "check_loop",
            "factor_loop",
            "random_loop",
            "octonion_product",
        ]
        assert all("required" in t.inputSchema for t in tools)


class TestHandlers:
    """Tool handlers."""

    @pytest.mark.asyncio
    async def test_octonion_product(self):
        result = _payload(await octonion_product_handler(1, 2))
        assert result == {"i": 1, "j": 2, "sign": -1, "unit": 5}

    @pytest.mark.asyncio
    async def test_octonion_product_bad_index(self):
        result = _payload(await octonion_product_handler(0, 9))
        assert result["exit_code"] == 1

    @pytest.mark.asyncio
    async def test_check_identity(self):
        result = _payload(await check_loop_handler(identity_document(GroupContext.so(3))))
        assert result["ok"] is True
        assert result["poles"] == []

    @pytest.mark.asyncio
    async def test_check_parse_error(self):
        result = _payload(await check_loop_handler({"group": "so", "n": 3}))
        assert result["kind"] == "ParseError"
        assert result["exit_code"] == 3

    @pytest.mark.asyncio
    async def test_random_then_factor(self):
        generated = _payload(await random_loop_handler("so", 3, 1, 0))
        assert len(generated["factors"]["factors"]) == 1

        result = _payload(await factor_loop_handler(generated["loop"], trace=True))
        assert result["residual"] == "identity"
        assert len(result["factors"]) == 1
        assert "steps" in result

    @pytest.mark.asyncio
    async def test_factor_gl_is_rejected(self):
        result = _payload(await factor_loop_handler(identity_document(GroupContext.gl(2))))
        assert result["kind"] == "NotAMember"
        assert result["exit_code"] == 1


class TestCallTool:
    """Dispatch through call_tool."""

    @pytest.mark.asyncio
    async def test_unknown_tool(self):
        result = await call_tool("scan_repo", {})
        assert result[0].text.startswith("Error: Unknown tool")

    @pytest.mark.asyncio
    async def test_missing_parameter(self):
        result = await call_tool("check_loop", {})
        assert "loop parameter is required" in result[0].text

    @pytest.mark.asyncio
    async def test_dispatch(self):
        result = _payload(await call_tool("octonion_product", {"i": 3, "j": 3}))
        assert result["sign"] == -1
        assert result["unit"] == 0
