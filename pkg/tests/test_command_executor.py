"""
Unit tests for Command Executor
Tests handler registration, each subcommand and error reporting
"""

import pytest

from src import ext as ext_module
from src.command_executor import CommandExecutor, CommandResult
from src.exceptions import InconsistencyError
from src.ext import ext_groups


@pytest.fixture
def executor(test_config):
    return CommandExecutor(test_config)


def run(executor, command, **parameters):
    return executor.execute({"command": command, "parameters": parameters})


class TestCommandExecutor:
    """Test command executor functionality"""

    def test_initialization(self, executor, test_config):
        """Test default handlers are registered"""
        assert executor.config == test_config
        for name in ("orbits", "blocks", "check-semiorth", "ext", "staircase", "certify", "compare"):
            assert name in executor.handlers

    def test_register_handler(self, executor):
        """Test custom handler registration"""
        executor.register_handler("custom", lambda params: CommandResult(True, table=["ok"]))
        outcome = run(executor, "custom")
        assert outcome["success"]
        assert outcome["result"].table == ["ok"]

    def test_unknown_command(self, executor):
        outcome = run(executor, "teleport", n=6, k=3)
        assert not outcome["success"]
        assert outcome["error_kind"] == "usage"
        assert "Unknown command" in outcome["error"]

    def test_inconsistency_is_reported(self, executor):
        """Test internal errors map to the inconsistency kind"""
        def broken(params):
            raise InconsistencyError("rules disagree")

        executor.register_handler("broken", broken)
        outcome = run(executor, "broken")
        assert outcome == {
            "success": False,
            "error": "rules disagree",
            "error_kind": "inconsistency",
            "command": "broken",
        }

    def test_caching_follows_config(self, test_config, mocker):
        """The caching flag is passed to every Ext computation of this executor"""
        spy = mocker.patch("src.command_executor.ext_groups", wraps=ext_groups)
        test_config.enable_caching = False
        uncached = CommandExecutor(test_config)
        assert uncached.cache is False
        assert run(uncached, "ext", n=4, k=2, diagram="0,0", twist=4)["success"]
        assert spy.call_args.kwargs["cache"] is False

    def test_executors_keep_their_own_caching(self, test_config, mocker):
        """Two executors with different settings do not affect each other"""
        cached = CommandExecutor(test_config)
        test_config.enable_caching = False
        CommandExecutor(test_config)
        spy = mocker.spy(ext_module, "_ext_cached")
        assert run(cached, "ext", n=4, k=2, diagram="1,0", twist=1)["success"]
        assert spy.called


class TestParameterValidation:
    """Test usage errors"""

    @pytest.mark.parametrize("parameters", [
        {"k": 3},
        {"n": 6},
        {"n": 1, "k": 1},
        {"n": 6, "k": 6},
        {"n": 6, "k": 0},
        {"n": 13, "k": 3},
    ])
    def test_bad_context(self, executor, parameters):
        outcome = executor.execute({"command": "orbits", "parameters": parameters})
        assert not outcome["success"]
        assert outcome["error_kind"] == "usage"

    def test_missing_diagram(self, executor):
        outcome = run(executor, "staircase", n=6, k=3)
        assert outcome["error_kind"] == "usage"
        assert "--diagram" in outcome["error"]

    def test_unparsable_diagram(self, executor):
        outcome = run(executor, "ext", n=6, k=3, diagram="a,b")
        assert outcome["error_kind"] == "usage"

    def test_staircase_needs_full_first_row(self, executor):
        outcome = run(executor, "staircase", n=6, k=3, diagram="2,1")
        assert not outcome["success"]
        assert outcome["error_kind"] == "usage"

    def test_certify_unknown_kind(self, executor):
        outcome = run(executor, "certify", n=6, k=3, kind="Bprime")
        assert outcome["error_kind"] == "usage"

    @pytest.mark.parametrize("budget", [0, -3])
    def test_budget_below_one_rejected(self, executor, budget):
        """A zero budget is an error, not the configured default"""
        outcome = run(executor, "certify", n=6, k=3, kind="A", budget=budget)
        assert not outcome["success"]
        assert outcome["error_kind"] == "usage"
        assert "--budget" in outcome["error"]

    @pytest.mark.parametrize("command", ["check-semiorth", "certify"])
    def test_jobs_below_one_rejected(self, executor, command):
        outcome = run(executor, command, n=5, k=2, jobs=0)
        assert outcome["error_kind"] == "usage"
        assert "--jobs" in outcome["error"]

    async def test_jobs_below_one_rejected_async(self, executor):
        outcome = await executor.execute_async(
            {"command": "check-semiorth", "parameters": {"n": 5, "k": 2, "jobs": 0}}
        )
        assert outcome["error_kind"] == "usage"


class TestHandlers:
    """Test each subcommand on small Grassmannians"""

    def test_orbits(self, executor):
        result = run(executor, "orbits", n=6, k=3)["result"]
        assert result.ok
        assert len(result.records) == 4
        assert result.table[-1] == "4 orbits, 20 diagrams"

    def test_blocks(self, executor):
        result = run(executor, "blocks", n=6, k=3)["result"]
        assert result.ok
        assert result.records[0]["supports"] == [6, 6, 4, 2, 2]
        assert "supports (6, 6, 4, 2, 2), total 20" in result.table

    def test_blocks_kind(self, executor):
        result = run(executor, "blocks", n=6, k=3, kind="A")["result"]
        assert result.records[0]["kind"] == "A"
        assert result.records[0]["supports"] == [6, 6, 6, 2]

    @pytest.mark.parametrize("kind", ["A", "B", "Bprime", "Aprime"])
    def test_check_semiorth(self, executor, kind):
        result = run(executor, "check-semiorth", n=5, k=2, kind=kind)["result"]
        assert result.ok
        assert result.records[0]["verified"] is True
        assert "0 violations" in result.table[0]

    def test_check_semiorth_with_jobs(self, executor):
        result = run(executor, "check-semiorth", n=5, k=2, jobs=2)["result"]
        assert result.ok

    def test_ext(self, executor):
        result = run(executor, "ext", n=4, k=2, diagram="0,0", twist=4)["result"]
        assert result.ok
        assert result.records[0]["degrees"][0]["degree"] == 4
        assert result.table[0] == "Ext^•(Σ^(0,0)U*(4), Σ^(0,0)U*)"

    def test_ext_vanishing(self, executor):
        result = run(executor, "ext", n=4, k=2, diagram="1,0", twist=1, target="0,0")["result"]
        assert result.records[0]["degrees"] == []
        assert result.table[-1] == "0 in all degrees"

    def test_staircase(self, executor):
        result = run(executor, "staircase", n=6, k=3, diagram="3,2,1")["result"]
        assert result.ok
        assert result.records[0]["character_sum_zero"] is True
        assert result.records[0]["connecting_ext"] is True
        assert result.table[0] == "[-4] Λ^6 V* ⊗ Σ^(2,1,0) U*(-1)"

    def test_certify_b(self, executor):
        result = run(executor, "certify", n=6, k=3)["result"]
        assert result.ok
        assert result.table[0] == "certify B on Gr(3,6): certified"

    def test_certify_a(self, executor):
        result = run(executor, "certify", n=6, k=3, kind="A")["result"]
        assert result.ok
        assert result.records[0]["budget"] == 120
        assert result.table[2] == "bad pairs: ((3,2,1),2), ((3,2,1),3)"

    def test_certify_a_budget(self, executor):
        result = run(executor, "certify", n=6, k=3, kind="A", budget=2)["result"]
        assert result.records[0]["budget"] == 240

    @pytest.mark.parametrize("n,k,expected", [
        (6, 3, "A_strictly_smaller"),
        (5, 2, "equal"),
        (6, 4, "equal"),
    ])
    def test_compare(self, executor, n, k, expected):
        result = run(executor, "compare", n=n, k=k)["result"]
        assert result.records == [{"record": "compare", "n": n, "k": k, "result": expected}]
        assert result.table == [f"Gr({k},{n}): {expected}"]


class TestBatchExecution:
    """Test batch and async execution"""

    def test_execute_batch(self, executor):
        outcomes = executor.execute_batch([
            {"command": "compare", "parameters": {"n": 6, "k": 3}},
            {"command": "orbits", "parameters": {"n": 4}},
        ])
        assert [o["success"] for o in outcomes] == [True, False]

    async def test_execute_async_semiorth(self, executor):
        outcome = await executor.execute_async(
            {"command": "check-semiorth", "parameters": {"n": 6, "k": 3, "jobs": 3}}
        )
        assert outcome["success"]
        assert outcome["result"].ok

    async def test_execute_async_certify(self, executor):
        outcome = await executor.execute_async({"command": "certify", "parameters": {"n": 5, "k": 2}})
        assert outcome["result"].table[0] == "certify B on Gr(2,5): certified"

    async def test_execute_async_usage_error(self, executor):
        outcome = await executor.execute_async({"command": "check-semiorth", "parameters": {"n": 6}})
        assert outcome["error_kind"] == "usage"

    async def test_execute_async_falls_back(self, executor):
        outcome = await executor.execute_async({"command": "compare", "parameters": {"n": 6, "k": 3}})
        assert outcome["result"].table == ["Gr(3,6): A_strictly_smaller"]

    async def test_execute_batch_async(self, executor):
        outcomes = await executor.execute_batch_async([
            {"command": "orbits", "parameters": {"n": 4, "k": 2}},
            {"command": "certify", "parameters": {"n": 4, "k": 2, "kind": "A"}},
        ])
        assert all(o["success"] for o in outcomes)
