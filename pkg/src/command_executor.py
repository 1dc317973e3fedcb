"""
Command Executor - Run Subcommands
Registry of subcommand handlers behind the command-line front end. Each
handler returns machine records, table lines and an ok flag.
"""

import asyncio
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List

from src.diagrams import RectDiagram, parse_diagram
from src.exceptions import GrassmannianError, InconsistencyError, UsageError
from src.ext import ext_groups
from src.fullness import Verdict, certify_A_experimental, certify_B, certify_B_async
from src.lefschetz import (
    build,
    compare_AB,
    count_check,
    lefschetz_collection_table,
    verify_semiorthogonality,
    verify_semiorthogonality_async,
)
from src.reports import (
    certificate_record,
    ext_record,
    orbit_records,
    orbit_table,
    orthogonality_record,
    render_table,
    spec_record,
    staircase_record,
)
from src.staircase import complex_character_sum, connecting_ext_check, render, staircase
from src.utils.config import Config
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass
class CommandResult:
    """Output of one subcommand; ok=False maps to exit code 1"""

    ok: bool
    records: List[Dict[str, Any]] = field(default_factory=list)
    table: List[str] = field(default_factory=list)


class CommandExecutor:
    """
    Subcommand Execution Engine

    Handlers take a parameter dictionary and return a CommandResult. Errors
    are returned in the result dictionary, never raised.
    """

    def __init__(self, config: Config):
        """
        Initialize command executor

        Args:
            config: Configuration object
        """
        self.config = config
        self.cache = config.enable_caching

        # Subcommand handlers registry
        self.handlers: Dict[str, Callable] = {}
        self._register_default_handlers()

        logger.info("Command executor initialized")

    def _register_default_handlers(self):
        """Register default subcommand handlers"""
        self.register_handler("orbits", self._handle_orbits)
        self.register_handler("blocks", self._handle_blocks)
        self.register_handler("check-semiorth", self._handle_check_semiorth)
        self.register_handler("ext", self._handle_ext)
        self.register_handler("staircase", self._handle_staircase)
        self.register_handler("certify", self._handle_certify)
        self.register_handler("compare", self._handle_compare)

    def register_handler(self, command: str, handler: Callable):
        """
        Register a subcommand handler

        Args:
            command: Subcommand name
            handler: Handler function (async or sync)
        """
        self.handlers[command] = handler
        logger.debug(f"Registered handler for command: {command}")

    def execute(self, command: Dict[str, Any]) -> Dict[str, Any]:
        """
        Execute a single subcommand

        Args:
            command: Dictionary with 'command' and 'parameters'

        Returns:
            Result dictionary with 'success' and either 'result' or 'error';
            'error_kind' is 'usage' or 'inconsistency' on failure
        """
        name = command.get("command")
        parameters = command.get("parameters", {})

        handler = self.handlers.get(name)
        if not handler:
            logger.warning(f"No handler for command: {name}")
            return {"success": False, "error": f"Unknown command: {name}", "error_kind": "usage", "command": name}

        try:
            logger.info(f"Executing command: {name} with params: {parameters}")
            result = handler(parameters)
            return {"success": True, "result": result, "command": name}
        except InconsistencyError as e:
            logger.error(f"Internal inconsistency in {name}: {e.message}", exc_info=True)
            return {"success": False, "error": e.message, "error_kind": "inconsistency", "command": name}
        except GrassmannianError as e:
            logger.warning(f"Rejected {name}: {e.message}")
            return {"success": False, "error": e.message, "error_kind": "usage", "command": name}

    async def execute_async(self, command: Dict[str, Any]) -> Dict[str, Any]:
        """Async version of execute; sweeps use their parallel forms"""
        name = command.get("command")
        parameters = command.get("parameters", {})
        try:
            if name == "check-semiorth":
                return {"success": True, "result": await self._check_semiorth_async(parameters), "command": name}
            if name == "certify" and parameters.get("kind", "B") == "B":
                return {"success": True, "result": await self._certify_b_async(parameters), "command": name}
        except InconsistencyError as e:
            logger.error(f"Internal inconsistency in {name}: {e.message}", exc_info=True)
            return {"success": False, "error": e.message, "error_kind": "inconsistency", "command": name}
        except GrassmannianError as e:
            return {"success": False, "error": e.message, "error_kind": "usage", "command": name}
        return await asyncio.to_thread(self.execute, command)

    def execute_batch(self, commands: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
        """
        Execute multiple subcommands

        Args:
            commands: List of command dictionaries

        Returns:
            List of result dictionaries
        """
        return [self.execute(command) for command in commands]

    async def execute_batch_async(self, commands: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
        """Async version of execute_batch"""
        tasks = [self.execute_async(command) for command in commands]
        results = await asyncio.gather(*tasks)
        return list(results)

    # Parameter helpers

    def _context(self, params: Dict[str, Any]):
        n, k = params.get("n"), params.get("k")
        if n is None or k is None:
            raise UsageError("Both n and k are required")
        if n < 2 or not 1 <= k <= n - 1:
            raise UsageError(f"Need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
        if n > self.config.max_n:
            raise UsageError(f"n={n} exceeds the configured maximum {self.config.max_n}")
        return n, k

    def _diagram(self, params: Dict[str, Any], key: str = "diagram") -> RectDiagram:
        n, k = self._context(params)
        text = params.get(key)
        if text is None:
            raise UsageError(f"--{key} is required")
        return parse_diagram(text, n, k)

    def _positive(self, params: Dict[str, Any], key: str, default: int) -> int:
        value = params.get(key)
        if value is None:
            return default
        if value < 1:
            raise UsageError(f"--{key} must be at least 1, got {value}")
        return value

    def _jobs(self, params: Dict[str, Any]) -> int:
        return self._positive(params, "jobs", self.config.default_jobs)

    # Default Command Handlers

    def _handle_orbits(self, params: Dict[str, Any]) -> CommandResult:
        """Orbits of the cyclic action with minimal representatives"""
        n, k = self._context(params)
        return CommandResult(True, orbit_records(n, k), orbit_table(n, k))

    def _handle_blocks(self, params: Dict[str, Any]) -> CommandResult:
        """Lefschetz basis, supports and the collection grid"""
        n, k = self._context(params)
        spec = build(params.get("kind", "B"), n, k)
        rows = [[str(d), s] for d, s in spec.basis]
        table = render_table(["diagram", "support"], rows)
        table.append(f"supports {tuple(spec.supports)}, total {spec.object_count}")
        table.append("")
        grid = lefschetz_collection_table(spec)
        table.extend(render_table([str(i) for i in range(n)], grid))
        return CommandResult(count_check(spec), [spec_record(spec)], table)

    def _orthogonality_result(self, report) -> CommandResult:
        table = [
            f"{report.spec.kind.value} on Gr({report.spec.k},{report.spec.n}): "
            f"{report.checked} conditions, {len(report.violations)} violations",
            f"objects {report.object_count}, rk K_0 {report.k0_rank}",
        ]
        for v in report.violations:
            table.append(f"  Ext^{list(v.degrees)}(Σ^{v.source}U*({v.twist}), Σ^{v.target}U*) != 0")
        return CommandResult(report.verified, [orthogonality_record(report)], table)

    def _handle_check_semiorth(self, params: Dict[str, Any]) -> CommandResult:
        """Verify the semi-orthogonality of a decomposition"""
        n, k = self._context(params)
        spec = build(params.get("kind", "B"), n, k)
        jobs = self._jobs(params)
        if jobs > 1:
            report = asyncio.run(verify_semiorthogonality_async(spec, jobs, self.cache))
        else:
            report = verify_semiorthogonality(spec, self.cache)
        return self._orthogonality_result(report)

    async def _check_semiorth_async(self, params: Dict[str, Any]) -> CommandResult:
        n, k = self._context(params)
        spec = build(params.get("kind", "B"), n, k)
        report = await verify_semiorthogonality_async(spec, self._jobs(params), self.cache)
        return self._orthogonality_result(report)

    def _handle_ext(self, params: Dict[str, Any]) -> CommandResult:
        """Ext^•(Σ^λU*(t), Σ^μU*)"""
        source = self._diagram(params)
        target = self._diagram(params, "target") if params.get("target") is not None else source
        t = params.get("twist", 0) or 0
        ext = ext_groups(source, t, target, cache=self.cache)
        rows = [
            [q, ext.total_dim(q), ", ".join(f"{m}x{w}" for w, m in sorted(ext.by_degree[q].items(), reverse=True))]
            for q in ext.degrees
        ]
        table = [f"Ext^•(Σ^{source}U*({t}), Σ^{target}U*)"]
        table.extend(render_table(["degree", "dim", "summands"], rows) if rows else ["0 in all degrees"])
        return CommandResult(True, [ext_record(source, t, target, ext)], table)

    def _handle_staircase(self, params: Dict[str, Any]) -> CommandResult:
        """Staircase complex with its exactness checks"""
        lam = self._diagram(params)
        complex_ = staircase(lam)
        exact = complex_character_sum(complex_).is_zero()
        glued = connecting_ext_check(lam, cache=self.cache)
        table = render(complex_)
        table.append(f"character sum zero: {exact}; Ext^{lam.width} of the ends is one-dimensional: {glued}")
        record = staircase_record(complex_)
        record.update({"character_sum_zero": exact, "connecting_ext": glued})
        return CommandResult(exact and glued, [record], table)

    def _certificate_result(self, cert) -> CommandResult:
        table = [
            f"certify {cert.kind} on Gr({cert.k},{cert.n}): {cert.verdict.value}",
            f"{len(cert.transcripts)} targets, "
            f"{sum(t.iterations for t in cert.transcripts)} expansions, "
            f"{sum(len(t.rewrites) for t in cert.transcripts)} rewrites",
        ]
        if cert.bad_pairs:
            table.append("bad pairs: " + ", ".join(str(p) for p in cert.bad_pairs))
        for t in cert.transcripts:
            if t.verdict is not Verdict.CERTIFIED:
                table.append(f"  {t.target} (offset {t.offset}): {t.verdict.value}")
        return CommandResult(cert.verdict is Verdict.CERTIFIED, [certificate_record(cert)], table)

    def _handle_certify(self, params: Dict[str, Any]) -> CommandResult:
        """Generation certificate for B (via B') or, experimentally, for A"""
        n, k = self._context(params)
        kind = params.get("kind", "B")
        if kind == "B":
            jobs = self._jobs(params)
            cert = asyncio.run(certify_B_async(n, k, jobs)) if jobs > 1 else certify_B(n, k)
        elif kind == "A":
            budget = self._positive(params, "budget", self.config.rewrite_budget_factor)
            cert = certify_A_experimental(n, k, budget)
        else:
            raise UsageError(f"certify supports kinds A and B, got {kind}")
        return self._certificate_result(cert)

    async def _certify_b_async(self, params: Dict[str, Any]) -> CommandResult:
        n, k = self._context(params)
        return self._certificate_result(await certify_B_async(n, k, self._jobs(params)))

    def _handle_compare(self, params: Dict[str, Any]) -> CommandResult:
        """Compare the first blocks of A and B"""
        n, k = self._context(params)
        result = compare_AB(n, k)
        record = {"record": "compare", "n": n, "k": k, "result": result.value}
        return CommandResult(True, [record], [f"Gr({k},{n}): {result.value}"])
