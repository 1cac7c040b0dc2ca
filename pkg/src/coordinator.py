"""
Analysis Coordinator Module
---------------------------
This module provides the AnalysisCoordinator class, which receives requests from
the command-line surface, validates their parameters, parses sequence input and
calls the appropriate analyzer. Every result comes back as one dictionary with a
status; failures carry the exit code the CLI reports.
"""

import logging
import traceback

from src.analyzers.bitseq_core import SequenceFormat, parse_sequence
from src.analyzers.census import CountingSpec, EnumerationCensus, predicted_count
from src.analyzers.cube_model import (
    construct_cube,
    has_unique_decomposition_hint,
    longest_edge_in_smallest_cube,
    recognize_cube,
    standard_decompose,
)
from src.analyzers.error_complexity import (
    ConjectureScanner,
    ScanFilter,
    SearchBudget,
    celcs,
    klc_exhaustive,
    kmin_first_decrease,
    max_klc,
    predict_critical_ks,
    stability_from_klc,
)
from src.analyzers.linear_complexity import games_chan_lc, lc_by_factor_multiplicity
from src.analyzers.reports import CubeSummary, decimal_string
from src.errors import InvariantViolation, SeqCubeError, UnsupportedConfigurationError

SEQUENCE_PARAMS = ["text", "fmt"]


class AnalysisCoordinator:
    def __init__(self, budget=None, workers=None):
        """
        :param budget: SearchBudget - Caps for the exhaustive oracles.
        :param workers: int - Worker processes for data-parallel operations.
        """
        self.logger = logging.getLogger(self.__class__.__name__)
        self.budget = budget or SearchBudget.default()
        self.workers = workers

    def process_request(self, request_type, **kwargs):
        """
        Process one request and call the matching analyzer.

        Supported request types: lc, klc, kmin, spectrum, decompose, recognize,
        construct, maxklc, census, quad-audit, scan.

        :param request_type: str - Type of request.
        :param kwargs: dict - Parameters required for the specific request.
        :return: dict - status "success" with a "result" payload, or status
                 "error" with "message" and "exit_code".
        """
        self.logger.info(f"Processing request: {request_type}")
        handlers = {
            "lc": self._handle_lc_request,
            "klc": self._handle_klc_request,
            "kmin": self._handle_kmin_request,
            "spectrum": self._handle_spectrum_request,
            "decompose": self._handle_decompose_request,
            "recognize": self._handle_recognize_request,
            "construct": self._handle_construct_request,
            "maxklc": self._handle_maxklc_request,
            "census": self._handle_census_request,
            "quad-audit": self._handle_quad_audit_request,
            "scan": self._handle_scan_request,
        }
        try:
            self._validate_request_parameters(request_type, kwargs)
            results = {"status": "success", "message": "Request processed successfully"}
            results.update(handlers[request_type](kwargs))

        except SeqCubeError as e:
            self.logger.info(f"{e.__class__.__name__}: {e}")
            self.logger.debug(traceback.format_exc())
            results = {"status": "error", "message": str(e), "exit_code": e.exit_code}

        except ValueError as e:
            error_msg = f"Invalid request parameters: {str(e)}"
            self.logger.info(error_msg)
            results = {"status": "error", "message": error_msg, "exit_code": 3}

        except Exception as e:
            error_msg = f"Error processing request: {str(e)}"
            self.logger.error(error_msg)
            self.logger.debug(traceback.format_exc())
            results = {"status": "error", "message": error_msg, "exit_code": 5}

        return results

    def _validate_request_parameters(self, request_type, kwargs):
        """
        Validate that the required parameters are provided for a given request type.

        :raises ValueError: Unknown request type or missing parameters.
        """
        required_params = {
            "lc": SEQUENCE_PARAMS,
            "klc": SEQUENCE_PARAMS + ["k"],
            "kmin": SEQUENCE_PARAMS,
            "spectrum": SEQUENCE_PARAMS,
            "decompose": SEQUENCE_PARAMS,
            "recognize": SEQUENCE_PARAMS,
            "construct": ["n", "edges", "anchor", "offsets"],
            "maxklc": ["n", "k"],
            "census": ["n", "edge_sets"],
            "quad-audit": ["n"],
            "scan": ["n", "scan_filter"],
        }

        if request_type not in required_params:
            raise ValueError(f"Unknown request type: {request_type}")

        missing_params = [
            param for param in required_params[request_type] if kwargs.get(param) is None
        ]
        if missing_params:
            raise ValueError(f"Missing required parameters: {', '.join(missing_params)}")

    def _sequence(self, kwargs):
        return parse_sequence(kwargs["text"], SequenceFormat(kwargs["fmt"]), kwargs.get("n"))

    def _budget_usage(self):
        return {"max_patterns": self.budget.max_patterns, "max_weight": self.budget.max_weight}

    def _handle_lc_request(self, kwargs):
        s = self._sequence(kwargs)
        complexity = games_chan_lc(s)
        oracle = lc_by_factor_multiplicity(s)
        if complexity != oracle:
            raise InvariantViolation(
                f"Games-Chan gives {complexity}, factor multiplicity gives {oracle} "
                f"for {s.to_text()}"
            )
        return {"result": {"n": s.n, "linear_complexity": complexity, "cross_check": True}}

    def _handle_klc_request(self, kwargs):
        s = self._sequence(kwargs)
        k = kwargs["k"]
        self.logger.info(f"k-error linear complexity at k={k} for period {s.period}")
        value = klc_exhaustive(s, k, self.budget, self.workers)
        return {
            "result": {
                "n": s.n,
                "k": k,
                "klc": value,
                "linear_complexity": games_chan_lc(s),
                "stable": stability_from_klc(s, k, value),
                "k_min": None if s.is_zero() else kmin_first_decrease(s),
            },
            "budget": self._budget_usage(),
        }

    def _handle_kmin_request(self, kwargs):
        s = self._sequence(kwargs)
        return {
            "result": {
                "n": s.n,
                "linear_complexity": games_chan_lc(s),
                "k_min": kmin_first_decrease(s),
            }
        }

    def _handle_spectrum_request(self, kwargs):
        s = self._sequence(kwargs)
        spectrum = celcs(s, self.budget, self.workers)
        return {
            "result": {"n": s.n, "points": [list(p) for p in spectrum.points]},
            "budget": self._budget_usage(),
        }

    def _handle_decompose_request(self, kwargs):
        s = self._sequence(kwargs)
        decomposition = standard_decompose(s)
        result = {
            "n": s.n,
            "linear_complexity": games_chan_lc(s),
            "cubes": [CubeSummary.from_cube(c).model_dump() for c in decomposition.cubes],
            "lone_vertex": decomposition.lone_vertex,
        }
        if decomposition.cubes and decomposition.lone_vertex is None:
            result["unique_decomposition_hint"] = has_unique_decomposition_hint(s)
            result["longest_edge_in_smallest_cube"] = longest_edge_in_smallest_cube(
                decomposition
            )
            result["predicted_critical_ks"] = predict_critical_ks(decomposition)
        return {"result": result}

    def _handle_recognize_request(self, kwargs):
        s = self._sequence(kwargs)
        cube = recognize_cube(s.support)
        return {
            "result": {
                "n": s.n,
                "is_cube": cube is not None,
                "cube": None if cube is None else CubeSummary.from_cube(cube).model_dump(),
            }
        }

    def _handle_construct_request(self, kwargs):
        cube = construct_cube(
            kwargs["n"], kwargs["edges"], kwargs["anchor"], kwargs["offsets"]
        )
        return {
            "result": {
                "n": cube.n,
                "cube": CubeSummary.from_cube(cube).model_dump(),
                "bits": cube.base_support.to_sequence().to_text(),
            }
        }

    def _handle_maxklc_request(self, kwargs):
        n, k = kwargs["n"], kwargs["k"]
        return {"result": {"n": n, "k": k, "max_klc": max_klc(n, k)}}

    def _handle_census_request(self, kwargs):
        spec = CountingSpec(kwargs["n"], tuple(tuple(e) for e in kwargs["edge_sets"]))
        result = {"n": spec.n, "cube_edge_sets": [list(e) for e in spec.cube_edge_sets]}
        if kwargs.get("verify"):
            census = EnumerationCensus(self.budget, self.workers)
            verification = census.verify_count_by_enumeration(spec)
            result.update(verification.model_dump(exclude={"n", "cube_edge_sets"}))
            result["agrees"] = verification.agrees
            return {"result": result, "budget": self._budget_usage()}
        try:
            result["predicted"] = decimal_string(predicted_count(spec))
        except UnsupportedConfigurationError as e:
            result["predicted"] = None
            result["note"] = str(e)
        return {"result": result}

    def _handle_quad_audit_request(self, kwargs):
        report = EnumerationCensus(self.budget, self.workers).quad_lc_audit(kwargs["n"])
        return {"result": report.model_dump(), "report": report}

    def _handle_scan_request(self, kwargs):
        scanner = ConjectureScanner(self.budget, self.workers)
        report = scanner.scan(
            kwargs["n"], ScanFilter(kwargs["scan_filter"]), kwargs.get("max_sequence_weight")
        )
        return {"result": report.model_dump(), "report": report, "budget": self._budget_usage()}
