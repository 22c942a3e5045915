"""Cycle-count test for a planted dense subgraph in heterogeneous networks.

The library compares the squared triangle density against the 6-cycle
density of a graph.  Without a planted dense block the standardized
difference is asymptotically standard normal, so the test calibrates
itself without knowing any model parameter; with a planted block the
statistic drifts away from zero and the test gains power.

Layers
------
graph       immutable simple graphs, edge-list / MatrixMarket ingestion
models      heterogeneity weights, null and planted samplers, seeding
census      exact triangle / 6-cycle counts and densities (+ brute oracle)
inference   the statistic, normal calibration, closed-form theory
experiment  Monte Carlo harness, dataset runner, diagnostics
cli         command-line front end (`cycletest ...`)
"""

from .census import CycleCensus, census, count_six_cycles, count_triangles, oracle_census
from .errors import (CycleTestError, InputError, ParameterError, ParseError,
                     SizeError)
from .experiment import (CalibrationReport, PowerRow, PowerTable,
                         SimulationConfig, default_workers, diagnose, generate,
                         resolve_weights, run_dataset, run_null_calibration,
                         run_size_power)
from .graph import (Graph, ParseReport, degree_sequence, from_edges,
                    from_edges_report, load_edge_list, loads_edge_list)
from .inference import (RegularityReport, TestReport, TheoreticalQuantities,
                        check_regularity, coefficient_an, coefficient_bn,
                        elementary_symmetric, expected_densities,
                        lambda1_exact, lambda1_leading, lambda_exact,
                        lambda_sq, normal_cdf, normal_quantile,
                        normal_upper_quantile, power_index, t_from_census,
                        t_statistic, theoretical_quantities)
from .models import (ModelParams, SeedSpec, WeightVector, expected_degree,
                     expected_edge_count_null, expected_edge_count_planted,
                     sample_null, sample_planted, weights_constant,
                     weights_linear, weights_uniform)

__version__ = "0.1.0"

__all__ = [
    "CalibrationReport", "CycleCensus", "CycleTestError", "Graph",
    "InputError", "ModelParams", "ParameterError", "ParseError",
    "ParseReport", "PowerRow", "PowerTable", "RegularityReport", "SeedSpec",
    "SimulationConfig", "SizeError", "TestReport", "TheoreticalQuantities",
    "WeightVector", "census", "check_regularity", "coefficient_an",
    "coefficient_bn", "count_six_cycles", "count_triangles",
    "default_workers", "degree_sequence", "diagnose", "elementary_symmetric",
    "expected_degree", "expected_densities", "expected_edge_count_null",
    "expected_edge_count_planted", "from_edges", "from_edges_report",
    "generate", "lambda1_exact", "lambda1_leading", "lambda_exact",
    "lambda_sq", "load_edge_list", "loads_edge_list", "normal_cdf",
    "normal_quantile", "normal_upper_quantile", "oracle_census",
    "power_index", "resolve_weights", "run_dataset", "run_null_calibration",
    "run_size_power", "sample_null", "sample_planted", "t_from_census",
    "t_statistic", "theoretical_quantities", "weights_constant",
    "weights_linear", "weights_uniform",
]
