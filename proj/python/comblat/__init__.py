"""Frequency-comb cluster-state toolkit: H-graphs, block interferometers,
Gaussian graph states, and hypercubic-lattice verification."""

import json as _json

from ._core import (  # noqa: F401
    BlockInterferometer,
    Error,
    GraphState,
    HGraph,
    NotPositiveDefiniteError,
    ParseError,
    QumodeId,
    UnsupportedOrderError,
    ValidationError,
    apply_interferometer,
    build_hgraph,
    build_interferometer,
    cluster_graph,
    compound_to_frequency,
    covariance_from_graph,
    entangled_adjacency,
    expm_graph_oracle,
    frequency_of,
    frequency_to_compound,
    initial_graph,
    macronode_of,
    nullifier_cov_analytic,
    nullifier_cov_numeric,
    nullifier_rows,
    pump_indices,
    run_json,
    sample_quadratures,
    sylvester_splitter,
    symplectic_eigenvalues,
    two_tone_support,
    validate_json,
)


def run(config, out_dir=""):
    """Run the pipeline; `config` is a dict or JSON string. Returns the
    verification report as a dict."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _json.loads(run_json(config, str(out_dir)))


def validate(config):
    """Validate a config (dict or JSON string); returns the canonical echo."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _json.loads(validate_json(config))
