"""Exact Rees-bundle calculus for multifiltered vector spaces."""

from ._core import (
    BigradedComplex,
    Connection,
    DefectError,
    FilteredMap,
    GradedModule,
    InputError,
    MathError,
    MultiFilteredSpace,
    acceptance,
    betti,
    charts,
    cokernel,
    curvature,
    dumps,
    favb,
    favb2,
    fiber,
    flatten,
    gauge_transform,
    graded_dims,
    is_flat,
    is_r_strict,
    is_splittable,
    is_vector_bundle,
    kernel,
    kind,
    model,
    models,
    p1_type,
    random_complex,
    random_filtered_map,
    random_multifiltration,
    read_doc,
    recover,
    rees,
    spectral_sequence,
    split_iso,
    splitting_type,
    twistor_type,
    verify_base_change,
    write_doc,
)

__all__ = [
    "BigradedComplex",
    "Connection",
    "DefectError",
    "FilteredMap",
    "GradedModule",
    "InputError",
    "MathError",
    "MultiFilteredSpace",
    "acceptance",
    "betti",
    "charts",
    "cokernel",
    "curvature",
    "dumps",
    "favb",
    "favb2",
    "fiber",
    "flatten",
    "gauge_transform",
    "graded_dims",
    "is_flat",
    "is_r_strict",
    "is_splittable",
    "is_vector_bundle",
    "kernel",
    "kind",
    "model",
    "models",
    "p1_type",
    "random_complex",
    "random_filtered_map",
    "random_multifiltration",
    "read_doc",
    "recover",
    "rees",
    "spectral_sequence",
    "split_iso",
    "splitting_type",
    "twistor_type",
    "verify_base_change",
    "write_doc",
]
