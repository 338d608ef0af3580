"""Categorical tensor network states built from Boolean generator tensors."""
from .boolfun import (AnfPoly, MultilinearPoly, PolarityVector, TruthTable, anf_transform,
                      fixed_polarity_rm, multilinear_transform, parse_anf, tt_eval)
from .decompose import CoefficientClass, CtnsDecomposition, build_ctns, group_coefficients, map_g, map_h
from .dense import DEFAULT_TOL, Tolerance, approx_equal, contract, make_tensor, reorder, self_contract
from .generators import (boolean_gate, copy_spider, cup_cap, fourier, named_state, parity_spider)
from .laws import (LawReport, Unit, WeakUnit, algebra_from_state, basis_duality_check, find_unit,
                   verify_bialgebra, verify_fixed_point_pair, verify_frobenius, verify_hopf)
from .network import Network, contract_network
from .rewrite import fuse_spiders, plug_unit_simplify
from .sampler import GpbsReport, amplitude, gpbs_report, probability, sample
from .synthesis import Circuit, boolean_state_network, synthesize_circuit

__version__ = "0.1.0"
