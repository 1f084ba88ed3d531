"""Exact computations with finite-dimensional Hopf algebras and Hopf-Galois extensions."""

from .errors import (AxiomFailure, CapExceeded, DimensionMismatch, FieldMismatch, HopfGaloisError,
                     NotGalois, ParseError, UnsupportedField)
from .fields import Field
from .algebra import (AlgebraData, AxiomReport, CoalgebraData, ConvolutionMap, HopfAlgebraData,
                      antipode_map, check_hopf_axioms, conv_inverse, convolve, dual_hopf, grouplikes,
                      identity_map)
from .galois import (ComoduleAlgebraData, GaloisCertificate, coinvariants, galois_check,
                     gamma_identities_report, mu_action, square_envelope)
from .cleft import (TotalIntegral, TwoCocycle, crossed_product, extract_sigma, find_algebra_integral,
                    find_total_integral, omega, phi_iso)
from .cohomology import cocycle_classes_equal, h1, one_coboundaries, one_cocycles, two_cocycle_trivial
from .picard import (PicardGroupData, TwistedModule, g1_twist, hstable_check, modules_isomorphic,
                     pic_galois_object, twist_module, twist_tensor, xi)
from .hgx import HgxDocument, emit_hgx, parse_hgx
from .report import Section, emit_report
from .cli import run_command

__version__ = "0.1.0"
