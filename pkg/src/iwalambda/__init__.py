"""iwalambda: exact lambda-shift arithmetic for abelian fields.

Submodules
----------
exact       integer utilities (valuations, orders, CRT, Smith normal form)
groups      finite abelian groups, (Z/m)*, subgroups, quotients
characters  l-adic character algebra (orbits, mirror, parity, induction)
fields      abelian field specifications K inside Q(zeta_m)
splitting   decomposition data of primes and the characters chi_p, chi_S
defect      defect characters, lambda-shift expressions, reflection checks
iwasawa     elementary module order tables and parameter fitting
cohomology  Tate cohomology of cyclic actions and the ambiguous-class formula
cli         command-line interface (JSON / aligned tables)
"""

from .characters import (
    AbsChar,
    LadicChar,
    VirtualChar,
    all_ladic_chars,
    contragredient,
    induce_trivial,
    inner_product,
    mirror,
    parity_split,
    restrict,
    teichmuller,
)
from .cohomology import (
    AmbiguousInput,
    FiniteGammaModule,
    ambiguous_valuation,
    herbrand_quotient,
    tate_h0,
    tate_h1,
)
from .defect import (
    BaseSymbol,
    CaseTag,
    LambdaExpr,
    defect_character,
    defect_oracle,
    imo_lambda,
    kappa,
    lambda_shift_imaginary,
    lambda_shift_real,
    lambda_wild,
    reflection_check,
    s_phi,
)
from .errors import (
    FieldError,
    InconsistentDataError,
    IwalambdaError,
    PrimeSetError,
    ScaleError,
)
from .exact import IntMatrix, crt, mult_order, smith_normal_form, valuation
from .fields import FieldSpec, field_spec
from .groups import (
    FiniteAbelianGroup,
    GroupElement,
    Subgroup,
    UnitGroupModM,
    quotient,
    subgroup_generated,
    unit_group,
)
from .iwasawa import (
    ElementaryModuleSpec,
    FitParameters,
    LevelOrderTable,
    fit_parameters,
    level_order,
    level_order_table,
    omega_poly,
)
from .splitting import (
    PrimeLocalData,
    chi_S,
    chi_p,
    decomposition_data,
    splitting_exponent,
    splitting_exponent_oracle,
)

__version__ = "0.1.0"
