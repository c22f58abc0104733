"""Normal closures, normal decompositions and the checks built on them.

Every operation takes a :class:`CategoryInstance` and works only through its
capabilities, so the same code runs on sets, spaces, algebras and their
slices. Results are canonicalized: a normal closure is always returned as
the inclusion of a subobject of the codomain and a normal dual closure as
the projection onto a quotient of the domain, which makes outputs of
different constructions directly comparable.
"""
import logging
from collections import Counter
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import config
from .errors import (
    HomSetTooLarge,
    NoDiagonal,
    NonCommutingSquare,
    NotRepresentable,
    OverrideMismatch,
)
from .instances.instance import CategoryInstance, Mor
from .tables import CongruencePartition

logger = logging.getLogger(__name__)

# set per thread or task by cross_checking(); None falls back to config
_cross_check_default: ContextVar[Optional[bool]] = ContextVar("cross_check_default", default=None)


@dataclass(frozen=True)
class NormalClosureResult:
    """``f = nu . hat`` with ``nu: N -> B`` a normal monomorphism."""
    N: Any
    nu: Mor
    hat: Mor


@dataclass(frozen=True)
class NormalDualClosureResult:
    """``f = check . pi`` with ``pi: A -> P`` a normal epimorphism."""
    P: Any
    pi: Mor
    check: Mor


@dataclass(frozen=True)
class NormalDecomposition:
    """``f = nu . kappa . pi`` together with ``hat = kappa . pi`` and ``check = nu . kappa``."""
    pi: Mor
    kappa: Mor
    nu: Mor
    hat: Mor
    check: Mor

    @property
    def closure(self) -> NormalClosureResult:
        return NormalClosureResult(self.nu.dom, self.nu, self.hat)

    @property
    def dual_closure(self) -> NormalDualClosureResult:
        return NormalDualClosureResult(self.pi.cod, self.pi, self.check)


@dataclass(frozen=True)
class ClassSpec:
    """A class of morphisms given by a membership predicate."""
    name: str
    member: Callable[[Mor], bool] = field(compare=False)

    def __call__(self, f: Mor) -> bool:
        return self.member(f)

    def __and__(self, other: "ClassSpec") -> "ClassSpec":
        return ClassSpec(f"{self.name}&{other.name}", lambda f: self.member(f) and other.member(f))


@dataclass(frozen=True)
class Square:
    """A morphism ``<u, v>: f -> g`` of arrows, ``g . u = v . f``."""
    u: Mor
    f: Mor
    g: Mor
    v: Mor

    def check(self, K: CategoryInstance) -> "Square":
        if not K.mor_eq(K.compose(self.g, self.u), K.compose(self.v, self.f)):
            raise NonCommutingSquare(f"Square does not commute: {K.describe(self.f)} -> {K.describe(self.g)}")
        return self

    @classmethod
    def identity(cls, K: CategoryInstance, f: Mor) -> "Square":
        return cls(K.identity(f.dom), f, f, K.identity(f.cod))

    def paste(self, K: CategoryInstance, other: "Square") -> "Square":
        """The square ``f -> h`` for ``self: f -> g`` followed by ``other: g -> h``."""
        if not K.mor_eq(self.g, other.f):
            raise ValueError("Squares are not composable")
        return Square(K.compose(other.u, self.u), self.f, other.g, K.compose(other.v, self.v))


@dataclass
class CheckReport:
    """Outcome of a batch of identity checks.

    Fields:
        name (str): What was checked
        checked (int): Number of individual checks run
        skipped (int): Number of checks skipped because a hom-set was too large
        failures (List[Tuple[str, Dict[str, Any]]]): Violated identity and witness
    """
    name: str
    checked: int = 0
    skipped: int = 0
    failures: List[Tuple[str, Dict[str, Any]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Optional[str]:
        return self.failures[0][0] if self.failures else None

    def record(self, ok: bool, identity: str, witness: Optional[Dict[str, Any]] = None) -> bool:
        self.checked += 1
        if not ok:
            self.failures.append((identity, witness or {}))
        return ok

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.skipped += other.skipped
        self.failures.extend(other.failures)
        return self


# closures


def closure_from_subset(K: CategoryInstance, f: Mor, subset: Iterable[int]) -> NormalClosureResult:
    """Normal closure result for the subobject of ``cod f`` on ``subset``.

    Raises:
        NoDiagonal: If ``f`` does not land in ``subset``
    """
    nu = K.subobject(f.cod, sorted(subset))
    return NormalClosureResult(nu.dom, nu, K.factor_through(nu, f))


def dual_closure_from_partition(
    K: CategoryInstance, f: Mor, partition: CongruencePartition
) -> NormalDualClosureResult:
    """Normal dual closure result for the quotient of ``dom f`` by ``partition``.

    Raises:
        NoDiagonal: If ``f`` is not constant on the classes of ``partition``
    """
    pi = K.quotient(f.dom, partition)
    return NormalDualClosureResult(pi.cod, pi, K.factor_from(pi, f))


def _subobject_of(K: CategoryInstance, f: Mor, m: Mor) -> NormalClosureResult:
    if not K.is_injective(m):
        raise NoDiagonal("Closure leg is not injective")
    result = closure_from_subset(K, f, K.image(m))
    if not K.is_iso(K.factor_through(result.nu, m)):
        raise NoDiagonal("Closure apex is not the induced subobject")
    return result


def _quotient_of(K: CategoryInstance, f: Mor, e: Mor) -> NormalDualClosureResult:
    if not K.is_surjective(e):
        raise NoDiagonal("Dual closure leg is not surjective")
    result = dual_closure_from_partition(K, f, CongruencePartition.kernel_of(e.payload))
    if not K.is_iso(K.factor_from(e, result.pi)):
        raise NoDiagonal("Dual closure apex is not the induced quotient")
    return result


def _pullback_closure(K: CategoryInstance, f: Mor) -> NormalClosureResult:
    one, bang = K.terminal()
    po = K.pushout(f, bang(f.dom))
    pb = K.pullback(po.in1, po.in2)
    return _subobject_of(K, f, pb.pr1)


def _pushout_dual_closure(K: CategoryInstance, f: Mor) -> NormalDualClosureResult:
    zero, cobang = K.initial()
    pb = K.pullback(cobang(f.cod), f)
    po = K.pushout(pb.pr1, pb.pr2)
    return _quotient_of(K, f, po.in2)


def _resolve(cross_check: Optional[bool]) -> bool:
    if cross_check is not None:
        return cross_check
    scoped = _cross_check_default.get()
    return config.CROSS_CHECK if scoped is None else scoped


@contextmanager
def cross_checking(enabled: bool = True) -> Iterator[None]:
    """Set the default ``cross_check`` of every operation in the current context.

    The setting is a context variable, so concurrent threads and tasks each
    keep their own and ``config.CROSS_CHECK`` is never touched.

    Example:
        ```python
        with cross_checking():
            normal_closure(K, f)  # generic and closed form, compared
        ```
    """
    token = _cross_check_default.set(enabled)
    try:
        yield
    finally:
        _cross_check_default.reset(token)


def normal_closure(K: CategoryInstance, f: Mor, cross_check: Optional[bool] = None) -> NormalClosureResult:
    """Normal closure ``nu_f: N_f -> B`` of ``f: A -> B``.

    ``N_f`` is the pullback of ``1 -> B +_A 1`` along the pushout injection
    ``B -> B +_A 1``. If the instance provides a closed form, both are
    computed and compared as subsets of ``B``.

    Args:
        K (CategoryInstance): The instance ``f`` lives in
        f (Mor): Any morphism of ``K``
        cross_check (Optional[bool]): Run both paths when a closed form exists.
            Defaults to the :func:`cross_checking` setting, then ``config.CROSS_CHECK``

    Returns:
        NormalClosureResult: ``N_f`` as a subobject of ``B``, with ``nu`` and ``hat``

    Raises:
        PushoutNotRepresentable: If the pushout is missing and there is no closed form
        OverrideMismatch: If the closed form disagrees with the pullback

    Example:
        >>> K = finset_instance()
        >>> f = K.map_by_labels(K.make(["a"]), K.make(["x", "y"]), ["x"])
        >>> K.labels(normal_closure(K, f).N)
        ('x',)
    """
    override = K.closure_override(f)
    if override is not None and not _resolve(cross_check):
        return closure_from_subset(K, f, override)
    try:
        generic = _pullback_closure(K, f)
    except NotRepresentable as e:
        if override is None:
            raise
        logger.debug("Using closed-form normal closure in %s: %s", K.kind, e)
        return closure_from_subset(K, f, override)
    if override is not None and K.image(generic.nu) != frozenset(override):
        raise OverrideMismatch(
            f"Normal closure in {K.kind}: pullback gives {sorted(K.image(generic.nu))}, "
            f"closed form gives {sorted(override)} for {K.describe(f)}"
        )
    return generic


def normal_closure_via_equalizer(K: CategoryInstance, f: Mor) -> NormalClosureResult:
    """Normal closure as the equalizer of ``B -> B +_A 1`` and ``B -> 1 -> B +_A 1``."""
    one, bang = K.terminal()
    po = K.pushout(f, bang(f.dom))
    eq = K.equalizer(po.in1, K.compose(po.in2, bang(f.cod)))
    return _subobject_of(K, f, eq.eq)


def normal_dual_closure(
    K: CategoryInstance, f: Mor, cross_check: Optional[bool] = None
) -> NormalDualClosureResult:
    """Normal dual closure ``pi_f: A -> P_f`` with ``P_f = 0 +_(0 x_B A) A``.

    Raises:
        NotRepresentable: If the initial object or the pushout is missing and
            there is no closed form
        OverrideMismatch: If the closed form disagrees with the pushout
    """
    override = K.dual_closure_override(f)
    if override is not None and not _resolve(cross_check):
        return dual_closure_from_partition(K, f, override)
    try:
        generic = _pushout_dual_closure(K, f)
    except NotRepresentable as e:
        if override is None:
            raise
        logger.debug("Using closed-form normal dual closure in %s: %s", K.kind, e)
        return dual_closure_from_partition(K, f, override)
    if override is not None and CongruencePartition.kernel_of(generic.pi.payload) != override:
        raise OverrideMismatch(
            f"Normal dual closure in {K.kind}: pushout gives classes "
            f"{CongruencePartition.kernel_of(generic.pi.payload).classes()}, closed form gives "
            f"{override.classes()} for {K.describe(f)}"
        )
    return generic


def normal_decomposition(
    K: CategoryInstance, f: Mor, cross_check: Optional[bool] = None
) -> NormalDecomposition:
    """Factor ``f`` as ``nu . kappa . pi``.

    ``kappa`` is the unique map with ``kappa . pi = hat`` and
    ``nu . kappa = check``.

    Raises:
        NoDiagonal: If the closures do not admit the comparison map
    """
    closure = normal_closure(K, f, cross_check)
    dual = normal_dual_closure(K, f, cross_check)
    kappa = K.factor_through(closure.nu, dual.check)
    if not K.mor_eq(K.compose(kappa, dual.pi), closure.hat):
        raise NoDiagonal(f"Comparison map does not restore hat for {K.describe(f)}")
    return NormalDecomposition(dual.pi, kappa, closure.nu, closure.hat, dual.check)


def is_normal_mono(K: CategoryInstance, f: Mor) -> bool:
    return K.is_iso(normal_closure(K, f).hat)


def is_normal_epi(K: CategoryInstance, f: Mor) -> bool:
    return K.is_iso(normal_dual_closure(K, f).check)


def in_left_complement_of_normal_monos(K: CategoryInstance, f: Mor) -> bool:
    """Whether ``f`` is left orthogonal to every normal mono, i.e. ``nu_f`` is an iso."""
    return K.is_iso(normal_closure(K, f).nu)


# monos and epis


def _closed_form_fallback(
    name: str, K: CategoryInstance, f: Mor, generic: Callable[[], bool], closed: Optional[bool], cross_check: bool
) -> bool:
    try:
        result = generic()
    except NotRepresentable as e:
        if closed is None:
            raise
        logger.debug("Using closed-form %s test in %s: %s", name, K.kind, e)
        return closed
    if closed is not None and cross_check and closed != result:
        raise OverrideMismatch(f"{name} test in {K.kind} disagrees with closed form for {K.describe(f)}")
    return result


def is_mono(K: CategoryInstance, f: Mor) -> bool:
    """Kernel-pair projections coincide."""
    kp = K.kernel_pair(f)
    return kp.pr1.payload == kp.pr2.payload


def is_epi(K: CategoryInstance, f: Mor, cross_check: Optional[bool] = None) -> bool:
    """Cokernel-pair injections coincide.

    Raises:
        PushoutNotRepresentable: If the cokernel pair is missing and the
            instance has no closed form for epimorphisms, as for commutative
            rings and a map that is not surjective
    """

    def generic() -> bool:
        po = K.cokernel_pair(f)
        return po.in1.payload == po.in2.payload

    return _closed_form_fallback("epi", K, f, generic, K.epi_closed_form(f), _resolve(cross_check))


def is_regular_mono(K: CategoryInstance, f: Mor, cross_check: Optional[bool] = None) -> bool:
    """``f`` is the equalizer of its cokernel pair.

    Raises:
        PushoutNotRepresentable: If the cokernel pair is missing and the
            instance has no closed form for regular monomorphisms, as for
            commutative rings and a map that is not surjective
    """

    def generic() -> bool:
        po = K.cokernel_pair(f)
        eq = K.equalizer(po.in1, po.in2).eq
        if not K.is_injective(f) or K.image(eq) != K.image(f):
            return False
        return K.is_iso(K.factor_through(eq, f))

    return _closed_form_fallback(
        "regular mono", K, f, generic, K.regular_mono_closed_form(f), _resolve(cross_check)
    )


def regular_image_factorization(K: CategoryInstance, f: Mor) -> Tuple[Mor, Mor]:
    """Factor ``f`` as ``m . q`` with ``q`` the coequalizer of the kernel pair of ``f``.

    Returns:
        Tuple[Mor, Mor]: ``(q, m)``
    """
    kp = K.kernel_pair(f)
    q = K.coequalizer(kp.pr1, kp.pr2).coeq
    return q, K.factor_from(q, f)


def is_regular_epi(K: CategoryInstance, f: Mor) -> bool:
    q, m = regular_image_factorization(K, f)
    return K.is_iso(m)


def subobject_leq(K: CategoryInstance, m1: Mor, m2: Mor) -> bool:
    """``m1 <= m2`` as subobjects of their common codomain, compared on images."""
    if m1.cod != m2.cod:
        raise ValueError("Subobjects of different objects")
    return K.image(m1) <= K.image(m2)


# classes


def isos(K: CategoryInstance) -> ClassSpec:
    return ClassSpec("iso", K.is_iso)


def everything(K: CategoryInstance) -> ClassSpec:
    return ClassSpec("all", lambda f: True)


def normal_monos(K: CategoryInstance) -> ClassSpec:
    return ClassSpec("normal-mono", lambda f: is_normal_mono(K, f))


def normal_epis(K: CategoryInstance) -> ClassSpec:
    return ClassSpec("normal-epi", lambda f: is_normal_epi(K, f))


def comparisons(K: CategoryInstance) -> ClassSpec:
    """Morphisms whose normal closure and normal dual closure are both isos."""

    def member(f: Mor) -> bool:
        d = normal_decomposition(K, f)
        return K.is_iso(d.nu) and K.is_iso(d.pi)

    return ClassSpec("comparison", member)


def monos(K: CategoryInstance) -> ClassSpec:
    return ClassSpec("mono", lambda f: is_mono(K, f))


def epis(K: CategoryInstance) -> ClassSpec:
    return ClassSpec("epi", lambda f: is_epi(K, f))


def injective(K: CategoryInstance) -> ClassSpec:
    return ClassSpec("injective", K.is_injective)


def surjective(K: CategoryInstance) -> ClassSpec:
    return ClassSpec("surjective", K.is_surjective)


# orthogonality


def _diagonals_from(K: CategoryInstance, e: Mor, target: Mor) -> List[Mor]:
    """All ``t`` with ``t . e = target``."""
    if K.is_surjective(e):
        try:
            return [K.factor_from(e, target)]
        except NoDiagonal:
            return []
    return [
        t for t in K.hom_set(e.cod, target.cod) if K.mor_eq(K.compose(t, e), target)
    ]


def _diagonals_into(K: CategoryInstance, m: Mor, target: Mor) -> List[Mor]:
    """All ``t`` with ``m . t = target``."""
    if K.is_injective(m):
        try:
            return [K.factor_through(m, target)]
        except NoDiagonal:
            return []
    return [
        t for t in K.hom_set(target.dom, m.dom) if K.mor_eq(K.compose(m, t), target)
    ]


def commuting_squares(K: CategoryInstance, e: Mor, m: Mor) -> Iterable[Tuple[Mor, Mor]]:
    """Every ``(u, v)`` with ``m . u = v . e``."""
    for u in K.hom_set(e.dom, m.dom):
        mu = K.compose(m, u)
        for v in K.hom_set(e.cod, m.cod):
            if K.mor_eq(mu, K.compose(v, e)):
                yield u, v


def is_orthogonal(K: CategoryInstance, e: Mor, m: Mor) -> bool:
    """Whether every commuting square from ``e`` to ``m`` has exactly one diagonal.

    Raises:
        HomSetTooLarge: If one of the enumerated hom-sets is over the bound
    """
    for u, v in commuting_squares(K, e, m):
        diagonals = [t for t in _diagonals_from(K, e, u) if K.mor_eq(K.compose(m, t), v)]
        if len(diagonals) != 1:
            logger.debug("Square %s / %s has %d diagonals", K.describe(u), K.describe(v), len(diagonals))
            return False
    return True


def check_reflection_property(
    K: CategoryInstance, f: Mor, squares: Sequence[Tuple[Mor, Mor, Mor]]
) -> bool:
    """Check the universal property of ``hat_f`` against normal monos.

    Each square ``(m, u, v)`` has ``m . u = v . f`` with ``m`` a normal
    mono; exactly one ``t`` with ``t . hat_f = u`` and
    ``m . t = v . nu_f`` must exist. A square whose hom-set is over the bound
    is skipped with a warning and makes the result ``False``.

    Raises:
        ValueError: If a square does not commute or ``m`` is not a normal mono
    """
    closure = normal_closure(K, f)
    result = True
    for m, u, v in squares:
        if not K.mor_eq(K.compose(m, u), K.compose(v, f)):
            raise NonCommutingSquare(f"Square does not commute with {K.describe(f)}")
        if not is_normal_mono(K, m):
            raise ValueError(f"Square leg {K.describe(m)} is not a normal mono")
        target = K.compose(v, closure.nu)
        try:
            candidates = K.hom_set(closure.N, m.dom)
        except HomSetTooLarge as e:
            logger.warning("Skipping reflection square (bound %d): %s", e.bound, e)
            result = False
            continue
        found = [
            t
            for t in candidates
            if K.mor_eq(K.compose(t, closure.hat), u) and K.mor_eq(K.compose(m, t), target)
        ]
        if len(found) != 1:
            logger.info("Reflection square has %d fill-ins for %s", len(found), K.describe(m))
            result = False
    return result


# functoriality


def induced_closure_morphisms(K: CategoryInstance, sq: Square) -> Tuple[Mor, Mor]:
    """The maps ``P_{u,v}: P_f -> P_g`` and ``N_{u,v}: N_f -> N_g`` of a square.

    Returns:
        Tuple[Mor, Mor]: ``(P_map, N_map)``

    Raises:
        NonCommutingSquare: If the square does not commute
    """
    sq.check(K)
    cf, cg = normal_closure(K, sq.f), normal_closure(K, sq.g)
    df, dg = normal_dual_closure(K, sq.f), normal_dual_closure(K, sq.g)
    N_map = K.factor_through(cg.nu, K.compose(sq.v, cf.nu))
    P_map = K.factor_from(df.pi, K.compose(dg.pi, sq.u))
    return P_map, N_map


NATURALITY_IDENTITIES = ("P.pi", "P.check", "N.hat", "N.nu", "kappa", "alpha")


def check_naturality(
    K: CategoryInstance,
    sq: Square,
    mutate: Optional[Callable[[NormalDecomposition], NormalDecomposition]] = None,
) -> CheckReport:
    """Check the component squares of ``rho: pi => kappa`` and ``sigma: kappa => nu``.

    ``mutate`` rewrites the decomposition of the target arrow before the
    check; it exists for negative controls.
    """
    sq.check(K)
    report = CheckReport("naturality")
    df = normal_decomposition(K, sq.f)
    dg = normal_decomposition(K, sq.g)
    if mutate is not None:
        dg = mutate(dg)
    P_map, N_map = induced_closure_morphisms(K, sq)
    c = K.compose
    identities = {
        "P.pi": (c(P_map, df.pi), c(dg.pi, sq.u)),
        "P.check": (c(dg.check, P_map), c(sq.v, df.check)),
        "N.hat": (c(N_map, df.hat), c(dg.hat, sq.u)),
        "N.nu": (c(dg.nu, N_map), c(sq.v, df.nu)),
        "kappa": (c(dg.kappa, P_map), c(N_map, df.kappa)),
        "alpha": (K.compose_all(dg.nu, dg.kappa, dg.pi, sq.u), K.compose_all(sq.v, df.nu, df.kappa, df.pi)),
    }
    for name in NATURALITY_IDENTITIES:
        lhs, rhs = identities[name]
        report.record(K.mor_eq(lhs, rhs), name, {"lhs": K.describe(lhs), "rhs": K.describe(rhs)})
    return report


# factorization systems


def check_repleteness(
    K: CategoryInstance, cls: ClassSpec, sample: Iterable[Mor], side: str = "both"
) -> CheckReport:
    """Check that membership survives composing with automorphisms.

    ``side="left"`` composes an iso after the member, ``"right"`` composes
    one before it and ``"both"`` does both.
    """
    if side not in ("left", "right", "both"):
        raise ValueError(f"Unknown side {side!r}")
    report = CheckReport(f"replete/{cls.name}/{side}")
    for f in sample:
        if not cls(f):
            continue
        try:
            after = [i for i in K.hom_set(f.cod, f.cod) if K.is_iso(i)] if side != "right" else []
            before = [i for i in K.hom_set(f.dom, f.dom) if K.is_iso(i)] if side != "left" else []
        except HomSetTooLarge as e:
            logger.warning("Skipping repleteness check (bound %d): %s", e.bound, e)
            report.skipped += 1
            continue
        for i in after:
            report.record(cls(K.compose(i, f)), "iso.f", {"f": K.describe(f), "iso": K.describe(i)})
        for i in before:
            report.record(cls(K.compose(f, i)), "f.iso", {"f": K.describe(f), "iso": K.describe(i)})
    return report


def _orthogonality(K: CategoryInstance, report: CheckReport, left: Sequence[Mor], right: Sequence[Mor]) -> None:
    for e in left:
        for m in right:
            try:
                ok = is_orthogonal(K, e, m)
            except HomSetTooLarge as err:
                logger.warning("Skipping orthogonality check (bound %d): %s", err.bound, err)
                report.skipped += 1
                continue
            report.record(ok, "orthogonal", {"e": K.describe(e), "m": K.describe(m)})


def verify_ofs(
    K: CategoryInstance, E: ClassSpec, M: ClassSpec, sample: Sequence[Mor], pairs: int = 50
) -> CheckReport:
    """Check that ``(E, M)`` factors and is orthogonal on a finite sample.

    Each morphism is factored through its normal closure, its normal dual
    closure or its regular image, whichever lands in ``E`` and ``M``.
    Orthogonality is checked on at most ``pairs`` sampled members.
    """
    report = CheckReport(f"ofs/{E.name}/{M.name}")
    left: List[Mor] = []
    right: List[Mor] = []
    for f in sample:
        closure = normal_closure(K, f)
        dual = normal_dual_closure(K, f)
        q, m = regular_image_factorization(K, f)
        factored = next(
            ((e, m2) for e, m2 in ((closure.hat, closure.nu), (dual.pi, dual.check), (q, m)) if E(e) and M(m2)),
            None,
        )
        if report.record(factored is not None, "factorization", {"f": K.describe(f)}):
            left.append(factored[0])
            right.append(factored[1])
    _orthogonality(K, report, left[:pairs], right[:pairs])
    report.merge(check_repleteness(K, E, left[:pairs], "left"))
    report.merge(check_repleteness(K, M, right[:pairs], "right"))
    return report


@dataclass(frozen=True)
class ThreefoldSystem:
    """Classes ``(P, K, N)`` with a factorization ``f -> (p, k, n)``, ``f = n . k . p``."""
    P: ClassSpec
    Kc: ClassSpec
    N: ClassSpec
    factorize: Callable[[Mor], Tuple[Mor, Mor, Mor]] = field(compare=False)


def normal_system(K: CategoryInstance) -> ThreefoldSystem:
    """Normal epis, comparison maps and normal monos, factored by normal decomposition."""

    def factorize(f: Mor) -> Tuple[Mor, Mor, Mor]:
        d = normal_decomposition(K, f)
        return d.pi, d.kappa, d.nu

    return ThreefoldSystem(normal_epis(K), comparisons(K), normal_monos(K), factorize)


def trivial_system(
    K: CategoryInstance, E: ClassSpec, M: ClassSpec, factorize: Callable[[Mor], Tuple[Mor, Mor]]
) -> ThreefoldSystem:
    """``(E, Iso, M)`` for a factorization system ``(E, M)``."""

    def threefold(f: Mor) -> Tuple[Mor, Mor, Mor]:
        e, m = factorize(f)
        return e, K.identity(e.cod), m

    return ThreefoldSystem(E, isos(K), M, threefold)


def verify_otfs(K: CategoryInstance, system: ThreefoldSystem, sample: Sequence[Mor], pairs: int = 20) -> CheckReport:
    """Check factorization, class membership and the double-diagonal property.

    For decompositions ``f = n_f k_f p_f`` and ``g = n_g k_g p_g`` of sampled
    arrows, every outer square ``u: dom p_f -> dom k_g``,
    ``v: cod k_f -> cod n_g`` must admit exactly one pair ``s, t`` with
    ``s p_f = u``, ``k_g s = t k_f`` and ``n_g t = v``. The middle class is
    also checked for closure under composition on sampled pairs.
    """
    report = CheckReport("otfs")
    factors: List[Tuple[Mor, Mor, Mor]] = []
    for f in sample:
        p, k, n = system.factorize(f)
        ok = K.mor_eq(K.compose_all(n, k, p), f) and system.P(p) and system.Kc(k) and system.N(n)
        if report.record(ok, "factorization", {"f": K.describe(f)}):
            factors.append((p, k, n))
    factors = factors[:pairs]
    for p, k, _ in factors:
        for _, k2, n in factors:
            try:
                squares = list(commuting_squares(K, K.compose(k, p), K.compose(n, k2)))
            except HomSetTooLarge as e:
                logger.warning("Skipping double-diagonal check (bound %d): %s", e.bound, e)
                report.skipped += 1
                continue
            for u, v in squares:
                found = 0
                for s in _diagonals_from(K, p, u):
                    ks = K.compose(k2, s)
                    found += sum(1 for t in _diagonals_into(K, n, v) if K.mor_eq(K.compose(t, k), ks))
                report.record(
                    found == 1,
                    "double-diagonal",
                    {"p": K.describe(p), "k": K.describe(k), "k'": K.describe(k2), "n": K.describe(n),
                     "u": K.describe(u), "v": K.describe(v)},
                )
    for _, k1, _ in factors:
        for _, k2, _ in factors:
            if k1.cod == k2.dom:
                composite = K.compose(k2, k1)
                report.record(system.Kc(composite), "middle-composition", {"composite": K.describe(composite)})
    return report


@dataclass(frozen=True)
class ModelTriple:
    """Cofibration-like ``C = K.P``, weak-equivalence-like ``W = N.P`` and fibration-like ``F = N.K``."""
    C: ClassSpec
    W: ClassSpec
    F: ClassSpec
    factorize: Callable[[Mor], Tuple[Mor, Mor, Mor]] = field(compare=False)

    def ofs_pairs(self) -> Tuple[Tuple[ClassSpec, ClassSpec], Tuple[ClassSpec, ClassSpec]]:
        """``(C, F & W)`` and ``(C & W, F)``."""
        return (self.C, self.F & self.W), (self.C & self.W, self.F)


def otfs_to_cwf(K: CategoryInstance, system: ThreefoldSystem) -> ModelTriple:
    """Membership in ``K.P``, ``N.P`` and ``N.K`` read off the threefold factors."""

    def factor_is_iso(position: int) -> Callable[[Mor], bool]:
        return lambda f: K.is_iso(system.factorize(f)[position])

    return ModelTriple(
        ClassSpec("C", factor_is_iso(2)),
        ClassSpec("W", factor_is_iso(1)),
        ClassSpec("F", factor_is_iso(0)),
        system.factorize,
    )


def cwf_to_otfs(K: CategoryInstance, triple: ModelTriple) -> ThreefoldSystem:
    """``(C & W, C & F, F & W)``."""
    return ThreefoldSystem(triple.C & triple.W, triple.C & triple.F, triple.F & triple.W, triple.factorize)


@dataclass
class QuillenReport:
    """The three conditions for ``(C, W, F)`` to be a model structure, with witnesses."""
    c1: bool = True
    c2: bool = True
    c3: bool = True
    witnesses: Dict[str, Dict[str, Any]] = field(default_factory=dict)


def check_quillen_conditions(K: CategoryInstance, system: ThreefoldSystem, sample: Sequence[Mor]) -> QuillenReport:
    """Check the model-structure conditions on composable pairs drawn from ``sample``.

    1. ``p . n`` is in ``N.P`` for ``n`` in N and ``p`` in P.
    2. ``p . k`` in P with ``p`` in P and ``k`` in K forces ``k`` iso.
    3. ``k . n`` in N with ``n`` in N and ``k`` in K forces ``k`` iso.

    The pool is the sample together with the factors of its members.
    """
    pool: List[Mor] = []
    seen = set()
    for f in sample:
        for g in (f, *system.factorize(f)):
            key = (g.dom, g.cod, g.payload)
            if key not in seen:
                seen.add(key)
                pool.append(g)
    W = otfs_to_cwf(K, system).W
    Ps = [g for g in pool if system.P(g)]
    Ks = [g for g in pool if system.Kc(g)]
    Ns = [g for g in pool if system.N(g)]
    report = QuillenReport()
    for n in Ns:
        for p in Ps:
            if report.c1 and n.cod == p.dom and not W(K.compose(p, n)):
                report.c1 = False
                report.witnesses["c1"] = {"n": K.describe(n), "p": K.describe(p)}
    for k in Ks:
        if K.is_iso(k):
            continue
        for p in Ps:
            if report.c2 and k.cod == p.dom and system.P(K.compose(p, k)):
                report.c2 = False
                report.witnesses["c2"] = {"k": K.describe(k), "p": K.describe(p)}
        for n in Ns:
            if report.c3 and n.cod == k.dom and system.N(K.compose(k, n)):
                report.c3 = False
                report.witnesses["c3"] = {"n": K.describe(n), "k": K.describe(k)}
    return report


# closure operator and class checks


def closure_operator_laws(
    K: CategoryInstance, sample_monos: Sequence[Mor], maps: Sequence[Mor] = ()
) -> CheckReport:
    """Extensive, monotone, idempotent and continuous, compared on images."""
    report = CheckReport("closure-operator")
    closures = [normal_closure(K, k) for k in sample_monos]
    for k, ck in zip(sample_monos, closures):
        report.record(subobject_leq(K, k, ck.nu), "extensive", {"k": K.describe(k)})
        report.record(K.is_iso(normal_closure(K, ck.nu).hat), "idempotent", {"k": K.describe(k)})
        for k2, ck2 in zip(sample_monos, closures):
            if k2.cod == k.cod and subobject_leq(K, k, k2):
                report.record(
                    subobject_leq(K, ck.nu, ck2.nu), "monotone", {"k": K.describe(k), "k'": K.describe(k2)}
                )
        for f in maps:
            if f.dom != k.cod:
                continue
            pushed = normal_closure(K, K.compose(f, k))
            report.record(
                K.image(K.compose(f, ck.nu)) <= K.image(pushed.nu),
                "continuous",
                {"k": K.describe(k), "f": K.describe(f)},
            )
    return report


def check_composition_closure(
    K: CategoryInstance, cls: ClassSpec, pairs: Iterable[Tuple[Mor, Mor]]
) -> Optional[Dict[str, Any]]:
    """First composite ``second . first`` of two members that falls outside ``cls``.

    Returns:
        Optional[Dict[str, Any]]: The element-listed witness, or ``None`` when every composite is a member

    Raises:
        ValueError: If a pair is not composable or not made of members
    """
    for first, second in pairs:
        if first.cod != second.dom:
            raise ValueError("Pair is not composable")
        if not (cls(first) and cls(second)):
            raise ValueError(f"Pair members are not in {cls.name}")
        composite = K.compose(second, first)
        if not cls(composite):
            return {
                "first": K.describe(first),
                "second": K.describe(second),
                "composite": K.describe(composite),
            }
    return None


def check_weak_left_cancellation(K: CategoryInstance, pairs: Iterable[Tuple[Mor, Mor]]) -> CheckReport:
    """For ``n . m`` a normal mono with ``n`` monic, ``m`` must be a normal mono."""
    report = CheckReport("weak-left-cancellation")
    for m, n in pairs:
        if m.cod != n.dom:
            raise ValueError("Pair is not composable")
        if is_mono(K, n) and is_normal_mono(K, K.compose(n, m)):
            report.record(is_normal_mono(K, m), "cancellation", {"m": K.describe(m), "n": K.describe(n)})
    return report


def check_pullback_stability(K: CategoryInstance, monos: Sequence[Mor], maps: Sequence[Mor]) -> CheckReport:
    """Pullbacks of normal monos along arbitrary maps are normal monos."""
    report = CheckReport("pullback-stability")
    for m in monos:
        if not is_normal_mono(K, m):
            raise ValueError(f"{K.describe(m)} is not a normal mono")
        for g in maps:
            if g.cod != m.cod:
                continue
            pulled = K.pullback(g, m).pr1
            report.record(is_normal_mono(K, pulled), "stable", {"m": K.describe(m), "g": K.describe(g)})
    return report


def check_image_invariance(K: CategoryInstance, f: Mor) -> CheckReport:
    """``nu_f`` equals ``nu_m`` for the image ``m`` of ``f``; ``pi_f`` equals ``pi_q`` for its coimage ``q``."""
    report = CheckReport("image-invariance")
    m = K.subobject(f.cod, sorted(K.image(f)))
    q = K.quotient(f.dom, CongruencePartition.kernel_of(f.payload))
    report.record(
        K.image(normal_closure(K, f).nu) == K.image(normal_closure(K, m).nu), "closure", {"f": K.describe(f)}
    )
    report.record(
        normal_dual_closure(K, f).pi.payload == normal_dual_closure(K, q).pi.payload,
        "dual-closure",
        {"f": K.describe(f)},
    )
    return report


def check_strong_mono_normality(K: CategoryInstance, monos: Sequence[Mor], epis_: Sequence[Mor]) -> CheckReport:
    """A mono orthogonal to every sampled epi, with epic comparison map, is a normal mono."""
    report = CheckReport("strong-mono-normality")
    for m in monos:
        if not is_mono(K, m):
            raise ValueError(f"{K.describe(m)} is not a mono")
        try:
            strong = all(is_orthogonal(K, e, m) for e in epis_)
        except HomSetTooLarge as err:
            logger.warning("Skipping strong mono check (bound %d): %s", err.bound, err)
            report.skipped += 1
            continue
        if strong and is_epi(K, normal_decomposition(K, m).kappa):
            report.record(is_normal_mono(K, m), "normal", {"m": K.describe(m)})
    return report


def check_pushout_property(
    K: CategoryInstance, f: Mor, g: Mor, in1: Mor, in2: Mor, targets: Sequence[Any]
) -> CheckReport:
    """Bounded check that ``(in1, in2)`` is a pushout of ``(f, g)``.

    Every cocone into each target object must factor uniquely through the
    apex. Only the listed targets are tried. Maps with a common domain and
    codomain are told apart by their payloads, so cocones and copairs are
    matched through dictionaries rather than pairwise.
    """
    report = CheckReport("pushout")
    report.record(K.mor_eq(K.compose(in1, f), K.compose(in2, g)), "commutes", {})
    for T in targets:
        try:
            legs1 = K.hom_set(f.cod, T)
            legs2 = K.hom_set(g.cod, T)
            out = K.hom_set(in1.cod, T)
        except HomSetTooLarge as e:
            logger.warning("Skipping pushout target (bound %d): %s", e.bound, e)
            report.skipped += 1
            continue
        copairs = Counter((K.compose(t, in1).payload, K.compose(t, in2).payload) for t in out)
        by_restriction: Dict[Any, List[Mor]] = {}
        for h2 in legs2:
            by_restriction.setdefault(K.compose(h2, g).payload, []).append(h2)
        for h1 in legs1:
            for h2 in by_restriction.get(K.compose(h1, f).payload, ()):
                found = copairs[(h1.payload, h2.payload)]
                if found == 1:
                    report.record(True, "unique-copair")
                else:
                    witness = {"h1": K.describe(h1), "h2": K.describe(h2), "copairs": found}
                    report.record(False, "unique-copair", witness)
    return report
