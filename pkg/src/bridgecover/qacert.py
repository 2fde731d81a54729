"""Machine-checkable quasi-alternating / L-space certificates.

A certificate is a tree whose nodes certify links of the three tabulated
families (``A``, ``B = L(l=1)``, ``L``) plus a handful of named links.  Node
kinds:

* ``BASE``     -- a whitelisted axiom (a trusted fact, with citation),
* ``SKEIN``    -- the determinant-additive resolution triangle: the link
                  splits at its leftmost unresolved slot into a 0-child and
                  an inf-child with ``det = det_0 + det_inf``, all positive,
* ``IDENTIFY`` -- the link equals another link, along a whitelisted
                  identification (with citation); the child certifies the
                  target,
* ``REF``      -- a back reference to a link certified elsewhere in the same
                  tree, restricted to strictly smaller induction measure.

``generate_A_cert`` / ``generate_L_cert`` build certificates following the
t- and l-inductions on the twist parameters; ``verify`` independently checks
every rule, recomputing all determinants from the tabulated formulas.
Certificates serialize to canonical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .goeritz import (
    NotTabulatedError,
    Resolution,
    Slot,
    UnsupportedRegimeError,
    table_formula,
)

QUASI_ALTERNATING = "QUASI_ALTERNATING"
L_SPACE = "L_SPACE"
_CLAIMS = (QUASI_ALTERNATING, L_SPACE)

BASE = "BASE"
SKEIN = "SKEIN"
IDENTIFY = "IDENTIFY"
REF = "REF"
_KINDS = (BASE, SKEIN, IDENTIFY, REF)

STAR3 = "*,*,*"


class CertError(ValueError):
    pass


class GenerationError(CertError):
    """The generator could not realize a certified step (e.g. a resolution
    determinant fails positivity at the requested parameters)."""


class CertParseError(CertError):
    """Malformed serialized certificate; the message carries the location."""


# ---------------------------------------------------------------------------
# Link identifiers
# ---------------------------------------------------------------------------

_FAMILY_PARAMS = {"A": ("q", "s", "t"), "B": ("q", "s", "t"),
                  "L": ("q", "s", "t", "l"), "NAMED": ()}


@dataclass(frozen=True)
class LinkId:
    """A member of one of the certified families, or a named link."""

    family: str
    params: Tuple[Tuple[str, int], ...] = ()
    resolution: str = ""
    name: str = ""

    @staticmethod
    def A(q: int, s: int, t: int, resolution: str = STAR3) -> "LinkId":
        return LinkId("A", (("q", q), ("s", s), ("t", t)),
                      str(Resolution.parse(resolution)))

    @staticmethod
    def B(q: int, s: int, t: int, resolution: str = STAR3) -> "LinkId":
        return LinkId("B", (("q", q), ("s", s), ("t", t)),
                      str(Resolution.parse(resolution)))

    @staticmethod
    def L(q: int, s: int, t: int, l: int, resolution: str = STAR3) -> "LinkId":
        return LinkId("L", (("q", q), ("s", s), ("t", t), ("l", l)),
                      str(Resolution.parse(resolution)))

    @staticmethod
    def named(name: str) -> "LinkId":
        return LinkId("NAMED", name=name)

    def param(self, name: str) -> int:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(f"{self} has no parameter {name!r}")

    def param_map(self) -> Dict[str, int]:
        return dict(self.params)

    def with_resolution(self, resolution: str) -> "LinkId":
        return replace(self, resolution=str(Resolution.parse(resolution)))

    def sign_pattern(self) -> Tuple[int, ...]:
        return tuple(1 if v > 0 else -1 for _, v in self.params)

    def validate(self) -> None:
        if self.family not in _FAMILY_PARAMS:
            raise CertError(f"unknown link family {self.family!r}")
        expected = _FAMILY_PARAMS[self.family]
        names = tuple(key for key, _ in self.params)
        if names != expected:
            raise CertError(
                f"{self.family} link needs parameters {expected}, got {names}")
        for key, value in self.params:
            if not isinstance(value, int) or value == 0:
                raise CertError(f"parameter {key} must be a nonzero integer")
        if self.family == "NAMED":
            if not self.name:
                raise CertError("named link needs a name")
            if self.resolution:
                raise CertError("named link carries no resolution")
        else:
            if self.name:
                raise CertError(f"{self.family} link carries no name")
            try:
                Resolution.parse(self.resolution)
            except ValueError as exc:
                raise CertError(
                    f"bad resolution {self.resolution!r}: {exc}") from None

    def __str__(self):
        if self.family == "NAMED":
            return self.name
        args = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({args}; {self.resolution})"


def measure(link: LinkId) -> Tuple[int, int, int]:
    """Lexicographic induction measure (|l|, |t|, |q|); the B level counts as
    l = 1 and named links as the bottom."""
    if link.family == "NAMED":
        return (0, 0, 0)
    p = link.param_map()
    level = {"A": 0, "B": 1}.get(link.family)
    if level is None:
        level = abs(p["l"])
    return (level, abs(p["t"]), abs(p["q"]))


_TOP_MEASURE = (1 << 30, 0, 0)

_NAMED_DETS = {
    "UNKNOT": 1,
    "T(3,4)": 3,
    "T(3,5)": 1,
    "P(2,-3,-2)": 4,
    "P(2,-3,-4)": 2,
}


def expected_det(link: LinkId) -> int:
    """The determinant a certificate node must carry for this link: the
    absolute value of the tabulated formula (fixed values for named links)."""
    if link.family == "NAMED":
        try:
            return _NAMED_DETS[link.name]
        except KeyError:
            raise CertError(f"unknown named link {link.name!r}") from None
    return abs(table_formula(link.family, link.resolution, link.param_map()))


# ---------------------------------------------------------------------------
# Axiom whitelist
# ---------------------------------------------------------------------------

_ALTERNATING_A_PATTERNS = {(1, -1, 1), (-1, 1, -1)}
_ALTERNATING_L_PATTERNS = {(-1, 1, -1, 1), (1, -1, 1, -1)}


def _is_named(name: str) -> Callable[[LinkId], bool]:
    return lambda link: link.family == "NAMED" and link.name == name


def _match_alternating(link: LinkId) -> bool:
    if link.family == "A":
        return link.sign_pattern() in _ALTERNATING_A_PATTERNS
    if link.family == "L":
        return (link.resolution == STAR3
                and link.sign_pattern() in _ALTERNATING_L_PATTERNS)
    return False


def _match_peters(link: LinkId) -> bool:
    return (link.family == "A" and link.param("t") == 1
            and link.param("s") > 1 and link.param("q") >= 1
            and link.resolution in ("inf,*,*", "0,inf,*", "0,0,*"))


def _match_a_00_s1(link: LinkId) -> bool:
    return (link.family == "A" and link.param("t") == 1
            and link.param("s") == 1 and link.param("q") >= 1
            and link.resolution == "0,0,*")


def _match_a_zero_s1(link: LinkId) -> bool:
    return (link.family == "A" and link.param("t") == 1
            and link.param("s") == 1 and link.param("q") >= 1
            and link.resolution == "0,*,*")


def _match_b_zero_s1t1(link: LinkId) -> bool:
    return (link.family == "B" and link.param("s") == 1
            and link.param("t") == 1 and link.param("q") >= 1
            and link.resolution == "0,*,*")


def _match_regime_a(link: LinkId) -> bool:
    if link.family != "A":
        return False
    pattern = link.sign_pattern()
    return pattern != (1, 1, 1) and pattern not in _ALTERNATING_A_PATTERNS


@dataclass(frozen=True)
class AxiomInfo:
    name: str
    claim: str
    citation: str
    matcher: Callable[[LinkId], bool]


AXIOMS: Dict[str, AxiomInfo] = {ax.name: ax for ax in [
    AxiomInfo("UNKNOT", QUASI_ALTERNATING,
              "Definition 2.3(1)", _is_named("UNKNOT")),
    AxiomInfo("ALTERNATING", QUASI_ALTERNATING,
              "Section 5 case (2); Section 5.1 case 2)", _match_alternating),
    AxiomInfo("PETERS_QA", QUASI_ALTERNATING,
              "Lemma 5.2 [P]", _match_peters),
    AxiomInfo("T(3,4)", L_SPACE,
              "Claim 5.6 proof", _is_named("T(3,4)")),
    AxiomInfo("P(2,-3,-2)", L_SPACE,
              "Claim 5.6 proof", _is_named("P(2,-3,-2)")),
    AxiomInfo("T(3,5)", L_SPACE,
              "Claim 5.14 proof", _is_named("T(3,5)")),
    AxiomInfo("P(2,-3,-4)", L_SPACE,
              "Claim 5.14 proof", _is_named("P(2,-3,-4)")),
    AxiomInfo("A_00_STAR_S1", L_SPACE,
              "Claim 5.6 proof (base of the 0,0,* chain at s = 1)",
              _match_a_00_s1),
    AxiomInfo("A_0_STAR_STAR_S1", L_SPACE,
              "Claim 5.6 proof (base of the 0,*,* chain at s = 1)",
              _match_a_zero_s1),
    AxiomInfo("B_0_STAR_STAR_S1_T1", L_SPACE,
              "Claim 5.14 proof (base of the 0,*,* chain at s = t = 1)",
              _match_b_zero_s1t1),
    AxiomInfo("REGIME_A", L_SPACE,
              "Section 5.1 cases 3), 4); Section 5 cases (7), (8)",
              _match_regime_a),
]}


# ---------------------------------------------------------------------------
# Identification whitelist
# ---------------------------------------------------------------------------

def _res_map(family: str, source: str, target: str,
             shift: Optional[str] = None, collapse_to: Optional[int] = None):
    """Identification acting on the resolution (and optionally shifting one
    parameter down by 1, or collapsing it to a fixed value)."""

    def apply(link: LinkId) -> Optional[LinkId]:
        if link.family != family or link.resolution != source:
            return None
        p = link.param_map()
        if shift is not None:
            if abs(p[shift]) < 2 or p[shift] < 0:
                return None
            p[shift] -= 1
        if collapse_to is not None:
            var = "t" if family == "A" else "l"
            if p[var] < 2:
                return None
            p[var] = collapse_to
        params = tuple((k, p[k]) for k in _FAMILY_PARAMS[family])
        return replace(link, params=params,
                       resolution=str(Resolution.parse(target)))

    return apply


def _to_named(family: str, resolution: str, name: str):
    def apply(link: LinkId) -> Optional[LinkId]:
        if (link.family == family and link.resolution == resolution
                and all(v == 1 for _, v in link.params)):
            return LinkId.named(name)
        return None
    return apply


def _l_to_b(link: LinkId) -> Optional[LinkId]:
    if link.family != "L" or link.param("l") != 1:
        return None
    return LinkId.B(link.param("q"), link.param("s"), link.param("t"),
                    link.resolution)


def _b_to_a(source_res: str, target_res: str):
    def apply(link: LinkId) -> Optional[LinkId]:
        if link.family != "B" or link.resolution != source_res:
            return None
        return LinkId.A(link.param("q"), link.param("s"), link.param("t"),
                        target_res)
    return apply


def _a_qt_swap(link: LinkId) -> Optional[LinkId]:
    if link.family != "A" or link.resolution != STAR3:
        return None
    return LinkId.A(link.param("t"), link.param("s"), link.param("q"))


def _l_double_swap(link: LinkId) -> Optional[LinkId]:
    if link.family != "L" or link.resolution != STAR3:
        return None
    return LinkId.L(link.param("l"), link.param("t"), link.param("s"),
                    link.param("q"))


def _mirror(family: str):
    def apply(link: LinkId) -> Optional[LinkId]:
        if link.family != family or link.resolution != STAR3:
            return None
        params = tuple((k, -v) for k, v in link.params)
        return replace(link, params=params)
    return apply


@dataclass(frozen=True)
class IdentRule:
    citation: str
    apply: Callable[[LinkId], Optional[LinkId]]


CIT_A_MIDDLE = "Lemma 5.3(1)"
CIT_A_OUTER = "Lemma 5.3(2)"
CIT_A_LADDER_STAR = "Lemma 5.3(3)"
CIT_A_LADDER_ZERO = "Lemma 5.3(4)"
CIT_A_COLLAPSE = "Lemma 5.3(5)"
CIT_A_NAMED = "Lemma 5.3(6)"
CIT_A_SYM = "Claim 5.6 (q, t symmetry of A)"
CIT_A_MIRROR = "Section 5.1 case 4) (mirror image)"
CIT_L_MIDDLE = "Lemma 5.11(1)"
CIT_L_OUTER = "Lemma 5.11(2)"
CIT_L_LADDER_STAR = "Lemma 5.11(3)"
CIT_L_LADDER_ZERO = "Lemma 5.11(4)"
CIT_L_CHAIN = "Lemma 5.11(5)"
CIT_L_IS_B = "Section 5.2.1 (B = L(l = 1))"
CIT_B_TO_A = "Lemma 5.8(1)"
CIT_B_NAMED = "Lemma 5.8(2)"
CIT_L_SWAP = "Claim 5.14; Section 5 cases (5), (6) (q-l, s-t symmetry of L)"
CIT_L_MIRROR = "Section 5 (mirror image reduction)"

IDENTIFICATIONS: Tuple[IdentRule, ...] = (
    IdentRule(CIT_A_MIDDLE, _res_map("A", "0,inf,0", "0,0,*")),
    IdentRule(CIT_A_MIDDLE, _res_map("A", "inf,0,0", "0,0,*")),
    IdentRule(CIT_A_OUTER, _res_map("A", "inf,0,inf", "0,inf,inf")),
    IdentRule(CIT_A_OUTER, _res_map("A", "inf,inf,0", "0,inf,inf")),
    IdentRule(CIT_A_LADDER_STAR, _res_map("A", "inf,inf,inf", STAR3, shift="t")),
    IdentRule(CIT_A_LADDER_ZERO, _res_map("A", "0,inf,inf", "0,*,*", shift="t")),
    IdentRule(CIT_A_COLLAPSE, _res_map("A", "0,0,*", "0,0,*", collapse_to=1)),
    IdentRule(CIT_A_NAMED, _to_named("A", STAR3, "T(3,4)")),
    IdentRule(CIT_A_NAMED, _to_named("A", "0,*,*", "P(2,-3,-2)")),
    IdentRule(CIT_A_SYM, _a_qt_swap),
    IdentRule(CIT_A_MIRROR, _mirror("A")),
    IdentRule(CIT_L_MIDDLE, _res_map("L", "0,inf,0", "0,0,*")),
    IdentRule(CIT_L_MIDDLE, _res_map("L", "inf,0,0", "0,0,*")),
    IdentRule(CIT_L_OUTER, _res_map("L", "inf,0,inf", "0,inf,inf")),
    IdentRule(CIT_L_OUTER, _res_map("L", "inf,inf,0", "0,inf,inf")),
    IdentRule(CIT_L_LADDER_STAR, _res_map("L", "inf,inf,inf", STAR3, shift="l")),
    IdentRule(CIT_L_LADDER_ZERO, _res_map("L", "0,inf,inf", "0,*,*", shift="l")),
    IdentRule(CIT_L_CHAIN, _res_map("L", "0,0,*", "0,0,*", shift="l")),
    IdentRule(CIT_L_IS_B, _l_to_b),
    IdentRule(CIT_B_TO_A, _b_to_a("0,0,*", STAR3)),
    IdentRule(CIT_B_TO_A, _b_to_a("inf,*,*", "inf,inf,*")),
    IdentRule(CIT_B_TO_A, _b_to_a("0,inf,*", "inf,*,*")),
    IdentRule(CIT_B_NAMED, _to_named("B", STAR3, "T(3,5)")),
    IdentRule(CIT_B_NAMED, _to_named("B", "0,*,*", "P(2,-3,-4)")),
    IdentRule(CIT_L_SWAP, _l_double_swap),
    IdentRule(CIT_L_MIRROR, _mirror("L")),
)


# ---------------------------------------------------------------------------
# Certificate structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertNode:
    link: LinkId
    det: int
    kind: str
    axiom: str = ""
    citation: str = ""
    target: Optional[LinkId] = None
    zero: Optional["CertNode"] = None
    inf: Optional["CertNode"] = None
    child: Optional["CertNode"] = None


@dataclass(frozen=True)
class AxiomDecl:
    name: str
    claim: str
    citation: str


@dataclass(frozen=True)
class Certificate:
    claim: str
    root: CertNode
    axioms: Tuple[AxiomDecl, ...]


def iter_nodes(root: CertNode, path: str = "root") -> Iterator[Tuple[str, CertNode]]:
    yield path, root
    if root.zero is not None:
        yield from iter_nodes(root.zero, path + ".zero")
    if root.inf is not None:
        yield from iter_nodes(root.inf, path + ".inf")
    if root.child is not None:
        yield from iter_nodes(root.child, path + ".child")


def node_count(cert: Certificate) -> int:
    return sum(1 for _ in iter_nodes(cert.root))


def _resolve_leftmost(link: LinkId, slot: Slot) -> Optional[LinkId]:
    res = Resolution.parse(link.resolution)
    for i, entry in enumerate(res):
        if entry == Slot.STAR:
            slots = list(res)
            slots[i] = slot
            return link.with_resolution(",".join(s.value for s in slots))
    return None


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    accepted: bool
    path: str = ""
    reason: str = ""

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if self.accepted:
            return "ACCEPT"
        return f"REJECT at {self.path}: {self.reason}"


ACCEPT = Verdict(True)


class _Reject(Exception):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.verdict = Verdict(False, path, reason)


def _check_node(node: CertNode, path: str, cert: Certificate,
                declared: Mapping[str, AxiomDecl],
                certified: Set[LinkId],
                refs: List[Tuple[LinkId, str]],
                skein_measure: Tuple[int, int, int]) -> None:
    try:
        node.link.validate()
    except CertError as exc:
        raise _Reject(path, str(exc))
    if not isinstance(node.det, int) or node.det <= 0:
        raise _Reject(path, f"determinant must be a positive integer, got {node.det!r}")
    try:
        want = expected_det(node.link)
    except (NotTabulatedError, CertError) as exc:
        raise _Reject(path, f"no tabulated determinant: {exc}")
    if node.det != want:
        raise _Reject(path, f"determinant {node.det} does not match the "
                            f"tabulated value {want} for {node.link}")
    if node.kind not in _KINDS:
        raise _Reject(path, f"unknown node kind {node.kind!r}")

    if node.kind == REF:
        if node.zero or node.inf or node.child:
            raise _Reject(path, "reference nodes carry no children")
        if not measure(node.link) < skein_measure:
            raise _Reject(path, f"reference to {node.link} does not decrease "
                                f"the induction measure {skein_measure}")
        refs.append((node.link, path))
        return

    certified.add(node.link)

    if node.kind == BASE:
        if node.zero or node.inf or node.child:
            raise _Reject(path, "axiom nodes carry no children")
        info = AXIOMS.get(node.axiom)
        if info is None:
            raise _Reject(path, f"unknown axiom {node.axiom!r}")
        if node.axiom not in declared:
            raise _Reject(path, f"axiom {node.axiom!r} is not declared by the "
                                f"certificate")
        if cert.claim == QUASI_ALTERNATING and info.claim != QUASI_ALTERNATING:
            raise _Reject(path, f"axiom {node.axiom!r} asserts {info.claim}, "
                                f"not admissible in a {cert.claim} certificate")
        if not info.matcher(node.link):
            raise _Reject(path, f"axiom {node.axiom!r} does not apply to "
                                f"{node.link}")
        return

    if node.kind == SKEIN:
        if node.zero is None or node.inf is None or node.child is not None:
            raise _Reject(path, "skein nodes need exactly a zero and an inf child")
        zero_link = _resolve_leftmost(node.link, Slot.ZERO)
        inf_link = _resolve_leftmost(node.link, Slot.INF)
        if zero_link is None:
            raise _Reject(path, f"{node.link} has no unresolved slot to split")
        if node.zero.link != zero_link:
            raise _Reject(path + ".zero", f"expected {zero_link}, certificate "
                                          f"has {node.zero.link}")
        if node.inf.link != inf_link:
            raise _Reject(path + ".inf", f"expected {inf_link}, certificate "
                                         f"has {node.inf.link}")
        inner = measure(node.link)
        _check_node(node.zero, path + ".zero", cert, declared, certified, refs, inner)
        _check_node(node.inf, path + ".inf", cert, declared, certified, refs, inner)
        if node.det != node.zero.det + node.inf.det:
            raise _Reject(path, f"determinant additivity fails: {node.det} != "
                                f"{node.zero.det} + {node.inf.det}")
        return

    # IDENTIFY
    if node.child is None or node.zero is not None or node.inf is not None:
        raise _Reject(path, "identification nodes need exactly one child")
    if node.target is None:
        raise _Reject(path, "identification nodes need a target link")
    matched = False
    for rule in IDENTIFICATIONS:
        if rule.apply(node.link) == node.target:
            if rule.citation == node.citation:
                matched = True
                break
    if not matched:
        raise _Reject(path, f"no whitelisted identification sends {node.link} "
                            f"to {node.target} under {node.citation!r}")
    if node.child.link != node.target:
        raise _Reject(path + ".child", f"expected the identified link "
                                       f"{node.target}, certificate has "
                                       f"{node.child.link}")
    _check_node(node.child, path + ".child", cert, declared, certified, refs,
                skein_measure)
    if node.child.det != node.det:
        raise _Reject(path, f"identified links must share a determinant: "
                            f"{node.det} != {node.child.det}")


def verify(cert: Certificate) -> Verdict:
    """Check every rule of the certificate; ACCEPT or REJECT with the first
    violation's node path."""
    if cert.claim not in _CLAIMS:
        return Verdict(False, "claim", f"unknown claim {cert.claim!r}")
    declared: Dict[str, AxiomDecl] = {}
    for i, decl in enumerate(cert.axioms):
        info = AXIOMS.get(decl.name)
        if info is None:
            return Verdict(False, f"axioms[{i}]", f"unknown axiom {decl.name!r}")
        if decl.claim != info.claim or decl.citation != info.citation:
            return Verdict(False, f"axioms[{i}]",
                           f"axiom {decl.name!r} declared with wrong claim or "
                           f"citation")
        declared[decl.name] = decl
    certified: Set[LinkId] = set()
    refs: List[Tuple[LinkId, str]] = []
    try:
        _check_node(cert.root, "root", cert, declared, certified, refs,
                    measure(cert.root.link))
    except _Reject as rej:
        return rej.verdict
    for link, path in refs:
        if link not in certified:
            return Verdict(False, path,
                           f"reference to {link}, which is never certified")
    return ACCEPT


# ---------------------------------------------------------------------------
# Serialization (canonical JSON)
# ---------------------------------------------------------------------------

def _link_to_json(link: LinkId) -> Dict[str, object]:
    out: Dict[str, object] = {"family": link.family}
    if link.family == "NAMED":
        out["name"] = link.name
    else:
        out["params"] = {k: v for k, v in link.params}
        out["resolution"] = link.resolution
    return out


def _node_to_json(node: CertNode) -> Dict[str, object]:
    out: Dict[str, object] = {
        "link": _link_to_json(node.link),
        "det": str(node.det),
        "kind": node.kind,
    }
    if node.kind == BASE:
        out["axiom"] = node.axiom
    elif node.kind == SKEIN:
        out["zero"] = _node_to_json(node.zero)
        out["inf"] = _node_to_json(node.inf)
    elif node.kind == IDENTIFY:
        out["target"] = _link_to_json(node.target)
        out["citation"] = node.citation
        out["child"] = _node_to_json(node.child)
    return out


def serialize(cert: Certificate) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    payload = {
        "claim": cert.claim,
        "axioms": [{"name": ax.name, "claim": ax.claim, "citation": ax.citation}
                   for ax in cert.axioms],
        "root": _node_to_json(cert.root),
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _expect(obj, key: str, types, path: str):
    if not isinstance(obj, dict):
        raise CertParseError(f"{path}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise CertParseError(f"{path}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, types):
        raise CertParseError(f"{path}.{key}: unexpected type {type(value).__name__}")
    return value


def _link_from_json(obj, path: str) -> LinkId:
    family = _expect(obj, "family", str, path)
    if family == "NAMED":
        return LinkId.named(_expect(obj, "name", str, path))
    params_obj = _expect(obj, "params", dict, path)
    resolution = _expect(obj, "resolution", str, path)
    names = _FAMILY_PARAMS.get(family)
    if names is None:
        raise CertParseError(f"{path}.family: unknown family {family!r}")
    try:
        resolution = str(Resolution.parse(resolution))
    except ValueError as exc:
        raise CertParseError(f"{path}.resolution: {exc}") from None
    params = []
    for name in names:
        value = params_obj.get(name)
        if not isinstance(value, int) or isinstance(value, bool):
            raise CertParseError(f"{path}.params.{name}: expected an integer")
        params.append((name, value))
    extra = set(params_obj) - set(names)
    if extra:
        raise CertParseError(f"{path}.params: unexpected entries {sorted(extra)}")
    return LinkId(family, tuple(params), resolution)


def _node_from_json(obj, path: str) -> CertNode:
    link = _link_from_json(_expect(obj, "link", dict, path), path + ".link")
    det_text = _expect(obj, "det", str, path)
    try:
        det = int(det_text, 10)
    except ValueError:
        raise CertParseError(f"{path}.det: not a decimal integer: {det_text!r}")
    kind = _expect(obj, "kind", str, path)
    if kind == BASE:
        return CertNode(link, det, BASE, axiom=_expect(obj, "axiom", str, path))
    if kind == SKEIN:
        return CertNode(link, det, SKEIN,
                        zero=_node_from_json(_expect(obj, "zero", dict, path),
                                             path + ".zero"),
                        inf=_node_from_json(_expect(obj, "inf", dict, path),
                                            path + ".inf"))
    if kind == IDENTIFY:
        return CertNode(link, det, IDENTIFY,
                        target=_link_from_json(_expect(obj, "target", dict, path),
                                               path + ".target"),
                        citation=_expect(obj, "citation", str, path),
                        child=_node_from_json(_expect(obj, "child", dict, path),
                                              path + ".child"))
    if kind == REF:
        return CertNode(link, det, REF)
    raise CertParseError(f"{path}.kind: unknown node kind {kind!r}")


def deserialize(data: Union[str, bytes]) -> Certificate:
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CertParseError(f"invalid JSON at line {exc.lineno}, column "
                             f"{exc.colno}: {exc.msg}") from None
    claim = _expect(payload, "claim", str, "certificate")
    axioms_obj = _expect(payload, "axioms", list, "certificate")
    axioms = []
    for i, entry in enumerate(axioms_obj):
        where = f"axioms[{i}]"
        axioms.append(AxiomDecl(_expect(entry, "name", str, where),
                                _expect(entry, "claim", str, where),
                                _expect(entry, "citation", str, where)))
    root = _node_from_json(_expect(payload, "root", dict, "certificate"), "root")
    return Certificate(claim, root, tuple(axioms))


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

class _GroundingPolicy:
    """How the three A-family links under the B level get certified."""

    def a_star_node(self, b: "_Builder", q, s, t, ctx):
        raise NotImplementedError

    def a_inf_node(self, b: "_Builder", q, s, t, ctx):
        raise NotImplementedError

    def a_infinf_node(self, b: "_Builder", q, s, t, ctx):
        raise NotImplementedError


class _InductivePolicy(_GroundingPolicy):
    """All-positive parameters: the full t-induction on the A family."""

    def a_star_node(self, b, q, s, t, ctx):
        return b.a_star(q, s, t, ctx)

    def a_inf_node(self, b, q, s, t, ctx):
        return b.a_inf(q, s, t, ctx)

    def a_infinf_node(self, b, q, s, t, ctx):
        return b.a_infinf(q, s, t, ctx)


class _AlternatingAPolicy(_GroundingPolicy):
    """q > 0, s < 0, t > 0: every A-family link here is alternating."""

    def _base(self, b, link):
        return b.base(link, "ALTERNATING")

    def a_star_node(self, b, q, s, t, ctx):
        return self._base(b, LinkId.A(q, s, t))

    def a_inf_node(self, b, q, s, t, ctx):
        return self._base(b, LinkId.A(q, s, t, "inf,*,*"))

    def a_infinf_node(self, b, q, s, t, ctx):
        return self._base(b, LinkId.A(q, s, t, "inf,inf,*"))


class _MirrorAPolicy(_GroundingPolicy):
    """q, s, t < 0: the A link is the mirror of the all-positive one; its
    resolved companions are trusted regime facts."""

    def a_star_node(self, b, q, s, t, ctx):
        link = LinkId.A(q, s, t)
        child = b.a_star(-q, -s, -t, ctx)
        return b.ident(link, CIT_A_MIRROR, child)

    def a_inf_node(self, b, q, s, t, ctx):
        return b.base(LinkId.A(q, s, t, "inf,*,*"), "REGIME_A")

    def a_infinf_node(self, b, q, s, t, ctx):
        return b.base(LinkId.A(q, s, t, "inf,inf,*"), "REGIME_A")


class _RegimeAPolicy(_GroundingPolicy):
    """Mixed-sign regimes whose A-family facts are trusted as stated."""

    def a_star_node(self, b, q, s, t, ctx):
        return b.base(LinkId.A(q, s, t), "REGIME_A")

    def a_inf_node(self, b, q, s, t, ctx):
        return b.base(LinkId.A(q, s, t, "inf,*,*"), "REGIME_A")

    def a_infinf_node(self, b, q, s, t, ctx):
        return b.base(LinkId.A(q, s, t, "inf,inf,*"), "REGIME_A")


class _Builder:
    def __init__(self):
        self.certified: Set[LinkId] = set()
        self.used_axioms: Set[str] = set()

    # -- node factories ----------------------------------------------------

    def base(self, link: LinkId, axiom: str) -> CertNode:
        info = AXIOMS[axiom]
        if not info.matcher(link):
            raise GenerationError(f"axiom {axiom} does not apply to {link}")
        self.used_axioms.add(axiom)
        self.certified.add(link)
        return CertNode(link, expected_det(link), BASE, axiom=axiom)

    def skein(self, link: LinkId, zero: CertNode, inf: CertNode) -> CertNode:
        det = expected_det(link)
        if det <= 0 or zero.det <= 0 or inf.det <= 0:
            raise GenerationError(f"resolution determinant vanishes at {link}")
        if det != zero.det + inf.det:
            raise GenerationError(
                f"determinant additivity fails at {link}: "
                f"{det} != {zero.det} + {inf.det}")
        self.certified.add(link)
        return CertNode(link, det, SKEIN, zero=zero, inf=inf)

    def ident(self, link: LinkId, citation: str, child: CertNode) -> CertNode:
        det = expected_det(link)
        if det != child.det:
            raise GenerationError(
                f"identified determinants differ at {link}: {det} != {child.det}")
        self.certified.add(link)
        return CertNode(link, det, IDENTIFY, citation=citation,
                        target=child.link, child=child)

    def ref_or(self, link: LinkId, ctx, build: Callable[[], CertNode]) -> CertNode:
        if link in self.certified and measure(link) < ctx:
            return CertNode(link, expected_det(link), REF)
        return build()

    # -- A family: induction on t ------------------------------------------

    def a_star(self, q: int, s: int, t: int, ctx) -> CertNode:
        link = LinkId.A(q, s, t)

        def build():
            if s == 1 and t < q:
                return self.ident(link, CIT_A_SYM, self.a_star(t, s, q, ctx))
            if t == 1:
                if s == 1:  # here t >= q forces q = 1
                    return self.ident(link, CIT_A_NAMED,
                                      self.base(LinkId.named("T(3,4)"), "T(3,4)"))
                m = measure(link)
                return self.skein(link, self.a_zero(q, s, 1, m),
                                  self.base(LinkId.A(q, s, 1, "inf,*,*"),
                                            "PETERS_QA"))
            m = measure(link)
            return self.skein(link, self.a_zero(q, s, t, m),
                              self.a_inf(q, s, t, m))

        return self.ref_or(link, ctx, build)

    def a_zero(self, q: int, s: int, t: int, ctx) -> CertNode:
        link = LinkId.A(q, s, t, "0,*,*")

        def build():
            if t == 1:
                if s > 1:
                    m = measure(link)
                    return self.skein(
                        link,
                        self.base(LinkId.A(q, s, 1, "0,0,*"), "PETERS_QA"),
                        self.base(LinkId.A(q, s, 1, "0,inf,*"), "PETERS_QA"))
                if q == 1:
                    return self.ident(link, CIT_A_NAMED,
                                      self.base(LinkId.named("P(2,-3,-2)"),
                                                "P(2,-3,-2)"))
                return self.base(link, "A_0_STAR_STAR_S1")
            m = measure(link)
            return self.skein(link, self.a_00(q, s, t, m),
                              self.a_0inf(q, s, t, m))

        return self.ref_or(link, ctx, build)

    def _a_00_base(self, q: int, s: int, ctx) -> CertNode:
        link = LinkId.A(q, s, 1, "0,0,*")

        def build():
            if s > 1:
                return self.base(link, "PETERS_QA")
            return self.base(link, "A_00_STAR_S1")

        return self.ref_or(link, ctx, build)

    def a_00(self, q: int, s: int, t: int, ctx) -> CertNode:
        link = LinkId.A(q, s, t, "0,0,*")
        if t == 1:
            return self._a_00_base(q, s, ctx)

        def build():
            return self.ident(link, CIT_A_COLLAPSE, self._a_00_base(q, s, ctx))

        return self.ref_or(link, ctx, build)

    def _a_0infinf(self, q: int, s: int, t: int, ctx) -> CertNode:
        link = LinkId.A(q, s, t, "0,inf,inf")
        return self.ident(link, CIT_A_LADDER_ZERO, self.a_zero(q, s, t - 1, ctx))

    def a_0inf(self, q: int, s: int, t: int, ctx) -> CertNode:
        link = LinkId.A(q, s, t, "0,inf,*")

        def build():
            m = measure(link)
            zero = self.ident(LinkId.A(q, s, t, "0,inf,0"), CIT_A_MIDDLE,
                              self.a_00(q, s, t, m))
            inf = self._a_0infinf(q, s, t, m)
            return self.skein(link, zero, inf)

        return self.ref_or(link, ctx, build)

    def a_inf(self, q: int, s: int, t: int, ctx) -> CertNode:
        link = LinkId.A(q, s, t, "inf,*,*")

        def build():
            m = measure(link)
            return self.skein(link, self.a_inf0(q, s, t, m),
                              self.a_infinf(q, s, t, m))

        return self.ref_or(link, ctx, build)

    def a_inf0(self, q: int, s: int, t: int, ctx) -> CertNode:
        link = LinkId.A(q, s, t, "inf,0,*")

        def build():
            m = measure(link)
            zero = self.ident(LinkId.A(q, s, t, "inf,0,0"), CIT_A_MIDDLE,
                              self.a_00(q, s, t, m))
            inf = self.ident(LinkId.A(q, s, t, "inf,0,inf"), CIT_A_OUTER,
                             self._a_0infinf(q, s, t, m))
            return self.skein(link, zero, inf)

        return self.ref_or(link, ctx, build)

    def a_infinf(self, q: int, s: int, t: int, ctx) -> CertNode:
        link = LinkId.A(q, s, t, "inf,inf,*")

        def build():
            m = measure(link)
            zero = self.ident(LinkId.A(q, s, t, "inf,inf,0"), CIT_A_OUTER,
                              self._a_0infinf(q, s, t, m))
            inf = self.ident(LinkId.A(q, s, t, "inf,inf,inf"), CIT_A_LADDER_STAR,
                             self.a_star(q, s, t - 1, m))
            return self.skein(link, zero, inf)

        return self.ref_or(link, ctx, build)

    # -- B level (l = 1) ----------------------------------------------------

    def b_star(self, q, s, t, ctx, policy) -> CertNode:
        link = LinkId.B(q, s, t)

        def build():
            if (q, s, t) == (1, 1, 1):
                return self.ident(link, CIT_B_NAMED,
                                  self.base(LinkId.named("T(3,5)"), "T(3,5)"))
            m = measure(link)
            return self.skein(link, self.b_zero(q, s, t, m, policy),
                              self.b_inf(q, s, t, m, policy))

        return self.ref_or(link, ctx, build)

    def b_zero(self, q, s, t, ctx, policy) -> CertNode:
        link = LinkId.B(q, s, t, "0,*,*")

        def build():
            if (q, s, t) == (1, 1, 1):
                return self.ident(link, CIT_B_NAMED,
                                  self.base(LinkId.named("P(2,-3,-4)"),
                                            "P(2,-3,-4)"))
            if s == 1 and t == 1:
                return self.base(link, "B_0_STAR_STAR_S1_T1")
            m = measure(link)
            return self.skein(link, self.b_00(q, s, t, m, policy),
                              self.b_0inf(q, s, t, m, policy))

        return self.ref_or(link, ctx, build)

    def b_00(self, q, s, t, ctx, policy) -> CertNode:
        link = LinkId.B(q, s, t, "0,0,*")

        def build():
            return self.ident(link, CIT_B_TO_A,
                              policy.a_star_node(self, q, s, t, ctx))

        return self.ref_or(link, ctx, build)

    def b_0inf(self, q, s, t, ctx, policy) -> CertNode:
        link = LinkId.B(q, s, t, "0,inf,*")

        def build():
            return self.ident(link, CIT_B_TO_A,
                              policy.a_inf_node(self, q, s, t, ctx))

        return self.ref_or(link, ctx, build)

    def b_inf(self, q, s, t, ctx, policy) -> CertNode:
        link = LinkId.B(q, s, t, "inf,*,*")

        def build():
            return self.ident(link, CIT_B_TO_A,
                              policy.a_infinf_node(self, q, s, t, ctx))

        return self.ref_or(link, ctx, build)

    # -- L family: induction on l ------------------------------------------

    def l_star(self, q, s, t, l, ctx, policy) -> CertNode:
        link = LinkId.L(q, s, t, l)

        def build():
            if s == 1 and t == 1 and 0 < l < q:
                return self.ident(link, CIT_L_SWAP,
                                  self.l_star(l, t, s, q, ctx, policy))
            if l == 1:
                return self.ident(link, CIT_L_IS_B,
                                  self.b_star(q, s, t, ctx, policy))
            m = measure(link)
            return self.skein(link, self.l_zero(q, s, t, l, m, policy),
                              self.l_inf(q, s, t, l, m, policy))

        return self.ref_or(link, ctx, build)

    def l_zero(self, q, s, t, l, ctx, policy) -> CertNode:
        link = LinkId.L(q, s, t, l, "0,*,*")

        def build():
            if l == 1:
                return self.ident(link, CIT_L_IS_B,
                                  self.b_zero(q, s, t, ctx, policy))
            m = measure(link)
            return self.skein(link, self.l_00(q, s, t, l, m, policy),
                              self.l_0inf(q, s, t, l, m, policy))

        return self.ref_or(link, ctx, build)

    def l_00(self, q, s, t, l, ctx, policy) -> CertNode:
        link = LinkId.L(q, s, t, l, "0,0,*")

        def build():
            if l == 1:
                return self.ident(link, CIT_L_IS_B,
                                  self.b_00(q, s, t, ctx, policy))
            return self.ident(link, CIT_L_CHAIN,
                              self.l_00(q, s, t, l - 1, ctx, policy))

        return self.ref_or(link, ctx, build)

    def _l_0infinf(self, q, s, t, l, ctx, policy) -> CertNode:
        link = LinkId.L(q, s, t, l, "0,inf,inf")
        return self.ident(link, CIT_L_LADDER_ZERO,
                          self.l_zero(q, s, t, l - 1, ctx, policy))

    def l_0inf(self, q, s, t, l, ctx, policy) -> CertNode:
        link = LinkId.L(q, s, t, l, "0,inf,*")

        def build():
            m = measure(link)
            zero = self.ident(LinkId.L(q, s, t, l, "0,inf,0"), CIT_L_MIDDLE,
                              self.l_00(q, s, t, l, m, policy))
            inf = self._l_0infinf(q, s, t, l, m, policy)
            return self.skein(link, zero, inf)

        return self.ref_or(link, ctx, build)

    def l_inf(self, q, s, t, l, ctx, policy) -> CertNode:
        link = LinkId.L(q, s, t, l, "inf,*,*")

        def build():
            if l == 1:
                return self.ident(link, CIT_L_IS_B,
                                  self.b_inf(q, s, t, ctx, policy))
            m = measure(link)
            return self.skein(link, self.l_inf0(q, s, t, l, m, policy),
                              self.l_infinf(q, s, t, l, m, policy))

        return self.ref_or(link, ctx, build)

    def l_inf0(self, q, s, t, l, ctx, policy) -> CertNode:
        link = LinkId.L(q, s, t, l, "inf,0,*")

        def build():
            m = measure(link)
            zero = self.ident(LinkId.L(q, s, t, l, "inf,0,0"), CIT_L_MIDDLE,
                              self.l_00(q, s, t, l, m, policy))
            inf = self.ident(LinkId.L(q, s, t, l, "inf,0,inf"), CIT_L_OUTER,
                             self._l_0infinf(q, s, t, l, m, policy))
            return self.skein(link, zero, inf)

        return self.ref_or(link, ctx, build)

    def l_infinf(self, q, s, t, l, ctx, policy) -> CertNode:
        link = LinkId.L(q, s, t, l, "inf,inf,*")

        def build():
            m = measure(link)
            zero = self.ident(LinkId.L(q, s, t, l, "inf,inf,0"), CIT_L_OUTER,
                              self._l_0infinf(q, s, t, l, m, policy))
            inf = self.ident(LinkId.L(q, s, t, l, "inf,inf,inf"),
                             CIT_L_LADDER_STAR,
                             self.l_star(q, s, t, l - 1, m, policy))
            return self.skein(link, zero, inf)

        return self.ref_or(link, ctx, build)


def _declarations(names: Set[str]) -> Tuple[AxiomDecl, ...]:
    return tuple(AxiomDecl(ax.name, ax.claim, ax.citation)
                 for ax in sorted((AXIOMS[n] for n in names),
                                  key=lambda ax: ax.name))


def generate_A_cert(q: int, s: int, t: int) -> Certificate:
    """Certificate for the three-slot family at positive parameters: the link
    itself is quasi-alternating for s > 1; its double branched cover is an
    L-space for s = 1."""
    for name, value in (("q", q), ("s", s), ("t", t)):
        if not isinstance(value, int) or value < 1:
            raise UnsupportedRegimeError(
                f"parameter {name} must be a positive integer, got {value!r}")
    builder = _Builder()
    root = builder.a_star(q, s, t, _TOP_MEASURE)
    claim = QUASI_ALTERNATING if s > 1 else L_SPACE
    names = set(builder.used_axioms)
    if s == 1:
        names |= {"T(3,4)", "P(2,-3,-2)"}
    return Certificate(claim, root, _declarations(names))


_CANONICAL_PATTERNS = {
    (1, 1, 1, 1): "positive",
    (-1, 1, -1, 1): "alternating",
    (1, -1, 1, 1): "alternating_A",
    (-1, -1, -1, 1): "mirror_A",
    (1, 1, -1, 1): "swap_to_alternating_A",
    (1, -1, -1, -1): "swap_to_mirror_A",
    (1, -1, -1, 1): "regime_A",
    (-1, -1, 1, 1): "regime_A",
}


def _build_canonical(builder: _Builder, q, s, t, l) -> Tuple[str, CertNode, Set[str]]:
    """Certificate claim + root for one of the eight canonical sign cases."""
    case = _CANONICAL_PATTERNS[(1 if q > 0 else -1, 1 if s > 0 else -1,
                                1 if t > 0 else -1, 1 if l > 0 else -1)]
    extra: Set[str] = set()

    if case == "alternating":
        return (QUASI_ALTERNATING,
                builder.base(LinkId.L(q, s, t, l), "ALTERNATING"), extra)

    if case == "positive":
        if s > 1 and t > 1:
            claim, policy = QUASI_ALTERNATING, _InductivePolicy()
        else:
            claim, policy = L_SPACE, _InductivePolicy()
        if s == 1 and t == 1:
            extra |= {"T(3,5)", "P(2,-3,-4)"}
        if s > 1 and t == 1:
            # s and t (and q and l) are symmetric; the swapped parameters
            # fall in the s = 1, t > 1 regime.
            link = LinkId.L(q, s, t, l)
            child = builder.l_star(l, t, s, q, _TOP_MEASURE, policy)
            return claim, builder.ident(link, CIT_L_SWAP, child), extra
        return claim, builder.l_star(q, s, t, l, _TOP_MEASURE, policy), extra

    if case == "alternating_A":
        policy = _AlternatingAPolicy()
        return (QUASI_ALTERNATING,
                builder.l_star(q, s, t, l, _TOP_MEASURE, policy), extra)

    if case == "swap_to_alternating_A":
        link = LinkId.L(q, s, t, l)
        child = builder.l_star(l, t, s, q, _TOP_MEASURE, _AlternatingAPolicy())
        return QUASI_ALTERNATING, builder.ident(link, CIT_L_SWAP, child), extra

    if case == "mirror_A":
        policy = _MirrorAPolicy()
        return L_SPACE, builder.l_star(q, s, t, l, _TOP_MEASURE, policy), extra

    if case == "swap_to_mirror_A":
        link = LinkId.L(q, s, t, l)
        child = builder.l_star(l, t, s, q, _TOP_MEASURE, _MirrorAPolicy())
        return L_SPACE, builder.ident(link, CIT_L_SWAP, child), extra

    # regime_A
    policy = _RegimeAPolicy()
    return L_SPACE, builder.l_star(q, s, t, l, _TOP_MEASURE, policy), extra


def generate_L_cert(q: int, s: int, t: int, l: int) -> Certificate:
    """Certificate for the four-parameter family at any nonzero parameters.

    All-positive parameters follow the l-induction (grounded in the A-family
    t-induction); the alternating sign regime emits a one-node certificate;
    the remaining regimes combine the l-induction with the mirror and
    parameter-swap symmetries and the trusted regime facts."""
    for name, value in (("q", q), ("s", s), ("t", t), ("l", l)):
        if not isinstance(value, int) or value == 0:
            raise CertError(
                f"parameter {name} must be a nonzero integer, got {value!r}")
    builder = _Builder()
    pattern = (1 if q > 0 else -1, 1 if s > 0 else -1,
               1 if t > 0 else -1, 1 if l > 0 else -1)
    if pattern in _CANONICAL_PATTERNS:
        claim, root, extra = _build_canonical(builder, q, s, t, l)
    else:
        claim, child, extra = _build_canonical(builder, -q, -s, -t, -l)
        root = builder.ident(LinkId.L(q, s, t, l), CIT_L_MIRROR, child)
    names = set(builder.used_axioms) | extra
    return Certificate(claim, root, _declarations(names))
