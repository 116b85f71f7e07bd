"""Ideal membership over Q with replayable derivations.

Basis completion is plain Buchberger under grlex with a deterministic pair
queue.  Every polynomial it produces is recorded as an explicit combination
of earlier ones, so a caller can export the trace and check it later with
nothing but polynomial multiplication.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .multipoly import MultiPoly, grlex_key

DEFAULT_STEP_BUDGET = 100_000


class BudgetExceeded(RuntimeError):
    """Basis completion ran out of reduction steps; the answer is unknown."""


@dataclass(frozen=True)
class IdealBasis:
    """Generators plus polynomials asserted to be nonzero."""

    generators: tuple
    nonvanishing: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        nonv = tuple(self.nonvanishing)
        all_polys = gens + nonv
        if not all_polys:
            raise ValueError("empty ideal basis")
        vars = all_polys[0].vars
        if any(p.vars != vars for p in all_polys):
            raise ValueError("generators must share one variable list")
        seen = set()
        kept = []
        for g in gens:
            if g.is_zero():
                continue
            key = g.monic()
            if key in seen:
                continue
            seen.add(key)
            kept.append(g)
        object.__setattr__(self, "generators", tuple(kept))
        object.__setattr__(self, "nonvanishing", nonv)

    @property
    def vars(self):
        return (self.generators or self.nonvanishing)[0].vars


@dataclass(frozen=True)
class Step:
    """``target == sum(cofactor * member[index])`` over earlier members."""

    target: MultiPoly
    cofactors: tuple
    note: str = ""


@dataclass
class Derivation:
    """Generators followed by derived members, each justified by a :class:`Step`."""

    generators: list
    steps: list = field(default_factory=list)

    def __post_init__(self):
        self.generators = list(self.generators)
        if not self.generators:
            raise ValueError("derivation needs at least one generator")

    @property
    def vars(self):
        return self.generators[0].vars

    def __len__(self):
        return len(self.generators) + len(self.steps)

    def member(self, i):
        n = len(self.generators)
        return self.generators[i] if i < n else self.steps[i - n].target

    def add_step(self, target, cofactors, note=""):
        cof = tuple(sorted(((int(i), q) for i, q in cofactors if not q.is_zero()), key=lambda x: x[0]))
        self.steps.append(Step(target, cof, note))
        return len(self) - 1

    def check_step(self, k):
        step = self.steps[k]
        own = len(self.generators) + k
        total = MultiPoly.zero(self.vars)
        for i, q in step.cofactors:
            if not 0 <= i < own:
                return False
            total = total + q * self.member(i)
        return total == step.target

    def replay(self):
        """Index (into ``steps``) of the first step that fails, or ``None``."""
        for k in range(len(self.steps)):
            if not self.check_step(k):
                return k
        return None

    def prune(self, roots):
        """Keep only steps that ``roots`` (member indices) depend on.

        Returns the pruned derivation and a map from old to new member indices.
        """
        n = len(self.generators)
        needed = set()
        stack = [r for r in roots if r >= n]
        while stack:
            i = stack.pop()
            if i in needed:
                continue
            needed.add(i)
            stack.extend(j for j, _ in self.steps[i - n].cofactors if j >= n)
        remap = {i: i for i in range(n)}
        out = Derivation(self.generators)
        for old in sorted(needed):
            step = self.steps[old - n]
            remap[old] = out.add_step(
                step.target, [(remap[j], q) for j, q in step.cofactors], step.note
            )
        return out, remap


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def divide(p, divisors, counter=None):
    """Full multivariate division.

    Returns ``(quotients, remainder)`` with ``p == sum(q*d) + remainder`` and
    no term of the remainder divisible by a divisor's leading monomial.  The
    first divisor (in list order) whose leading monomial divides is used.
    """
    vars = p.vars
    leads = [d.leading_term() for d in divisors]
    quotients = [dict() for _ in divisors]
    work = dict(p.terms)
    remainder = {}
    while work:
        e = max(work, key=grlex_key)
        c = work[e]
        for idx, (le, lc) in enumerate(leads):
            if _divides(le, e):
                if counter is not None:
                    counter()
                shift = _sub_exp(e, le)
                factor = c / lc
                quotients[idx][shift] = quotients[idx].get(shift, 0) + factor
                for de, dc in divisors[idx].terms.items():
                    te = tuple(a + b for a, b in zip(de, shift))
                    v = work.get(te, 0) - factor * dc
                    if v:
                        work[te] = v
                    else:
                        work.pop(te, None)
                break
        else:
            remainder[e] = c
            del work[e]
    qs = [MultiPoly(q, vars) for q in quotients]
    return qs, MultiPoly(remainder, vars)


def multipoly_reduce(p, basis):
    """Remainder of ``p`` on division by ``basis`` under grlex."""
    basis = [b for b in basis if not b.is_zero()]
    if not basis:
        return p
    return divide(p, basis)[1]


class Completion:
    """Buchberger completion that records each new basis element in a derivation.

    ``seeds`` are member indices of ``derivation`` that generate the ideal.
    """

    def __init__(self, derivation, seeds, budget=DEFAULT_STEP_BUDGET):
        self.derivation = derivation
        self.budget = budget
        self.reductions = 0
        self.basis = []  # (monic poly, member index, scale) with monic == scale * member
        self.unit_member = None
        self._pairs = []
        for i in seeds:
            p = derivation.member(i)
            if not p.is_zero():
                self._add(p, i)

    def _tick(self):
        self.reductions += 1
        if self.reductions > self.budget:
            raise BudgetExceeded(f"basis completion exceeded {self.budget} reductions")

    def _add(self, poly, member):
        lc = poly.leading_coeff
        scale = 1 / lc
        monic = poly.scale(scale)
        k = len(self.basis)
        self.basis.append((monic, member, scale))
        if monic.is_constant():
            self.unit_member = member
        for i in range(k):
            self._pairs.append((i, k))

    def _pair_key(self, pair):
        i, j = pair
        lcm = _lcm(self.basis[i][0].leading_monomial, self.basis[j][0].leading_monomial)
        return (sum(lcm), lcm, i, j)

    def reduce_tracked(self, p):
        """Return ``(remainder, {member: cofactor})`` with p == sum + remainder."""
        polys = [b[0] for b in self.basis]
        qs, r = divide(p, polys, self._tick)
        cof = {}
        for (monic, member, scale), q in zip(self.basis, qs):
            if q.is_zero():
                continue
            term = q.scale(scale)
            cof[member] = cof[member] + term if member in cof else term
        return r, cof

    def run(self):
        """Complete the basis; returns the member index of 1 if the ideal is trivial."""
        if self.unit_member is not None:
            return self.unit_member
        while self._pairs:
            best = min(self._pairs, key=self._pair_key)
            self._pairs.remove(best)
            i, j = best
            fi, mi, si = self.basis[i]
            fj, mj, sj = self.basis[j]
            ei, ej = fi.leading_monomial, fj.leading_monomial
            if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
                continue  # coprime leading monomials reduce to zero
            lcm = _lcm(ei, ej)
            ui, uj = _sub_exp(lcm, ei), _sub_exp(lcm, ej)
            spoly = fi.mul_term(ui, Fraction(1)) - fj.mul_term(uj, Fraction(1))
            self._tick()
            r, cof = self.reduce_tracked(spoly)
            if r.is_zero():
                continue
            vars = r.vars
            combo = {}
            combo[mi] = MultiPoly({ui: si}, vars)
            combo[mj] = combo.get(mj, MultiPoly.zero(vars)) - MultiPoly({uj: sj}, vars)
            for m, q in cof.items():
                combo[m] = combo.get(m, MultiPoly.zero(vars)) - q
            lc = r.leading_coeff
            target = r.scale(1 / lc)
            member = self.derivation.add_step(
                target, [(m, q.scale(1 / lc)) for m, q in combo.items()], "s-pair"
            )
            self._add(target, member)
            if self.unit_member is not None:
                return self.unit_member
        return None

    def express(self, p, note=""):
        """Record ``p`` as a derived member if it lies in the ideal; else ``None``.

        Call after :meth:`run`.
        """
        r, cof = self.reduce_tracked(p)
        if not r.is_zero():
            return None
        return self.derivation.add_step(p, list(cof.items()), note)

    def normal_form(self, p):
        return divide(p, [b[0] for b in self.basis], self._tick)[1]

    def groebner_basis(self):
        return [b[0] for b in self.basis]


@dataclass
class IdealResult:
    status: str  # "trivial" or "proper"
    derivation: Derivation
    witness: int | None  # member index of the nonzero constant when trivial
    vars: tuple
    inverse_vars: tuple
    groebner: list


def inverse_var_names(vars, count):
    names = []
    i = 1
    while len(names) < count:
        name = f"y{i}"
        if name not in vars:
            names.append(name)
        i += 1
    return tuple(names)


def saturated_generators(basis):
    """Generators with ``q*y - 1`` adjoined for every nonvanishing ``q``."""
    inv = inverse_var_names(basis.vars, len(basis.nonvanishing))
    vars = tuple(basis.vars) + inv
    gens = [g.extend(vars) for g in basis.generators]
    for q, y in zip(basis.nonvanishing, inv):
        gens.append(q.extend(vars) * MultiPoly.var(y, vars) - 1)
    return vars, inv, gens


def ideal_contains_one(basis, budget=DEFAULT_STEP_BUDGET):
    """Decide whether 1 lies in the ideal, after saturating by the nonvanishing list.

    A trivial answer carries a pruned derivation whose last member is 1.
    Raises :class:`BudgetExceeded` when completion does not finish.
    """
    vars, inv, gens = saturated_generators(basis)
    der = Derivation(gens)
    comp = Completion(der, range(len(gens)), budget)
    unit = comp.run()
    if unit is None:
        return IdealResult("proper", der, None, vars, inv, comp.groebner_basis())
    pruned, remap = der.prune([unit])
    return IdealResult("trivial", pruned, remap[unit], vars, inv, [MultiPoly.const(1, vars)])


def minimal_polynomial(completion, var, max_degree=32):
    """Monic minimal polynomial of ``var`` modulo a completed zero-dimensional ideal.

    Finds the first linear dependency among normal forms of ``var**i``.
    Returns coefficients ``[c0, c1, ..., 1]`` or ``None`` if none up to ``max_degree``.
    """
    vars = completion.derivation.vars
    x = MultiPoly.var(var, vars)
    forms = []
    power = MultiPoly.const(1, vars)
    for d in range(max_degree + 1):
        forms.append(completion.normal_form(power))
        sol = _dependency(forms)
        if sol is not None:
            return sol
        power = power * x
    return None


def _dependency(forms):
    """Solve sum(c_i * forms[i]) == 0 with the last coefficient 1, if possible."""
    monos = sorted({e for f in forms for e in f.terms}, key=grlex_key)
    n = len(forms)
    # columns are forms[0..n-2]; right-hand side is -forms[n-1]
    rows = []
    for e in monos:
        rows.append([f.terms.get(e, Fraction(0)) for f in forms[:-1]] + [-forms[-1].terms.get(e, Fraction(0))])
    sol = solve_linear(rows, n - 1)
    if sol is None:
        return None
    return sol + [Fraction(1)]


def solve_linear(rows, ncols):
    """Exact Gaussian elimination on an augmented matrix.

    Returns one solution (free variables set to 0) or ``None`` if inconsistent.
    Works for any field whose elements support ``+ - * /`` and ``== 0``.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return None
    zero = m[0][ncols] * 0 if m else Fraction(0)
    sol = [zero] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol
